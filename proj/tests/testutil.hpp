#ifndef SPINET_TESTUTIL_HPP
#define SPINET_TESTUTIL_HPP

#include <Eigen/Dense>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "spinet/network.hpp"

namespace testutil {

inline std::string data_path(const char* name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random connected network: a random spanning tree plus a few extra edges,
// couplings uniform in [0.2, 2], ends (1, n).
inline spinet::SpinNetwork random_connected_network(std::mt19937& rng, int n_min,
                                                    int n_max) {
  std::uniform_int_distribution<int> size(n_min, n_max);
  std::uniform_real_distribution<double> alpha(0.2, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  int n = size(rng);
  spinet::SpinNetwork net;
  net.n = n;
  net.source = 1;
  net.target = n;
  for (int i = 2; i <= n; ++i) {
    std::uniform_int_distribution<int> parent(1, i - 1);
    net.edges.push_back({parent(rng), i, alpha(rng)});
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool present = false;
      for (const auto& e : net.edges)
        if (e.i == i && e.j == j) present = true;
      if (!present && coin(rng) < 0.15) net.edges.push_back({i, j, alpha(rng)});
    }
  net.normalize();
  return net;
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = std::complex<double>(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

}  // namespace testutil

#endif
