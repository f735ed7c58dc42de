#ifndef SPINET_FERMION_HPP
#define SPINET_FERMION_HPP

#include <Eigen/Dense>
#include <complex>

#include "spinet/network.hpp"
#include "spinet/trace.hpp"

namespace spinet {

// Weighted adjacency (hopping) matrix of the network: A_ij = alpha_ij on
// edges, zero elsewhere.
Eigen::MatrixXd hopping_matrix(const SpinNetwork& net);

// Single-particle propagator of the hopping matrix.  Under the modified XY
// Hamiltonian the polarization transport fidelity reduces to
// F(t) = |(e^{-iAt})_{target,source}|^2, which this evaluates in O(n^2)
// per time after one O(n^3) eigendecomposition.  The reduction is verified
// against the dense backend by the test suite before anything relies on it.
class FermionPropagator {
 public:
  explicit FermionPropagator(const SpinNetwork& net);

  std::complex<double> amplitude(double t) const;  // <target| e^{-iAt} |source>
  double fidelity(double t) const;                 // |amplitude|^2

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
  int source_;
  int target_;
};

// One-shot conveniences over FermionPropagator.
double fermion_fidelity(const SpinNetwork& net, double t);
FidelityTrace fermion_trace(const SpinNetwork& net, double t_max, int samples);

}  // namespace spinet

#endif
