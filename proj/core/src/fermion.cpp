#include "spinet/fermion.hpp"

#include <cmath>

#include "spinet/errors.hpp"

namespace spinet {

Eigen::MatrixXd hopping_matrix(const SpinNetwork& net) {
  net.validate();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(net.n, net.n);
  for (const Edge& e : net.edges) {
    a(e.i - 1, e.j - 1) = e.alpha;
    a(e.j - 1, e.i - 1) = e.alpha;
  }
  return a;
}

FermionPropagator::FermionPropagator(const SpinNetwork& net)
    : source_(net.source - 1), target_(net.target - 1) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hopping_matrix(net));
  if (solver.info() != Eigen::Success)
    throw contract_error("hopping-matrix eigendecomposition failed");
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();
}

std::complex<double> FermionPropagator::amplitude(double t) const {
  std::complex<double> acc{};
  for (Eigen::Index k = 0; k < evals_.size(); ++k) {
    double phase = -evals_(k) * t;
    acc += evecs_(target_, k) * evecs_(source_, k) *
           std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

double FermionPropagator::fidelity(double t) const { return std::norm(amplitude(t)); }

double fermion_fidelity(const SpinNetwork& net, double t) {
  return FermionPropagator(net).fidelity(t);
}

FidelityTrace fermion_trace(const SpinNetwork& net, double t_max, int samples) {
  FermionPropagator prop(net);
  return scan_trace([&prop](double t) { return prop.fidelity(t); }, t_max, samples);
}

}  // namespace spinet
