#include "spinet/dense.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "spinet/errors.hpp"

namespace spinet {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int sites_of_dim(Eigen::Index dim) {
  auto u = static_cast<std::uint64_t>(dim);
  if (dim < 2 || !std::has_single_bit(u))
    throw contract_error("operator dimension " + std::to_string(dim) +
                         " is not a power of two");
  return std::countr_zero(u);
}

void check_hermitian(const DenseOperator& h, double tol) {
  if (h.rows() != h.cols()) throw contract_error("matrix is not square");
  double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw contract_error("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
}

}  // namespace

int dense_cap() {
  if (const char* env = std::getenv("SPINET_DENSE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= PauliString::kMaxSites)
      return static_cast<int>(v);
  }
  return 12;
}

DenseOperator dense(const OperatorExpr& a) {
  int n = a.n_sites();
  int cap = dense_cap();
  if (n > cap)
    throw capacity_error("dense backend capped at " + std::to_string(cap) + " sites (got " +
                         std::to_string(n) +
                         "); raise SPINET_DENSE_CAP or use the single-particle backend");
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (const auto& [code, amp] : a.terms()) {
    // Letter masks over the n bit positions.
    std::uint64_t xmask = 0, ymask = 0, zmask = 0;
    for (int s = 0; s < n; ++s) {
      switch ((code >> (2 * s)) & 3u) {
        case 1: xmask |= 1ull << s; break;
        case 2: ymask |= 1ull << s; break;
        case 3: zmask |= 1ull << s; break;
        default: break;
      }
    }
    // X and Y flip their bit; Y contributes i*(-1)^bit, Z contributes
    // (-1)^bit on the incoming basis state.
    int ny = std::popcount(ymask);
    std::complex<double> ypre = amp;
    switch (ny & 3) {
      case 1: ypre *= kI; break;
      case 2: ypre *= -1.0; break;
      case 3: ypre *= -kI; break;
      default: break;
    }
    std::uint64_t flip = xmask | ymask;
    std::uint64_t signs = ymask | zmask;
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      double sgn = (std::popcount(col & signs) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) += sgn * ypre;
    }
  }
  return m;
}

DenseOperator dense(const PauliString& p) { return dense(OperatorExpr::term(p)); }

Eigensystem eigensystem(const DenseOperator& h) {
  check_hermitian(h, 1e-10);
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success)
    throw contract_error("eigendecomposition failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DenseOperator propagator(const Eigensystem& es, double t) {
  Eigen::VectorXcd phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k)
    phases(k) = std::exp(-kI * es.values(k) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

DenseOperator propagator(const DenseOperator& h, double t) {
  return propagator(eigensystem(h), t);
}

DenseFidelity::DenseFidelity(const DenseOperator& h, const DenseOperator& p_init,
                             const DenseOperator& p_final) {
  if (p_init.rows() != h.rows() || p_final.rows() != h.rows())
    throw contract_error("operator dimensions disagree");
  Eigensystem es = eigensystem(h);
  evals_ = es.values;
  DenseOperator pi = es.vectors.adjoint() * p_init * es.vectors;
  DenseOperator pf = es.vectors.adjoint() * p_final * es.vectors;
  weights_ = pi.cwiseProduct(pf.transpose()) / static_cast<double>(h.rows());
}

double DenseFidelity::operator()(double t) const {
  const Eigen::Index dim = evals_.size();
  Eigen::VectorXcd phase(dim);
  for (Eigen::Index k = 0; k < dim; ++k) phase(k) = std::exp(-kI * evals_(k) * t);
  std::complex<double> acc = (phase.transpose() * weights_ * phase.conjugate())(0, 0);
  return acc.real();
}

namespace {

DenseFidelity transport_kernel(const SpinNetwork& net, HamiltonianKind kind) {
  OperatorExpr h = hamiltonian(net, kind);
  DenseOperator hm = dense(h);
  DenseOperator zs = dense(PauliString::single(net.n, net.source, Letter::Z));
  DenseOperator zt = dense(PauliString::single(net.n, net.target, Letter::Z));
  return DenseFidelity(hm, zs, zt);
}

}  // namespace

double transport_fidelity(const SpinNetwork& net, HamiltonianKind kind, double t) {
  if (!std::isfinite(t)) throw contract_error("time must be finite");
  return transport_kernel(net, kind)(t);
}

FidelityTrace fidelity_trace(const SpinNetwork& net, HamiltonianKind kind,
                             double t_max, int samples) {
  DenseFidelity f = transport_kernel(net, kind);
  return scan_trace([&f](double t) { return f(t); }, t_max, samples);
}

double general_fidelity(const SpinNetwork& net, HamiltonianKind kind, double t,
                        const PauliString& p_init, const PauliString& p_final) {
  if (p_init.is_identity() || p_final.is_identity())
    throw contract_error("transport between identity strings is trivial; pick basis strings");
  OperatorExpr h = hamiltonian(net, kind);
  DenseFidelity f(dense(h), dense(p_init), dense(p_final));
  return f(t);
}

double general_fidelity(const DenseOperator& u, const DenseOperator& p_init,
                        const DenseOperator& p_final) {
  sites_of_dim(u.rows());
  if (p_init.rows() != u.rows() || p_final.rows() != u.rows())
    throw contract_error("operator dimensions disagree");
  std::complex<double> tr = (u * p_init * u.adjoint() * p_final).trace() /
                            static_cast<double>(u.rows());
  if (std::abs(tr.imag()) > 1e-10)
    throw check_error("fidelity has imaginary part " + std::to_string(tr.imag()) +
                      "; initial/final operators are not Hermitian");
  return tr.real();
}

}  // namespace spinet
