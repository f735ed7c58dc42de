#ifndef SPINET_DENSE_HPP
#define SPINET_DENSE_HPP

#include <Eigen/Dense>

#include "spinet/network.hpp"
#include "spinet/pauli.hpp"
#include "spinet/trace.hpp"

namespace spinet {

using DenseOperator = Eigen::MatrixXcd;

// Largest site count the dense backend accepts: SPINET_DENSE_CAP when set,
// 12 otherwise.
int dense_cap();

// Exact 2^n matrix of an expression.  Site i occupies bit i-1 of the basis
// index; bit value 0 is the Z = +1 level.  Cost is linear in term count
// (one pass over the 2^n columns per term).
DenseOperator dense(const OperatorExpr& a);
DenseOperator dense(const PauliString& p);

// Hermitian eigendecomposition, shared across propagator/trace calls.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};
Eigensystem eigensystem(const DenseOperator& h);  // rejects non-Hermitian input

// U(t) = V exp(-i Lambda t) V^dag.
DenseOperator propagator(const Eigensystem& es, double t);
DenseOperator propagator(const DenseOperator& h, double t);

// Evaluator for F(t) = Tr(U P_init U^dag P_final)/dim over many times from
// one eigendecomposition: F(t) = sum_ab exp(-i(l_a - l_b)t) G_ab with the
// pairwise weights G precomputed.
class DenseFidelity {
 public:
  DenseFidelity(const DenseOperator& h, const DenseOperator& p_init,
                const DenseOperator& p_final);
  double operator()(double t) const;

 private:
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd weights_;
};

// Polarization transport fidelity Tr(U Z_s U^dag Z_t)/2^n at one time.
double transport_fidelity(const SpinNetwork& net, HamiltonianKind kind, double t);

// Sampled curve with refined peak; one eigendecomposition for the whole grid.
FidelityTrace fidelity_trace(const SpinNetwork& net, HamiltonianKind kind,
                             double t_max, int samples);

// Transport between arbitrary non-identity basis strings:
// Tr(U P_init U^dag P_final)/2^n.  The imaginary part must vanish for
// Hermitian inputs and is checked (1e-10).
double general_fidelity(const SpinNetwork& net, HamiltonianKind kind, double t,
                        const PauliString& p_init, const PauliString& p_final);
double general_fidelity(const DenseOperator& u, const DenseOperator& p_init,
                        const DenseOperator& p_final);

}  // namespace spinet

#endif
