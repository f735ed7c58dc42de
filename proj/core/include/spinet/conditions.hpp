#ifndef SPINET_CONDITIONS_HPP
#define SPINET_CONDITIONS_HPP

#include <string>

#include "spinet/dense.hpp"
#include "spinet/pauli.hpp"

namespace spinet {

// All checks in this module view operators as vectors of a Hilbert-Schmidt
// space with inner product Tr(A^dag B)/2^n.  The transport pair defaults to
// (source, target) = (1, n); pass other ends explicitly.

// The rotation-reflection S: A -> Z_source * A * Z_target (the composition
// of left-multiplication by Z_s Z_t with conjugation by Z_t).
OperatorExpr apply_S(const OperatorExpr& a, int source, int target);
OperatorExpr apply_S(const OperatorExpr& a);  // ends (1, n)
DenseOperator apply_S(const DenseOperator& a, int source, int target);

// <U|S|U> = Tr(U^dag Z_s U Z_t)/2^n.  Coincides with the direct transport
// fidelity Tr(U Z_s U^dag Z_t)/2^n for propagators of real Hamiltonians.
double fidelity_hs(const OperatorExpr& u, int source, int target);
double fidelity_hs(const OperatorExpr& u);
double fidelity_hs(const DenseOperator& u, int source, int target);
double fidelity_hs(const DenseOperator& u);

// Perfect transport demands the propagator split evenly between the
// commuting/anticommuting subspaces at the target (both squared norms 1/2)
// and be a (+1, -1) eigenvector pair of left-multiplication by Z_s Z_t on
// the two halves.
struct ConditionReport {
  double norm_g = 0;           // ||U^G||^2, target letter I or Z
  double norm_gt = 0;          // ||U^G~||^2, target letter X or Y
  double eig_residual_g = 0;   // ||Z_s Z_t U^G - U^G||
  double eig_residual_gt = 0;  // ||Z_s Z_t U^G~ + U^G~||
  double fidelity = 0;
  bool verdict = false;
};

std::string render_report(const ConditionReport& r);

// Pre: ||U|| = 1 within 1e-8 (contract error otherwise).
ConditionReport check_perfect_transport(const OperatorExpr& u, int source, int target,
                                        double tol = 1e-8);
ConditionReport check_perfect_transport(const OperatorExpr& u, double tol = 1e-8);
ConditionReport check_perfect_transport(const DenseOperator& u, int source, int target,
                                        double tol = 1e-8);
ConditionReport check_perfect_transport(const DenseOperator& u, double tol = 1e-8);

// The eight perfect-transport propagator families: an end-pair pattern on
// (site 1, site N) filled with bulk operators W/2 and W'/2 (the equal-norm
// scaling that makes the assembled operator unitary).  W and W' act on the
// N-2 interior sites; pass 1x1 matrices for N = 2.  sign = +1 selects the
// transporting branch of each family (Z -> Z, fidelity +1); sign = -1 the
// mirrored branch, which swaps the end-word eigenvalue pattern and
// transports Z -> -Z (fidelity exactly -1).
DenseOperator appendix_unitary(int form, const DenseOperator& w, const DenseOperator& wp,
                               int sign);

// U(lambda) = l1 (Id + Z1 ZN)/sqrt(2) + l2 (X1 XN + Y1 YN)/sqrt(2)
//           + l3 (X1 YN - Y1 XN)/sqrt(2) on n sites.
DenseOperator lambda_unitary(complexd l1, complexd l2, complexd l3, int n_sites = 2);

// The three constraints making U(lambda) a perfect-transport unitary:
// sum |l|^2 = 1;  |l1|^2 = |l2|^2 + |l3|^2;  Im(conj(l2) l3) = 0.
struct LambdaReport {
  double norm_residual = 0;
  double balance_residual = 0;
  double phase_residual = 0;
  bool constraints_ok = false;
  double unitarity_residual = 0;
  double fidelity = 0;
  bool ok = false;  // constraints hold and F = 1
};

LambdaReport solve_lambda_combination(complexd l1, complexd l2, complexd l3,
                                      int n_sites = 2);

// Does left-multiplication by V commute with S?  Checked on a seeded random
// sample of basis strings; when it does, fidelity is preserved exactly:
// fidelity_hs(V U) = fidelity_hs(U).
struct InvarianceReport {
  double commutation_residual = 0;
  bool invariant = false;  // residual < 1e-10
  double fidelity_u = 0;
  double fidelity_vu = 0;
};

InvarianceReport check_invariance(const DenseOperator& v, const DenseOperator& u,
                                  int source, int target, int basis_samples = 64,
                                  unsigned seed = 20240817);
InvarianceReport check_invariance(const DenseOperator& v, const DenseOperator& u);

// Classification of a Hamiltonian as a transport driver.  anticommuting:
// every term carries X or Y at the target, so H can be an eigenvector of
// left-multiplication by Z_s Z_t and perfect transport at a definite time
// follows from H^2 = (Id - Z_s Z_t)/2 (then H^4 = H^2).  commuting: every
// term is diagonal (I or Z) at both ends, so the drive preserves the end
// polarizations.  mixed: anything else — some term acts on an end without
// the whole operator flipping the target.  first_transfer_time is the
// earliest dense-backend fidelity peak reaching 1 (0 when none found).
enum class SupportClass { anticommuting, commuting, mixed };

struct SupportReport {
  SupportClass support = SupportClass::mixed;
  bool eigenstate = false;
  double square_residual = 0;
  double fourth_residual = 0;
  bool conditions_hold = false;
  double first_transfer_time = 0;
};

std::string render_report(const SupportReport& r);

SupportReport hamiltonian_support_check(const OperatorExpr& h, int source, int target);

// SWAP between the end sites (identity on the rest): simultaneous perfect
// transport of Z, X and Y.
DenseOperator end_swap_unitary(int n_sites);
bool swap_transport_check(const DenseOperator& u, double tol = 1e-12);

}  // namespace spinet

#endif
