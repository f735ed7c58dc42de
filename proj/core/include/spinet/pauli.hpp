#ifndef SPINET_PAULI_HPP
#define SPINET_PAULI_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "spinet/errors.hpp"

namespace spinet {

using complexd = std::complex<double>;

// One letter per site.  The numeric values matter: the letter of a product
// is the XOR of the factors' letters.
enum class Letter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);

// A Pauli word on n sites, packed 2 bits per site (site 1 in the lowest
// bits).  Words are Hermitian and square to the identity; phases live in
// ScaledString / OperatorExpr, never here.
class PauliString {
 public:
  static constexpr int kMaxSites = 32;

  PauliString() = default;
  explicit PauliString(int n_sites);
  PauliString(int n_sites, std::uint64_t code);
  static PauliString single(int n_sites, int site, Letter l);

  int n_sites() const { return n_; }
  std::uint64_t code() const { return code_; }
  Letter letter(int site) const;
  PauliString with_letter(int site, Letter l) const;
  bool is_identity() const { return code_ == 0; }
  int weight() const;  // number of non-identity sites

  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  int n_ = 0;
  std::uint64_t code_ = 0;
};

// Phase times word.
struct ScaledString {
  complexd phase{1.0, 0.0};
  PauliString string;
};

// Word product: letters XOR sitewise, the phase is a power of i accumulated
// from the single-site multiplication table.
ScaledString mul(const PauliString& a, const PauliString& b);
ScaledString mul(const ScaledString& a, const ScaledString& b);

// Two words either commute or anticommute; true in the former case.
bool commutes(const PauliString& a, const PauliString& b);

// Sparse complex combination of Pauli words, the workhorse representation
// for Hamiltonians, walk operators and propagator symbols.  Terms are kept
// in packed-key order (site-1 letter varies fastest), and amplitudes with
// |a| below kZeroThreshold are dropped on every mutation, so equal
// operators compare equal term-by-term.
class OperatorExpr {
 public:
  using TermMap = std::map<std::uint64_t, complexd>;
  static constexpr double kZeroThreshold = 1e-14;

  OperatorExpr() = default;
  explicit OperatorExpr(int n_sites);

  static OperatorExpr identity(int n_sites);
  static OperatorExpr term(const PauliString& p, complexd amp = 1.0);
  static OperatorExpr term(const ScaledString& s);

  int n_sites() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  complexd amplitude(const PauliString& p) const;

  OperatorExpr& add_term(const PauliString& p, complexd amp);

  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  OperatorExpr& operator*=(complexd c);
  OperatorExpr adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  double norm() const;  // Hilbert-Schmidt, sqrt(Tr(A^dag A)/2^n)

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(OperatorExpr a, complexd c) { return a *= c; }
  friend OperatorExpr operator*(complexd c, OperatorExpr a) { return a *= c; }
  friend OperatorExpr operator-(OperatorExpr a) { return a *= -1.0; }

 private:
  int n_ = 0;
  TermMap terms_;
};

// Operator product and commutator [a, b] = ab - ba.
OperatorExpr mul(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

// Tr(A^dag B)/2^n.  Pauli words are orthonormal under this pairing, so the
// sum runs over the terms the operands share.
complexd hs_inner(const OperatorExpr& a, const OperatorExpr& b);

// --- elementary building blocks -------------------------------------------

// Single-letter word as an expression.
OperatorExpr pauli_term(int n_sites, int site, Letter l, complexd amp = 1.0);

// Ladder and level operators on one site: S± = (X ± iY)/2, E± = (Id ± Z)/2.
OperatorExpr ladder_plus(int n_sites, int site);
OperatorExpr ladder_minus(int n_sites, int site);
OperatorExpr level_plus(int n_sites, int site);
OperatorExpr level_minus(int n_sites, int site);

// Two-site couplings between sites i < j (sign = +1 or -1):
//   flip_flop      T±  = Si+ Sj- ± Si- Sj+   (XX+YY resp. YX-XY flavor)
//   double_quantum D±  = Si+ Sj+ ± Si- Sj-   (XX-YY resp. XY+YX flavor)
//   level_pair     L±  = Ei+ Ej- ± Ei- Ej+
//   flip_flop_mod  T~± = T± times the Z string on every site strictly
//                        between i and j (in index order)
OperatorExpr flip_flop(int n_sites, int i, int j, int sign);
OperatorExpr double_quantum(int n_sites, int i, int j, int sign);
OperatorExpr level_pair(int n_sites, int i, int j, int sign);
OperatorExpr flip_flop_mod(int n_sites, int i, int j, int sign);

enum class HamiltonianKind { XY, DQ, MXY };

HamiltonianKind parse_kind(const std::string& name);  // "xy" | "dq" | "mxy"
std::string kind_name(HamiltonianKind k);

// The coupling term one weighted edge contributes to a Hamiltonian of the
// given kind: T+, D+ or T~+ between i and j.
OperatorExpr build_coupling(HamiltonianKind kind, int n_sites, int i, int j);

// Split A by the letter carried at end_node: the first part collects terms
// with I or Z there (commuting with Z at that site), the second the X/Y
// remainder (anticommuting).  The split is orthogonal, so squared
// Hilbert-Schmidt norms add up.
std::pair<OperatorExpr, OperatorExpr> split_end_subspaces(const OperatorExpr& a,
                                                          int end_node);

// Canonical text form: one term per line in packed-key order,
// "(re,im) X1 Z2 Y4" with shortest round-trip amplitudes, "ID" for the
// identity word.  An empty expression renders as "0".
std::string render(const PauliString& p);
std::string render(const OperatorExpr& a);

}  // namespace spinet

#endif
