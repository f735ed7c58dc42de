#include "spinet/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "spinet/text.hpp"

namespace spinet {

namespace {

void check_sites(int n) {
  if (n < 1 || n > PauliString::kMaxSites)
    throw contract_error("site count must be in [1," +
                         std::to_string(PauliString::kMaxSites) + "], got " +
                         std::to_string(n));
}

void check_site(int n, int site) {
  if (site < 1 || site > n)
    throw contract_error("site index " + std::to_string(site) +
                         " out of range [1," + std::to_string(n) + "]");
}

void check_pair(int n, int i, int j) {
  check_site(n, i);
  check_site(n, j);
  if (i >= j)
    throw contract_error("coupling requires i < j, got i=" + std::to_string(i) +
                         " j=" + std::to_string(j));
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1)
    throw contract_error("sign must be +1 or -1, got " + std::to_string(sign));
}

void check_same_sites(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.n_sites() != b.n_sites())
    throw contract_error("operator site counts differ: " +
                         std::to_string(a.n_sites()) + " vs " +
                         std::to_string(b.n_sites()));
}

// Exponent of i picked up when multiplying single-site letters a*b.
constexpr std::uint8_t kPhaseExp[4][4] = {
    {0, 0, 0, 0},  // I*
    {0, 0, 1, 3},  // X*: XY=iZ, XZ=-iY
    {0, 3, 0, 1},  // Y*: YX=-iZ, YZ=iX
    {0, 1, 3, 0},  // Z*: ZX=iY, ZY=-iX
};

constexpr complexd kPowerOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n_sites) : n_(n_sites) { check_sites(n_); }

PauliString::PauliString(int n_sites, std::uint64_t code) : n_(n_sites), code_(code) {
  check_sites(n_);
  if (n_ < kMaxSites && (code >> (2 * n_)) != 0)
    throw contract_error("packed code has letters beyond site " + std::to_string(n_));
}

PauliString PauliString::single(int n_sites, int site, Letter l) {
  PauliString p(n_sites);
  check_site(n_sites, site);
  p.code_ = static_cast<std::uint64_t>(l) << (2 * (site - 1));
  return p;
}

Letter PauliString::letter(int site) const {
  check_site(n_, site);
  return static_cast<Letter>((code_ >> (2 * (site - 1))) & 3u);
}

PauliString PauliString::with_letter(int site, Letter l) const {
  check_site(n_, site);
  PauliString p = *this;
  int shift = 2 * (site - 1);
  p.code_ = (code_ & ~(3ull << shift)) | (static_cast<std::uint64_t>(l) << shift);
  return p;
}

int PauliString::weight() const {
  std::uint64_t m = code_;
  int w = 0;
  while (m) {
    w += (m & 3u) != 0;
    m >>= 2;
  }
  return w;
}

ScaledString mul(const PauliString& a, const PauliString& b) {
  if (a.n_sites() != b.n_sites())
    throw contract_error("word site counts differ: " + std::to_string(a.n_sites()) +
                         " vs " + std::to_string(b.n_sites()));
  std::uint64_t ac = a.code(), bc = b.code();
  int exp = 0;
  std::uint64_t m = ac | bc;
  while (m) {
    int bit = std::countr_zero(m) & ~1;
    exp += kPhaseExp[(ac >> bit) & 3u][(bc >> bit) & 3u];
    m &= ~(3ull << bit);
  }
  return {kPowerOfI[exp & 3], PauliString(a.n_sites(), ac ^ bc)};
}

ScaledString mul(const ScaledString& a, const ScaledString& b) {
  ScaledString r = mul(a.string, b.string);
  r.phase *= a.phase * b.phase;
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  // Count sites where both letters are non-identity and distinct; words
  // anticommute iff that count is odd.
  std::uint64_t ac = a.code(), bc = b.code();
  std::uint64_t m = ac | bc;
  int clashes = 0;
  while (m) {
    int bit = std::countr_zero(m) & ~1;
    std::uint64_t la = (ac >> bit) & 3u, lb = (bc >> bit) & 3u;
    clashes += (la != 0 && lb != 0 && la != lb);
    m &= ~(3ull << bit);
  }
  return (clashes & 1) == 0;
}

OperatorExpr::OperatorExpr(int n_sites) : n_(n_sites) { check_sites(n_); }

OperatorExpr OperatorExpr::identity(int n_sites) {
  OperatorExpr e(n_sites);
  e.terms_[0] = 1.0;
  return e;
}

OperatorExpr OperatorExpr::term(const PauliString& p, complexd amp) {
  OperatorExpr e(p.n_sites());
  e.add_term(p, amp);
  return e;
}

OperatorExpr OperatorExpr::term(const ScaledString& s) {
  return term(s.string, s.phase);
}

complexd OperatorExpr::amplitude(const PauliString& p) const {
  auto it = terms_.find(p.code());
  return it == terms_.end() ? complexd{} : it->second;
}

OperatorExpr& OperatorExpr::add_term(const PauliString& p, complexd amp) {
  if (p.n_sites() != n_)
    throw contract_error("term site count " + std::to_string(p.n_sites()) +
                         " differs from expression's " + std::to_string(n_));
  auto [it, inserted] = terms_.try_emplace(p.code(), amp);
  if (!inserted) it->second += amp;
  if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
  return *this;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
  check_same_sites(*this, o);
  for (const auto& [code, amp] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(code, amp);
    if (!inserted) it->second += amp;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
  }
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
  check_same_sites(*this, o);
  for (const auto& [code, amp] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(code, -amp);
    if (!inserted) it->second -= amp;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
  }
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(complexd c) {
  if (std::abs(c) < kZeroThreshold) {
    terms_.clear();
    return *this;
  }
  for (auto& [code, amp] : terms_) amp *= c;
  return *this;
}

OperatorExpr OperatorExpr::adjoint() const {
  OperatorExpr r(n_);
  for (const auto& [code, amp] : terms_) r.terms_[code] = std::conj(amp);
  return r;
}

bool OperatorExpr::is_hermitian(double tol) const {
  for (const auto& [code, amp] : terms_)
    if (std::abs(amp.imag()) > tol) return false;
  return true;
}

double OperatorExpr::norm() const {
  double s = 0;
  for (const auto& [code, amp] : terms_) s += std::norm(amp);
  return std::sqrt(s);
}

OperatorExpr mul(const OperatorExpr& a, const OperatorExpr& b) {
  check_same_sites(a, b);
  OperatorExpr r(a.n_sites());
  for (const auto& [ca, aa] : a.terms()) {
    PauliString pa(a.n_sites(), ca);
    for (const auto& [cb, ab] : b.terms()) {
      ScaledString s = mul(pa, PauliString(b.n_sites(), cb));
      r.add_term(s.string, aa * ab * s.phase);
    }
  }
  return r;
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
  check_same_sites(a, b);
  OperatorExpr r(a.n_sites());
  for (const auto& [ca, aa] : a.terms()) {
    PauliString pa(a.n_sites(), ca);
    for (const auto& [cb, ab] : b.terms()) {
      PauliString pb(b.n_sites(), cb);
      // Commuting words contribute nothing; anticommuting ones twice ab.
      if (commutes(pa, pb)) continue;
      ScaledString s = mul(pa, pb);
      r.add_term(s.string, 2.0 * aa * ab * s.phase);
    }
  }
  return r;
}

complexd hs_inner(const OperatorExpr& a, const OperatorExpr& b) {
  check_same_sites(a, b);
  complexd s{};
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  for (const auto& [code, amp] : small.terms()) {
    auto it = large.terms().find(code);
    if (it == large.terms().end()) continue;
    s += (&small == &a) ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return s;
}

OperatorExpr pauli_term(int n_sites, int site, Letter l, complexd amp) {
  return OperatorExpr::term(PauliString::single(n_sites, site, l), amp);
}

OperatorExpr ladder_plus(int n_sites, int site) {
  OperatorExpr e = pauli_term(n_sites, site, Letter::X, 0.5);
  e.add_term(PauliString::single(n_sites, site, Letter::Y), complexd(0, 0.5));
  return e;
}

OperatorExpr ladder_minus(int n_sites, int site) {
  OperatorExpr e = pauli_term(n_sites, site, Letter::X, 0.5);
  e.add_term(PauliString::single(n_sites, site, Letter::Y), complexd(0, -0.5));
  return e;
}

OperatorExpr level_plus(int n_sites, int site) {
  OperatorExpr e = OperatorExpr::identity(n_sites);
  e *= 0.5;
  e.add_term(PauliString::single(n_sites, site, Letter::Z), 0.5);
  return e;
}

OperatorExpr level_minus(int n_sites, int site) {
  OperatorExpr e = OperatorExpr::identity(n_sites);
  e *= 0.5;
  e.add_term(PauliString::single(n_sites, site, Letter::Z), -0.5);
  return e;
}

namespace {

PauliString two_site(int n, int i, int j, Letter li, Letter lj) {
  return PauliString(n).with_letter(i, li).with_letter(j, lj);
}

}  // namespace

OperatorExpr flip_flop(int n_sites, int i, int j, int sign) {
  check_pair(n_sites, i, j);
  check_sign(sign);
  OperatorExpr e(n_sites);
  if (sign > 0) {
    // Si+Sj- + Si-Sj+ = (XiXj + YiYj)/2
    e.add_term(two_site(n_sites, i, j, Letter::X, Letter::X), 0.5);
    e.add_term(two_site(n_sites, i, j, Letter::Y, Letter::Y), 0.5);
  } else {
    // Si+Sj- - Si-Sj+ = i(YiXj - XiYj)/2, anti-Hermitian
    e.add_term(two_site(n_sites, i, j, Letter::Y, Letter::X), complexd(0, 0.5));
    e.add_term(two_site(n_sites, i, j, Letter::X, Letter::Y), complexd(0, -0.5));
  }
  return e;
}

OperatorExpr double_quantum(int n_sites, int i, int j, int sign) {
  check_pair(n_sites, i, j);
  check_sign(sign);
  OperatorExpr e(n_sites);
  if (sign > 0) {
    // Si+Sj+ + Si-Sj- = (XiXj - YiYj)/2
    e.add_term(two_site(n_sites, i, j, Letter::X, Letter::X), 0.5);
    e.add_term(two_site(n_sites, i, j, Letter::Y, Letter::Y), -0.5);
  } else {
    // Si+Sj+ - Si-Sj- = i(XiYj + YiXj)/2
    e.add_term(two_site(n_sites, i, j, Letter::X, Letter::Y), complexd(0, 0.5));
    e.add_term(two_site(n_sites, i, j, Letter::Y, Letter::X), complexd(0, 0.5));
  }
  return e;
}

OperatorExpr level_pair(int n_sites, int i, int j, int sign) {
  check_pair(n_sites, i, j);
  check_sign(sign);
  OperatorExpr e(n_sites);
  if (sign > 0) {
    // Ei+Ej- + Ei-Ej+ = (Id - ZiZj)/2
    e.add_term(PauliString(n_sites), 0.5);
    e.add_term(two_site(n_sites, i, j, Letter::Z, Letter::Z), -0.5);
  } else {
    // Ei+Ej- - Ei-Ej+ = (Zi - Zj)/2
    e.add_term(PauliString::single(n_sites, i, Letter::Z), 0.5);
    e.add_term(PauliString::single(n_sites, j, Letter::Z), -0.5);
  }
  return e;
}

OperatorExpr flip_flop_mod(int n_sites, int i, int j, int sign) {
  OperatorExpr t = flip_flop(n_sites, i, j, sign);
  // Dress with the Z string over the sites strictly between i and j.  Z on
  // those sites commutes with both end letters, so no phase appears.
  PauliString zs(n_sites);
  for (int u = i + 1; u < j; ++u) zs = zs.with_letter(u, Letter::Z);
  if (zs.is_identity()) return t;
  OperatorExpr r(n_sites);
  for (const auto& [code, amp] : t.terms()) {
    ScaledString s = mul(PauliString(n_sites, code), zs);
    r.add_term(s.string, amp * s.phase);
  }
  return r;
}

HamiltonianKind parse_kind(const std::string& name) {
  if (name == "xy") return HamiltonianKind::XY;
  if (name == "dq") return HamiltonianKind::DQ;
  if (name == "mxy") return HamiltonianKind::MXY;
  throw contract_error("unknown Hamiltonian kind '" + name + "' (want xy|dq|mxy)");
}

std::string kind_name(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::XY: return "xy";
    case HamiltonianKind::DQ: return "dq";
    case HamiltonianKind::MXY: return "mxy";
  }
  return "?";
}

OperatorExpr build_coupling(HamiltonianKind kind, int n_sites, int i, int j) {
  switch (kind) {
    case HamiltonianKind::XY: return flip_flop(n_sites, i, j, +1);
    case HamiltonianKind::DQ: return double_quantum(n_sites, i, j, +1);
    case HamiltonianKind::MXY: return flip_flop_mod(n_sites, i, j, +1);
  }
  throw contract_error("bad Hamiltonian kind");
}

std::pair<OperatorExpr, OperatorExpr> split_end_subspaces(const OperatorExpr& a,
                                                          int end_node) {
  check_site(a.n_sites(), end_node);
  OperatorExpr g(a.n_sites()), gt(a.n_sites());
  for (const auto& [code, amp] : a.terms()) {
    PauliString p(a.n_sites(), code);
    Letter l = p.letter(end_node);
    if (l == Letter::I || l == Letter::Z)
      g.add_term(p, amp);
    else
      gt.add_term(p, amp);
  }
  return {std::move(g), std::move(gt)};
}

std::string render(const PauliString& p) {
  if (p.is_identity()) return "ID";
  std::string s;
  for (int site = 1; site <= p.n_sites(); ++site) {
    Letter l = p.letter(site);
    if (l == Letter::I) continue;
    if (!s.empty()) s += ' ';
    s += letter_char(l);
    s += std::to_string(site);
  }
  return s;
}

std::string render(const OperatorExpr& a) {
  if (a.empty()) return "0";
  std::string out;
  for (const auto& [code, amp] : a.terms()) {
    if (!out.empty()) out += '\n';
    out += format_amplitude(amp);
    out += ' ';
    out += render(PauliString(a.n_sites(), code));
  }
  return out;
}

}  // namespace spinet
