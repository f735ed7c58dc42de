#include "spinet/conditions.hpp"

#include <cmath>
#include <random>

#include "spinet/errors.hpp"
#include "spinet/text.hpp"
#include "spinet/trace.hpp"

namespace spinet {

namespace {

PauliString end_word(int n, int source, int target) {
  return PauliString(n).with_letter(source, Letter::Z).with_letter(target, Letter::Z);
}

void check_ends(int n, int source, int target) {
  if (source < 1 || source > n || target < 1 || target > n || source == target)
    throw contract_error("transport ends (" + std::to_string(source) + "," +
                         std::to_string(target) + ") invalid for " + std::to_string(n) +
                         " sites");
}

// Left-multiplication by a fixed word, term by term.
OperatorExpr left_mul(const PauliString& w, const OperatorExpr& a) {
  OperatorExpr r(a.n_sites());
  for (const auto& [code, amp] : a.terms()) {
    ScaledString s = mul(w, PauliString(a.n_sites(), code));
    r.add_term(s.string, amp * s.phase);
  }
  return r;
}

OperatorExpr right_mul(const OperatorExpr& a, const PauliString& w) {
  OperatorExpr r(a.n_sites());
  for (const auto& [code, amp] : a.terms()) {
    ScaledString s = mul(PauliString(a.n_sites(), code), w);
    r.add_term(s.string, amp * s.phase);
  }
  return r;
}

int sites_of(const DenseOperator& u) {
  auto dim = static_cast<std::uint64_t>(u.rows());
  if (u.rows() != u.cols() || u.rows() < 2 || (dim & (dim - 1)) != 0)
    throw contract_error("operator dimension is not a power of two");
  int n = 0;
  while ((1ull << n) < dim) ++n;
  return n;
}

double hs_norm(const DenseOperator& m) {
  return m.norm() / std::sqrt(static_cast<double>(m.rows()));
}

void check_unitary(const DenseOperator& u, const char* what) {
  double dev = (u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols()))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > 1e-10)
    throw contract_error(std::string(what) + " is not unitary (residual " +
                         format_double(dev) + ")");
}

}  // namespace

OperatorExpr apply_S(const OperatorExpr& a, int source, int target) {
  check_ends(a.n_sites(), source, target);
  PauliString zs = PauliString::single(a.n_sites(), source, Letter::Z);
  PauliString zt = PauliString::single(a.n_sites(), target, Letter::Z);
  return right_mul(left_mul(zs, a), zt);
}

OperatorExpr apply_S(const OperatorExpr& a) { return apply_S(a, 1, a.n_sites()); }

DenseOperator apply_S(const DenseOperator& a, int source, int target) {
  int n = sites_of(a);
  check_ends(n, source, target);
  DenseOperator zs = dense(PauliString::single(n, source, Letter::Z));
  DenseOperator zt = dense(PauliString::single(n, target, Letter::Z));
  return zs * a * zt;
}

double fidelity_hs(const OperatorExpr& u, int source, int target) {
  return hs_inner(u, apply_S(u, source, target)).real();
}

double fidelity_hs(const OperatorExpr& u) { return fidelity_hs(u, 1, u.n_sites()); }

double fidelity_hs(const DenseOperator& u, int source, int target) {
  int n = sites_of(u);
  check_ends(n, source, target);
  DenseOperator zs = dense(PauliString::single(n, source, Letter::Z));
  DenseOperator zt = dense(PauliString::single(n, target, Letter::Z));
  std::complex<double> tr =
      (u.adjoint() * zs * u * zt).trace() / static_cast<double>(u.rows());
  return tr.real();
}

double fidelity_hs(const DenseOperator& u) { return fidelity_hs(u, 1, sites_of(u)); }

std::string render_report(const ConditionReport& r) {
  std::string out;
  out += "norm_G " + format_double(r.norm_g) + "\n";
  out += "norm_Gt " + format_double(r.norm_gt) + "\n";
  out += "eig_residual_G " + format_double(r.eig_residual_g) + "\n";
  out += "eig_residual_Gt " + format_double(r.eig_residual_gt) + "\n";
  out += "fidelity " + format_double(r.fidelity) + "\n";
  out += std::string("verdict ") + (r.verdict ? "true" : "false") + "\n";
  return out;
}

ConditionReport check_perfect_transport(const OperatorExpr& u, int source, int target,
                                        double tol) {
  check_ends(u.n_sites(), source, target);
  double norm = u.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw contract_error("propagator is not normalized: ||U|| = " + format_double(norm));

  auto [g, gt] = split_end_subspaces(u, target);
  PauliString w = end_word(u.n_sites(), source, target);

  ConditionReport r;
  r.norm_g = hs_inner(g, g).real();
  r.norm_gt = hs_inner(gt, gt).real();
  r.eig_residual_g = (left_mul(w, g) - g).norm();
  r.eig_residual_gt = (left_mul(w, gt) + gt).norm();
  r.fidelity = fidelity_hs(u, source, target);
  r.verdict = std::abs(r.norm_g - 0.5) <= tol && std::abs(r.norm_gt - 0.5) <= tol &&
              r.eig_residual_g <= tol && r.eig_residual_gt <= tol;
  return r;
}

ConditionReport check_perfect_transport(const OperatorExpr& u, double tol) {
  return check_perfect_transport(u, 1, u.n_sites(), tol);
}

ConditionReport check_perfect_transport(const DenseOperator& u, int source, int target,
                                        double tol) {
  int n = sites_of(u);
  check_ends(n, source, target);
  double norm = hs_norm(u);
  if (std::abs(norm - 1.0) > 1e-8)
    throw contract_error("propagator is not normalized: ||U|| = " + format_double(norm));

  DenseOperator zt = dense(PauliString::single(n, target, Letter::Z));
  DenseOperator g = 0.5 * (u + zt * u * zt);   // target letter I or Z
  DenseOperator gt = 0.5 * (u - zt * u * zt);  // target letter X or Y
  DenseOperator w = dense(end_word(n, source, target));

  ConditionReport r;
  r.norm_g = hs_norm(g);
  r.norm_g *= r.norm_g;
  r.norm_gt = hs_norm(gt);
  r.norm_gt *= r.norm_gt;
  r.eig_residual_g = hs_norm(w * g - g);
  r.eig_residual_gt = hs_norm(w * gt + gt);
  r.fidelity = fidelity_hs(u, source, target);
  r.verdict = std::abs(r.norm_g - 0.5) <= tol && std::abs(r.norm_gt - 0.5) <= tol &&
              r.eig_residual_g <= tol && r.eig_residual_gt <= tol;
  return r;
}

ConditionReport check_perfect_transport(const DenseOperator& u, double tol) {
  return check_perfect_transport(u, 1, sites_of(u), tol);
}

DenseOperator appendix_unitary(int form, const DenseOperator& w, const DenseOperator& wp,
                               int sign) {
  if (form < 1 || form > 8)
    throw contract_error("form must be 1..8, got " + std::to_string(form));
  if (sign != 1 && sign != -1) throw contract_error("sign must be +1 or -1");
  if (w.rows() != w.cols() || wp.rows() != wp.cols() || w.rows() != wp.rows())
    throw contract_error("bulk operators must be square and equally sized");
  auto db = static_cast<std::uint64_t>(w.rows());
  if (db == 0 || (db & (db - 1)) != 0)
    throw contract_error("bulk dimension must be a power of two");
  check_unitary(w, "bulk operator W");
  check_unitary(wp, "bulk operator W'");

  // End-pair patterns on a 2-site system (site 1 = source end, site 2 =
  // target end).  Each form pairs one pattern filled with W/2 and one with
  // W'/2.  sign = +1 always selects the transporting branch (Z -> Z); in
  // the last two families that branch pairs Y1 - iX1Z2 with X2 - iZ1Y2
  // (resp. Y2 + iZ1X2), so their internal sign is flipped.
  const double s = form >= 7 ? -sign : sign;
  const complexd si{0.0, s};
  auto word = [](Letter a, Letter b) {
    return PauliString(2).with_letter(1, a).with_letter(2, b);
  };
  OperatorExpr pat1(2), pat2(2);
  switch (form) {
    case 1:
    case 2:
      pat1.add_term(PauliString(2), 1.0);
      pat1.add_term(word(Letter::Z, Letter::Z), s);
      break;
    case 3:
    case 4:
      pat1.add_term(word(Letter::Z, Letter::I), 1.0);
      pat1.add_term(word(Letter::I, Letter::Z), s);
      break;
    case 5:
    case 6:
      pat1.add_term(word(Letter::X, Letter::I), 1.0);
      pat1.add_term(word(Letter::Y, Letter::Z), si);
      break;
    case 7:
    case 8:
      pat1.add_term(word(Letter::Y, Letter::I), 1.0);
      pat1.add_term(word(Letter::X, Letter::Z), si);
      break;
  }
  switch (form) {
    case 1:
    case 3:
      pat2.add_term(word(Letter::X, Letter::X), 1.0);
      pat2.add_term(word(Letter::Y, Letter::Y), s);
      break;
    case 2:
    case 4:
      pat2.add_term(word(Letter::X, Letter::Y), 1.0);
      pat2.add_term(word(Letter::Y, Letter::X), -s);
      break;
    case 5:
      pat2.add_term(word(Letter::I, Letter::X), 1.0);
      pat2.add_term(word(Letter::Z, Letter::Y), -si);
      break;
    case 6:
      pat2.add_term(word(Letter::I, Letter::Y), 1.0);
      pat2.add_term(word(Letter::Z, Letter::X), si);
      break;
    case 7:
      pat2.add_term(word(Letter::I, Letter::X), 1.0);
      pat2.add_term(word(Letter::Z, Letter::Y), si);
      break;
    case 8:
      pat2.add_term(word(Letter::I, Letter::Y), 1.0);
      pat2.add_term(word(Letter::Z, Letter::X), -si);
      break;
  }

  DenseOperator p1 = dense(pat1);
  DenseOperator p2 = dense(pat2);
  const auto dim = static_cast<Eigen::Index>(4 * db);
  DenseOperator u = DenseOperator::Zero(dim, dim);
  auto at = [&](int b1, std::uint64_t bulk, int bn) {
    return static_cast<Eigen::Index>(b1 + 2 * bulk + 2 * db * bn);
  };
  for (int er = 0; er < 4; ++er)
    for (int ec = 0; ec < 4; ++ec) {
      complexd c1 = p1(er, ec), c2 = p2(er, ec);
      if (c1 == complexd{} && c2 == complexd{}) continue;
      for (std::uint64_t br = 0; br < db; ++br)
        for (std::uint64_t bc = 0; bc < db; ++bc) {
          complexd v = 0.5 * (c1 * w(br, bc) + c2 * wp(br, bc));
          if (v != complexd{})
            u(at(er & 1, br, er >> 1), at(ec & 1, bc, ec >> 1)) += v;
        }
    }

  double dev =
      (u.adjoint() * u - DenseOperator::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > 1e-10)
    throw check_error("assembled propagator failed the unitarity check (residual " +
                      format_double(dev) + ")");
  return u;
}

DenseOperator lambda_unitary(complexd l1, complexd l2, complexd l3, int n_sites) {
  if (n_sites < 2) throw contract_error("lambda propagator needs at least 2 sites");
  int n = n_sites;
  const double r = 1.0 / std::sqrt(2.0);
  auto word = [&](Letter a, Letter b) {
    return PauliString(n).with_letter(1, a).with_letter(n, b);
  };
  OperatorExpr u(n);
  u.add_term(PauliString(n), l1 * r);
  u.add_term(word(Letter::Z, Letter::Z), l1 * r);
  u.add_term(word(Letter::X, Letter::X), l2 * r);
  u.add_term(word(Letter::Y, Letter::Y), l2 * r);
  u.add_term(word(Letter::X, Letter::Y), l3 * r);
  u.add_term(word(Letter::Y, Letter::X), -l3 * r);
  return dense(u);
}

LambdaReport solve_lambda_combination(complexd l1, complexd l2, complexd l3,
                                      int n_sites) {
  LambdaReport rep;
  double n1 = std::norm(l1), n2 = std::norm(l2), n3 = std::norm(l3);
  rep.norm_residual = std::abs(n1 + n2 + n3 - 1.0);
  rep.balance_residual = std::abs(n1 - n2 - n3);
  rep.phase_residual = std::abs((std::conj(l2) * l3).imag());
  rep.constraints_ok = rep.norm_residual < 1e-12 && rep.balance_residual < 1e-12 &&
                       rep.phase_residual < 1e-12;
  DenseOperator u = lambda_unitary(l1, l2, l3, n_sites);
  rep.unitarity_residual =
      (u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  rep.fidelity = fidelity_hs(u);
  rep.ok = rep.constraints_ok && std::abs(rep.fidelity - 1.0) < 1e-9;
  return rep;
}

InvarianceReport check_invariance(const DenseOperator& v, const DenseOperator& u,
                                  int source, int target, int basis_samples,
                                  unsigned seed) {
  int n = sites_of(v);
  check_ends(n, source, target);
  if (u.rows() != v.rows()) throw contract_error("V and U dimensions disagree");
  check_unitary(v, "V");

  DenseOperator zs = dense(PauliString::single(n, source, Letter::Z));
  DenseOperator zt = dense(PauliString::single(n, target, Letter::Z));

  // [V^, S^] applied to random basis words B: V Zs B Zt - Zs V B Zt.
  std::mt19937_64 rng(seed);
  std::uint64_t mask = n < 32 ? (1ull << (2 * n)) - 1 : ~0ull;
  InvarianceReport rep;
  for (int k = 0; k < basis_samples; ++k) {
    DenseOperator b = dense(PauliString(n, rng() & mask));
    double res = hs_norm(v * (zs * b * zt) - zs * (v * b) * zt);
    rep.commutation_residual = std::max(rep.commutation_residual, res);
  }
  rep.invariant = rep.commutation_residual < 1e-10;
  rep.fidelity_u = fidelity_hs(u, source, target);
  rep.fidelity_vu = fidelity_hs(DenseOperator(v * u), source, target);
  return rep;
}

InvarianceReport check_invariance(const DenseOperator& v, const DenseOperator& u) {
  return check_invariance(v, u, 1, sites_of(v));
}

std::string render_report(const SupportReport& r) {
  std::string out;
  out += "support ";
  switch (r.support) {
    case SupportClass::anticommuting: out += "anticommuting"; break;
    case SupportClass::commuting: out += "commuting"; break;
    case SupportClass::mixed: out += "mixed"; break;
  }
  out += "\n";
  out += std::string("eigenstate ") + (r.eigenstate ? "true" : "false") + "\n";
  out += "square_residual " + format_double(r.square_residual) + "\n";
  out += "fourth_residual " + format_double(r.fourth_residual) + "\n";
  out += "conditions ";
  out += r.support == SupportClass::anticommuting ? (r.conditions_hold ? "hold" : "fail")
                                                  : "not_applicable";
  out += "\n";
  out += "first_transfer_time " + format_double(r.first_transfer_time) + "\n";
  return out;
}

SupportReport hamiltonian_support_check(const OperatorExpr& h, int source, int target) {
  check_ends(h.n_sites(), source, target);
  if (!h.is_hermitian())
    throw contract_error("support check expects a Hermitian operator");

  SupportReport rep;
  auto [g, gt] = split_end_subspaces(h, target);
  if (!h.empty() && g.empty()) {
    rep.support = SupportClass::anticommuting;
    PauliString w = end_word(h.n_sites(), source, target);
    rep.eigenstate = (left_mul(w, h) + h).norm() < 1e-12;

    OperatorExpr h2 = mul(h, h);
    OperatorExpr expected = OperatorExpr::identity(h.n_sites());
    expected *= 0.5;
    expected.add_term(w, -0.5);
    rep.square_residual = (h2 - expected).norm();
    rep.fourth_residual = (mul(h2, h2) - h2).norm();
    rep.conditions_hold =
        rep.eigenstate && rep.square_residual < 1e-10 && rep.fourth_residual < 1e-10;
  } else {
    // No term raises or lowers the target. If the end sites are untouched
    // (every term diagonal at both source and target) the drive commutes with
    // the end polarizations; any leftover source activity makes it mixed.
    bool ends_quiet = !h.empty();
    for (const auto& [code, amp] : h.terms()) {
      PauliString p(h.n_sites(), code);
      Letter ls = p.letter(source);
      Letter lt = p.letter(target);
      if (ls == Letter::X || ls == Letter::Y || lt == Letter::X || lt == Letter::Y) {
        ends_quiet = false;
        break;
      }
    }
    rep.support = ends_quiet ? SupportClass::commuting : SupportClass::mixed;
  }

  // Earliest unit-fidelity peak under dense evolution, when N fits.
  if (h.n_sites() <= dense_cap()) {
    DenseOperator hm = dense(h);
    DenseOperator zs = dense(PauliString::single(h.n_sites(), source, Letter::Z));
    DenseOperator zt = dense(PauliString::single(h.n_sites(), target, Letter::Z));
    DenseFidelity f(hm, zs, zt);
    const int samples = 4001;
    const double t_max = 4.0 * M_PI;
    double prev = f(0.0), cur = f(t_max / (samples - 1));
    for (int k = 1; k + 1 < samples; ++k) {
      double next = f(t_max * (k + 1) / (samples - 1));
      if (cur >= prev && cur >= next && cur > 1.0 - 1e-3) {
        double value = 0;
        double t_star = refine_peak([&f](double t) { return f(t); },
                                    t_max * (k - 1) / (samples - 1),
                                    t_max * (k + 1) / (samples - 1), 1e-10, &value);
        if (std::abs(value - 1.0) < 1e-6) {
          rep.first_transfer_time = t_star;
          break;
        }
      }
      prev = cur;
      cur = next;
    }
  }
  return rep;
}

DenseOperator end_swap_unitary(int n_sites) {
  if (n_sites < 2) throw contract_error("end swap needs at least 2 sites");
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  DenseOperator u = DenseOperator::Zero(dim, dim);
  const std::uint64_t lo = 1, hi = 1ull << (n_sites - 1);
  for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
    std::uint64_t r = c & ~(lo | hi);
    if (c & lo) r |= hi;
    if (c & hi) r |= lo;
    u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
  }
  return u;
}

bool swap_transport_check(const DenseOperator& u, double tol) {
  int n = sites_of(u);
  for (Letter l : {Letter::Z, Letter::X, Letter::Y}) {
    DenseOperator pi = dense(PauliString::single(n, 1, l));
    DenseOperator pf = dense(PauliString::single(n, n, l));
    if (general_fidelity(u, pi, pf) < 1.0 - tol) return false;
  }
  return true;
}

}  // namespace spinet
