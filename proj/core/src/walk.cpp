#include "spinet/walk.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "spinet/errors.hpp"
#include "spinet/network.hpp"
#include "spinet/text.hpp"

namespace spinet {

namespace {

void check_source(int n, int source) {
  if (source < 1 || source > n)
    throw contract_error("source " + std::to_string(source) + " out of range for " +
                         std::to_string(n) + " sites");
}

// Conjugation by the Z word at one site: terms with X/Y there flip sign.
OperatorExpr z_conjugate(const OperatorExpr& a, int site) {
  OperatorExpr r(a.n_sites());
  for (const auto& [code, amp] : a.terms()) {
    PauliString p(a.n_sites(), code);
    Letter l = p.letter(site);
    bool flips = l == Letter::X || l == Letter::Y;
    r.add_term(p, flips ? -amp : amp);
  }
  return r;
}

void check_budget(const OperatorExpr& a, int order, std::size_t term_bound) {
  if (a.size() > term_bound)
    throw capacity_error("walk order " + std::to_string(order) + " has " +
                         std::to_string(a.size()) + " terms (budget " +
                         std::to_string(term_bound) + ")");
}

complexd zz_amplitude(const OperatorExpr& a, int source, int target) {
  PauliString w = PauliString(a.n_sites())
                      .with_letter(source, Letter::Z)
                      .with_letter(target, Letter::Z);
  return a.amplitude(w);
}

int resolve_target(const OperatorExpr& h, int source, int target) {
  if (target == 0) target = h.n_sites();
  if (target < 1 || target > h.n_sites() || target == source)
    throw contract_error("target " + std::to_string(target) + " invalid for " +
                         std::to_string(h.n_sites()) + " sites");
  return target;
}

}  // namespace

OperatorExpr extract_A(const OperatorExpr& h, int source) {
  check_source(h.n_sites(), source);
  OperatorExpr a(h.n_sites());
  for (const auto& [code, amp] : h.terms()) {
    PauliString p(h.n_sites(), code);
    Letter l = p.letter(source);
    if (l == Letter::X || l == Letter::Y) a.add_term(p, 2.0 * amp);
  }
  return a;
}

std::vector<OperatorExpr> walk_operators(const OperatorExpr& h, int n_max, int source,
                                         std::size_t term_bound) {
  if (n_max < 0) throw contract_error("walk order must be non-negative");
  std::vector<OperatorExpr> ops;
  ops.reserve(static_cast<std::size_t>(n_max) + 1);
  ops.push_back(extract_A(h, source));
  check_budget(ops.back(), 0, term_bound);
  for (int n = 1; n <= n_max; ++n) {
    ops.push_back(commutator(h, ops.back()));
    check_budget(ops.back(), n, term_bound);
  }
  return ops;
}

std::vector<SkeletonEdge> skeleton(const OperatorExpr& a) {
  std::set<std::tuple<int, int, int>> seen;  // (i, j, 0 for '+', 1 for '-')
  for (const auto& [code, amp] : a.terms()) {
    PauliString p(a.n_sites(), code);
    int i = 0, j = 0, count = 0;
    for (int s = 1; s <= a.n_sites(); ++s) {
      Letter l = p.letter(s);
      if (l == Letter::X || l == Letter::Y) {
        ++count;
        if (count == 1) i = s;
        else j = s;
      }
    }
    if (count != 2)
      throw check_error("walk term is not a two-site coupling: " + render(p));
    double re = std::abs(amp.real()), im = std::abs(amp.imag());
    if (re > 1e-9 * (re + im) && im > 1e-9 * (re + im))
      throw check_error("walk term has mixed real/imaginary amplitude: " + render(p));
    seen.insert({i, j, re >= im ? 0 : 1});
  }
  std::vector<SkeletonEdge> edges;
  edges.reserve(seen.size());
  for (const auto& [i, j, f] : seen)
    edges.push_back({i, j, f == 0 ? '+' : '-'});
  return edges;
}

std::string render_skeleton(const std::vector<SkeletonEdge>& edges) {
  std::string out = "skeleton";
  if (edges.empty()) return out + " none";
  for (const auto& e : edges) {
    out += ' ';
    out += std::to_string(e.i) + "-" + std::to_string(e.j) + ":" + e.flavor;
  }
  return out;
}

double MomentSeries::eval(double t) const {
  complexd sum = 0.0, pow = 1.0;
  const complexd it{0.0, t};
  for (std::size_t n = 0; n < moments.size(); ++n) {
    if (n > 0) pow *= it / static_cast<double>(n);
    sum += pow * moments[n];
  }
  return sum.real();
}

MomentSeries transfer_moments(const OperatorExpr& h, int n_max, int source, int target,
                              std::size_t term_bound) {
  check_source(h.n_sites(), source);
  target = resolve_target(h, source, target);
  if (n_max < 0) throw contract_error("moment order must be non-negative");

  OperatorExpr hs = z_conjugate(h, source);
  OperatorExpr m = OperatorExpr::identity(h.n_sites());
  MomentSeries series;
  series.moments.push_back(zz_amplitude(m, source, target));
  for (int n = 1; n <= n_max; ++n) {
    m = mul(h, m) - mul(m, hs);
    check_budget(m, n, term_bound);
    series.moments.push_back(zz_amplitude(m, source, target));
  }
  return series;
}

MomentSeries transfer_moments_binomial(const OperatorExpr& h, int n_max, int source,
                                       int target, std::size_t term_bound) {
  check_source(h.n_sites(), source);
  target = resolve_target(h, source, target);
  if (n_max < 0) throw contract_error("moment order must be non-negative");

  std::vector<OperatorExpr> walk =
      n_max > 0 ? walk_operators(h, n_max - 1, source, term_bound)
                : std::vector<OperatorExpr>{};
  std::vector<OperatorExpr> m;
  m.push_back(OperatorExpr::identity(h.n_sites()));
  MomentSeries series;
  series.moments.push_back(zz_amplitude(m.back(), source, target));
  for (int n = 1; n <= n_max; ++n) {
    OperatorExpr next(h.n_sites());
    double binom = 1.0;  // binom(n-1, k), updated in k
    for (int k = 0; k <= n - 1; ++k) {
      if (k > 0) binom = binom * (n - k) / k;
      OperatorExpr part = mul(walk[static_cast<std::size_t>(n - 1 - k)],
                              m[static_cast<std::size_t>(k)]);
      part *= binom;
      next += part;
    }
    check_budget(next, n, term_bound);
    m.push_back(std::move(next));
    series.moments.push_back(zz_amplitude(m.back(), source, target));
  }
  return series;
}

namespace {

// Builders for the tabulated rows: Z-dressings times two-site couplings on
// the 6-node reference network.
OperatorExpr zw(std::initializer_list<int> sites) {
  PauliString p(6);
  for (int s : sites) p = p.with_letter(s, Letter::Z);
  return OperatorExpr::term(p);
}

OperatorExpr dress(std::initializer_list<int> sites, const OperatorExpr& c) {
  return mul(zw(sites), c);
}

struct RowSet {
  std::vector<OperatorExpr> rows;
};

RowSet expected_rows(HamiltonianKind kind) {
  const bool mod = kind == HamiltonianKind::MXY;
  auto tp = [&](int i, int j) {
    return mod ? flip_flop_mod(6, i, j, +1) : flip_flop(6, i, j, +1);
  };
  auto tm = [&](int i, int j) {
    return mod ? flip_flop_mod(6, i, j, -1) : flip_flop(6, i, j, -1);
  };

  RowSet set;
  if (!mod) {
    set.rows.push_back(tp(1, 2) + tp(1, 4));
    set.rows.push_back(dress({2}, tm(1, 3)) + dress({4}, tm(1, 5)));
    set.rows.push_back(tp(1, 2) - tp(2, 3) - dress({1, 2}, tp(3, 4)) +
                       dress({2, 3}, tp(1, 6)) + tp(1, 4) - tp(4, 5) -
                       dress({1, 4}, tp(2, 5)) + dress({4, 5}, tp(1, 6)));
    set.rows.push_back(dress({4, 5, 6}, tm(1, 3)) + 4.0 * dress({2}, tm(1, 3)) +
                       dress({2, 3, 6}, tm(1, 5)) + 4.0 * dress({4}, tm(1, 5)) -
                       2.0 * (dress({1, 4, 5}, tm(2, 6)) + dress({3}, tm(2, 6))) -
                       2.0 * (dress({1, 2, 3}, tm(4, 6)) + dress({5}, tm(4, 6))));
    set.rows.push_back(4.0 * tp(1, 2) + dress({3, 4, 5, 6}, tp(1, 2)) +
                       4.0 * tp(1, 4) + dress({2, 3, 5, 6}, tp(1, 4)) +
                       9.0 * (dress({2, 3}, tp(1, 6)) + dress({4, 5}, tp(1, 6))) -
                       6.0 * tp(2, 3) - 3.0 * dress({1, 4, 5, 6}, tp(2, 3)) -
                       6.0 * dress({1, 4}, tp(2, 5)) - 3.0 * dress({3, 6}, tp(2, 5)) -
                       6.0 * dress({1, 2}, tp(3, 4)) - 3.0 * dress({5, 6}, tp(3, 4)) +
                       2.0 * (tp(3, 6) + dress({1, 2, 4, 5}, tp(3, 6))) -
                       6.0 * tp(4, 5) - 3.0 * dress({1, 2, 3, 6}, tp(4, 5)) +
                       2.0 * (tp(5, 6) + dress({1, 2, 3, 4}, tp(5, 6))));
  } else {
    set.rows.push_back(tp(1, 2) + tp(1, 4));
    set.rows.push_back(tm(1, 3) + tm(1, 5));
    set.rows.push_back(tp(1, 2) + tp(1, 4) - tp(2, 3) - tp(2, 5) - tp(3, 4) -
                       tp(4, 5) + 2.0 * tp(1, 6));
    set.rows.push_back(5.0 * tm(1, 3) - 4.0 * tm(2, 6) + 5.0 * tm(1, 5) -
                       4.0 * tm(4, 6));
    set.rows.push_back(5.0 * tp(1, 2) + 5.0 * tp(1, 4) + 18.0 * tp(1, 6) -
                       9.0 * tp(2, 3) - 9.0 * tp(2, 5) - 9.0 * tp(3, 4) +
                       4.0 * tp(3, 6) - 9.0 * tp(4, 5) + 4.0 * tp(5, 6));
  }
  return set;
}

Table1Entry compare_order(const std::string& kind, int order,
                          const OperatorExpr& computed, const OperatorExpr& expected) {
  Table1Entry e;
  e.kind = kind;
  e.order = order;
  if (expected.empty() || computed.empty()) {
    e.diff = "empty operator";
    return e;
  }

  complexd scale = 0.0;
  for (const auto& [code, amp] : expected.terms()) {
    complexd c = computed.amplitude(PauliString(6, code));
    if (std::abs(c) > 0) {
      scale = c / amp;
      break;
    }
  }
  if (scale == complexd{}) {
    e.diff = "no shared term";
    return e;
  }
  if (std::abs(scale.imag()) > 1e-12 * std::abs(scale)) {
    e.diff = "scale not real: " + format_amplitude(scale);
    return e;
  }
  e.scale = scale.real();

  std::string diff;
  std::set<std::uint64_t> keys;
  for (const auto& [code, amp] : expected.terms()) keys.insert(code);
  for (const auto& [code, amp] : computed.terms()) keys.insert(code);
  for (std::uint64_t code : keys) {
    PauliString p(6, code);
    complexd c = computed.amplitude(p);
    complexd want = expected.amplitude(p) * e.scale;
    if (std::abs(c - want) > 1e-12 * std::max(1.0, std::abs(want)))
      diff += "  term " + render(p) + ": computed " + format_amplitude(c) +
              " expected " + format_amplitude(want) + "\n";
  }
  e.diff = diff;
  e.match = diff.empty();
  return e;
}

}  // namespace

Table1Report table1_check() {
  SpinNetwork net = fig5_network();
  Table1Report report;
  report.all_match = true;
  for (HamiltonianKind kind : {HamiltonianKind::XY, HamiltonianKind::MXY}) {
    OperatorExpr h = hamiltonian(net, kind);
    std::vector<OperatorExpr> ops = walk_operators(h, 4, net.source);
    RowSet rows = expected_rows(kind);
    for (int n = 0; n <= 4; ++n) {
      report.entries.push_back(compare_order(kind_name(kind), n,
                                             ops[static_cast<std::size_t>(n)],
                                             rows.rows[static_cast<std::size_t>(n)]));
      report.all_match = report.all_match && report.entries.back().match;
    }
  }
  return report;
}

std::string render_report(const Table1Report& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += e.kind + " order " + std::to_string(e.order);
    if (e.match) {
      out += " match scale " + format_double(e.scale) + "\n";
    } else {
      out += " mismatch\n";
      out += e.diff;
      if (!e.diff.empty() && e.diff.back() != '\n') out += '\n';
    }
  }
  out += std::string("verdict ") + (r.all_match ? "true" : "false") + "\n";
  return out;
}

}  // namespace spinet
