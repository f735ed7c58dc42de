#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spinet/dense.hpp"
#include "spinet/network.hpp"
#include "spinet/walk.hpp"
#include "testutil.hpp"

using namespace spinet;

TEST_CASE("the extracted seed doubles the couplings that touch the source") {
  OperatorExpr h = hamiltonian(lambda3_network(), HamiltonianKind::XY);
  OperatorExpr want = flip_flop(3, 1, 2, +1) * std::sqrt(2.0);
  CHECK((extract_A(h) - want).empty());
  // Conjugating by Z at the source recovers H - A.
  OperatorExpr hs = h - extract_A(h);
  CHECK((hs - (flip_flop(3, 2, 3, +1) * (1.0 / std::sqrt(2.0)) -
               flip_flop(3, 1, 2, +1) * (1.0 / std::sqrt(2.0)))).empty());
}

TEST_CASE("the first walk orders on the reference network close by hand") {
  OperatorExpr h = hamiltonian(fig5_network(), HamiltonianKind::XY);
  std::vector<OperatorExpr> ops = walk_operators(h, 1);
  OperatorExpr c0 = (flip_flop(6, 1, 2, +1) + flip_flop(6, 1, 4, +1)) * 2.0;
  CHECK((ops[0] - c0).empty());
  OperatorExpr z2t = mul(pauli_term(6, 2, Letter::Z), flip_flop(6, 1, 3, -1));
  OperatorExpr z4t = mul(pauli_term(6, 4, Letter::Z), flip_flop(6, 1, 5, -1));
  CHECK((ops[1] - (z2t + z4t) * 2.0).empty());
}

TEST_CASE("walk orders respect the term budget") {
  OperatorExpr h = hamiltonian(fig5_network(), HamiltonianKind::XY);
  CHECK_THROWS_AS(walk_operators(h, 6, 1, 10), capacity_error);
}

TEST_CASE("skeletons list coupling pairs with their flavor") {
  OperatorExpr h = hamiltonian(fig5_network(), HamiltonianKind::XY);
  std::vector<OperatorExpr> ops = walk_operators(h, 2);
  CHECK(skeleton(ops[0]) ==
        std::vector<SkeletonEdge>{{1, 2, '+'}, {1, 4, '+'}});
  CHECK(skeleton(ops[1]) ==
        std::vector<SkeletonEdge>{{1, 3, '-'}, {1, 5, '-'}});
  CHECK(render_skeleton(skeleton(ops[0])) == "skeleton 1-2:+ 1-4:+");
  CHECK(render_skeleton({}) == "skeleton none");

  OperatorExpr zz(2);
  zz.add_term(PauliString(2).with_letter(1, Letter::Z), 1.0);
  CHECK_THROWS_AS(skeleton(zz), check_error);
}

TEST_CASE("two-spin transfer moments match the sine-squared series") {
  OperatorExpr h = flip_flop(2, 1, 2, +1);
  MomentSeries series = transfer_moments(h, 10);
  // F(t) = sin^2 t = t^2 - t^4/3 + 2 t^6/45 ...; matching (it)^n/n! weights
  // gives moments 0, 0, -2, 0, -8, 0, -32, 0, -128, ...
  REQUIRE(series.moments.size() == 11);
  CHECK(std::abs(series.moments[0]) < 1e-14);
  CHECK(std::abs(series.moments[1]) < 1e-14);
  CHECK(series.moments[2].real() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(series.moments[3]) < 1e-14);
  CHECK(series.moments[4].real() == doctest::Approx(-8.0).epsilon(1e-12));
  CHECK(series.moments[6].real() == doctest::Approx(-32.0).epsilon(1e-12));
  CHECK(series.moments[8].real() == doctest::Approx(-128.0).epsilon(1e-12));
  for (double t : {0.05, 0.2, 0.4})
    CHECK(series.eval(t) ==
          doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-8));
}

TEST_CASE("the binomial reconstruction reproduces the direct recursion") {
  for (HamiltonianKind kind : {HamiltonianKind::XY, HamiltonianKind::MXY}) {
    OperatorExpr h = hamiltonian(fig5_network(), kind);
    MomentSeries direct = transfer_moments(h, 6);
    MomentSeries binom = transfer_moments_binomial(h, 6);
    REQUIRE(direct.moments.size() == binom.moments.size());
    for (std::size_t n = 0; n < direct.moments.size(); ++n)
      CHECK(std::abs(direct.moments[n] - binom.moments[n]) <=
            1e-12 * std::max(1.0, std::abs(direct.moments[n])));
  }
}

TEST_CASE("truncated moment series approximate the dense fidelity at short times") {
  SpinNetwork net = lambda3_network();
  OperatorExpr h = hamiltonian(net, HamiltonianKind::MXY);
  MomentSeries series = transfer_moments(h, 12);
  for (double t : {0.1, 0.3, 0.5}) {
    double f = transport_fidelity(net, HamiltonianKind::MXY, t);
    CHECK(std::abs(series.eval(t) - f) < 1e-6);
  }
}

TEST_CASE("the tabulated walk orders all match") {
  Table1Report rep = table1_check();
  CHECK(rep.entries.size() == 10);
  for (const auto& e : rep.entries) {
    INFO(e.kind, " order ", e.order, " diff:\n", e.diff);
    CHECK(e.match);
  }
  CHECK(rep.all_match);
  std::string text = render_report(rep);
  CHECK(text.find("verdict true") != std::string::npos);
  CHECK(text.find("mismatch") == std::string::npos);
}

TEST_CASE("moment routes validate their arguments") {
  OperatorExpr h = flip_flop(2, 1, 2, +1);
  CHECK_THROWS_AS(transfer_moments(h, -1), contract_error);
  CHECK_THROWS_AS(transfer_moments(h, 4, 1, 1), contract_error);
  CHECK_THROWS_AS(walk_operators(h, 2, 5), contract_error);
}
