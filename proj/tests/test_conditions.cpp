#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spinet/conditions.hpp"
#include "spinet/dense.hpp"
#include "spinet/network.hpp"
#include "testutil.hpp"

using namespace spinet;

namespace {

double dense_diff(const DenseOperator& a, const DenseOperator& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

OperatorExpr random_expr(int n, std::mt19937& rng, int terms = 8) {
  std::uniform_int_distribution<std::uint64_t> bits(0, (1ull << (2 * n)) - 1);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  OperatorExpr e(n);
  for (int k = 0; k < terms; ++k)
    e.add_term(PauliString(n, bits(rng)), complexd(amp(rng), amp(rng)));
  return e;
}

}  // namespace

TEST_CASE("the end-pair conjugation agrees between symbolic and dense routes") {
  std::mt19937 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    OperatorExpr a = random_expr(3, rng);
    CHECK(dense_diff(dense(apply_S(a, 1, 3)), apply_S(dense(a), 1, 3)) < 1e-12);
  }
  OperatorExpr a = random_expr(3, rng);
  CHECK_THROWS_AS(apply_S(a, 1, 1), contract_error);
  CHECK_THROWS_AS(apply_S(a, 0, 3), contract_error);
}

TEST_CASE("overlap fidelity equals the direct transport fidelity") {
  std::mt19937 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    SpinNetwork net = testutil::random_connected_network(rng, 2, 5);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    double t = time(rng);
    DenseOperator u = propagator(dense(hamiltonian(net, HamiltonianKind::XY)), t);
    CHECK(std::abs(fidelity_hs(u, net.source, net.target) -
                   transport_fidelity(net, HamiltonianKind::XY, t)) < 1e-10);
  }
}

TEST_CASE("perfect-transport verdicts flip between peak and half-peak times") {
  for (int m : {3, 4, 5, 6}) {
    DenseOperator h = dense(hamiltonian(pst_chain(m), HamiltonianKind::XY));
    ConditionReport at_peak = check_perfect_transport(propagator(h, M_PI / 2), 1, m);
    CHECK(at_peak.verdict);
    CHECK(at_peak.norm_g == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(at_peak.norm_gt == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(at_peak.eig_residual_g < 1e-8);
    CHECK(at_peak.eig_residual_gt < 1e-8);
    CHECK(at_peak.fidelity == doctest::Approx(1.0).epsilon(1e-9));

    ConditionReport off_peak = check_perfect_transport(propagator(h, M_PI / 4), 1, m);
    CHECK_FALSE(off_peak.verdict);
  }
}

TEST_CASE("norms of the two end-letter parts always add to one") {
  std::mt19937 rng(53);
  SpinNetwork net = testutil::random_connected_network(rng, 3, 5);
  DenseOperator u = propagator(dense(hamiltonian(net, HamiltonianKind::XY)), 0.9);
  ConditionReport rep = check_perfect_transport(u, net.source, net.target);
  CHECK(rep.norm_g + rep.norm_gt == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("non-normalized input is rejected before any verdict") {
  DenseOperator u = 0.5 * DenseOperator::Identity(4, 4);
  CHECK_THROWS_AS(check_perfect_transport(u, 1, 2), contract_error);
}

TEST_CASE("symbolic and dense checkers agree on a propagator symbol") {
  const double r = 1.0 / std::sqrt(2.0);
  // The balanced two-site combination: amplitudes 1/2 on Id and ZZ, r/2 on
  // the four end-pair letter products.
  OperatorExpr u(2);
  u.add_term(PauliString(2), 0.5);
  u.add_term(PauliString(2).with_letter(1, Letter::Z).with_letter(2, Letter::Z), 0.5);
  u.add_term(PauliString(2).with_letter(1, Letter::X).with_letter(2, Letter::X),
             r / 2);
  u.add_term(PauliString(2).with_letter(1, Letter::Y).with_letter(2, Letter::Y),
             r / 2);
  u.add_term(PauliString(2).with_letter(1, Letter::X).with_letter(2, Letter::Y),
             r / 2);
  u.add_term(PauliString(2).with_letter(1, Letter::Y).with_letter(2, Letter::X),
             -r / 2);
  ConditionReport sym = check_perfect_transport(u);
  ConditionReport den = check_perfect_transport(dense(u), 1, 2);
  CHECK(sym.verdict == den.verdict);
  CHECK(sym.norm_g == doctest::Approx(den.norm_g).epsilon(1e-12));
  CHECK(sym.norm_gt == doctest::Approx(den.norm_gt).epsilon(1e-12));
  CHECK(sym.fidelity == doctest::Approx(den.fidelity).epsilon(1e-12));
  CHECK(sym.verdict);
}

TEST_CASE("all eight end-pair families are unitary; the branch sets the sign") {
  // sign +1 is the transporting branch of each family (Z -> Z exactly);
  // sign -1 swaps the end-word eigenvalues and transports Z -> -Z, so its
  // fidelity is exactly -1 and the verdict is false.
  std::mt19937 rng(54);
  for (int form = 1; form <= 8; ++form)
    for (int sign : {1, -1}) {
      DenseOperator w = testutil::random_unitary(4, rng);
      DenseOperator wp = testutil::random_unitary(4, rng);
      DenseOperator u = appendix_unitary(form, w, wp, sign);
      CHECK(u.rows() == 16);
      DenseOperator id = DenseOperator::Identity(16, 16);
      CHECK(dense_diff(u.adjoint() * u, id) < 1e-10);
      CHECK(fidelity_hs(u) ==
            doctest::Approx(sign > 0 ? 1.0 : -1.0).epsilon(1e-9));
      ConditionReport rep = check_perfect_transport(u, 1, 4);
      CHECK(rep.verdict == (sign > 0));
      CHECK(rep.norm_g == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(rep.norm_gt == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("end-pair family input validation") {
  DenseOperator w = DenseOperator::Identity(4, 4);
  CHECK_THROWS_AS(appendix_unitary(0, w, w, 1), contract_error);
  CHECK_THROWS_AS(appendix_unitary(9, w, w, 1), contract_error);
  CHECK_THROWS_AS(appendix_unitary(1, w, w, 2), contract_error);
  CHECK_THROWS_AS(appendix_unitary(1, w, DenseOperator::Identity(2, 2), 1),
                  contract_error);
  DenseOperator bad = 2.0 * w;
  CHECK_THROWS_AS(appendix_unitary(1, bad, w, 1), contract_error);
  DenseOperator odd = DenseOperator::Identity(3, 3);
  CHECK_THROWS_AS(appendix_unitary(1, odd, odd, 1), contract_error);
}

TEST_CASE("the balanced lambda triple passes every constraint") {
  const double r = 1.0 / std::sqrt(2.0);
  LambdaReport rep = solve_lambda_combination(r, 0.5, 0.5);
  CHECK(rep.constraints_ok);
  CHECK(rep.norm_residual < 1e-12);
  CHECK(rep.balance_residual < 1e-12);
  CHECK(rep.phase_residual < 1e-12);
  CHECK(rep.unitarity_residual < 1e-10);
  CHECK(rep.fidelity == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.ok);
}

TEST_CASE("unbalanced lambda triples are flagged") {
  LambdaReport rep = solve_lambda_combination(1.0, 0.0, 0.0);
  CHECK_FALSE(rep.constraints_ok);
  CHECK_FALSE(rep.ok);
  LambdaReport phase =
      solve_lambda_combination(1.0 / std::sqrt(2.0), 0.5, complexd(0.0, 0.5));
  CHECK(phase.phase_residual > 1e-3);
  CHECK_FALSE(phase.constraints_ok);
}

TEST_CASE("lambda propagators extend to longer chains") {
  const double r = 1.0 / std::sqrt(2.0);
  DenseOperator u = lambda_unitary(r, 0.5, 0.5, 4);
  CHECK(u.rows() == 16);
  CHECK(fidelity_hs(u) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the even-site flip leaves the transport superoperator invariant") {
  SpinNetwork net = pst_chain(5);
  OperatorExpr vx = OperatorExpr::identity(5);
  for (int site : {2, 4})
    vx = mul(vx, pauli_term(5, site, Letter::X));
  DenseOperator v = dense(vx);
  DenseOperator u = propagator(dense(hamiltonian(net, HamiltonianKind::XY)), 0.8);
  InvarianceReport rep = check_invariance(v, u, 1, 5);
  CHECK(rep.commutation_residual < 1e-12);
  CHECK(rep.invariant);
  CHECK(std::abs(rep.fidelity_u - rep.fidelity_vu) < 1e-12);
}

TEST_CASE("an end-site flip breaks the invariance") {
  DenseOperator v = dense(pauli_term(3, 1, Letter::X));
  DenseOperator u = propagator(dense(hamiltonian(pst_chain(3), HamiltonianKind::XY)),
                               0.8);
  InvarianceReport rep = check_invariance(v, u, 1, 3);
  CHECK(rep.commutation_residual > 0.1);
  CHECK_FALSE(rep.invariant);
}

TEST_CASE("support classification on end-to-end couplings") {
  OperatorExpr direct = flip_flop(2, 1, 2, +1);
  SupportReport two = hamiltonian_support_check(direct, 1, 2);
  CHECK(two.support == SupportClass::anticommuting);
  CHECK(two.eigenstate);
  CHECK(two.square_residual < 1e-12);
  CHECK(two.fourth_residual < 1e-12);
  CHECK(two.conditions_hold);
  CHECK(two.first_transfer_time == doctest::Approx(M_PI / 2).epsilon(1e-6));

  OperatorExpr dressed = mul(pauli_term(3, 2, Letter::X), flip_flop(3, 1, 3, +1));
  SupportReport three = hamiltonian_support_check(dressed, 1, 3);
  CHECK(three.support == SupportClass::anticommuting);
  CHECK(three.conditions_hold);
  CHECK(three.first_transfer_time == doctest::Approx(M_PI / 2).epsilon(1e-6));
}

TEST_CASE("support off the end pair is reported as mixed or commuting") {
  OperatorExpr away = flip_flop(3, 1, 2, +1);
  SupportReport mixed = hamiltonian_support_check(away, 1, 3);
  CHECK(mixed.support == SupportClass::mixed);
  CHECK_FALSE(mixed.conditions_hold);

  OperatorExpr zz(3);
  zz.add_term(PauliString(3).with_letter(1, Letter::Z).with_letter(3, Letter::Z), 1.0);
  SupportReport comm = hamiltonian_support_check(zz, 1, 3);
  CHECK(comm.support == SupportClass::commuting);

  OperatorExpr skew(3);
  skew.add_term(PauliString(3).with_letter(1, Letter::X), complexd(0.0, 1.0));
  CHECK_THROWS_AS(hamiltonian_support_check(skew, 1, 3), contract_error);
}

TEST_CASE("anticommuting support alone does not grant the conditions") {
  // Both couplings end on the target, so the support is purely X/Y there,
  // yet the end-word eigenstate relation fails for the 2-3 leg.
  OperatorExpr h = flip_flop(3, 1, 3, +1) + flip_flop(3, 2, 3, +1);
  SupportReport rep = hamiltonian_support_check(h, 1, 3);
  CHECK(rep.support == SupportClass::anticommuting);
  CHECK_FALSE(rep.conditions_hold);
}

TEST_CASE("the end swap transports every letter") {
  DenseOperator swap2 = end_swap_unitary(2);
  DenseOperator expect(4, 4);
  expect.setZero();
  expect(0, 0) = expect(3, 3) = expect(1, 2) = expect(2, 1) = 1.0;
  CHECK(dense_diff(swap2, expect) < 1e-15);

  CHECK(swap_transport_check(end_swap_unitary(4)));
  DenseOperator u = propagator(dense(hamiltonian(pst_chain(4), HamiltonianKind::XY)),
                               M_PI / 2);
  CHECK_FALSE(swap_transport_check(u, 1e-12));
}

TEST_CASE("report rendering pins the key order") {
  ConditionReport rep;
  rep.norm_g = 0.5;
  rep.norm_gt = 0.5;
  rep.eig_residual_g = 0.0;
  rep.eig_residual_gt = 0.0;
  rep.fidelity = 1.0;
  rep.verdict = true;
  CHECK(render_report(rep) ==
        "norm_G 0.5\nnorm_Gt 0.5\neig_residual_G 0\neig_residual_Gt 0\n"
        "fidelity 1\nverdict true\n");

  SupportReport sup;
  sup.support = SupportClass::anticommuting;
  sup.eigenstate = true;
  sup.square_residual = 0.0;
  sup.fourth_residual = 0.0;
  sup.conditions_hold = true;
  sup.first_transfer_time = 1.5;
  CHECK(render_report(sup) ==
        "support anticommuting\neigenstate true\nsquare_residual 0\n"
        "fourth_residual 0\nconditions hold\nfirst_transfer_time 1.5\n");
}
