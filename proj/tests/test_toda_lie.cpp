#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "todalab/toda_lie.hpp"

using namespace todalab;
using namespace todalab::lie;
using Q = Rational;

namespace {

SamplerConfig few(std::size_t n = 12) {
  SamplerConfig c;
  c.samples = n;
  c.seed = 13;
  return c;
}

}  // namespace

TEST_CASE("family parsing and rank validation") {
  CHECK(parse_family("A") == Family::A);
  CHECK(parse_family("G2") == Family::G2);
  CHECK(family_name(Family::E7) == "E7");
  CHECK_THROWS_AS(parse_family("Z"), std::invalid_argument);
  CHECK_NOTHROW(validate({Family::A, 1}));
  CHECK_THROWS_AS(validate({Family::B, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Family::D, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate({Family::G2, 3}), std::invalid_argument);
  CHECK_NOTHROW(validate({Family::E8, 8}));
  CHECK(coordinate_count({Family::A, 2}) == 3);
  CHECK(coordinate_count({Family::G2, 2}) == 3);
  CHECK(coordinate_count({Family::E6, 6}) == 8);
}

TEST_CASE("catalog Hamiltonians conserve energy along RK4") {
  const std::vector<RootSystemId> ids{{Family::A, 3}, {Family::B, 2}, {Family::C, 3}, {Family::D, 4},
                                      {Family::G2, 2}, {Family::F4, 4}, {Family::E6, 6}};
  for (const auto& id : ids) {
    CAPTURE(family_name(id.family));
    const VectorField X = lie_flow(id);
    std::vector<double> x0(X.chart->dimension());
    for (std::size_t i = 0; i < x0.size(); ++i) x0[i] = 0.1 * static_cast<double>((i * 7) % 5) - 0.2;
    const Trajectory t = integrate_flow(X, RealPoint{X.chart, x0}, 1.0, 1e-3);
    const DriftReport d = drift_report(t, {lie_hamiltonian(id)});
    CHECK(d.max_drift() < 1e-10);
  }
}

TEST_CASE("A2 forms: canonical transformation and the kinetic ratio") {
  SamplerConfig c = few();
  c.mode = Mode::real;
  c.max_numerator = 3;
  const A2Report r = a2_equivalence_check(c);
  CHECK(r.brackets.passed);
  CHECK(r.potential.passed);
  CHECK(r.kinetic.passed);
}

TEST_CASE("B_n brackets, Lax pair and invariants") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    CHECK(check_jacobi(bn_bracket(n, 1), few()).passed);
    CHECK(check_jacobi(bn_bracket(n, 3), few()).passed);
    CHECK(check_compatibility(bn_bracket(n, 1), bn_bracket(n, 3), few()).passed);
    CHECK(check_lax_equation(bn_lax(n), bn_flow(n), false, few()).passed);
    CHECK(check_involution(bn_bracket(n, 3), bn_invariants(n), few()).passed);
    // tr L^k vanishes for odd k
    for (int k = 1; k <= 2 * n + 1; k += 2) {
      const ScalarField t = trace_power(bn_lax(n), k, "bn");
      CHECK(check_equal(t, combine({{Q(0), t}}, "0"), few()).passed);
    }
    // defining relation of pi_3
    CHECK(check_equal(hamiltonian_vf(bn_bracket(n, 3), bn_invariant(n, 2)), hamiltonian_vf(bn_bracket(n, 1), bn_invariant(n, 4)),
                      few())
              .passed);
    CHECK(check_equal(bn_recursion_apply(bn_bracket(n, 1)), bn_bracket(n, 3), few(6)).passed);
    CHECK(bn_recursion_antisymmetry(bn_bracket(n, 3), few(6)).passed);
  }
  CHECK(check_jacobi(bn_bracket(2, 5), few(5)).passed);
  CHECK_THROWS_AS(bn_bracket(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(bn_bracket_table(2, 5), std::invalid_argument);
}

TEST_CASE("B_n Flaschka map is Poisson up to the factor 4") {
  SamplerConfig c = few();
  c.mode = Mode::real;
  c.max_numerator = 3;
  CHECK(check_poisson_map(bn_flaschka_map(2), scaled(symplectic(2), Q(4)), bn_bracket(2, 1), c).passed);
}

TEST_CASE("B_2 rational table values") {
  // chart a1 a2 b1 b2 b3
  const PhasePoint ones{b2_chart(), {Q(1), Q(1), Q(1), Q(1), Q(1)}};
  const auto m = eval_bivector(b2_rational_bracket(), ones);
  CHECK(m(2, 4) == Q(2, 5));  // {b1,b3} = 2 a1^2 / 5
  CHECK(m(0, 4) == 0);        // {a1,b3} = a1 (b2 - b1) / 5
  const PhasePoint x{b2_chart(), {Q(2), Q(1), Q(3), Q(-1), Q(5)}};
  const auto v = eval_bivector(b2_rational_bracket(), x);
  CHECK(v(0, 1) == Q(2, 5));  // 2 (15 + 1 - 6) / 50
  CHECK(v(3, 4) == Q(2 * (1 - 4), 5));
  // b3 = 0 is singular
  CHECK_THROWS_AS(eval_bivector(b2_rational_bracket(), PhasePoint{b2_chart(), {Q(1), Q(1), Q(1), Q(1), Q(0)}}),
                  std::domain_error);
}

TEST_CASE("B_2 Dirac reduction") {
  const B2DiracReport r = b2_dirac_check(few(20));
  CHECK(r.bracket.passed);
  CHECK(r.p_matrix.passed);
  // The printed P^-1 has its lower-left block transposed, so it is not the inverse.
  CHECK_FALSE(r.p_inverse.passed);
  REQUIRE(r.p_inverse.witness.has_value());

  // printed P times printed P^-1 is not the identity
  const std::vector<Q> y{Q(1), Q(2), Q(3), Q(5), Q(7)};
  const auto P = b2_printed_p(y);
  const auto Pi = b2_printed_p_inverse(y);
  const auto prod = P * Pi;
  bool identity = true;
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (prod(i, j) != (i == j ? Q(1) : Q(0))) identity = false;
  CHECK_FALSE(identity);
  const auto inv = inverse(P);
  CHECK(inv(0, 2) == Pi(0, 2));  // upper-right block agrees
  CHECK(inv(2, 0) == Pi(2, 0));
  CHECK(inv(2, 1) != Pi(2, 1));
  CHECK(inv(2, 1) == Pi(3, 0));
}

TEST_CASE("B_2 properties that hold for the printed table") {
  const BivectorField pi2 = b2_rational_bracket();
  std::vector<ScalarField> h;
  for (int k = 1; k <= 5; ++k) h.push_back(b2_invariant(k));
  CHECK(check_jacobi(pi2, few()).passed);
  CHECK(check_jacobi(b2_linear_bracket(), few()).passed);
  CHECK(check_involution(pi2, h, few()).passed);
  CHECK(check_casimir(pi2, b2_det(), few()).passed);
  CHECK(check_equal(hamiltonian_vf(pi2, h[0]), hamiltonian_vf(b2_linear_bracket(), h[1]), few()).passed);
  // the reduced quadratic bracket equals the table
  CHECK(check_equal(b2_dirac_bracket(), pi2, few(8)).passed);
}
