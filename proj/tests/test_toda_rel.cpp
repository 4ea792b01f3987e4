#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "todalab/toda_rel.hpp"

using namespace todalab;
using namespace todalab::relativistic;
using Q = Rational;

namespace {

SamplerConfig few(std::size_t n = 15) {
  SamplerConfig c;
  c.samples = n;
  c.seed = 9;
  return c;
}

}  // namespace

TEST_CASE("Lax matrices for N = 2") {
  // chart a1, b1, b2
  const LaxPair lax = rel_lax(2);
  const std::vector<Q> x{Q(1), Q(2), Q(3)};
  const auto L = lax_values<Q>(lax.L, 2, std::span<const Q>(x));
  const auto B = lax_values<Q>(lax.B, 2, std::span<const Q>(x));
  CHECK(L(0, 0) == 3);
  CHECK(L(0, 1) == 1);
  CHECK(L(1, 0) == 3);
  CHECK(L(1, 1) == 3);
  CHECK(B(0, 0) == 0);
  CHECK(B(0, 1) == 1);
  CHECK(B(1, 0) == 0);
  CHECK(B(1, 1) == -1);
}

TEST_CASE("canonical Hamiltonian and coordinates") {
  CHECK(rel_hamiltonian({0.0, 0.0}, {0.0, 0.0}, 1.0) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(rel_hamiltonian({0.3}, {0.7}, 1.0) == doctest::Approx(std::exp(0.7)));
  CHECK(rel_hamiltonian({0.0, 1.0, -1.0}, {0.2, 0.1, -0.3}, 1e-9) ==
        doctest::Approx(std::exp(0.2) + std::exp(0.1) + std::exp(-0.3)));
  const RelState s = rel_coordinates({0.0, 0.0}, {0.0, 0.0}, 1.0);
  REQUIRE(s.a.size() == 1);
  REQUIRE(s.b.size() == 2);
  CHECK(std::isfinite(s.a[0]));
  CHECK(s.a[0] > 0.0);
}

TEST_CASE("equations of motion, Lax form and Hamiltonian form") {
  for (int N : {2, 3, 4}) {
    CAPTURE(N);
    CHECK(check_lax_equation(rel_lax(N), rel_equations(N), true, few()).passed);
    CHECK(check_equal(rel_equations(N), scaled(hamiltonian_vf(rel_bracket(N, 2), invariant(N, 1)), Q(-1)), few()).passed);
  }
  // a = 0 is stationary
  const auto v = eval_vector(rel_equations(3), PhasePoint{chart(3), {Q(0), Q(0), Q(2), Q(-3), Q(5)}});
  for (const auto& c : v) CHECK(c == 0);
}

TEST_CASE("trace of L is H_1") {
  const auto h1 = make_scalar(chart(3), {"sum", "test", 1}, [](const auto& x) {
    auto s = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) s += x[i];
    return s;
  });
  CHECK(check_equal(invariant(3, 1), h1, few()).passed);
}

TEST_CASE("printed pi_2 entries at a sample point") {
  // chart a1 a2 b1 b2 b3
  const PhasePoint x{chart(3), {Q(2), Q(-3), Q(5), Q(7), Q(1, 2)}};
  const auto m = eval_bivector(rel_bracket(3, 2), x);
  CHECK(m(a_index(3, 1), a_index(3, 2)) == Q(-6));
  CHECK(m(a_index(3, 1), b_index(3, 1)) == Q(-10));
  CHECK(m(a_index(3, 1), b_index(3, 2)) == Q(14));
  CHECK(m(a_index(3, 2), b_index(3, 3)) == Q(-3, 2));
  CHECK(m(b_index(3, 1), b_index(3, 2)) == 0);
}

TEST_CASE("Poisson, compatible, involutive") {
  for (int N : {2, 3}) {
    CAPTURE(N);
    for (int n = 1; n <= 3; ++n) {
      CHECK(check_jacobi(rel_bracket(N, n), few(10)).passed);
      CHECK(check_involution(rel_bracket(N, n), invariants(N), few(10)).passed);
      for (int m = n + 1; m <= 3; ++m) CHECK(check_compatibility(rel_bracket(N, n), rel_bracket(N, m), few(10)).passed);
    }
  }
  CHECK(check_jacobi(rel_bracket(3, 4), few(10)).passed);
  CHECK(check_compatibility(rel_bracket(3, 2), rel_bracket(3, 4), few(10)).passed);
  CHECK_THROWS_AS(rel_bracket(4, 4), std::invalid_argument);
}

TEST_CASE("Casimirs") {
  const int N = 3;
  CHECK(check_casimir(rel_bracket(N, 1), invariant(N, 1), few()).passed);
  CHECK(check_casimir(rel_bracket(N, 2), product_b(N), few()).passed);
  CHECK(check_casimir(rel_bracket(N, 3), trace_inverse(N), few()).passed);
  CHECK_FALSE(check_casimir(rel_bracket(N, 1), product_b(N), few()).passed);
}

TEST_CASE("Lenard chain") {
  const int N = 4;
  for (int n = 2; n <= 3; ++n)
    for (int l = 1; l < N; ++l) {
      CAPTURE(n);
      CAPTURE(l);
      CHECK(check_equal(hamiltonian_vf(rel_bracket(N, n), invariant(N, l)),
                        hamiltonian_vf(rel_bracket(N, n - 1), invariant(N, l + 1)), few(10))
                .passed);
    }
}

TEST_CASE("master symmetries") {
  const int N = 3;
  for (int m = 1; m <= 3; ++m) {
    CAPTURE(m);
    CHECK(check_equal(apply_vf(rel_master(N, 1), invariant(N, m)), combine({{Q(m + 1), invariant(N, m + 1)}}, "rhs"), few())
              .passed);
    CHECK(check_equal(apply_vf(rel_master(N, 2), invariant(N, m)), combine({{Q(m + 2), invariant(N, m + 2)}}, "rhs"), few())
              .passed);
  }
  CHECK(check_equal(lie_derivative(rel_master(N, 1), rel_bracket(N, 2)), scaled(rel_bracket(N, 3), Q(-1)), few()).passed);
  CHECK(check_equal(lie_derivative(rel_master(N, 1), rel_bracket(N, 3)), zero_bivector(chart(N)), few()).passed);
  CHECK(check_equal(vf_commutator(rel_master(N, 1), rel_master(N, 2)), rel_master(N, 3), few(10)).passed);
  CHECK(check_equal(apply_vf(rel_master(N, 3), invariant(N, 1)), combine({{Q(4), invariant(N, 4)}}, "4H4"), few(10)).passed);
  CHECK_THROWS_AS(rel_master(4, 2), std::invalid_argument);
}

TEST_CASE("nonrelativistic limit converges monotonically") {
  const auto dev = nonrelativistic_limit(3, {0.0, 0.5, 1.2}, {0.3, -0.1, 0.2}, {10.0, 100.0, 1000.0}, 2.0, 1e-3);
  REQUIRE(dev.size() == 3);
  CHECK(dev[0] > dev[1]);
  CHECK(dev[1] > dev[2]);
  CHECK(dev[2] < 1e-3);
}
