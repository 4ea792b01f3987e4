#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "todalab/kostant.hpp"

using namespace todalab;
using namespace todalab::kostant;
using Q = Rational;

namespace {

SamplerConfig few(std::size_t n = 10) {
  SamplerConfig c;
  c.samples = n;
  c.seed = 21;
  return c;
}

// gl(4) names: f_i = x_ii, g_i = x_{i+1,i}, h_i = x_{i+2,i}, k1 = x_41
std::size_t f(int i) { return index(4, i, i); }
std::size_t g(int i) { return index(4, i + 1, i); }
std::size_t h(int i) { return index(4, i + 2, i); }
std::size_t k1() { return index(4, 4, 1); }

std::vector<Q> sample_gl4() {
  std::vector<Q> x(10);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = make_rational(static_cast<long>(i % 4) - 1, static_cast<long>(1 + i % 3));
  x[k1()] = Q(3, 2);
  return x;
}

}  // namespace

TEST_CASE("chart ordering runs along subdiagonals") {
  const auto c = chart(4);
  REQUIRE(c->dimension() == 10);
  CHECK(f(1) == 0);
  CHECK(f(4) == 3);
  CHECK(g(1) == 4);
  CHECK(h(2) == 8);
  CHECK(k1() == 9);
  const auto X = state_matrix<Q>(sample_gl4(), 4);
  CHECK(X(0, 1) == 1);
  CHECK(X(0, 2) == 0);
  CHECK(X(3, 0) == Q(3, 2));
}

TEST_CASE("delta-formula bracket reproduces the printed gl(4) relations") {
  const PhasePoint x{chart(4), sample_gl4()};
  const auto m = eval_bivector(kostant_bracket(4, 1), x);
  const auto& v = x.coords;
  CHECK(m(g(1), g(2)) == v[h(1)]);
  CHECK(m(g(2), g(3)) == v[h(2)]);
  CHECK(m(g(1), f(1)) == -v[g(1)]);
  CHECK(m(g(2), f(3)) == v[g(2)]);
  CHECK(m(h(1), f(3)) == v[h(1)]);
  CHECK(m(g(1), h(2)) == v[k1()]);
  CHECK(m(g(3), h(1)) == -v[k1()]);
  CHECK(m(k1(), f(1)) == -v[k1()]);
  CHECK(m(k1(), f(4)) == v[k1()]);
  CHECK(m(k1(), f(2)) == 0);
  CHECK(m(g(1), g(3)) == 0);
}

TEST_CASE("flow is Hamiltonian for pi_1 with H_2 and satisfies the Lax equation") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    CHECK(check_equal(kostant_flow(n), hamiltonian_vf(kostant_bracket(n, 1), poly_invariant(n, 2)), few()).passed);
    CHECK(check_lax_equation(lax(n), kostant_flow(n), true, few()).passed);
    CHECK(check_casimir(kostant_bracket(n, 1), poly_invariant(n, 1), few()).passed);
  }
  // diagonal X is stationary
  std::vector<Q> x(10, Q(0));
  for (int i = 1; i <= 4; ++i) x[f(i)] = Q(i);
  for (const auto& c : eval_vector(kostant_flow(4), PhasePoint{chart(4), x})) CHECK(c == 0);
}

TEST_CASE("X_1 on gl(4)") {
  const PhasePoint x{chart(4), sample_gl4()};
  const auto& v = x.coords;
  const auto X1 = eval_vector(kostant_master(4, 1), x);
  CHECK(X1[f(2)] == 3 * v[g(2)] + v[f(2)] * v[f(2)]);
  CHECK(X1[k1()] == v[g(3)] * v[h(1)] + v[g(1)] * v[h(2)] + v[k1()] * (v[f(1)] + v[f(2)] + v[f(3)] + 5 * v[f(4)]));
  for (int i = 1; i <= 2; ++i) CHECK(master_consistency(4, i, few()).passed);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      CHECK(check_equal(apply_vf(kostant_master(4, i), poly_invariant(4, j)),
                        combine({{Q(i + j), poly_invariant(4, i + j)}}, "rhs"), few())
                .passed);
  CHECK(check_equal(vf_commutator(kostant_master(4, 0), kostant_master(4, -1)), scaled(kostant_master(4, -1), Q(-1)), few())
            .passed);
}

TEST_CASE("generated brackets: Poisson, Casimirs, end of the ladder") {
  const int n = 3;
  for (int k = 1; k <= 3; ++k) CHECK(check_jacobi(kostant_bracket(n, k), few(6)).passed);
  CHECK(check_casimir(kostant_bracket(n, 2), determinant_x(n), few()).passed);
  CHECK(check_casimir(kostant_bracket(n, 3), trace_inverse(n), few()).passed);
  CHECK(check_equal(lie_derivative(kostant_master(n, 1), kostant_bracket(n, 3)), zero_bivector(chart(n)), few(6)).passed);
  CHECK_THROWS_AS(kostant_bracket(n, 4), std::invalid_argument);
}

TEST_CASE("rational invariants on gl(4)") {
  const RationalInvariant i21 = rational_invariant(4, 2, 1);
  const RationalInvariant i11 = rational_invariant(4, 1, 1);
  const PhasePoint x{chart(4), sample_gl4()};
  const auto& v = x.coords;
  const Q expected = (v[g(1)] * v[g(2)] * v[g(3)] - v[g(1)] * v[f(3)] * v[h(2)] - v[f(2)] * v[g(3)] * v[h(1)] +
                      v[h(1)] * v[h(2)]) / v[k1()] +
                     v[f(2)] * v[f(3)] - v[g(2)];
  CHECK(eval_scalar(i21.value, x) == expected);
  CHECK(eval_scalar(i11.value, x) == (v[g(1)] * v[h(2)] + v[g(3)] * v[h(1)]) / v[k1()] - v[f(2)] - v[f(3)]);
  CHECK(eval_scalar(i11.denominator, x) == v[k1()]);
  CHECK(check_casimir(kostant_bracket(4, 1), i11.value, few()).passed);

  // tridiagonal data: k1 = 0, so E_01 vanishes
  std::vector<Q> tri = sample_gl4();
  tri[h(1)] = tri[h(2)] = tri[k1()] = Q(0);
  CHECK(eval_scalar(i21.denominator, PhasePoint{chart(4), tri}) == 0);
  CHECK_THROWS_AS(eval_scalar(i21.value, PhasePoint{chart(4), tri}), std::domain_error);
  CHECK_THROWS_AS(rational_invariant(4, 3, 1), std::invalid_argument);
}

TEST_CASE("involution of the full family on gl(4)") {
  std::vector<ScalarField> fam = poly_invariants(4);
  for (const auto& s : rational_invariants(4)) fam.push_back(s);
  for (int k = 1; k <= 3; ++k) CHECK(check_involution(kostant_bracket(4, k), fam, few(5)).passed);
}

TEST_CASE("gl(5) master action and rational Lenard relations") {
  for (const auto& r : gl5_master_action_check(few(4))) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
  for (const auto& r : rational_lenard_check(few(4))) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
}
