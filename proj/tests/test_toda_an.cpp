#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "todalab/toda_an.hpp"

using namespace todalab;
using namespace todalab::classical;
using Q = Rational;

namespace {

SamplerConfig few(std::size_t n = 15) {
  SamplerConfig c;
  c.samples = n;
  c.seed = 5;
  return c;
}

PhasePoint at(int N, std::vector<Q> v) { return PhasePoint{flaschka_chart(N), std::move(v)}; }

Matrix<double> to_matrix(const Matrix<Q>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

}  // namespace

TEST_CASE("bracket values at hand-picked points") {
  const auto p1 = eval_bivector(bracket(2, 1), at(2, {Q(1), Q(2), Q(3)}));
  CHECK(p1(0, 1) == -1);
  CHECK(p1(0, 2) == 1);
  CHECK(p1(1, 2) == 0);
  const auto zero = eval_bivector(bracket(2, 1), at(2, {Q(0), Q(2), Q(3)}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(zero(i, j) == 0);

  const auto p2 = eval_bivector(bracket(2, 2), at(2, {Q(1), Q(2), Q(3)}));
  CHECK(p2(0, 1) == -2);
  CHECK(p2(0, 2) == 3);
  CHECK(p2(1, 2) == 2);

  // N = 3 at all ones; chart a1 a2 b1 b2 b3
  const auto q2 = eval_bivector(bracket(3, 2), at(3, {Q(1), Q(1), Q(1), Q(1), Q(1)}));
  CHECK(q2(a_index(3, 1), a_index(3, 2)) == Q(1, 2));
  CHECK(q2(a_index(3, 1), b_index(3, 1)) == -1);
  CHECK(q2(b_index(3, 1), b_index(3, 2)) == 2);

  const auto p3 = eval_bivector(bracket(2, 3), at(2, {Q(1), Q(1), Q(1)}));
  CHECK(p3(0, 1) == -2);

  // every cubic entry carries an a-factor
  const auto a0 = eval_bivector(bracket(3, 3), at(3, {Q(0), Q(0), Q(2), Q(-1), Q(5)}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(a0(i, j) == 0);
}

TEST_CASE("Lax pair and invariants for N = 2") {
  const LaxPair lax = lax_pair(2);
  const std::vector<Q> x{Q(1), Q(2), Q(3)};
  const auto L = lax_values<Q>(lax.L, 2, std::span<const Q>(x));
  const auto B = lax_values<Q>(lax.B, 2, std::span<const Q>(x));
  CHECK(L(0, 0) == 2);
  CHECK(L(0, 1) == 1);
  CHECK(L(1, 0) == 1);
  CHECK(L(1, 1) == 3);
  CHECK(B(0, 0) == 0);
  CHECK(B(0, 1) == 1);
  CHECK(B(1, 0) == -1);
  CHECK(B(1, 1) == 0);
  CHECK(eval_scalar(invariant(2, 2), at(2, {Q(1), Q(0), Q(0)})) == 1);
  CHECK(eval_scalar(invariant(2, 1), at(2, {Q(7), Q(2), Q(3)})) == 5);
  CHECK(eval_scalar(invariant(2, 3), at(2, {Q(0), Q(2), Q(3)})) == Q(8 + 27, 3));
}

TEST_CASE("Flaschka equations are pi1 grad H2 and equal pi2 grad H1") {
  const int N = 4;
  const auto flaschka = make_vector(flaschka_chart(N), {"flaschka", "test", 0}, [N](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> v(x.size(), T(0));
    for (int i = 1; i < N; ++i) v[a_index(N, i)] = x[a_index(N, i)] * (x[b_index(N, i + 1)] - x[b_index(N, i)]);
    for (int i = 1; i <= N; ++i) {
      T s(0);
      if (i < N) s += x[a_index(N, i)] * x[a_index(N, i)];
      if (i > 1) s -= x[a_index(N, i - 1)] * x[a_index(N, i - 1)];
      v[b_index(N, i)] = T(2) * s;
    }
    return v;
  });
  CHECK(check_equal(flow(N), flaschka, few()).passed);
  CHECK(check_equal(hamiltonian_vf(bracket(N, 1), invariant(N, 2)), flaschka, few()).passed);
  CHECK(check_equal(hamiltonian_vf(bracket(N, 2), invariant(N, 1)), flaschka, few()).passed);
  CHECK(check_casimir(bracket(N, 1), invariant(N, 1), few()).passed);
  CHECK(check_lax_equation(lax_pair(N), flow(N), false, few()).passed);
}

TEST_CASE("Flaschka map values") {
  const FlaschkaState s = flaschka_map({{0.0, 0.0}, {2.0, -4.0}});
  REQUIRE(s.a.size() == 1);
  CHECK(s.a[0] == doctest::Approx(0.5));
  CHECK(s.b[0] == doctest::Approx(-1.0));
  CHECK(s.b[1] == doctest::Approx(2.0));
  const auto t = flaschka_map({{2.0, 0.0}, {0.0, 0.0}});
  CHECK(t.a[0] == doctest::Approx(0.5 * std::exp(1.0)));
}

TEST_CASE("brackets are Poisson and pairwise compatible") {
  for (int N : {2, 3})
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(N);
      CAPTURE(n);
      CHECK(check_jacobi(bracket(N, n), few(10)).passed);
      for (int m = n + 1; m <= 4; ++m) CHECK(check_compatibility(bracket(N, n), bracket(N, m), few(10)).passed);
    }
}

TEST_CASE("master fields X_-1, X_0, X_1") {
  const int N = 3;
  for (int m = 1; m <= N; ++m) {
    CAPTURE(m);
    CHECK(check_equal(apply_vf(master_field(N, 0), invariant(N, m)), combine({{Q(m), invariant(N, m)}}, "m*Hm"), few())
              .passed);
    if (m < N)
      CHECK(check_equal(apply_vf(master_field(N, 1), invariant(N, m)), combine({{Q(m + 1), invariant(N, m + 1)}}, "Hm+1"),
                        few())
                .passed);
    if (m >= 2)
      CHECK(check_equal(apply_vf(master_field(N, -1), invariant(N, m)), combine({{Q(m - 1), invariant(N, m - 1)}}, "Hm-1"),
                        few())
                .passed);
  }
  // X_1 at all ones: adot_1 = 2
  const auto v = eval_vector(master_field(N, 1), at(N, {Q(1), Q(1), Q(1), Q(1), Q(1)}));
  CHECK(v[a_index(N, 1)] == 2);
  // [X_0, X_-1] = -X_-1
  CHECK(check_equal(vf_commutator(master_field(N, 0), master_field(N, -1)), scaled(master_field(N, -1), Q(-1)), few()).passed);
  // L_{X_-1} pi_2 = pi_1 and L_{X_0} pi_1 = -pi_1
  CHECK(check_equal(lie_derivative(master_field(N, -1), bracket(N, 2)), bracket(N, 1), few()).passed);
  CHECK(check_equal(lie_derivative(master_field(N, 0), bracket(N, 1)), scaled(bracket(N, 1), Q(-1)), few()).passed);
}

TEST_CASE("Lenard relations and their domain guard") {
  CHECK(lenard_check(4, 2, 1, few(10)).passed);
  CHECK(lenard_check(4, 3, 2, few(10)).passed);
  CHECK(lenard_check(4, 4, 1, few(5)).passed);
  CHECK_THROWS_AS(lenard_check(4, 1, 1, few()), std::invalid_argument);
}

TEST_CASE("Casimirs of the higher brackets") {
  const int N = 3;
  CHECK(check_casimir(bracket(N, 2), det_l(N), few()).passed);
  CHECK(check_casimir(bracket(N, 3), trace_inverse_power(N, 1), few()).passed);
  CHECK(check_casimir(bracket(N, 4), trace_inverse_power(N, 2), few(5)).passed);
  // H_2 is not a Casimir of pi_1
  CHECK_FALSE(check_casimir(bracket(N, 1), invariant(N, 2), few()).passed);
}

TEST_CASE("eigenvalue gradients") {
  // N = 2, a = 1/2, b = 0: lambda = 1/2, v = (1,1)/sqrt 2
  const FlaschkaState s{{0.5}, {0.0, 0.0}};
  const auto g = eigen_gradient(s, 1);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK(g[2] == doctest::Approx(0.5));
  CHECK_THROWS(eigen_gradient(FlaschkaState{{0.0}, {1.0, 1.0}}, 0));  // double eigenvalue

  // pi_n grad lambda = lambda pi_{n-1} grad lambda at a generic point
  const int N = 3;
  const std::vector<Q> xq{Q(1, 2), Q(-2, 3), Q(1), Q(-1, 2), Q(2)};
  const FlaschkaState st{{0.5, -2.0 / 3.0}, {1.0, -0.5, 2.0}};
  const auto L = to_eigen(lax_values<double>(lax_pair(N).L, N, std::span<const double>(std::vector<double>{
                                                                    0.5, -2.0 / 3.0, 1.0, -0.5, 2.0})));
  const RealVector lambdas = eigenvalues(L);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto grad = eigen_gradient(st, k);
    for (int n = 2; n <= 3; ++n) {
      const auto hi = to_matrix(eval_bivector(bracket(N, n), PhasePoint{flaschka_chart(N), xq}));
      const auto lo = to_matrix(eval_bivector(bracket(N, n - 1), PhasePoint{flaschka_chart(N), xq}));
      for (std::size_t i = 0; i < 5; ++i) {
        double l = 0.0, r = 0.0;
        for (std::size_t j = 0; j < 5; ++j) {
          l += hi(i, j) * grad[j];
          r += lo(i, j) * grad[j];
        }
        CHECK(l == doctest::Approx(lambdas[static_cast<Eigen::Index>(k)] * r).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("shift isomorphism") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(shift_isomorphism_check(3, n, few(8)).passed);
  }
}

TEST_CASE("symmetry residual and its negative control") {
  for (int n = -1; n <= 1; ++n) {
    CAPTURE(n);
    CHECK(symmetry_residual(3, n, few(10)).passed);
  }
  const auto bad = symmetry_residual(3, 1, few(10), true);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual_value > 0.0);
  CHECK(bad.witness.has_value());
}

TEST_CASE("canonical side: conformal symmetry and Poisson maps") {
  const int N = 3;
  const auto s = canonical_structures(N);
  SamplerConfig f = few(10);
  f.mode = Mode::real;
  f.max_numerator = 3;
  CHECK(check_equal(lie_derivative(s.Z0, s.J0), scaled(s.J0, Q(-1)), f).passed);
  CHECK(check_equal(lie_derivative(s.Z0, s.J1), zero_bivector(s.J1.chart), f).passed);
  CHECK(check_equal(apply_vf(s.Z0, s.h0), s.h0, f).passed);
  CHECK(check_jacobi(s.J1, f).passed);
  CHECK(check_poisson_map(flaschka_smooth_map(N), scaled(s.J0, Q(4)), bracket(N, 1), f).passed);
  CHECK(check_poisson_map(flaschka_smooth_map(N), scaled(s.J1, Q(2)), bracket(N, 2), f).passed);
  // without the factor 4 the map is not Poisson
  CHECK_FALSE(check_poisson_map(flaschka_smooth_map(N), s.J0, bracket(N, 1), f).passed);
  for (int i = 0; i <= 2; ++i) CHECK(reduction_check(N, i, f).passed);
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(flaschka_chart(1), std::invalid_argument);
  CHECK_THROWS_AS(bracket(3, 0), std::invalid_argument);
}
