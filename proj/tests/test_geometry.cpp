#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/poly.hpp"
#include "todalab/toda_an.hpp"

using namespace todalab;
using Q = Rational;

namespace {

ChartPtr plane3() { return make_chart("test-xyz", {"x", "y", "z"}); }

/// {x,y} = z, {y,z} = x, {z,x} = y: the so(3) Lie-Poisson bracket.
BivectorField so3() {
  return make_bivector(plane3(), {"so3", "test", 1}, [](const auto& x, auto& out) {
    out.set(0, 1, x[2]);
    out.set(1, 2, x[0]);
    out.set(2, 0, x[1]);
  });
}

/// Not Poisson: {x,y} = x^2, {y,z} = y, {z,x} = 0 has Jacobiator x^2.
BivectorField bad_quadratic() {
  return make_bivector(plane3(), {"badq", "test", 2}, [](const auto& x, auto& out) {
    out.set(0, 1, x[0] * x[0]);
    out.set(1, 2, x[1]);
  });
}

/// Broken tensor on (a1, b1, b2): {a1,b1} = b1, {a1,b2} = a1.
BivectorField tau() {
  return make_bivector(classical::flaschka_chart(2), {"tau", "test", 0}, [](const auto& x, auto& out) {
    out.set(0, 1, x[1]);
    out.set(0, 2, x[0]);
  });
}

/// Twice the Jacobiator from central differences of the tensor entries.
double fd_schouten(const BivectorField& pi, std::vector<double> x, std::size_t i, std::size_t j, std::size_t k) {
  const double h = 1e-5;
  const RealPoint p{pi.chart, x};
  const Matrix<double> m = eval_bivector(pi, p);
  auto d = [&](std::size_t a, std::size_t b, std::size_t l) {
    std::vector<double> xp = x, xm = x;
    xp[l] += h;
    xm[l] -= h;
    return (eval_bivector(pi, RealPoint{pi.chart, xp})(a, b) - eval_bivector(pi, RealPoint{pi.chart, xm})(a, b)) / (2 * h);
  };
  double acc = 0.0;
  const std::size_t idx[3] = {i, j, k};
  for (int c = 0; c < 3; ++c) {
    const std::size_t u = idx[c], v = idx[(c + 1) % 3], w = idx[(c + 2) % 3];
    for (std::size_t l = 0; l < x.size(); ++l) acc += m(u, l) * d(v, w, l);
  }
  return 2.0 * acc;
}

}  // namespace

TEST_CASE("bivector storage is antisymmetric") {
  const auto pi = so3();
  const PhasePoint x{plane3(), {Q(1), Q(2), Q(3)}};
  const auto m = eval_bivector(pi, x);
  CHECK(m(0, 1) == 3);
  CHECK(m(1, 0) == -3);
  CHECK(m(2, 0) == 2);
  CHECK(m(0, 2) == -2);
  CHECK(m(0, 0) == 0);
}

TEST_CASE("Schouten self-bracket agrees with a finite-difference Jacobiator") {
  const std::vector<BivectorField> fields{so3(), bad_quadratic(), classical::bracket(3, 2)};
  for (const auto& pi : fields) {
    std::vector<double> x;
    for (std::size_t k = 0; k < pi.chart->dimension(); ++k) x.push_back(0.3 + 0.7 * static_cast<double>(k));
    const auto s = schouten_22(pi, pi, RealPoint{pi.chart, x});
    for (const auto& t : s.triples()) {
      const double fd = fd_schouten(pi, x, t[0], t[1], t[2]);
      CHECK(s.get(t[0], t[1], t[2]) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("broken tensor has the hand-computed nonzero component") {
  // [tau,tau]^{a1 b1 b2} = 2 tau^{b1 a1} d_{a1} tau^{b2 a1} = 2 b1
  const auto t = tau();
  const PhasePoint x{t.chart, {Q(1), Q(3), Q(5)}};
  const auto s = schouten_22(t, t, x);
  CHECK(s.get(0, 1, 2) == 6);
  CHECK(s.get(1, 0, 2) == -6);
}

TEST_CASE("Jacobi check certifies so(3) and reports a witness for the broken tensor") {
  SamplerConfig c;
  c.samples = 30;
  c.seed = 5;
  CHECK(check_jacobi(so3(), c).passed);
  const IdentityReport r = check_jacobi(tau(), c);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->sample_index == 0);
  CHECK(r.witness->point.size() == 3);
  CHECK(r.max_residual != "0");
  CHECK(r.max_residual_value > 0.0);
  CHECK_FALSE(check_jacobi(bad_quadratic(), c).passed);
}

TEST_CASE("constant bivectors are Poisson and compatible with each other") {
  const auto s = classical::canonical_structures(2);
  SamplerConfig c;
  c.samples = 10;
  c.mode = Mode::real;
  CHECK(check_jacobi(s.J0, c).passed);
  CHECK(check_compatibility(s.J0, scaled(s.J0, Q(3)), c).passed);
}

TEST_CASE("Lie derivative along the Euler field scales by degree minus two") {
  const auto euler = make_vector(plane3(), {"E", "test", 0}, [](const auto& x) { return x; });
  SamplerConfig c;
  c.samples = 10;
  // so3 is linear: L_E pi = (1 - 2) pi
  CHECK(check_equal(lie_derivative(euler, so3()), scaled(so3(), Q(-1)), c).passed);
  // homogeneous quadratic: L_E pi = 0
  const auto quad = make_bivector(plane3(), {"quad", "test", 2}, [](const auto& x, auto& out) {
    out.set(0, 1, x[0] * x[2]);
    out.set(1, 2, x[0] * x[0]);
  });
  CHECK(check_equal(lie_derivative(euler, quad), zero_bivector(plane3()), c).passed);
  // mixed degrees do not scale uniformly
  CHECK_FALSE(check_equal(lie_derivative(euler, bad_quadratic()), zero_bivector(plane3()), c).passed);
}

TEST_CASE("vector field commutator on monomial fields") {
  const auto dx = make_vector(plane3(), {"dx", "test", 0}, [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return std::vector<T>{T(1), T(0), T(0)};
  });
  const auto xdy = make_vector(plane3(), {"xdy", "test", 0}, [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return std::vector<T>{T(0), x[0], T(0)};
  });
  const auto dy = make_vector(plane3(), {"dy", "test", 0}, [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return std::vector<T>{T(0), T(1), T(0)};
  });
  SamplerConfig c;
  c.samples = 5;
  CHECK(check_equal(vf_commutator(dx, xdy), dy, c).passed);
  CHECK(check_equal(vf_commutator(xdy, dx), scaled(dy, Q(-1)), c).passed);
}

TEST_CASE("Hamiltonian vector field uses chi^i = pi^{ij} d_j H") {
  const auto s = classical::canonical_structures(2);  // chart (q1, q2, p1, p2), {q_i,p_i} = 1
  const auto H = make_scalar(s.J0.chart, {"p1^2/2", "test", 0},
                             [](const auto& x) { return x[2] * x[2] * frac<std::decay_t<decltype(x[0])>>(1, 2); });
  const RealPoint x{s.J0.chart, {0.25, -1.0, 3.0, 2.0}};
  const auto v = eval_vector(hamiltonian_vf(s.J0, H), x);
  CHECK(v[0] == doctest::Approx(3.0));  // q1dot = p1
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(0.0));
  CHECK(v[3] == doctest::Approx(0.0));
}

TEST_CASE("Poisson bracket of coordinate functions reads the table") {
  const auto pi = so3();
  const auto fx = make_scalar(plane3(), {"x", "test", 0}, [](const auto& x) { return x[0]; });
  const auto fy = make_scalar(plane3(), {"y", "test", 0}, [](const auto& x) { return x[1]; });
  const PhasePoint p{plane3(), {Q(2), Q(5), Q(7)}};
  CHECK(poisson_bracket(pi, fx, fy, p) == 7);
  CHECK(poisson_bracket(pi, fy, fx, p) == -7);
}

TEST_CASE("Casimir and involution checks, including the {q1, p1} control") {
  SamplerConfig c;
  c.samples = 10;
  const auto r2 = make_scalar(plane3(), {"r2", "test", 0}, [](const auto& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; });
  CHECK(check_casimir(so3(), r2, c).passed);
  const auto fx = make_scalar(plane3(), {"x", "test", 0}, [](const auto& x) { return x[0]; });
  CHECK_FALSE(check_casimir(so3(), fx, c).passed);

  const auto s = classical::canonical_structures(2);
  const auto q1 = make_scalar(s.J0.chart, {"q1", "test", 0}, [](const auto& x) { return x[0]; });
  const auto p1 = make_scalar(s.J0.chart, {"p1", "test", 0}, [](const auto& x) { return x[2]; });
  const IdentityReport r = check_involution(s.J0, {q1, p1}, c);
  CHECK_FALSE(r.passed);
  CHECK(r.max_residual_value > 0.0);
  REQUIRE(r.witness.has_value());
}

TEST_CASE("Poisson map check: doubling map between linear brackets") {
  const auto F = make_map("double", plane3(), plane3(), [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return std::vector<T>{T(2) * x[0], T(2) * x[1], T(2) * x[2]};
  });
  SamplerConfig c;
  c.samples = 10;
  CHECK(check_poisson_map(F, so3(), scaled(so3(), Q(2)), c).passed);
  CHECK_FALSE(check_poisson_map(F, so3(), so3(), c).passed);
}

TEST_CASE("translated bracket evaluates at the shifted point") {
  const auto t = translated(so3(), {Q(1), Q(0), Q(0)});
  const PhasePoint x{plane3(), {Q(2), Q(5), Q(7)}};
  CHECK(eval_bivector(t, x)(1, 2) == 3);
}

TEST_CASE("sampling is deterministic and respects predicates") {
  const Predicate nonzero_x{"x", formula_evaluator(1, [](const auto& x) { return std::vector{x[0]}; })};
  PointSampler a(11, 9), b(11, 9), d(12, 9);
  for (int k = 0; k < 50; ++k) {
    const auto pa = a.draw<Q>(3, {nonzero_x});
    const auto pb = b.draw<Q>(3, {nonzero_x});
    CHECK(pa == pb);
    CHECK(pa[0] != 0);
    for (const auto& v : pa) {
      CHECK(abs(v) <= 9);
      CHECK(v.get_den() <= 3);
    }
  }
  CHECK(a.draw<Q>(3, {}) != d.draw<Q>(3, {}));

  SamplerConfig c;
  c.samples = 20;
  c.seed = 99;
  const auto r1 = check_jacobi(bad_quadratic(), c);
  const auto r2 = check_jacobi(bad_quadratic(), c);
  REQUIRE(r1.witness.has_value());
  REQUIRE(r2.witness.has_value());
  CHECK(r1.max_residual == r2.max_residual);
  CHECK(r1.witness->point == r2.witness->point);
}

TEST_CASE("mode selection follows the chart") {
  SamplerConfig c;
  c.samples = 5;
  CHECK(check_jacobi(so3(), c).mode == Mode::exact);
  c.mode = Mode::real;
  const auto r = check_jacobi(so3(), c);
  CHECK(r.mode == Mode::real);
  CHECK(r.passed);
  // Canonical charts carry exponentials and always run in float mode.
  c.mode = Mode::exact;
  CHECK(check_jacobi(classical::canonical_structures(2).J1, c).mode == Mode::real);
  c.mode = Mode::real;
  c.tolerance = 0.0;
  CHECK_THROWS_AS(check_jacobi(so3(), c), std::invalid_argument);
}

TEST_CASE("float residual is relative and compared with the tolerance") {
  const Predicate nonzero_x{"x", formula_evaluator(1, [](const auto& x) { return std::vector{x[0]}; })};
  const auto a = make_scalar(
      plane3(), {"a", "test", 0}, [](const auto& x) { return x[0] * frac<std::decay_t<decltype(x[0])>>(1000000, 1); },
      {nonzero_x});
  const auto b = make_scalar(plane3(), {"b", "test", 0}, [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return x[0] * frac<T>(1000000, 1) + frac<T>(1, 1000);
  });
  SamplerConfig c;
  c.samples = 10;
  c.mode = Mode::real;
  c.tolerance = 1e-6;
  // absolute gap 1e-3 against |x| * 1e6 >= 3e5
  const auto r = check_equal(a, b, c, "shift");
  CHECK(r.passed);
  CHECK(r.max_residual_value < 2e-9);
  c.tolerance = 1e-12;
  CHECK_FALSE(check_equal(a, b, c, "shift").passed);
  c.mode = Mode::exact;
  const auto e = check_equal(a, b, c, "shift");
  CHECK_FALSE(e.passed);
  CHECK(e.max_residual == "1/1000");
}

TEST_CASE("evaluation on a singular locus is rejected") {
  const auto inv = make_scalar(
      plane3(), {"1/x", "test", 0}, [](const auto& x) { return decltype(x[0] + x[0])(1) / x[0]; },
      {Predicate{"x", formula_evaluator(1, [](const auto& x) { return std::vector{x[0]}; })}});
  CHECK_THROWS_AS(eval_scalar(inv, PhasePoint{plane3(), {Q(0), Q(1), Q(1)}}), std::domain_error);
  CHECK(eval_scalar(inv, PhasePoint{plane3(), {Q(4), Q(1), Q(1)}}) == Q(1, 4));
}

TEST_CASE("mixing charts is an error") {
  SamplerConfig c;
  c.samples = 2;
  CHECK_THROWS(check_compatibility(so3(), tau(), c));
}
