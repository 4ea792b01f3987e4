#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "todalab/exact.hpp"
#include "todalab/jet.hpp"

using namespace todalab;
using J = Jet<Rational>;
using D = Jet<double>;

TEST_CASE("rational construction is reduced with a positive denominator") {
  Rational r = make_rational(6, -4);
  CHECK(r.get_num() == -3);
  CHECK(r.get_den() == 2);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("monomial packing and graded order") {
  const Monomial x = Monomial::variable(0);
  const Monomial y = Monomial::variable(3);
  const Monomial xy = x * y;
  CHECK(xy.degree() == 2);
  CHECK(xy == y * x);
  CHECK(xy.count(0) == 1);
  CHECK(xy.count(3) == 1);
  CHECK(xy.without(3) == x);
  CHECK(x < y);
  CHECK(y < xy);
  CHECK((x * x * x).count(0) == 3);
}

TEST_CASE("dual arithmetic obeys product and quotient rules exactly") {
  // f(x,y) = x^2 y / (1 + y) at (2, 1/3)
  const J x = J::variable(Rational(2), 0, 1);
  const J y = J::variable(make_rational(1, 3), 1, 1);
  const J f = x * x * y / (J(1) + y);
  CHECK(f.value() == make_rational(1, 1));
  // df/dx = 2xy/(1+y) = (4/3)/(4/3) = 1
  CHECK(f.partial(0) == 1);
  // df/dy = x^2/(1+y)^2 = 4/(16/9) = 9/4
  CHECK(f.partial(1) == make_rational(9, 4));
}

TEST_CASE("higher-order jets give exact second and third derivatives") {
  // f = x^3 y at (1,2): f_xx = 6xy = 12, f_xxy = 6x = 6
  const J x = J::variable(Rational(1), 0, 3);
  const J y = J::variable(Rational(2), 1, 3);
  const J f = x * x * x * y;
  const J fxx = f.derivative(0).derivative(0);
  CHECK(fxx.value() == 12);
  CHECK(fxx.order() == 1);
  CHECK(fxx.partial(1) == 6);
  CHECK(f.derivative(0).derivative(1).value() == 3);
}

TEST_CASE("truncation follows the lowest operand order") {
  const J x = J::variable(Rational(0), 0, 2);
  const J cube = x * x * x;
  CHECK(cube.is_zero());
  CHECK(cube.order() == 2);
  const J c(Rational(5));
  CHECK((c * x).order() == 2);
}

TEST_CASE("reciprocal series matches the derivative of 1/x") {
  const J x = J::variable(Rational(2), 0, 3);
  const J r = reciprocal(x);
  CHECK(r.value() == make_rational(1, 2));
  CHECK(r.partial(0) == make_rational(-1, 4));
  CHECK(r.derivative(0).derivative(0).value() == make_rational(2, 8));
  CHECK_THROWS_AS(reciprocal(J::variable(Rational(0), 0, 1)), std::domain_error);
}

TEST_CASE("float exp and sqrt series against closed forms") {
  const D x = D::variable(0.3, 0, 3);
  const D e = exp(x);
  CHECK(e.value() == doctest::Approx(std::exp(0.3)));
  CHECK(e.derivative(0).derivative(0).value() == doctest::Approx(std::exp(0.3)));
  const D s = sqrt(D::variable(4.0, 0, 2));
  CHECK(s.value() == doctest::Approx(2.0));
  CHECK(s.partial(0) == doctest::Approx(0.25));
  CHECK(s.derivative(0).derivative(0).value() == doctest::Approx(-1.0 / 32.0));
}

TEST_CASE("exact exp refuses irrational values but expands around zero") {
  CHECK_THROWS_AS(exp(J::variable(Rational(1), 0, 1)), std::domain_error);
  const J e = exp(J::variable(Rational(0), 0, 2));
  CHECK(e.value() == 1);
  CHECK(e.partial(0) == 1);
}

TEST_CASE("integer powers including negative exponents") {
  const J x = J::variable(Rational(3), 0, 1);
  CHECK(pow(x, 3).partial(0) == 27);
  CHECK(pow(x, -1).partial(0) == make_rational(-1, 9));
  CHECK(pow(x, 0).value() == 1);
}
