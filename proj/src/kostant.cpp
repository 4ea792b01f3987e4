#include "todalab/kostant.hpp"

#include <stdexcept>
#include <string>

namespace todalab::kostant {

namespace {

std::string tag(int n) { return "kostant-gl" + std::to_string(n); }

void require_size(int n) {
  if (n < 2 || n > 6) throw std::invalid_argument("full Kostant-Toda is supported for gl(2)..gl(6)");
}

template <class T>
T cst(long num, long den = 1) {
  return T::fraction(num, den);
}

template <class T>
std::vector<T> lower_part(const Matrix<T>& m, int n) {
  std::vector<T> out(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) out[index(n, i, j)] = m(i - 1, j - 1);
  return out;
}

// Y of the X_1 ansatz: alpha_i = i f_i + sum_{k<i} f_k, beta_i = i.
template <class T>
Matrix<T> y_first(const std::vector<T>& x, int n) {
  Matrix<T> Y(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  T partial;
  for (int i = 1; i <= n; ++i) {
    const T f = x[index(n, i, i)];
    Y(i - 1, i - 1) = cst<T>(i) * f + partial;
    partial += f;
    if (i < n) Y(i - 1, i) = cst<T>(i);
  }
  return Y;
}

// Y of the X_2 ansatz, g_0 = g_n = 0.
template <class T>
Matrix<T> y_second(const std::vector<T>& x, int n) {
  Matrix<T> Y(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  auto f = [&](int i) { return (i < 1 || i > n) ? T() : x[index(n, i, i)]; };
  auto g = [&](int i) { return (i < 1 || i > n - 1) ? T() : x[index(n, i + 1, i)]; };
  for (int i = 1; i <= n; ++i) {
    T sum_f, sum_f2, sum_g;
    for (int k = 1; k < i; ++k) {
      sum_f += f(k);
      sum_f2 += f(k) * f(k);
    }
    for (int k = 1; k <= i - 2; ++k) sum_g += g(k);
    Y(i - 1, i - 1) = cst<T>(i) * f(i) * f(i) + sum_f2 + f(i) * sum_f + cst<T>(i) * (g(i) + g(i - 1)) +
                      cst<T>(2) * sum_g;
    if (i < n) Y(i - 1, i) = cst<T>(i) * (f(i + 1) + f(i)) + sum_f;
    if (i + 1 < n) Y(i - 1, i + 1) = cst<T>(i);
  }
  return Y;
}

// [Y, X] + X^{power}.
template <class T>
Matrix<T> ansatz_rhs(const std::vector<T>& x, int n, int which) {
  const Matrix<T> X = state_matrix(x, n);
  const Matrix<T> Y = which == 1 ? y_first(x, n) : y_second(x, n);
  return commutator(Y, X) + power(X, which + 1);
}

ScalarField scaled_scalar(const ScalarField& f, const Rational& c) {
  ScalarField out = combine({{c, f}}, f.info.name);
  out.singular = f.singular;
  return out;
}

template <class S>
S value_of_field(const ScalarField& f, std::span<const S> x) {
  return f.jet(x, 0).value();
}

}  // namespace

std::size_t index(int n, int i, int j) {
  if (j < 1 || i > n || j > i) throw std::out_of_range("Kostant chart holds x_ij with 1 <= j <= i <= n");
  const int d = i - j;
  // Subdiagonals 0..d-1 hold n, n-1, ..., n-d+1 entries.
  return static_cast<std::size_t>(d * n - d * (d - 1) / 2 + (j - 1));
}

ChartPtr chart(int n) {
  require_size(n);
  std::vector<std::string> labels(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) labels[index(n, i, j)] = "x" + std::to_string(i) + std::to_string(j);
  return make_chart(tag(n), labels);
}

LaxPair lax(int n) {
  require_size(n);
  const std::size_t m = static_cast<std::size_t>(n);
  auto L = matrix_evaluator(m, [n](const auto& x, auto& out) { out = state_matrix(x, n); });
  auto B = matrix_evaluator(m, [n](const auto& x, auto& out) {
    for (int i = 2; i <= n; ++i)
      for (int j = 1; j < i; ++j) out(i - 1, j - 1) = x[index(n, i, j)];
  });
  return LaxPair{chart(n), m, L, B};
}

VectorField kostant_flow(int n) {
  return make_vector(chart(n), {"kostant", tag(n), 0}, [n](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    const Matrix<T> X = state_matrix(x, n);
    Matrix<T> P(X.rows(), X.cols());
    for (int i = 2; i <= n; ++i)
      for (int j = 1; j < i; ++j) P(i - 1, j - 1) = X(i - 1, j - 1);
    return lower_part(commutator(X, P), n);
  });
}

BivectorField kostant_bracket(int n, int idx) {
  require_size(n);
  if (idx == 1) {
    return make_bivector(chart(n), {"pi1", tag(n), 1}, [n](const auto& x, auto& out) {
      using T = std::decay_t<decltype(x[0])>;
      // Lower-triangular entry, or zero when the indices leave the chart.
      auto entry = [&](int i, int j) { return j <= i ? x[index(n, i, j)] : T(); };
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j)
          for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= k; ++l) {
              const std::size_t a = index(n, i, j), b = index(n, k, l);
              if (a >= b) continue;
              T v;
              if (l == i) v += entry(k, j);
              if (j == k) v -= entry(i, l);
              if (!v.is_zero()) out.set(a, b, v);
            }
    });
  }
  if (idx == 2 || idx == 3) {
    const Rational c = idx == 2 ? make_rational(-1, 2) : make_rational(-1);
    BivectorField out = scaled(lie_derivative(kostant_master(n, 1), kostant_bracket(n, idx - 1)), c);
    out.info = {"pi" + std::to_string(idx), tag(n), idx};
    return out;
  }
  throw std::invalid_argument("Kostant brackets are pi_1, pi_2 and pi_3");
}

VectorField kostant_master(int n, int idx) {
  const ChartPtr c = chart(n);
  const std::string name = "X" + std::to_string(idx);
  if (idx == -1) {
    return make_vector(c, {name, tag(n), -1}, [n](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      std::vector<T> out(x.size());
      for (int i = 1; i <= n; ++i) out[index(n, i, i)] = T(1);
      return out;
    });
  }
  if (idx == 0) {
    return make_vector(c, {name, tag(n), 0}, [](const auto& x) { return x; });
  }
  if (idx == 1 || idx == 2) {
    return make_vector(c, {name, tag(n), idx}, [n, idx](const auto& x) { return lower_part(ansatz_rhs(x, n, idx), n); });
  }
  if (idx < -1) throw std::invalid_argument("Kostant master symmetries start at X_-1");
  VectorField out = scaled(vf_commutator(kostant_master(n, 1), kostant_master(n, idx - 1)), make_rational(1, idx - 2));
  out.info = {name, tag(n), idx};
  return out;
}

IdentityReport master_consistency(int n, int idx, const SamplerConfig& config) {
  if (idx != 1 && idx != 2) throw std::invalid_argument("the Y ansatz exists for X_1 and X_2");
  const ChartPtr c = chart(n);
  auto g = [n, idx](auto xs) {
    using S = typename decltype(xs)::value_type;
    std::vector<Jet<S>> x(xs.begin(), xs.end());
    const Matrix<Jet<S>> m = ansatz_rhs(x, n, idx);
    Comparison<S> out;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) out.lhs.push_back(m(i - 1, j - 1).value());
    return out;
  };
  auto label = [n](std::size_t k) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (k-- == 0) return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    return std::string("?");
  };
  return run_check(make_check("X" + std::to_string(idx) + " ansatz stays on the chart", c, {}, g, label), config);
}

ScalarField poly_invariant(int n, int k) { return trace_power(lax(n), k, tag(n)); }

ScalarField determinant_x(int n) { return lax_determinant(lax(n), tag(n)); }

ScalarField trace_inverse(int n) {
  const LaxPair l = lax(n);
  const std::size_t size = l.size;
  const Evaluator L = l.L;
  auto g = [L, size](auto x, int order) {
    using S = typename decltype(x)::value_type;
    return std::vector<Jet<S>>{trace(inverse(lax_jets(L, size, x, order)))};
  };
  Predicate nonsingular{"detX", determinant_x(n).eval};
  return ScalarField{l.chart, {"trX^-1", tag(n), -1}, point_evaluator(1, g, true), {nonsingular}};
}

std::vector<ScalarField> poly_invariants(int n) {
  std::vector<ScalarField> out;
  for (int k = 1; k <= n; ++k) out.push_back(poly_invariant(n, k));
  return out;
}

RationalInvariant rational_invariant(int n, int r, int k) {
  require_size(n);
  if (k < 0 || 2 * k > n - 1) throw std::invalid_argument("minor index k must satisfy 0 <= k <= (n-1)/2");
  if (r < 1 || r > n - 2 * k) throw std::invalid_argument("coefficient index r must satisfy 1 <= r <= n-2k");
  const int deg = n - 2 * k;
  // Coefficient of lambda^{deg - s} in det((X - lambda)_{(k)}).
  auto coefficient = [n, k, deg](int s) {
    return [n, k, deg, s](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      using P = Poly1<T>;
      const Matrix<T> X = state_matrix(x, n);
      const std::size_t m = static_cast<std::size_t>(deg + k);
      Matrix<P> M(m, m);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const std::size_t row = a + static_cast<std::size_t>(k);
          P v(X(row, b));
          if (row == b) v = v - P::lambda();
          M(a, b) = v;
        }
      return determinant(M).coefficient(deg - s);
    };
  };
  const ChartPtr c = chart(n);
  const std::string kk = std::to_string(k);
  const std::string rk = std::to_string(r) + kk;
  RationalInvariant inv;
  inv.r = r;
  inv.k = k;
  inv.numerator = make_scalar(c, {"E" + rk, tag(n), 0}, coefficient(r));
  inv.denominator = make_scalar(c, {"E0" + kk, tag(n), 0}, coefficient(0));
  Predicate nonzero{"E0" + kk, inv.denominator.eval};
  auto num = coefficient(r), den = coefficient(0);
  inv.value = make_scalar(c, {"I" + rk, tag(n), 0}, [num, den](const auto& x) { return num(x) / den(x); }, {nonzero});
  return inv;
}

std::vector<ScalarField> rational_invariants(int n) {
  std::vector<ScalarField> out;
  for (int k = 1; 2 * k <= n - 1; ++k)
    for (int r = 1; r <= n - 2 * k; ++r) out.push_back(rational_invariant(n, r, k).value);
  return out;
}

ScalarField gl5_k(int i) {
  static const int rk[4][2] = {{1, 1}, {2, 1}, {3, 1}, {1, 2}};
  if (i < 1 || i > 4) throw std::invalid_argument("gl(5) has rational invariants K_1..K_4");
  // The X_1 and X_2 actions hold with K_i = -I_rk.
  ScalarField f = scaled_scalar(rational_invariant(5, rk[i - 1][0], rk[i - 1][1]).value, make_rational(-1));
  f.info.name = "K" + std::to_string(i);
  return f;
}

std::vector<IdentityReport> gl5_master_action_check(const SamplerConfig& config) {
  const ChartPtr c = chart(5);
  std::vector<ScalarField> K;
  for (int i = 1; i <= 4; ++i) K.push_back(gl5_k(i));
  std::vector<ScalarField> H = poly_invariants(5);
  const VectorField X1 = kostant_master(5, 1), X2 = kostant_master(5, 2);
  std::vector<Predicate> preds;
  for (const auto& k : K) preds = merge_predicates(preds, k.singular);
  std::vector<ScalarField> lhs;
  for (int i = 0; i < 4; ++i) lhs.push_back(apply_vf(X1, K[i]));
  lhs.push_back(apply_vf(X2, K[2]));

  std::vector<IdentityReport> out;
  auto run = [&](std::string name, std::size_t which, auto rhs) {
    const ScalarField l = lhs[which];
    auto g = [l, K, H, rhs](auto x) {
      using S = typename decltype(x)::value_type;
      std::vector<S> k, h;
      for (const auto& f : K) k.push_back(value_of_field(f, x));
      for (const auto& f : H) h.push_back(value_of_field(f, x));
      return Comparison<S>{{value_of_field(l, x)}, {rhs(k, h)}};
    };
    out.push_back(run_check(make_check(std::move(name), c, preds, g, [](std::size_t) { return "value"; }), config));
  };
  run("X1(K1) = 2K2 + K1^2", 0, [](const auto& k, const auto&) -> std::decay_t<decltype(k[0])> { return 2 * k[1] + k[0] * k[0]; });
  run("X1(K2) = 3K3 + K1K2", 1, [](const auto& k, const auto&) -> std::decay_t<decltype(k[0])> { return 3 * k[2] + k[0] * k[1]; });
  run("X1(K3) = K1K3", 2, [](const auto& k, const auto&) -> std::decay_t<decltype(k[0])> { return k[0] * k[2]; });
  run("X1(K4) = K4^2", 3, [](const auto& k, const auto&) -> std::decay_t<decltype(k[0])> { return k[3] * k[3]; });
  run("X2(K3) printed expression", 4, [](const auto& k, const auto& h) -> std::decay_t<decltype(k[0])> {
    using S = std::decay_t<decltype(k[0])>;
    const S &H1 = h[0], &H2 = h[1], &H3 = h[2], &H4 = h[3], &H5 = h[4];
    const S &K1 = k[0], &K2 = k[1], &K3 = k[2];
    const S half = S(1) / S(2);
    return H1 * H1 * H1 * H1 * H1 / S(120) - H1 * H1 * H1 * H2 / S(6) + H1 * K1 * K3 - half * H1 * H1 * K3 +
           half * H1 * H2 * H2 + half * H1 * H1 * H3 - H1 * H4 + K2 * K3 - H2 * H3 + K3 * H2 + H5;
  });
  return out;
}

std::vector<IdentityReport> rational_lenard_check(const SamplerConfig& config) {
  const BivectorField p1 = kostant_bracket(5, 1), p2 = kostant_bracket(5, 2), p3 = kostant_bracket(5, 3);
  std::vector<ScalarField> K;
  for (int i = 1; i <= 4; ++i) K.push_back(gl5_k(i));
  std::vector<IdentityReport> out;
  for (int i = 0; i < 3; ++i) {
    const std::string name =
        "pi1 grad K" + std::to_string(i + 2) + " = pi2 grad K" + std::to_string(i + 1);
    out.push_back(check_equal(hamiltonian_vf(p1, K[i + 1]), hamiltonian_vf(p2, K[i]), config, name));
  }
  const ScalarField K1 = K[0], K2 = K[1];
  ScalarField M1{K1.chart, {"M1", K1.info.system, 0},
                 point_evaluator(
                     1,
                     [K1, K2](auto x, int order) {
                       using S = typename decltype(x)::value_type;
                       const Jet<S> k1 = K1.jet(x, order);
                       return std::vector<Jet<S>>{(K2.jet(x, order) + Jet<S>::fraction(1, 2) * k1 * k1).truncated(order)};
                     }),
                 merge_predicates(K1.singular, K2.singular)};
  out.push_back(check_equal(hamiltonian_vf(p2, M1), hamiltonian_vf(p3, K1), config, "pi2 grad M1 = pi3 grad K1"));
  return out;
}

}  // namespace todalab::kostant
