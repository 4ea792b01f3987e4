#include "todalab/toda_rel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace todalab::relativistic {

namespace {

void require_size(int N) {
  if (N < 2) throw std::invalid_argument("relativistic Toda needs N >= 2");
}

std::string tag(int N) { return "relativistic-N" + std::to_string(N); }

template <class T>
T cst(long num, long den = 1) {
  return T::fraction(num, den);
}

template <class T>
struct Coords {
  const std::vector<T>& x;
  int N;
  T a(int i) const { return (i < 1 || i > N - 1) ? T() : x[static_cast<std::size_t>(i - 1)]; }
  T b(int i) const { return (i < 1 || i > N) ? T() : x[static_cast<std::size_t>(N - 2 + i)]; }
};

Polynomial poly(std::initializer_list<Term> terms) { return Polynomial(terms); }

double f_of(double x, double g) { return std::sqrt(1.0 + g * g * std::exp(x)); }

}  // namespace

std::size_t a_index(int N, int i) {
  if (i < 1 || i > N - 1) throw std::out_of_range("a index out of range");
  return static_cast<std::size_t>(i - 1);
}

std::size_t b_index(int N, int i) {
  if (i < 1 || i > N) throw std::out_of_range("b index out of range");
  return static_cast<std::size_t>(N - 2 + i);
}

ChartPtr chart(int N) {
  require_size(N);
  std::vector<std::string> labels;
  for (int i = 1; i < N; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= N; ++i) labels.push_back("b" + std::to_string(i));
  return make_chart("relativistic-N" + std::to_string(N), labels);
}

double rel_hamiltonian(const std::vector<double>& q, const std::vector<double>& p, double g) {
  if (q.size() != p.size() || q.empty()) throw std::invalid_argument("q and p must have equal positive length");
  if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
  const std::size_t N = q.size();
  double h = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double left = j == 0 ? 1.0 : f_of(q[j - 1] - q[j], g);
    const double right = j + 1 == N ? 1.0 : f_of(q[j] - q[j + 1], g);
    h += std::exp(p[j]) * left * right;
  }
  return h;
}

RelState rel_coordinates(const std::vector<double>& q, const std::vector<double>& p, double g) {
  if (q.size() != p.size() || q.size() < 2) throw std::invalid_argument("q and p must have equal length >= 2");
  const std::size_t N = q.size();
  RelState s;
  std::vector<double> qdot(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double left = j == 0 ? 1.0 : f_of(q[j - 1] - q[j], g);
    const double right = j + 1 == N ? 1.0 : f_of(q[j] - q[j + 1], g);
    qdot[j] = std::exp(p[j]) * left * right;
  }
  for (std::size_t j = 0; j + 1 < N; ++j) {
    const double left = j == 0 ? 1.0 : f_of(q[j - 1] - q[j], g);
    s.a.push_back(g * g * std::exp(q[j] - q[j + 1] + p[j]) * left / f_of(q[j] - q[j + 1], g));
  }
  for (std::size_t j = 0; j < N; ++j) s.b.push_back(qdot[j] - (j + 1 < N ? s.a[j] : 0.0));
  return s;
}

VectorField rel_equations(int N) {
  return make_vector(chart(N), {"rel", tag(N), 0}, [N](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    Coords<T> c{x, N};
    std::vector<T> out(x.size());
    for (int j = 1; j < N; ++j) out[a_index(N, j)] = c.a(j) * (c.b(j) - c.b(j + 1) + c.a(j - 1) - c.a(j + 1));
    for (int j = 1; j <= N; ++j) out[b_index(N, j)] = c.b(j) * (c.a(j - 1) - c.a(j));
    return out;
  });
}

LaxPair rel_lax(int N) {
  require_size(N);
  const std::size_t n = static_cast<std::size_t>(N);
  auto L = matrix_evaluator(n, [N, n](const auto& x, auto& m) {
    Coords<std::decay_t<decltype(x[0])>> c{x, N};
    for (std::size_t i = 0; i < n; ++i) {
      const int r = static_cast<int>(i) + 1;
      for (std::size_t j = 0; j <= i; ++j) m(i, j) = c.a(r) + c.b(r);
      if (i + 1 < n) m(i, i + 1) = c.a(r);
    }
  });
  auto B = matrix_evaluator(n, [N, n](const auto& x, auto& m) {
    Coords<std::decay_t<decltype(x[0])>> c{x, N};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const int r = static_cast<int>(i) + 1;
      m(i, i + 1) = c.a(r);
      m(i + 1, i + 1) = -c.a(r);
    }
  });
  return LaxPair{chart(N), n, L, B};
}

ScalarField invariant(int N, int k) { return trace_power(rel_lax(N), k, tag(N)); }

std::vector<ScalarField> invariants(int N) {
  std::vector<ScalarField> out;
  for (int k = 1; k <= N; ++k) out.push_back(invariant(N, k));
  return out;
}

ScalarField product_b(int N) {
  return make_scalar(chart(N), {"prod(b)", tag(N), 0}, [N](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T p(1);
    for (int i = 1; i <= N; ++i) p = p * x[b_index(N, i)];
    return p;
  });
}

ScalarField trace_inverse(int N) {
  const LaxPair lax = rel_lax(N);
  const std::size_t size = lax.size;
  const Evaluator L = lax.L;
  auto g = [L, size](auto x, int order) {
    using S = typename decltype(x)::value_type;
    return std::vector<Jet<S>>{trace(inverse(lax_jets(L, size, x, order)))};
  };
  Predicate nonsingular{"prod(b)", product_b(N).eval};
  return ScalarField{lax.chart, {"trL^-1", tag(N), -1}, point_evaluator(1, g, true), {nonsingular}};
}

BracketTable bracket_table(int N, int n) {
  BracketTable t{chart(N), {}, {}};
  auto A = [N](int i) { return a_index(N, i); };
  auto B = [N](int i) { return b_index(N, i); };
  switch (n) {
    case 1:
      for (int i = 1; i < N; ++i) {
        t.add(A(i), B(i), poly({term(-1, {A(i)})}));
        t.add(A(i), B(i + 1), poly({term(1, {A(i)})}));
        t.add(B(i), B(i + 1), poly({term(-1, {A(i)})}));
      }
      break;
    case 2:
      for (int i = 1; i < N; ++i) {
        if (i + 1 < N) t.add(A(i), A(i + 1), poly({term(1, {A(i), A(i + 1)})}));
        t.add(A(i), B(i), poly({term(-1, {A(i), B(i)})}));
        t.add(A(i), B(i + 1), poly({term(1, {A(i), B(i + 1)})}));
      }
      break;
    case 3:
      for (int i = 1; i < N; ++i) {
        if (i + 1 < N) {
          t.add(A(i), A(i + 1), poly({term(1, {A(i), A(i), A(i + 1)}), term(1, {A(i), A(i + 1), A(i + 1)}),
                                      term(2, {A(i), A(i + 1), B(i + 1)})}));
          t.add(A(i), B(i + 2), poly({term(1, {A(i), A(i + 1), B(i + 2)})}));
          t.add(A(i + 1), B(i), poly({term(-1, {A(i), A(i + 1), B(i)})}));
        }
        if (i + 2 < N) t.add(A(i), A(i + 2), poly({term(1, {A(i), A(i + 1), A(i + 2)})}));
        t.add(A(i), B(i), poly({term(-1, {A(i), B(i), A(i)}), term(-1, {A(i), B(i), B(i)})}));
        t.add(A(i), B(i + 1), poly({term(1, {A(i), B(i + 1), A(i)}), term(1, {A(i), B(i + 1), B(i + 1)})}));
        t.add(B(i), B(i + 1), poly({term(1, {A(i), B(i), B(i + 1)})}));
      }
      break;
    default:
      throw std::invalid_argument("closed-form relativistic brackets exist for n = 1, 2, 3");
  }
  return t;
}

BivectorField rel_bracket(int N, int n) {
  if (n >= 1 && n <= 3) return table_bivector(bracket_table(N, n), {"pi" + std::to_string(n), tag(N), n});
  if (n == 4) {
    if (N != 3) throw std::invalid_argument("relativistic pi4 is defined for N = 3 only");
    BivectorField out = lie_derivative(rel_master(N, 2), rel_bracket(N, 2));
    out.info = {"pi4", tag(N), 4};
    return out;
  }
  throw std::invalid_argument("relativistic bracket index must be 1, 2, 3 or 4");
}

VectorField rel_master(int N, int n) {
  const ChartPtr c = chart(N);
  const std::string name = "X" + std::to_string(n);
  if (n == 1) {
    return make_vector(c, {name, tag(N), 1}, [N](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      Coords<T> v{x, N};
      std::vector<T> out(x.size());
      for (int i = 1; i < N; ++i) {
        const T a = v.a(i);
        out[a_index(N, i)] = a * a + a * v.b(i + 1) * cst<T>(i + 2) + a * v.b(i) * cst<T>(1 - i) +
                             a * v.a(i + 1) * cst<T>(i + 2) + v.a(i - 1) * a * cst<T>(1 - i);
      }
      for (int i = 1; i <= N; ++i)
        out[b_index(N, i)] = v.b(i) * v.b(i) + v.a(i) * v.b(i) * cst<T>(i + 1) + v.a(i - 1) * v.b(i) * cst<T>(1 - i);
      return out;
    });
  }
  if (N != 3) throw std::invalid_argument("relativistic X_n for n >= 2 is defined for N = 3 only");
  if (n == 2) {
    return make_vector(c, {name, tag(N), 2}, [](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      const T &a1 = x[0], &a2 = x[1], &b1 = x[2], &b2 = x[3], &b3 = x[4];
      auto k = [](long v) { return cst<T>(v); };
      std::vector<T> out(5);
      out[0] = a1 * (a1 * a1 + k(5) * a1 * b1 - a2 * a2 + k(2) * a2 * b1 - k(2) * a2 * b2 - a2 * b3 + k(4) * b1 * b1 +
                     k(2) * b1 * b2 - b2 * b2);
      out[1] = a2 * (k(3) * a1 * a1 + k(4) * a1 * a2 + k(3) * a1 * b1 + k(6) * a1 * b2 + k(2) * a1 * b3 + a2 * a2 +
                     k(4) * a2 * b2 + a2 * b3 - k(2) * b1 * b2 + k(2) * b1 * b3 + k(3) * b2 * b2 + k(2) * b2 * b3);
      out[2] = b1 * (k(-2) * a1 * a1 - k(2) * a1 * a2 - a1 * b1 - k(2) * a1 * b2 + b1 * b1);
      out[3] = b2 * (k(3) * a1 * a1 + k(2) * a1 * a2 + k(3) * a1 * b1 + k(4) * a1 * b2 - a2 * a2 + k(2) * a2 * b1 -
                     a2 * b3 + b2 * b2);
      out[4] = b3 * (k(2) * a2 * a2 + k(2) * a1 * a2 - k(2) * a2 * b1 + k(2) * a2 * b2 + k(3) * a2 * b3 + b3 * b3);
      return out;
    });
  }
  if (n < 1) throw std::invalid_argument("relativistic master field index must be >= 1");
  VectorField out = scaled(vf_commutator(rel_master(N, 1), rel_master(N, n - 1)), make_rational(1, n - 2));
  out.info = {name, tag(N), n};
  return out;
}

std::vector<double> nonrelativistic_limit(int N, const std::vector<double>& Q0, const std::vector<double>& V0,
                                          const std::vector<double>& cs, double t_end, double step) {
  require_size(N);
  const std::size_t n = static_cast<std::size_t>(N);
  if (Q0.size() != n || V0.size() != n) throw std::invalid_argument("initial data must have N entries");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("Q" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("V" + std::to_string(i));
  const ChartPtr ch = make_chart("newton-N" + std::to_string(N), labels, false);
  std::vector<double> x0 = Q0;
  x0.insert(x0.end(), V0.begin(), V0.end());

  const VectorField classical = make_vector(ch, {"toda-newton", "classical", 0}, [n](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> out(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = x[n + j];
      T acc;
      if (j > 0) acc += exp(x[j - 1] - x[j]);
      if (j + 1 < n) acc -= exp(x[j] - x[j + 1]);
      out[n + j] = acc;
    }
    return out;
  });
  const Trajectory ref = integrate_flow(classical, RealPoint{ch, x0}, t_end, step);

  std::vector<double> deviations;
  for (double c : cs) {
    const double g2 = 1.0 / (c * c);
    const VectorField rel = make_vector(ch, {"rel-newton", "relativistic", 0}, [n, c, g2](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      std::vector<T> out(2 * n);
      const T shift(c);
      const T g2j(g2);
      for (std::size_t j = 0; j < n; ++j) {
        out[j] = x[n + j];
        T acc;
        if (j > 0) {
          const T e = exp(x[j - 1] - x[j]);
          acc += (x[n + j - 1] + shift) * e / (T(1.0) + g2j * e);
        }
        if (j + 1 < n) {
          const T e = exp(x[j] - x[j + 1]);
          acc -= (x[n + j + 1] + shift) * e / (T(1.0) + g2j * e);
        }
        out[n + j] = g2j * (x[n + j] + shift) * acc;
      }
      return out;
    });
    const Trajectory tr = integrate_flow(rel, RealPoint{ch, x0}, t_end, step);
    double dev = 0.0;
    for (std::size_t s = 0; s < tr.states.size(); ++s)
      for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, std::fabs(tr.states[s][k] - ref.states[s][k]));
    deviations.push_back(dev);
  }
  return deviations;
}

}  // namespace todalab::relativistic
