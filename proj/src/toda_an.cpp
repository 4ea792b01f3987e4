#include "todalab/toda_an.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace todalab::classical {

namespace {

void require_size(int N) {
  if (N < 2) throw std::invalid_argument("classical Toda needs N >= 2");
}

std::string tag(int N) { return "classical-N" + std::to_string(N); }

template <class T>
T cst(long num, long den = 1) {
  return T::fraction(num, den);
}

// Coordinates a_i, b_i of a jet vector on the Flaschka chart (1-based; a_0 = a_N = 0).
template <class T>
struct Flaschka {
  const std::vector<T>& x;
  int N;
  T a(int i) const { return (i < 1 || i > N - 1) ? T() : x[static_cast<std::size_t>(i - 1)]; }
  T b(int i) const { return (i < 1 || i > N) ? T() : x[static_cast<std::size_t>(N - 2 + i)]; }
};

// V -> J1 J0^{-1} V for a vector on the canonical space, with the entries of J1
// written through p_i and E_i = exp(q_i - q_{i+1}). Components are ordered q then p.
template <class T>
std::vector<T> apply_recursion(const std::vector<T>& V, const std::vector<T>& p, const std::vector<T>& E) {
  const std::size_t N = p.size();
  std::vector<T> W(2 * N);
  for (std::size_t k = 0; k < N; ++k) {
    W[k] = -V[N + k];
    W[N + k] = V[k];
  }
  std::vector<T> U(2 * N);
  for (std::size_t i = 0; i < N; ++i) {
    T acc;
    for (std::size_t j = 0; j < N; ++j) {
      if (j > i) acc += W[j];
      if (j < i) acc -= W[j];
    }
    acc -= p[i] * W[N + i];
    U[i] = acc;
    T accp = p[i] * W[i];
    if (i + 1 < N) accp += E[i] * W[N + i + 1];
    if (i > 0) accp -= E[i - 1] * W[N + i - 1];
    U[N + i] = accp;
  }
  return U;
}

template <class T>
std::vector<T> z_components(const std::vector<T>& p, const std::vector<T>& E, int i) {
  const std::size_t N = p.size();
  std::vector<T> V(2 * N);
  for (std::size_t k = 0; k < N; ++k) {
    V[k] = cst<T>(static_cast<long>(N) - 1 - 2 * static_cast<long>(k));
    V[N + k] = p[k];
  }
  for (int r = 0; r < i; ++r) V = apply_recursion(V, p, E);
  return V;
}

// chi_j = R^{j-1} J0 grad h1.
template <class T>
std::vector<T> chi_components(const std::vector<T>& p, const std::vector<T>& E, int j) {
  const std::size_t N = p.size();
  std::vector<T> V(2 * N);
  for (std::size_t k = 0; k < N; ++k) {
    V[k] = p[k];
    T dq;
    if (k + 1 < N) dq += E[k];
    if (k > 0) dq -= E[k - 1];
    V[N + k] = -dq;
  }
  for (int r = 1; r < j; ++r) V = apply_recursion(V, p, E);
  return V;
}

template <class T>
void canonical_pe(const std::vector<T>& x, std::size_t N, std::vector<T>& p, std::vector<T>& E) {
  p.assign(x.begin() + static_cast<long>(N), x.end());
  E.clear();
  for (std::size_t i = 0; i + 1 < N; ++i) E.push_back(exp(x[i] - x[i + 1]));
}

// Flaschka image of a canonical vector: a_k-component (a_k/2)(V^{q_k} - V^{q_{k+1}}), b_k-component -V^{p_k}/2.
template <class T>
std::vector<T> push_forward(const std::vector<T>& V, const std::vector<T>& a) {
  const std::size_t N = a.size() + 1;
  std::vector<T> out;
  for (std::size_t k = 0; k + 1 < N; ++k) out.push_back(a[k] * cst<T>(1, 2) * (V[k] - V[k + 1]));
  for (std::size_t k = 0; k < N; ++k) out.push_back(V[N + k] * cst<T>(-1, 2));
  return out;
}

Polynomial mono(long num, std::initializer_list<std::size_t> vars, long den = 1) {
  return Polynomial({term(num, vars, den)});
}

}  // namespace

std::size_t a_index(int N, int i) {
  if (i < 1 || i > N - 1) throw std::out_of_range("a index out of range");
  return static_cast<std::size_t>(i - 1);
}

std::size_t b_index(int N, int i) {
  if (i < 1 || i > N) throw std::out_of_range("b index out of range");
  return static_cast<std::size_t>(N - 2 + i);
}

ChartPtr flaschka_chart(int N) {
  require_size(N);
  std::vector<std::string> labels;
  for (int i = 1; i < N; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= N; ++i) labels.push_back("b" + std::to_string(i));
  return make_chart("classical-flaschka-N" + std::to_string(N), labels);
}

ChartPtr canonical_chart(int N) {
  require_size(N);
  std::vector<std::string> labels;
  for (int i = 1; i <= N; ++i) labels.push_back("q" + std::to_string(i));
  for (int i = 1; i <= N; ++i) labels.push_back("p" + std::to_string(i));
  return make_chart("classical-canonical-N" + std::to_string(N), labels, false);
}

FlaschkaState flaschka_map(const CanonicalState& s) {
  if (s.q.size() != s.p.size() || s.q.size() < 2) throw std::invalid_argument("canonical state needs N >= 2 pairs");
  FlaschkaState out;
  for (std::size_t i = 0; i + 1 < s.q.size(); ++i) out.a.push_back(0.5 * std::exp(0.5 * (s.q[i] - s.q[i + 1])));
  for (double p : s.p) out.b.push_back(-0.5 * p);
  return out;
}

SmoothMap flaschka_smooth_map(int N) {
  const std::size_t n = static_cast<std::size_t>(N);
  return make_map("flaschka", canonical_chart(N), flaschka_chart(N), [n](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> out;
    for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(cst<T>(1, 2) * exp((x[i] - x[i + 1]) * cst<T>(1, 2)));
    for (std::size_t i = 0; i < n; ++i) out.push_back(x[n + i] * cst<T>(-1, 2));
    return out;
  });
}

std::vector<double> to_coords(const FlaschkaState& s) {
  std::vector<double> out = s.a;
  out.insert(out.end(), s.b.begin(), s.b.end());
  return out;
}

ScalarField canonical_hamiltonian(int N) {
  const std::size_t n = static_cast<std::size_t>(N);
  return make_scalar(canonical_chart(N), {"H", tag(N), 0}, [n](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T h;
    for (std::size_t i = 0; i < n; ++i) h += x[n + i] * x[n + i] * cst<T>(1, 2);
    for (std::size_t i = 0; i + 1 < n; ++i) h += exp(x[i] - x[i + 1]);
    return h;
  });
}

LaxPair lax_pair(int N) {
  require_size(N);
  const std::size_t n = static_cast<std::size_t>(N);
  auto L = matrix_evaluator(n, [N, n](const auto& x, auto& m) {
    Flaschka<std::decay_t<decltype(x[0])>> f{x, N};
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.b(static_cast<int>(i) + 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      m(i, i + 1) = f.a(static_cast<int>(i) + 1);
      m(i + 1, i) = f.a(static_cast<int>(i) + 1);
    }
  });
  auto B = matrix_evaluator(n, [N, n](const auto& x, auto& m) {
    Flaschka<std::decay_t<decltype(x[0])>> f{x, N};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      m(i, i + 1) = f.a(static_cast<int>(i) + 1);
      m(i + 1, i) = -f.a(static_cast<int>(i) + 1);
    }
  });
  return LaxPair{flaschka_chart(N), n, L, B};
}

ScalarField invariant(int N, int k) { return trace_power(lax_pair(N), k, tag(N)); }

std::vector<ScalarField> invariants(int N) {
  std::vector<ScalarField> out;
  for (int k = 1; k <= N; ++k) out.push_back(invariant(N, k));
  return out;
}

ScalarField det_l(int N) { return lax_determinant(lax_pair(N), tag(N)); }

ScalarField trace_inverse_power(int N, int k) {
  if (k < 1) throw std::invalid_argument("inverse power must be positive");
  const LaxPair lax = lax_pair(N);
  const std::size_t size = lax.size;
  const Evaluator L = lax.L;
  auto g = [L, size, k](auto x, int order) {
    using S = typename decltype(x)::value_type;
    const Matrix<Jet<S>> m = lax_jets(L, size, x, order);
    return std::vector<Jet<S>>{trace(power(inverse(m), k))};
  };
  const ScalarField det = det_l(N);
  Predicate nonsingular{"detL", det.eval};
  return ScalarField{lax.chart, {"trL^-" + std::to_string(k), tag(N), -k}, point_evaluator(1, g, true), {nonsingular}};
}

BracketTable bracket_table(int N, int n) {
  require_size(N);
  BracketTable t{flaschka_chart(N), {}, {}};
  auto A = [N](int i) { return a_index(N, i); };
  auto B = [N](int i) { return b_index(N, i); };
  switch (n) {
    case 1:
      for (int i = 1; i < N; ++i) {
        t.add(A(i), B(i), mono(-1, {A(i)}));
        t.add(A(i), B(i + 1), mono(1, {A(i)}));
      }
      break;
    case 2:
      for (int i = 1; i < N; ++i) {
        if (i + 1 < N) t.add(A(i), A(i + 1), mono(1, {A(i), A(i + 1)}, 2));
        t.add(A(i), B(i), mono(-1, {A(i), B(i)}));
        t.add(A(i), B(i + 1), mono(1, {A(i), B(i + 1)}));
        t.add(B(i), B(i + 1), mono(2, {A(i), A(i)}));
      }
      break;
    case 3:
      for (int i = 1; i < N; ++i) {
        if (i + 1 < N) {
          t.add(A(i), A(i + 1), mono(1, {A(i), A(i + 1), B(i + 1)}));
          t.add(A(i), B(i + 2), mono(1, {A(i), A(i + 1), A(i + 1)}));
          t.add(A(i + 1), B(i), mono(-1, {A(i), A(i), A(i + 1)}));
        }
        t.add(A(i), B(i), Polynomial({term(-1, {A(i), B(i), B(i)}), term(-1, {A(i), A(i), A(i)})}));
        t.add(A(i), B(i + 1), Polynomial({term(1, {A(i), B(i + 1), B(i + 1)}), term(1, {A(i), A(i), A(i)})}));
        t.add(B(i), B(i + 1), Polynomial({term(2, {A(i), A(i), B(i)}), term(2, {A(i), A(i), B(i + 1)})}));
      }
      break;
    default:
      throw std::invalid_argument("closed-form classical brackets exist for n = 1, 2, 3");
  }
  return t;
}

BivectorField bracket(int N, int n) {
  if (n < 1) throw std::invalid_argument("bracket index must be >= 1");
  if (n <= 3) return table_bivector(bracket_table(N, n), {"pi" + std::to_string(n), tag(N), n});
  BivectorField out = scaled(lie_derivative(reduced_z(N, n - 2), bracket(N, 2)), make_rational(-1, n - 2));
  out.info = {"pi" + std::to_string(n), tag(N), n};
  return out;
}

VectorField chi(int N, int l, int n) {
  VectorField out = hamiltonian_vf(bracket(N, n), invariant(N, l));
  out.info = {n == 1 ? "chi" + std::to_string(l) : "chi" + std::to_string(l) + "^" + std::to_string(n), tag(N), l};
  return out;
}

VectorField flow(int N) {
  VectorField out = chi(N, 2);
  out.info.name = "toda";
  return out;
}

VectorField master_field(int N, int n) {
  const ChartPtr chart = flaschka_chart(N);
  const std::string name = "X" + std::to_string(n);
  switch (n) {
    case -1:
      return make_vector(chart, {name, tag(N), -1}, [N](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        std::vector<T> out(x.size());
        for (int i = 1; i <= N; ++i) out[b_index(N, i)] = T(1);
        return out;
      });
    case 0:
      return make_vector(chart, {name, tag(N), 0}, [](const auto& x) { return x; });
    case 1:
      return make_vector(chart, {name, tag(N), 1}, [N](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        Flaschka<T> f{x, N};
        std::vector<T> out(x.size());
        for (int j = 1; j < N; ++j)
          out[a_index(N, j)] = f.a(j) * (f.b(j) * cst<T>(-j) + f.b(j + 1) * cst<T>(j + 2));
        for (int j = 1; j <= N; ++j)
          out[b_index(N, j)] = f.a(j) * f.a(j) * cst<T>(2 * j + 3) + f.a(j - 1) * f.a(j - 1) * cst<T>(1 - 2 * j) +
                               f.b(j) * f.b(j);
        return out;
      });
    default:
      if (n < -1) throw std::invalid_argument("master field index must be >= -1");
      {
        VectorField out = reduced_z(N, n);
        out.info = {name, tag(N), n};
        return out;
      }
  }
}

CanonicalStructures canonical_structures(int N) {
  const ChartPtr chart = canonical_chart(N);
  const std::size_t n = static_cast<std::size_t>(N);
  BivectorField J0 = make_bivector(chart, {"J0", tag(N), 0}, [n](const auto&, auto& out) {
    using T = std::decay_t<decltype(out.get(0, 0))>;
    for (std::size_t i = 0; i < n; ++i) out.set(i, n + i, T(1));
  });
  BivectorField J1 = make_bivector(chart, {"J1", tag(N), 1}, [n](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, T(1));
      out.set(n + i, i, x[n + i]);
      if (i + 1 < n) out.set(n + i, n + i + 1, exp(x[i] - x[i + 1]));
    }
  });
  VectorField Z0 = z_field(N, 0);
  ScalarField h0 = make_scalar(chart, {"h0", tag(N), 0}, [n](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T h;
    for (std::size_t i = 0; i < n; ++i) h += x[n + i];
    return h;
  });
  ScalarField h1 = canonical_hamiltonian(N);
  h1.info.name = "h1";
  h1.info.index = 1;
  return {J0, J1, Z0, h0, h1};
}

BivectorField canonical_j(int N, int k) {
  if (k < 0) throw std::invalid_argument("J index must be >= 0");
  const ChartPtr chart = canonical_chart(N);
  const std::size_t n = static_cast<std::size_t>(N);
  return make_bivector(chart, {"J" + std::to_string(k), tag(N), k}, [n, k](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> p, E;
    canonical_pe(x, n, p, E);
    // Build columns J_k e_c = R^k J0 e_c.
    for (std::size_t c = 0; c < 2 * n; ++c) {
      std::vector<T> v(2 * n);
      if (c < n) {
        v[n + c] = T(-1);
      } else {
        v[c - n] = T(1);
      }
      for (int r = 0; r < k; ++r) v = apply_recursion(v, p, E);
      for (std::size_t i = 0; i < c; ++i) out.set(i, c, v[i]);
    }
  });
}

VectorField z_field(int N, int i) {
  if (i < 0) throw std::invalid_argument("Z index must be >= 0");
  const std::size_t n = static_cast<std::size_t>(N);
  return make_vector(canonical_chart(N), {"Z" + std::to_string(i), tag(N), i}, [n, i](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> p, E;
    canonical_pe(x, n, p, E);
    return z_components(p, E, i);
  });
}

VectorField canonical_chi(int N, int j) {
  if (j < 1) throw std::invalid_argument("chi index must be >= 1");
  const std::size_t n = static_cast<std::size_t>(N);
  return make_vector(canonical_chart(N), {"chi" + std::to_string(j), tag(N), j}, [n, j](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> p, E;
    canonical_pe(x, n, p, E);
    return chi_components(p, E, j);
  });
}

VectorField reduced_z(int N, int i) {
  if (i < 0) throw std::invalid_argument("Z index must be >= 0");
  return make_vector(flaschka_chart(N), {"Zr" + std::to_string(i), tag(N), i}, [N, i](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    Flaschka<T> f{x, N};
    std::vector<T> p, E, a;
    for (int k = 1; k <= N; ++k) p.push_back(f.b(k) * cst<T>(-2));
    for (int k = 1; k < N; ++k) {
      a.push_back(f.a(k));
      E.push_back(f.a(k) * f.a(k) * cst<T>(4));
    }
    std::vector<T> out = push_forward(z_components(p, E, i), a);
    const T scale = cst<T>(1, 1L << i);
    for (auto& c : out) c = c * scale;
    return out;
  });
}

IdentityReport reduction_check(int N, int i, const SamplerConfig& config) {
  const VectorField Z = z_field(N, i);
  const VectorField Zr = reduced_z(N, i);
  const SmoothMap F = flaschka_smooth_map(N);
  const std::size_t n = static_cast<std::size_t>(N);
  auto g = [Z, Zr, F, n, i](auto x) {
    using S = typename decltype(x)::value_type;
    auto pushed = [&](const std::vector<S>& y) {
      const auto fj = F.eval(std::span<const S>(y), 1);
      const auto z = Z.eval(std::span<const S>(y), 0);
      std::vector<S> out(fj.size(), S(0));
      for (std::size_t a = 0; a < fj.size(); ++a)
        for (std::size_t k = 0; k < y.size(); ++k) out[a] += fj[a].partial(k) * z[k].value();
      const S scale = ScalarTraits<S>::fraction(1, 1L << i);
      for (auto& v : out) v *= scale;
      return out;
    };
    std::vector<S> y(x.begin(), x.end());
    std::vector<S> shifted = y;
    for (std::size_t k = 0; k < n; ++k) shifted[k] += ScalarTraits<S>::fraction(7, 10);
    std::vector<S> image;
    for (const auto& j : F.eval(std::span<const S>(y), 0)) image.push_back(j.value());
    Comparison<S> c;
    c.lhs = pushed(y);
    const auto other = pushed(shifted);
    c.lhs.insert(c.lhs.end(), other.begin(), other.end());
    for (int rep = 0; rep < 2; ++rep)
      for (const auto& j : Zr.eval(std::span<const S>(image), 0)) c.rhs.push_back(j.value());
    return c;
  };
  CheckSpec spec = make_check("reduction(Z" + std::to_string(i) + ")", canonical_chart(N), {}, g);
  spec.max_numerator = 3;
  return run_check(spec, config);
}

IdentityReport lenard_check(int N, int n, int l, const SamplerConfig& config) {
  if (n < 2) throw std::invalid_argument("Lenard relation needs n >= 2 (pi_0 is undefined)");
  if (l < 1) throw std::invalid_argument("Lenard relation needs l >= 1");
  const VectorField lhs = hamiltonian_vf(bracket(N, n), invariant(N, l));
  const VectorField rhs = hamiltonian_vf(bracket(N, n - 1), invariant(N, l + 1));
  return check_equal(lhs, rhs, config,
                     "lenard(pi" + std::to_string(n) + ".gradH" + std::to_string(l) + "=pi" + std::to_string(n - 1) +
                         ".gradH" + std::to_string(l + 1) + ")");
}

std::vector<double> eigen_gradient(const FlaschkaState& s, std::size_t which) {
  const std::size_t N = s.b.size();
  if (N < 2 || s.a.size() + 1 != N) throw std::invalid_argument("Flaschka state needs N-1 a's and N b's");
  if (which >= N) throw std::out_of_range("eigenvalue index out of range");
  RealMatrix L = RealMatrix::Zero(static_cast<long>(N), static_cast<long>(N));
  for (std::size_t i = 0; i < N; ++i) L(static_cast<long>(i), static_cast<long>(i)) = s.b[i];
  for (std::size_t i = 0; i + 1 < N; ++i) {
    L(static_cast<long>(i), static_cast<long>(i + 1)) = s.a[i];
    L(static_cast<long>(i + 1), static_cast<long>(i)) = s.a[i];
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(L);
  const RealVector ev = solver.eigenvalues();
  const long w = static_cast<long>(which);
  double gap = std::numeric_limits<double>::infinity();
  if (w > 0) gap = std::min(gap, ev(w) - ev(w - 1));
  if (w + 1 < ev.size()) gap = std::min(gap, ev(w + 1) - ev(w));
  if (!(gap > 1e-8)) throw std::domain_error("eigenvalue is not simple (spectral gap <= 1e-8)");
  const RealVector v = solver.eigenvectors().col(w);
  std::vector<double> grad;
  for (std::size_t i = 0; i + 1 < N; ++i) grad.push_back(2.0 * v(static_cast<long>(i)) * v(static_cast<long>(i + 1)));
  for (std::size_t i = 0; i < N; ++i) grad.push_back(v(static_cast<long>(i)) * v(static_cast<long>(i)));
  return grad;
}

IdentityReport shift_isomorphism_check(int N, int n, const SamplerConfig& config) {
  if (n < 1) throw std::invalid_argument("bracket index must be >= 1");
  const BivectorField pi = bracket(N, n);
  std::vector<Rational> shift(pi.chart->dimension(), Rational(0));
  for (int i = 1; i <= N; ++i) shift[b_index(N, i)] = 1;
  const BivectorField lhs = translated(pi, shift);
  std::vector<std::pair<Rational, BivectorField>> terms;
  Rational binom(1);
  for (int j = 0; j <= n - 1; ++j) {
    terms.emplace_back(binom, bracket(N, n - j));
    binom = binom * (n - 1 - j) / (j + 1);
  }
  const BivectorField rhs = combine(terms, "binomial(pi" + std::to_string(n) + ")");
  const std::string name = "shift(pi" + std::to_string(n) + ")";
  if (n <= 3) return check_equal(lhs, rhs, config, name);
  IdentityReport r = check_trivial_bracket(lhs - rhs, invariants(N), config);
  r.name = name;
  return r;
}

ChartPtr extended_chart(int N) {
  std::vector<std::string> labels = flaschka_chart(N)->labels();
  labels.push_back("t");
  return make_chart("classical-flaschka-t-N" + std::to_string(N), labels);
}

namespace {

// A Flaschka-chart field regarded as a t-independent field on the extended chart.
VectorField lift(const VectorField& X, const ChartPtr& ext) {
  const std::size_t d = X.chart->dimension();
  auto g = [X, d](auto x, int order) {
    auto out = X.eval(x.first(d), order);
    out.emplace_back();
    return out;
  };
  return VectorField{ext, X.info, point_evaluator(d + 1, g, X.eval.has_exact()), {}};
}

}  // namespace

VectorField symmetry_field(int N, int n, bool perturbed) {
  if (n < -1) throw std::invalid_argument("symmetry index must be >= -1");
  const ChartPtr ext = extended_chart(N);
  const std::string name = "Y" + std::to_string(n) + (perturbed ? "'" : "");
  if (n == 1) {
    // X_1 + t chi_3 written out componentwise.
    return make_vector(ext, {name, tag(N), 1}, [N, perturbed](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      Flaschka<T> f{x, N};
      const T& t = x.back();
      std::vector<T> out(x.size());
      for (int j = 1; j < N; ++j) {
        const T a = f.a(j);
        T x1 = a * f.b(j) * cst<T>(perturbed && j == 1 ? j : -j) + a * f.b(j + 1) * cst<T>(j + 2);
        T c3 = a * (f.a(j + 1) * f.a(j + 1) + f.b(j + 1) * f.b(j + 1) - f.a(j - 1) * f.a(j - 1) - f.b(j) * f.b(j));
        out[a_index(N, j)] = x1 + t * c3;
      }
      for (int j = 1; j <= N; ++j) {
        const T aj2 = f.a(j) * f.a(j);
        const T am2 = f.a(j - 1) * f.a(j - 1);
        T x1 = aj2 * cst<T>(2 * j + 3) + am2 * cst<T>(1 - 2 * j) + f.b(j) * f.b(j);
        T c3 = aj2 * (f.b(j) + f.b(j + 1)) * cst<T>(2) - am2 * (f.b(j - 1) + f.b(j)) * cst<T>(2);
        out[b_index(N, j)] = x1 + t * c3;
      }
      return out;
    });
  }
  const VectorField X = lift(master_field(N, n), ext);
  if (n == -1) {
    VectorField out = X;
    out.info.name = name;
    return out;
  }
  const VectorField C = lift(chi(N, n + 2), ext);
  const std::size_t d = ext->dimension();
  auto g = [X, C, d](auto x, int order) {
    using S = typename decltype(x)::value_type;
    const Jet<S> t = Jet<S>::variable(x[d - 1], d - 1, order);
    auto out = X.eval(x, order);
    const auto c = C.eval(x, order);
    for (std::size_t k = 0; k < d; ++k) out[k] = (out[k] + t * c[k]).truncated(order);
    return out;
  };
  return VectorField{ext, {name, tag(N), n}, point_evaluator(d, g, true), {}};
}

IdentityReport symmetry_residual(int N, int n, const SamplerConfig& config, bool perturbed) {
  const ChartPtr ext = extended_chart(N);
  const VectorField Y = symmetry_field(N, n, perturbed);
  const VectorField bracket_part = vf_commutator(lift(chi(N, 2), ext), Y);
  const std::size_t d = ext->dimension();
  auto g = [Y, bracket_part, d](auto x) {
    using S = typename decltype(x)::value_type;
    const auto y = Y.eval(x, 1);
    const auto c = bracket_part.eval(x, 0);
    Comparison<S> out;
    for (std::size_t k = 0; k < d; ++k) out.lhs.push_back(y[k].partial(d - 1) + c[k].value());
    return out;
  };
  return run_check(make_check("symmetry(" + Y.info.name + ")", ext, {}, g,
                              [ext](std::size_t k) { return ext->labels().at(k); }),
                   config);
}

}  // namespace todalab::classical
