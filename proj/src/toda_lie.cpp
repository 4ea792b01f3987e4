#include "todalab/toda_lie.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "todalab/toda_an.hpp"

namespace todalab::lie {

namespace {

template <class T>
T cst(long num, long den = 1) {
  return T::fraction(num, den);
}

Polynomial poly(std::initializer_list<Term> terms) { return Polynomial(terms); }

std::string bn_tag(int n) { return "bn-n" + std::to_string(n); }

void require_bn(int n) {
  if (n < 1) throw std::invalid_argument("B_n needs n >= 1");
}

template <class T>
struct BnCoords {
  const std::vector<T>& x;
  int n;
  T a(int i) const { return (i < 1 || i > n) ? T() : x[static_cast<std::size_t>(i - 1)]; }
  T b(int i) const { return (i < 1 || i > n) ? T() : x[static_cast<std::size_t>(n + i - 1)]; }
};

// Dense antisymmetric matrix of a bivector's jets.
template <class J>
Matrix<J> full_matrix(const BivectorValues<J>& v) {
  const std::size_t n = v.dimension();
  Matrix<J> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) = v.get(i, j);
  return m;
}

template <class T>
T eval_entry(const TableEntry& e, const std::vector<T>& x) {
  T v = e.numerator.evaluate(x);
  if (!e.denominator.is_zero()) v = v / e.denominator.evaluate(x);
  return v;
}

template <class T>
Matrix<T> table_matrix(const BracketTable& t, const std::vector<T>& x) {
  const std::size_t n = t.chart->dimension();
  Matrix<T> m(n, n);
  for (const auto& e : t.entries) {
    const T v = eval_entry(e, x);
    m(e.i, e.j) += v;
    m(e.j, e.i) -= v;
  }
  return m;
}

template <class T>
Matrix<T> form_matrix(const ConstraintSet& C) {
  const std::size_t n = C.ambient->dimension();
  Matrix<T> m(C.forms.size(), n);
  for (std::size_t i = 0; i < C.forms.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = T::from_rational(C.forms[i][k]);
  return m;
}

template <class S>
Matrix<S> form_values(const ConstraintSet& C) {
  const std::size_t n = C.ambient->dimension();
  Matrix<S> m(C.forms.size(), n);
  for (std::size_t i = 0; i < C.forms.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = ScalarTraits<S>::from_rational(C.forms[i][k]);
  return m;
}

void validate_constraints(const ConstraintSet& C) {
  const std::size_t n = C.ambient->dimension();
  for (const auto& f : C.forms)
    if (f.size() != n) throw std::invalid_argument("constraint form has the wrong dimension");
  if (C.names.size() != C.forms.size()) throw std::invalid_argument("constraint names and forms differ in number");
  if (C.embedding.size() != n) throw std::invalid_argument("embedding must give every ambient coordinate");
  if (C.coordinates.size() != C.reduced->dimension())
    throw std::invalid_argument("one ambient coordinate per reduced coordinate is required");
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog

Family parse_family(const std::string& s) {
  static const std::vector<std::pair<std::string, Family>> names = {
      {"A", Family::A},   {"B", Family::B},   {"C", Family::C},   {"D", Family::D},  {"G2", Family::G2},
      {"F4", Family::F4}, {"E6", Family::E6}, {"E7", Family::E7}, {"E8", Family::E8}};
  for (const auto& [k, v] : names)
    if (k == s) return v;
  throw std::invalid_argument("unknown root system family '" + s + "' (valid: A, B, C, D, G2, F4, E6, E7, E8)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

void validate(const RootSystemId& id) {
  const int r = id.rank;
  auto bad = [&](const std::string& why) {
    throw std::invalid_argument("rank " + std::to_string(r) + " does not fit family " + family_name(id.family) + ": " +
                                why);
  };
  switch (id.family) {
    case Family::A:
      if (r < 1) bad("need rank >= 1");
      break;
    case Family::B:
    case Family::C:
      if (r < 2) bad("need rank >= 2");
      break;
    case Family::D:
      if (r < 3) bad("need rank >= 3");
      break;
    case Family::G2:
      if (r != 2) bad("rank is 2");
      break;
    case Family::F4:
      if (r != 4) bad("rank is 4");
      break;
    case Family::E6:
      if (r != 6) bad("rank is 6");
      break;
    case Family::E7:
      if (r != 7) bad("rank is 7");
      break;
    case Family::E8:
      if (r != 8) bad("rank is 8");
      break;
  }
}

int coordinate_count(const RootSystemId& id) {
  validate(id);
  switch (id.family) {
    case Family::A: return id.rank + 1;
    case Family::G2: return 3;
    case Family::F4: return 4;
    case Family::E6:
    case Family::E7:
    case Family::E8: return 8;
    default: return id.rank;
  }
}

ChartPtr canonical_chart(int n) {
  if (n < 1) throw std::invalid_argument("canonical chart needs at least one degree of freedom");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("q" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  return make_chart("lie-canonical-" + std::to_string(n), labels, false);
}

BivectorField symplectic(int n) {
  const std::size_t m = static_cast<std::size_t>(n);
  return make_bivector(canonical_chart(n), {"J0", "lie", 0}, [m](const auto&, auto& out) {
    using T = std::decay_t<decltype(out.get(0, 0))>;
    for (std::size_t i = 0; i < m; ++i) out.set(i, m + i, T(1));
  });
}

ScalarField lie_hamiltonian(const RootSystemId& id) {
  const int n = coordinate_count(id);
  const std::size_t m = static_cast<std::size_t>(n);
  const Family fam = id.family;
  const std::string name = family_name(fam) + std::to_string(id.rank);
  return make_scalar(canonical_chart(n), {"H", name, 0}, [m, fam](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    auto q = [&](std::size_t i) { return x[i - 1]; };  // 1-based
    T h;
    for (std::size_t i = 0; i < m; ++i) h += x[m + i] * x[m + i] * cst<T>(1, 2);
    auto chain = [&](std::size_t upto) {
      for (std::size_t i = 1; i <= upto; ++i) h += exp(q(i) - q(i + 1));
    };
    switch (fam) {
      case Family::A:
        chain(m - 1);
        break;
      case Family::B:
        chain(m - 1);
        h += exp(q(m));
        break;
      case Family::C:
        chain(m - 1);
        h += exp(q(m) * cst<T>(2));
        break;
      case Family::D:
        chain(m - 1);
        h += exp(q(m - 1) + q(m));
        break;
      case Family::G2:
        h += exp(q(1) - q(2)) + exp(q(2) + q(3) - q(1) * cst<T>(2));
        break;
      case Family::F4:
        chain(2);
        h += exp(q(3)) + exp((q(4) - q(1) - q(2) - q(3)) * cst<T>(1, 2));
        break;
      case Family::E6:
      case Family::E7:
      case Family::E8: {
        chain(fam == Family::E6 ? 4 : fam == Family::E7 ? 5 : 6);
        h += exp(-(q(1) + q(2)));
        T s = -q(1) - q(8);
        for (std::size_t i = 2; i <= 7; ++i) s += q(i);
        h += exp(s * cst<T>(1, 2));
        break;
      }
    }
    return h;
  });
}

VectorField lie_flow(const RootSystemId& id) {
  const ScalarField H = lie_hamiltonian(id);
  VectorField X = hamiltonian_vf(symplectic(coordinate_count(id)), H);
  X.info = {"flow", H.info.system, 0};
  return X;
}

A2Report a2_equivalence_check(const SamplerConfig& config) {
  const ChartPtr src = canonical_chart(3);
  const ChartPtr dst = canonical_chart(2);
  const SmoothMap phi = make_map("a2-transform", src, dst, [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    const T r2 = sqrt(cst<T>(2)), r6 = sqrt(cst<T>(6));
    return std::vector<T>{r2 / cst<T>(4) * (x[0] + x[1] - x[2] * cst<T>(2)), r6 / cst<T>(4) * (x[1] - x[0]),
                          cst<T>(2) / r2 * (x[3] + x[4]), cst<T>(2) / r6 * (x[4] - x[3])};
  });
  A2Report r;
  r.brackets = check_poisson_map(phi, symplectic(3), symplectic(2), config);
  r.brackets.name = "a2 canonical brackets";

  auto g = [](auto x) {
    using S = typename decltype(x)::value_type;
    using M = ScalarTraits<S>;
    const S k = M::sqrt(M::fraction(2, 3));
    const S Q1 = M::sqrt(S(2)) / 4 * (x[0] + x[1] - 2 * x[2]);
    const S Q2 = M::sqrt(S(6)) / 4 * (x[1] - x[0]);
    const S lhs = M::exp(k * (M::sqrt(S(3)) * Q1 + Q2)) + M::exp(S(-2) * k * Q2);
    const S rhs = M::exp(x[0] - x[1]) + M::exp(x[1] - x[2]);
    return Comparison<S>{{lhs}, {rhs}};
  };
  r.potential = run_check(make_check("a2 potential pullback", src, {}, g, [](std::size_t) { return "V"; }), config);

  // On total momentum zero the kinetic terms differ by the factor 4/3.
  auto kin = [](auto x) {
    using S = typename decltype(x)::value_type;
    using M = ScalarTraits<S>;
    const S p1 = x[3], p2 = x[4], p3 = -p1 - p2;
    const S P1 = S(2) / M::sqrt(S(2)) * (p1 + p2);
    const S P2 = S(2) / M::sqrt(S(6)) * (p2 - p1);
    return Comparison<S>{{(P1 * P1 + P2 * P2) / 2}, {S(4) / 3 * (p1 * p1 + p2 * p2 + p3 * p3) / 2}};
  };
  r.kinetic = run_check(make_check("a2 kinetic ratio 4/3", src, {}, kin, [](std::size_t) { return "T"; }), config);
  return r;
}

// ---------------------------------------------------------------------------
// B_n

ChartPtr bn_chart(int n) {
  require_bn(n);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("a" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("b" + std::to_string(i));
  return make_chart(bn_tag(n), labels);
}

namespace {

std::vector<Predicate> a_nonzero(int n) {
  std::vector<Predicate> preds;
  for (int i = 1; i <= n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i - 1);
    preds.push_back(make_predicate("a" + std::to_string(i), [k](const auto& x) { return x[k]; }));
  }
  return preds;
}

int bn_rank_of(const ChartPtr& c) {
  const std::string& name = c->name();
  if (name.rfind("bn-n", 0) != 0) throw std::invalid_argument("recursion operator needs a B_n chart, got " + name);
  return std::stoi(name.substr(4));
}

}  // namespace

SmoothMap bn_flaschka_map(int n) {
  require_bn(n);
  const std::size_t m = static_cast<std::size_t>(n);
  return make_map("bn-flaschka", canonical_chart(n), bn_chart(n), [m](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    std::vector<T> out;
    for (std::size_t i = 0; i + 1 < m; ++i) out.push_back(cst<T>(1, 2) * exp((x[i] - x[i + 1]) * cst<T>(1, 2)));
    out.push_back(cst<T>(1, 2) * exp(x[m - 1] * cst<T>(1, 2)));
    for (std::size_t i = 0; i < m; ++i) out.push_back(x[m + i] * cst<T>(-1, 2));
    return out;
  });
}

VectorField bn_flow(int n) {
  VectorField X = scaled(hamiltonian_vf(bn_bracket(n, 1), bn_invariant(n, 2)), make_rational(1, 2));
  X.info = {"bn-toda", bn_tag(n), 0};
  return X;
}

LaxPair bn_lax(int n) {
  require_bn(n);
  const std::size_t size = static_cast<std::size_t>(2 * n + 1);
  const std::size_t m = static_cast<std::size_t>(n);
  auto offdiag = [m](const auto& c, std::size_t k) {
    return k < m ? c.a(static_cast<int>(k) + 1) : -c.a(static_cast<int>(2 * m - k));
  };
  auto L = matrix_evaluator(size, [n, m, size, offdiag](const auto& x, auto& out) {
    BnCoords<std::decay_t<decltype(x[0])>> c{x, n};
    for (std::size_t k = 0; k < m; ++k) {
      out(k, k) = c.b(static_cast<int>(k) + 1);
      out(size - 1 - k, size - 1 - k) = -c.b(static_cast<int>(k) + 1);
    }
    for (std::size_t k = 0; k + 1 < size; ++k) {
      out(k, k + 1) = offdiag(c, k);
      out(k + 1, k) = offdiag(c, k);
    }
  });
  auto B = matrix_evaluator(size, [n, size, offdiag](const auto& x, auto& out) {
    BnCoords<std::decay_t<decltype(x[0])>> c{x, n};
    for (std::size_t k = 0; k + 1 < size; ++k) {
      out(k, k + 1) = offdiag(c, k);
      out(k + 1, k) = -offdiag(c, k);
    }
  });
  return LaxPair{bn_chart(n), size, L, B};
}

ScalarField bn_invariant(int n, int k) { return trace_power(bn_lax(n), k, bn_tag(n)); }

std::vector<ScalarField> bn_invariants(int n) {
  std::vector<ScalarField> out;
  for (int i = 1; i <= n; ++i) out.push_back(bn_invariant(n, 2 * i));
  return out;
}

BracketTable bn_bracket_table(int n, int index) {
  require_bn(n);
  BracketTable t{bn_chart(n), {}, {}};
  auto A = [](int i) { return static_cast<std::size_t>(i - 1); };
  auto B = [n](int i) { return static_cast<std::size_t>(n + i - 1); };
  if (index == 1) {
    for (int i = 1; i <= n; ++i) {
      t.add(A(i), B(i), poly({term(-1, {A(i)})}));
      if (i < n) t.add(A(i), B(i + 1), poly({term(1, {A(i)})}));
    }
    return t;
  }
  if (index != 3) throw std::invalid_argument("B_n tables exist for pi_1 and pi_3");
  for (int i = 1; i <= n; ++i) {
    if (i < n) {
      t.add(A(i), A(i + 1), poly({term(1, {A(i), A(i + 1), B(i + 1)})}));
      t.add(A(i), B(i), poly({term(-1, {A(i), B(i), B(i)}), term(-1, {A(i), A(i), A(i)})}));
      t.add(A(i), B(i + 1), poly({term(1, {A(i), B(i + 1), B(i + 1)}), term(1, {A(i), A(i), A(i)})}));
      t.add(B(i), B(i + 1), poly({term(2, {A(i), A(i), B(i)}), term(2, {A(i), A(i), B(i + 1)})}));
    } else {
      t.add(A(i), B(i), poly({term(-1, {A(i), B(i), B(i)}), term(-2, {A(i), A(i), A(i)})}));
    }
    if (i + 2 <= n) t.add(A(i), B(i + 2), poly({term(1, {A(i), A(i + 1), A(i + 1)})}));
    if (i > 1) t.add(A(i), B(i - 1), poly({term(-1, {A(i - 1), A(i - 1), A(i)})}));
  }
  return t;
}

BivectorField bn_bracket(int n, int index) {
  if (index < 1 || index % 2 == 0) throw std::invalid_argument("B_n brackets have odd index");
  if (index > 7) throw std::invalid_argument("B_n brackets stop at pi_7");
  if (index <= 3) return table_bivector(bn_bracket_table(n, index), {"pi" + std::to_string(index), bn_tag(n), index});
  BivectorField out = bn_recursion_apply(bn_bracket(n, index - 2));
  out.info = {"pi" + std::to_string(index), bn_tag(n), index};
  return out;
}

BivectorField bn_recursion_apply(const BivectorField& T) {
  const int n = bn_rank_of(T.chart);
  const BivectorField p1 = bn_bracket(n, 1);
  const BivectorField p3 = bn_bracket(n, 3);
  const std::size_t dim = T.chart->dimension();
  auto g = [p1, p3, T, dim](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const Matrix<J> m = full_matrix(p3.jets<S>(x, order)) * inverse(full_matrix(p1.jets<S>(x, order))) *
                        full_matrix(T.jets<S>(x, order));
    BivectorValues<J> out(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) out.set(i, j, m(i, j).truncated(order));
    return std::move(out.values());
  };
  return BivectorField{T.chart, {"N(" + T.info.name + ")", T.info.system, T.info.index + 2},
                       point_evaluator(T.eval.outputs, g, T.eval.has_exact()),
                       merge_predicates(a_nonzero(n), T.singular)};
}

VectorField bn_recursion_apply(const VectorField& V) {
  const int n = bn_rank_of(V.chart);
  const BivectorField p1 = bn_bracket(n, 1);
  const BivectorField p3 = bn_bracket(n, 3);
  const std::size_t dim = V.chart->dimension();
  auto g = [p1, p3, V, dim](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const auto v = V.eval(x, order);
    Matrix<J> col(dim, 1);
    for (std::size_t k = 0; k < dim; ++k) col(k, 0) = v[k];
    const Matrix<J> m =
        full_matrix(p3.jets<S>(x, order)) * inverse(full_matrix(p1.jets<S>(x, order))) * col;
    std::vector<J> out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = m(k, 0).truncated(order);
    return out;
  };
  return VectorField{V.chart, {"N(" + V.info.name + ")", V.info.system, V.info.index + 2},
                     point_evaluator(dim, g, V.eval.has_exact()), merge_predicates(a_nonzero(n), V.singular)};
}

IdentityReport bn_recursion_antisymmetry(const BivectorField& T, const SamplerConfig& config) {
  const int n = bn_rank_of(T.chart);
  const BivectorField p1 = bn_bracket(n, 1);
  const BivectorField p3 = bn_bracket(n, 3);
  const std::size_t dim = T.chart->dimension();
  auto g = [p1, p3, T, dim](auto x) {
    using S = typename decltype(x)::value_type;
    const Matrix<Jet<S>> m =
        full_matrix(p3.jets<S>(x, 0)) * inverse(full_matrix(p1.jets<S>(x, 0))) * full_matrix(T.jets<S>(x, 0));
    Comparison<S> c;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) c.lhs.push_back(m(i, j).value() + m(j, i).value());
    return c;
  };
  return run_check(make_check("antisymmetry of N(" + T.info.name + ")", T.chart,
                              merge_predicates(a_nonzero(n), T.singular), g),
                   config);
}

// ---------------------------------------------------------------------------
// Dirac reduction

template <class S>
Matrix<S> constraint_matrix(const BivectorField& pi, const ConstraintSet& C, const Point<S>& x) {
  require_same_chart(pi.chart, C.ambient);
  const Matrix<S> c = form_values<S>(C);
  return c * eval_bivector(pi, x) * c.transposed();
}

template <class S>
S dirac_bracket(const BivectorField& pi, const ConstraintSet& C, const ScalarField& F, const ScalarField& G,
                const Point<S>& x) {
  require_same_chart(pi.chart, C.ambient);
  require_same_chart(F.chart, C.ambient);
  require_same_chart(G.chart, C.ambient);
  const std::size_t n = C.ambient->dimension();
  if (x.coords.size() != n) throw std::invalid_argument("point has the wrong dimension");
  for (std::size_t i = 0; i < C.forms.size(); ++i) {
    S v(0), scale(1);
    for (std::size_t k = 0; k < n; ++k) {
      const S c = ScalarTraits<S>::from_rational(C.forms[i][k]);
      v += c * x.coords[k];
      scale += abs_value(c * x.coords[k]);
    }
    const bool on = ScalarTraits<S>::exact ? is_zero(v) : magnitude(v) <= 1e-12 * to_double(scale);
    if (!on) throw std::invalid_argument("point is off the constraint " + C.names[i]);
  }
  const Matrix<S> p = eval_bivector(pi, x);
  const Matrix<S> c = form_values<S>(C);
  const Matrix<S> pinv = inverse(c * p * c.transposed());
  Matrix<S> gf(1, n), gg(1, n);
  const auto df = gradient(F, x), dg = gradient(G, x);
  for (std::size_t k = 0; k < n; ++k) {
    gf(0, k) = df[k];
    gg(0, k) = dg[k];
  }
  const Matrix<S> fp = gf * p * c.transposed();  // {F, p_i}
  const Matrix<S> gp = gg * p * c.transposed();  // {G, p_j}
  return (gf * p * gg.transposed())(0, 0) + (fp * pinv * gp.transposed())(0, 0);
}

template Matrix<Rational> constraint_matrix(const BivectorField&, const ConstraintSet&, const Point<Rational>&);
template Matrix<double> constraint_matrix(const BivectorField&, const ConstraintSet&, const Point<double>&);
template Rational dirac_bracket(const BivectorField&, const ConstraintSet&, const ScalarField&, const ScalarField&,
                                const Point<Rational>&);
template double dirac_bracket(const BivectorField&, const ConstraintSet&, const ScalarField&, const ScalarField&,
                              const Point<double>&);

BivectorField dirac_bivector(const BracketTable& ambient, const ConstraintSet& C, FieldInfo info) {
  require_same_chart(ambient.chart, C.ambient);
  validate_constraints(C);
  const std::size_t m = C.reduced->dimension();
  auto g = [ambient, C, m](auto y, int order) {
    using S = typename decltype(y)::value_type;
    using J = Jet<S>;
    const auto yj = seed(y, order);
    std::vector<J> x;
    x.reserve(C.embedding.size());
    for (const auto& e : C.embedding) x.push_back(e.evaluate(yj));
    const Matrix<J> p = table_matrix(ambient, x);
    BivectorValues<J> out(m);
    if (C.forms.empty()) {
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, p(C.coordinates[i], C.coordinates[j]));
      return std::move(out.values());
    }
    const Matrix<J> c = form_matrix<J>(C);
    const Matrix<J> pc = p * c.transposed();
    const Matrix<J> d = p + pc * inverse(c * pc) * pc.transposed();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, d(C.coordinates[i], C.coordinates[j]).truncated(order));
    return std::move(out.values());
  };
  return BivectorField{C.reduced, std::move(info), point_evaluator(m * (m - 1) / 2, g, C.reduced->exact()),
                       C.reduced->singular()};
}

// ---------------------------------------------------------------------------
// B_2

ChartPtr b2_chart() {
  return make_chart("b2-center", {"a1", "a2", "b1", "b2", "b3"}, true,
                    {make_predicate("b3", [](const auto& x) { return x[4]; }),
                     make_predicate("a1*a2", [](const auto& x) { return x[0] * x[1]; })});
}

ConstraintSet b2_constraints() {
  ConstraintSet C;
  C.ambient = classical::flaschka_chart(5);
  C.reduced = b2_chart();
  // Ambient order a1..a4 (0..3), b1..b5 (4..8).
  auto form = [](std::initializer_list<std::pair<std::size_t, long>> coeffs) {
    std::vector<Rational> f(9, Rational(0));
    for (const auto& [k, v] : coeffs) f[k] = Rational(v);
    return f;
  };
  C.names = {"p1", "p2", "p3", "p4"};
  C.forms = {form({{0, 1}, {3, 1}}), form({{1, 1}, {2, 1}}), form({{4, 1}, {8, 1}, {6, -2}}),
             form({{5, 1}, {7, 1}, {6, -2}})};
  // Reduced order a1, a2, b1, b2, b3.
  C.embedding = {poly({term(1, {0})}),  poly({term(1, {1})}),  poly({term(-1, {1})}),
                 poly({term(-1, {0})}), poly({term(1, {2})}),  poly({term(1, {3})}),
                 poly({term(1, {4})}),  poly({term(2, {4}), term(-1, {3})}), poly({term(2, {4}), term(-1, {2})})};
  C.coordinates = {0, 1, 4, 5, 6};
  return C;
}

LaxPair b2_lax() {
  auto L = matrix_evaluator(5, [](const auto& x, auto& m) {
    using T = std::decay_t<decltype(x[0])>;
    const T &a1 = x[0], &a2 = x[1], &b1 = x[2], &b2 = x[3], &b3 = x[4];
    const T diag[5] = {b1, b2, b3, b3 * cst<T>(2) - b2, b3 * cst<T>(2) - b1};
    const T off[4] = {a1, a2, -a2, -a1};
    for (std::size_t k = 0; k < 5; ++k) m(k, k) = diag[k];
    for (std::size_t k = 0; k < 4; ++k) {
      m(k, k + 1) = off[k];
      m(k + 1, k) = off[k];
    }
  });
  auto B = matrix_evaluator(5, [](const auto& x, auto& m) {
    using T = std::decay_t<decltype(x[0])>;
    const T off[4] = {x[0], x[1], -x[1], -x[0]};
    for (std::size_t k = 0; k < 4; ++k) {
      m(k, k + 1) = off[k];
      m(k + 1, k) = -off[k];
    }
  });
  return LaxPair{b2_chart(), 5, L, B};
}

ScalarField b2_invariant(int k) { return trace_power(b2_lax(), k, "b2"); }
ScalarField b2_det() { return lax_determinant(b2_lax(), "b2"); }

BracketTable b2_rational_table() {
  BracketTable t{b2_chart(), {}, {}};
  const std::size_t a1 = 0, a2 = 1, b1 = 2, b2 = 3, b3 = 4;
  const Polynomial ten_b3 = poly({term(10, {b3})});
  const Polynomial five_b3 = poly({term(5, {b3})});
  t.add(a1, a2, poly({term(3, {a1, a2, b3}), term(-1, {a1, a2, b2}), term(-2, {a1, a2, b1})}), ten_b3);
  t.add(a1, b1, poly({term(-10, {a1, b1, b3}), term(2, {a1, b1, b2}), term(3, {a1, b1, b1}), term(1, {a1, a1, a1})}),
        ten_b3);
  t.add(a1, b2,
        poly({term(10, {a1, b2, b3}), term(-3, {a1, b2, b2}), term(-2, {a1, b1, b2}), term(-4, {a1, a2, a2}),
              term(-1, {a1, a1, a1})}),
        ten_b3);
  t.add(a1, b3, poly({term(1, {a1, b2}, 5), term(-1, {a1, b1}, 5)}));
  t.add(a2, b1, poly({term(2, {a2, b1, b3}), term(-2, {a2, b1, b2}), term(1, {a2, a1, a1})}), ten_b3);
  t.add(a2, b2, poly({term(-8, {a2, b2, b3}), term(3, {a2, b2, b2}), term(6, {a2, a2, a2}), term(4, {a2, a1, a1})}),
        ten_b3);
  t.add(a2, b3, poly({term(1, {a2, b3}, 5), term(-1, {a2, b2}, 5)}));
  t.add(b1, b2, poly({term(10, {a1, a1, b3}), term(-3, {a1, a1, b2}), term(-2, {a2, a2, b1}), term(-3, {a1, a1, b1})}),
        five_b3);
  t.add(b1, b3, poly({term(2, {a1, a1}, 5)}));
  t.add(b2, b3, poly({term(2, {a2, a2}, 5), term(-2, {a1, a1}, 5)}));
  t.singular = {make_predicate("b3", [](const auto& x) { return x[4]; })};
  return t;
}

BivectorField b2_rational_bracket() { return table_bivector(b2_rational_table(), {"pi2", "b2", 2}); }

BivectorField b2_linear_bracket() {
  return dirac_bivector(classical::bracket_table(5, 1), b2_constraints(), {"pi1", "b2", 1});
}

BivectorField b2_dirac_bracket() {
  return dirac_bivector(classical::bracket_table(5, 2), b2_constraints(), {"dirac(pi2)", "b2", 2});
}

template <class S>
Matrix<S> b2_printed_p(const std::vector<S>& y) {
  const S &a1 = y[0], &a2 = y[1], &b3 = y[4];
  Matrix<S> P(4, 4);
  P(0, 2) = -2 * a1 * b3;
  P(0, 3) = 2 * a1 * b3;
  P(1, 2) = -4 * a2 * b3;
  P(1, 3) = -6 * a2 * b3;
  P(2, 0) = 2 * a1 * b3;
  P(2, 1) = 4 * a2 * b3;
  P(3, 0) = -2 * a1 * b3;
  P(3, 1) = 6 * a2 * b3;
  return P;
}

template <class S>
Matrix<S> b2_printed_p_inverse(const std::vector<S>& y) {
  const S &a1 = y[0], &a2 = y[1], &b3 = y[4];
  const S u = a1 * b3, v = a2 * b3;
  Matrix<S> Q(4, 4);
  Q(0, 2) = S(3) / (10 * u);
  Q(0, 3) = -S(1) / (5 * u);
  Q(1, 2) = S(1) / (10 * v);
  Q(1, 3) = S(1) / (10 * v);
  Q(2, 0) = -S(3) / (10 * u);
  Q(2, 1) = S(1) / (5 * u);
  Q(3, 0) = -S(1) / (10 * v);
  Q(3, 1) = -S(1) / (10 * v);
  return Q;
}

template Matrix<Rational> b2_printed_p(const std::vector<Rational>&);
template Matrix<double> b2_printed_p(const std::vector<double>&);
template Matrix<Rational> b2_printed_p_inverse(const std::vector<Rational>&);
template Matrix<double> b2_printed_p_inverse(const std::vector<double>&);

B2DiracReport b2_dirac_check(const SamplerConfig& config) {
  B2DiracReport r;
  r.bracket = check_equal(b2_dirac_bracket(), b2_rational_bracket(), config, "dirac(A4 pi2) = B2 table");
  const ConstraintSet C = b2_constraints();
  const BivectorField amb = classical::bracket(5, 2);
  auto label = [](std::size_t k) { return "P(" + std::to_string(k / 4 + 1) + "," + std::to_string(k % 4 + 1) + ")"; };
  auto sides = [C, amb](auto y, bool inverse_side) {
    using S = typename decltype(y)::value_type;
    std::vector<S> yv(y.begin(), y.end());
    std::vector<Jet<S>> yj(yv.begin(), yv.end());
    std::vector<S> x;
    for (const auto& e : C.embedding) x.push_back(e.evaluate(yj).value());
    Matrix<S> computed = constraint_matrix(amb, C, Point<S>{C.ambient, x});
    Matrix<S> printed = b2_printed_p(yv);
    if (inverse_side) {
      computed = inverse(computed);
      printed = b2_printed_p_inverse(yv);
    }
    Comparison<S> c;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        c.lhs.push_back(computed(i, j));
        c.rhs.push_back(printed(i, j));
      }
    return c;
  };
  r.p_matrix = run_check(make_check("B2 constraint matrix P", C.reduced, {}, [sides](auto y) { return sides(y, false); },
                                    label),
                         config);
  r.p_inverse = run_check(
      make_check("B2 inverse constraint matrix", C.reduced, {}, [sides](auto y) { return sides(y, true); }, label),
      config);
  return r;
}

}  // namespace todalab::lie
