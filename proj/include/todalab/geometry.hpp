#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "todalab/field.hpp"
#include "todalab/jet.hpp"
#include "todalab/linalg.hpp"

namespace todalab {

// ---------------------------------------------------------------------------
// Point validation

template <class S>
bool is_nonzero_value(const S& v) {
  if constexpr (ScalarTraits<S>::exact) {
    return !is_zero(v);
  } else {
    return std::isfinite(v) && std::fabs(v) > 1e-12;
  }
}

/// Name of the first predicate vanishing at x, or empty.
template <class S>
std::string violated_predicate(const std::vector<Predicate>& preds, std::span<const S> x) {
  for (const auto& p : preds) {
    if (!is_nonzero_value(p.eval(x, 0).front().value())) return p.name;
  }
  return {};
}

template <class S>
void require_regular(const ChartPtr& chart, const std::vector<Predicate>& preds, const Point<S>& x) {
  require_same_chart(chart, x.chart);
  if (x.coords.size() != chart->dimension()) throw std::invalid_argument("point has the wrong dimension");
  const std::span<const S> xs(x.coords);
  std::string bad = violated_predicate(chart->singular(), xs);
  if (bad.empty()) bad = violated_predicate(preds, xs);
  if (!bad.empty()) throw std::domain_error("point lies on the singular locus " + bad);
}

// ---------------------------------------------------------------------------
// Pointwise evaluation

template <class S>
Matrix<S> eval_bivector(const BivectorField& pi, const Point<S>& x) {
  require_regular(pi.chart, pi.singular, x);
  const std::size_t n = pi.chart->dimension();
  const auto b = pi.jets<S>(std::span<const S>(x.coords), 0);
  Matrix<S> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m(i, j) = b.get(i, j).value();
  return m;
}

template <class S>
std::vector<S> eval_vector(const VectorField& v, const Point<S>& x) {
  require_regular(v.chart, v.singular, x);
  std::vector<S> out;
  for (const auto& j : v.eval(std::span<const S>(x.coords), 0)) out.push_back(j.value());
  return out;
}

template <class S>
S eval_scalar(const ScalarField& f, const Point<S>& x) {
  require_regular(f.chart, f.singular, x);
  return f.jet(std::span<const S>(x.coords), 0).value();
}

template <class S>
std::vector<S> gradient(const ScalarField& f, const Point<S>& x) {
  require_regular(f.chart, f.singular, x);
  const auto j = f.jet(std::span<const S>(x.coords), 1);
  std::vector<S> g;
  for (std::size_t k = 0; k < x.coords.size(); ++k) g.push_back(j.partial(k));
  return g;
}

/// Components of a totally antisymmetric 3-tensor, stored for i<j<k in
/// lexicographic order.
template <class S>
class TrivectorValues {
 public:
  explicit TrivectorValues(std::size_t n) : n_(n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) triples_.push_back({i, j, k});
    values_.assign(triples_.size(), S(0));
  }

  std::size_t dimension() const { return n_; }
  const std::vector<std::array<std::size_t, 3>>& triples() const { return triples_; }
  const std::vector<S>& values() const { return values_; }
  std::vector<S>& values() { return values_; }

  S get(std::size_t i, std::size_t j, std::size_t k) const {
    std::array<std::size_t, 3> t{i, j, k};
    if (i == j || j == k || i == k) return S(0);
    int sign = 1;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b + 1 < 3 - a; ++b)
        if (t[b] > t[b + 1]) {
          std::swap(t[b], t[b + 1]);
          sign = -sign;
        }
    for (std::size_t s = 0; s < triples_.size(); ++s)
      if (triples_[s] == t) return sign > 0 ? values_[s] : S(-values_[s]);
    return S(0);
  }

 private:
  std::size_t n_;
  std::vector<std::array<std::size_t, 3>> triples_;
  std::vector<S> values_;
};

/// [pi, rho]^{ijk} = sum_l (pi^{il} d_l rho^{jk} + rho^{il} d_l pi^{jk}) + cyclic(ijk),
/// without point validation.
template <class S>
TrivectorValues<S> schouten_at(const BivectorField& pi, const BivectorField& rho, std::span<const S> x) {
  const std::size_t n = pi.chart->dimension();
  TrivectorValues<S> out(n);
  if (n < 3) return out;
  const auto pj = pi.jets<S>(x, 1);
  const bool same = &pi == &rho;
  const auto rj = same ? pj : rho.jets<S>(x, 1);
  const std::size_t slots = pj.values().size();
  // Values and first partials of both tensors.
  Matrix<S> pv(n, n), rv(n, n);
  std::vector<S> pd(slots * n, S(0)), rd(slots * n, S(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t s = BivectorValues<S>::slot(n, i, j);
      const auto& a = pj.values()[s];
      const auto& b = rj.values()[s];
      pv(i, j) = a.value();
      pv(j, i) = -pv(i, j);
      rv(i, j) = b.value();
      rv(j, i) = -rv(i, j);
      for (std::size_t l = 0; l < n; ++l) {
        pd[s * n + l] = a.partial(l);
        rd[s * n + l] = b.partial(l);
      }
    }
  auto partial = [&](const std::vector<S>& d, std::size_t j, std::size_t k, std::size_t l) -> S {
    if (j < k) return d[BivectorValues<S>::slot(n, j, k) * n + l];
    return -d[BivectorValues<S>::slot(n, k, j) * n + l];
  };
  auto term = [&](std::size_t i, std::size_t j, std::size_t k) {
    S acc(0);
    for (std::size_t l = 0; l < n; ++l) {
      if (!is_zero(pv(i, l))) acc += pv(i, l) * partial(rd, j, k, l);
      if (!is_zero(rv(i, l))) acc += rv(i, l) * partial(pd, j, k, l);
    }
    return acc;
  };
  const auto& triples = out.triples();
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto [i, j, k] = triples[t];
    out.values()[t] = term(i, j, k) + term(j, k, i) + term(k, i, j);
  }
  return out;
}

template <class S>
TrivectorValues<S> schouten_22(const BivectorField& pi, const BivectorField& rho, const Point<S>& x) {
  require_same_chart(pi.chart, rho.chart);
  require_regular(pi.chart, merge_predicates(pi.singular, rho.singular), x);
  return schouten_at(pi, rho, std::span<const S>(x.coords));
}

// ---------------------------------------------------------------------------
// Generated fields. Each evaluates its inputs one order higher and
// differentiates, so generated fields nest to any depth.

namespace detail {

template <class S>
std::vector<std::vector<Jet<S>>> derivatives(const std::vector<Jet<S>>& v, std::size_t n) {
  std::vector<std::vector<Jet<S>>> d(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    d[a].reserve(n);
    for (std::size_t k = 0; k < n; ++k) d[a].push_back(v[a].is_constant() ? Jet<S>() : v[a].derivative(k));
  }
  return d;
}

inline std::string label_of(const FieldInfo& info) { return info.name; }

}  // namespace detail

inline BivectorField lie_derivative(const VectorField& X, const BivectorField& pi) {
  require_same_chart(X.chart, pi.chart);
  const std::size_t n = pi.chart->dimension();
  auto g = [X, pi, n](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    BivectorValues<J> out(n);
    if (n < 2) return std::move(out.values());
    const auto xv = X.eval(x, order + 1);
    const auto pj = pi.jets<S>(x, order + 1);
    const auto dx = detail::derivatives(xv, n);
    const auto dp = detail::derivatives(pj.values(), n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t s = BivectorValues<J>::slot(n, i, j);
        J acc;
        for (std::size_t k = 0; k < n; ++k) {
          if (!xv[k].is_zero() && !dp[s][k].is_zero()) acc += xv[k] * dp[s][k];
          if (!dx[i][k].is_zero()) {
            const J pkj = pj.get(k, j);
            if (!pkj.is_zero()) acc -= pkj * dx[i][k];
          }
          if (!dx[j][k].is_zero()) {
            const J pik = pj.get(i, k);
            if (!pik.is_zero()) acc -= pik * dx[j][k];
          }
        }
        out.set(i, j, acc.truncated(order));
      }
    return std::move(out.values());
  };
  return BivectorField{pi.chart,
                       {"L_" + X.info.name + "(" + pi.info.name + ")", pi.info.system, pi.info.index + X.info.index},
                       point_evaluator(pi.eval.outputs, g, X.eval.has_exact() && pi.eval.has_exact()),
                       merge_predicates(X.singular, pi.singular)};
}

/// [X,Y]^i = X^k d_k Y^i - Y^k d_k X^i.
inline VectorField vf_commutator(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.chart, Y.chart);
  const std::size_t n = X.chart->dimension();
  auto g = [X, Y, n](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const auto xv = X.eval(x, order + 1);
    const auto yv = Y.eval(x, order + 1);
    const auto dx = detail::derivatives(xv, n);
    const auto dy = detail::derivatives(yv, n);
    std::vector<J> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      J acc;
      for (std::size_t k = 0; k < n; ++k) {
        if (!xv[k].is_zero() && !dy[i][k].is_zero()) acc += xv[k] * dy[i][k];
        if (!yv[k].is_zero() && !dx[i][k].is_zero()) acc -= yv[k] * dx[i][k];
      }
      out[i] = acc.truncated(order);
    }
    return out;
  };
  return VectorField{X.chart,
                     {"[" + X.info.name + "," + Y.info.name + "]", X.info.system, X.info.index + Y.info.index},
                     point_evaluator(n, g, X.eval.has_exact() && Y.eval.has_exact()),
                     merge_predicates(X.singular, Y.singular)};
}

/// chi^i = sum_j pi^{ij} d_j H.
inline VectorField hamiltonian_vf(const BivectorField& pi, const ScalarField& H) {
  require_same_chart(pi.chart, H.chart);
  const std::size_t n = pi.chart->dimension();
  auto g = [pi, H, n](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const auto pj = pi.jets<S>(x, order);
    const J h = H.jet(x, order + 1);
    std::vector<J> dh(n);
    for (std::size_t k = 0; k < n; ++k) dh[k] = h.derivative(k);
    std::vector<J> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      J acc;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || dh[j].is_zero()) continue;
        const J pij = pj.get(i, j);
        if (!pij.is_zero()) acc += pij * dh[j];
      }
      out[i] = acc.truncated(order);
    }
    return out;
  };
  return VectorField{pi.chart,
                     {"chi(" + pi.info.name + "," + H.info.name + ")", pi.info.system, 0},
                     point_evaluator(n, g, pi.eval.has_exact() && H.eval.has_exact()),
                     merge_predicates(pi.singular, H.singular)};
}

/// The derivative X(f) = X^k d_k f.
inline ScalarField apply_vf(const VectorField& X, const ScalarField& f) {
  require_same_chart(X.chart, f.chart);
  const std::size_t n = X.chart->dimension();
  auto g = [X, f, n](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const auto xv = X.eval(x, order);
    const J fj = f.jet(x, order + 1);
    J acc;
    for (std::size_t k = 0; k < n; ++k)
      if (!xv[k].is_zero()) acc += xv[k] * fj.derivative(k);
    return std::vector<J>{acc.truncated(order)};
  };
  return ScalarField{X.chart,
                     {X.info.name + "(" + f.info.name + ")", f.info.system, 0},
                     point_evaluator(1, g, X.eval.has_exact() && f.eval.has_exact()),
                     merge_predicates(X.singular, f.singular)};
}

/// {f,g}_pi as a scalar field.
inline ScalarField bracket_field(const BivectorField& pi, const ScalarField& f, const ScalarField& g) {
  ScalarField out = apply_vf(hamiltonian_vf(pi, g), f);
  out.info.name = "{" + f.info.name + "," + g.info.name + "}";
  return out;
}

template <class S>
S poisson_bracket(const BivectorField& pi, const ScalarField& f, const ScalarField& g, const Point<S>& x) {
  require_same_chart(pi.chart, f.chart);
  require_same_chart(pi.chart, g.chart);
  require_regular(pi.chart, merge_predicates(pi.singular, merge_predicates(f.singular, g.singular)), x);
  const std::span<const S> xs(x.coords);
  const std::size_t n = pi.chart->dimension();
  const auto p = pi.jets<S>(xs, 0);
  const auto fj = f.jet(xs, 1);
  const auto gj = g.jet(xs, 1);
  S acc(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) acc += fj.partial(i) * p.get(i, j).value() * gj.partial(j);
  return acc;
}

/// (X wedge Y)^{ij} = X^i Y^j - X^j Y^i.
inline BivectorField wedge(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.chart, Y.chart);
  const std::size_t n = X.chart->dimension();
  auto g = [X, Y, n](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const auto xv = X.eval(x, order);
    const auto yv = Y.eval(x, order);
    BivectorValues<J> out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, xv[i] * yv[j] - xv[j] * yv[i]);
    return std::move(out.values());
  };
  return BivectorField{X.chart,
                       {X.info.name + "^" + Y.info.name, X.info.system, 0},
                       point_evaluator(n < 2 ? 0 : n * (n - 1) / 2, g, X.eval.has_exact() && Y.eval.has_exact()),
                       merge_predicates(X.singular, Y.singular)};
}

namespace detail {

template <class Field>
Field linear_combination(const std::vector<std::pair<Rational, Field>>& terms, std::string name) {
  if (terms.empty()) throw std::invalid_argument("empty linear combination");
  const auto& first = terms.front().second;
  bool exact = true;
  std::vector<Predicate> preds;
  for (const auto& [c, f] : terms) {
    require_same_chart(first.chart, f.chart);
    exact = exact && f.eval.has_exact();
    preds = merge_predicates(preds, f.singular);
  }
  const std::size_t outputs = first.eval.outputs;
  auto g = [terms, outputs](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    std::vector<J> out(outputs);
    for (const auto& [c, f] : terms) {
      if (is_zero(c)) continue;
      J cj;
      if constexpr (ScalarTraits<S>::exact) {
        cj = J(c);
      } else {
        cj = J(to_double(c));
      }
      const auto v = f.eval(x, order);
      for (std::size_t a = 0; a < outputs; ++a)
        if (!v[a].is_zero()) out[a] += cj * v[a];
    }
    for (auto& o : out) o = o.truncated(order);
    return out;
  };
  Field out{first.chart, first.info, point_evaluator(outputs, g, exact), preds};
  out.info.name = std::move(name);
  return out;
}

}  // namespace detail

inline BivectorField combine(const std::vector<std::pair<Rational, BivectorField>>& terms, std::string name) {
  return detail::linear_combination(terms, std::move(name));
}
inline VectorField combine(const std::vector<std::pair<Rational, VectorField>>& terms, std::string name) {
  return detail::linear_combination(terms, std::move(name));
}
inline ScalarField combine(const std::vector<std::pair<Rational, ScalarField>>& terms, std::string name) {
  return detail::linear_combination(terms, std::move(name));
}

inline BivectorField scaled(const BivectorField& pi, const Rational& c) {
  return combine({{c, pi}}, to_string(c) + "*" + pi.info.name);
}
inline VectorField scaled(const VectorField& X, const Rational& c) {
  return combine({{c, X}}, to_string(c) + "*" + X.info.name);
}

inline BivectorField zero_bivector(ChartPtr chart) {
  return make_bivector(std::move(chart), {"0", "", 0}, [](const auto&, auto&) {});
}

/// The field x -> pi(x + shift); for a translation this is also the pullback.
inline BivectorField translated(const BivectorField& pi, std::vector<Rational> shift) {
  if (shift.size() != pi.chart->dimension()) throw std::invalid_argument("shift has the wrong dimension");
  auto g = [pi, shift](auto x, int order) {
    using S = typename decltype(x)::value_type;
    std::vector<S> y(x.begin(), x.end());
    for (std::size_t k = 0; k < y.size(); ++k) {
      if constexpr (ScalarTraits<S>::exact) {
        y[k] += shift[k];
      } else {
        y[k] += to_double(shift[k]);
      }
    }
    return pi.eval(std::span<const S>(y), order);
  };
  return BivectorField{pi.chart, {pi.info.name + "(x+s)", pi.info.system, pi.info.index},
                       point_evaluator(pi.eval.outputs, g, pi.eval.has_exact()), {}};
}

/// Smooth map between charts; components are evaluated as jets so DF is exact.
struct SmoothMap {
  std::string name;
  ChartPtr source;
  ChartPtr target;
  Evaluator eval;
  std::vector<Predicate> singular;
};

template <class F>
SmoothMap make_map(std::string name, ChartPtr source, ChartPtr target, F f, std::vector<Predicate> singular = {}) {
  const bool exact = source->exact();
  const std::size_t m = target->dimension();
  Evaluator e = formula_evaluator(m, f, exact);
  return SmoothMap{std::move(name), std::move(source), std::move(target), std::move(e), std::move(singular)};
}

/// DF(x) pi_src(x) DF(x)^T and pi_dst(F(x)) as matrices.
template <class S>
std::pair<Matrix<S>, Matrix<S>> poisson_map_sides(const SmoothMap& F, const BivectorField& src,
                                                  const BivectorField& dst, std::span<const S> x) {
  const std::size_t n = F.source->dimension();
  const std::size_t m = F.target->dimension();
  const auto fj = F.eval(x, 1);
  Matrix<S> df(m, n);
  std::vector<S> y(m);
  for (std::size_t a = 0; a < m; ++a) {
    y[a] = fj[a].value();
    for (std::size_t k = 0; k < n; ++k) df(a, k) = fj[a].partial(k);
  }
  const auto ps = src.jets<S>(x, 0);
  Matrix<S> pm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pm(i, j) = ps.get(i, j).value();
  const auto pd = dst.jets<S>(std::span<const S>(y), 0);
  Matrix<S> rhs(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) rhs(i, j) = pd.get(i, j).value();
  return {df * pm * df.transposed(), rhs};
}

}  // namespace todalab
