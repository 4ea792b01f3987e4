#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "todalab/exact.hpp"
#include "todalab/jet.hpp"

namespace todalab {

template <class S>
using PointEval = std::function<std::vector<Jet<S>>(std::span<const S>, int)>;

/// A smooth map evaluated as jets of a requested order at a point, once over the
/// rationals and once over binary64. The exact half is absent on charts whose
/// formulas involve exp or sqrt.
struct Evaluator {
  std::size_t outputs = 0;
  PointEval<Rational> exact;
  PointEval<double> real;

  bool has_exact() const { return static_cast<bool>(exact); }

  template <class S>
  std::vector<Jet<S>> operator()(std::span<const S> x, int order) const {
    if constexpr (std::is_same_v<S, Rational>) {
      if (!exact) throw std::domain_error("field has no exact evaluator; use float mode");
      return exact(x, order);
    } else {
      return real(x, order);
    }
  }
};

/// Coordinates seeded as x_k + eps_k, truncated at the given order.
template <class S>
std::vector<Jet<S>> seed(std::span<const S> x, int order) {
  std::vector<Jet<S>> out;
  out.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.push_back(Jet<S>::variable(x[k], k, order));
  return out;
}

template <class T>
T frac(long num, long den) {
  return T::fraction(num, den);
}

/// g(std::span<const S> x, int order) -> std::vector<Jet<S>>, generic in S.
template <class G>
Evaluator point_evaluator(std::size_t outputs, G g, bool exact = true) {
  Evaluator e;
  e.outputs = outputs;
  if (exact) {
    e.exact = [g](std::span<const Rational> x, int order) { return g(x, order); };
  }
  e.real = [g](std::span<const double> x, int order) { return g(x, order); };
  return e;
}

/// f(const std::vector<T>& x) -> std::vector<T> with T a jet type.
template <class F>
Evaluator formula_evaluator(std::size_t outputs, F f, bool exact = true) {
  return point_evaluator(
      outputs,
      [f, outputs](auto x, int order) {
        auto out = f(seed(x, order));
        if (out.size() != outputs) throw std::logic_error("formula returned the wrong number of components");
        return out;
      },
      exact);
}

/// A scalar function that must not vanish at sampled or evaluated points.
struct Predicate {
  std::string name;
  Evaluator eval;
};

template <class F>
Predicate make_predicate(std::string name, F f, bool exact = true) {
  return Predicate{std::move(name),
                   formula_evaluator(1, [f](const auto& x) { return std::vector{f(x)}; }, exact)};
}

class Chart {
 public:
  Chart(std::string name, std::vector<std::string> labels, bool exact = true,
        std::vector<Predicate> singular = {})
      : name_(std::move(name)), labels_(std::move(labels)), exact_(exact), singular_(std::move(singular)) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j]) throw std::invalid_argument("duplicate chart label " + labels_[i]);
  }

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool exact() const { return exact_; }
  const std::vector<Predicate>& singular() const { return singular_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw std::out_of_range("chart " + name_ + " has no coordinate " + label);
  }

  bool same_as(const Chart& o) const { return name_ == o.name_ && labels_ == o.labels_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  bool exact_ = true;
  std::vector<Predicate> singular_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::string name, std::vector<std::string> labels, bool exact = true,
                           std::vector<Predicate> singular = {}) {
  return std::make_shared<const Chart>(std::move(name), std::move(labels), exact, std::move(singular));
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!a->same_as(*b)) throw std::invalid_argument("chart mismatch: " + a->name() + " vs " + b->name());
}

template <class S>
struct Point {
  ChartPtr chart;
  std::vector<S> coords;
};

using PhasePoint = Point<Rational>;
using RealPoint = Point<double>;

struct FieldInfo {
  std::string name;
  std::string system;
  int index = 0;
};

/// Predicates of both lists, the first occurrence of each name kept.
inline std::vector<Predicate> merge_predicates(const std::vector<Predicate>& a, const std::vector<Predicate>& b) {
  std::vector<Predicate> out = a;
  for (const auto& p : b) {
    bool seen = false;
    for (const auto& q : out) seen = seen || q.name == p.name;
    if (!seen) out.push_back(p);
  }
  return out;
}

struct ScalarField {
  ChartPtr chart;
  FieldInfo info;
  Evaluator eval;
  std::vector<Predicate> singular;

  template <class S>
  Jet<S> jet(std::span<const S> x, int order) const {
    return eval(x, order).front();
  }
};

struct VectorField {
  ChartPtr chart;
  FieldInfo info;
  Evaluator eval;
  std::vector<Predicate> singular;
};

/// Antisymmetric matrix stored as its strict upper triangle (row-major), so
/// antisymmetry holds by construction.
template <class T>
class BivectorValues {
 public:
  explicit BivectorValues(std::size_t n) : n_(n), values_(n < 2 ? 0 : n * (n - 1) / 2, T(0)) {}
  BivectorValues(std::size_t n, std::vector<T> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != (n < 2 ? 0 : n * (n - 1) / 2)) throw std::logic_error("bivector size mismatch");
  }

  static std::size_t slot(std::size_t n, std::size_t i, std::size_t j) {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t dimension() const { return n_; }

  T get(std::size_t i, std::size_t j) const {
    if (i == j) return T(0);
    return i < j ? values_[slot(n_, i, j)] : -values_[slot(n_, j, i)];
  }

  void set(std::size_t i, std::size_t j, const T& v) {
    if (i == j) throw std::logic_error("diagonal bivector entry");
    if (i < j) {
      values_[slot(n_, i, j)] = v;
    } else {
      values_[slot(n_, j, i)] = -v;
    }
  }

  void add(std::size_t i, std::size_t j, const T& v) {
    if (i == j) throw std::logic_error("diagonal bivector entry");
    if (i < j) {
      values_[slot(n_, i, j)] += v;
    } else {
      values_[slot(n_, j, i)] -= v;
    }
  }

  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

 private:
  std::size_t n_;
  std::vector<T> values_;
};

struct BivectorField {
  ChartPtr chart;
  FieldInfo info;
  Evaluator eval;
  std::vector<Predicate> singular;

  template <class S>
  BivectorValues<Jet<S>> jets(std::span<const S> x, int order) const {
    return BivectorValues<Jet<S>>(chart->dimension(), eval(x, order));
  }
};

/// f(const std::vector<T>& x, BivectorValues<T>& out) fills the bracket table.
template <class F>
Evaluator bivector_evaluator(std::size_t n, F f, bool exact = true) {
  const std::size_t outputs = n < 2 ? 0 : n * (n - 1) / 2;
  return formula_evaluator(
      outputs,
      [f, n](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        BivectorValues<T> out(n);
        f(x, out);
        return std::move(out.values());
      },
      exact);
}

template <class F>
ScalarField make_scalar(ChartPtr chart, FieldInfo info, F f, std::vector<Predicate> singular = {}) {
  const bool exact = chart->exact();
  Evaluator e = formula_evaluator(1, [f](const auto& x) { return std::vector{f(x)}; }, exact);
  return ScalarField{std::move(chart), std::move(info), std::move(e), std::move(singular)};
}

template <class F>
VectorField make_vector(ChartPtr chart, FieldInfo info, F f, std::vector<Predicate> singular = {}) {
  const bool exact = chart->exact();
  Evaluator e = formula_evaluator(chart->dimension(), f, exact);
  return VectorField{std::move(chart), std::move(info), std::move(e), std::move(singular)};
}

template <class F>
BivectorField make_bivector(ChartPtr chart, FieldInfo info, F f, std::vector<Predicate> singular = {}) {
  const bool exact = chart->exact();
  Evaluator e = bivector_evaluator(chart->dimension(), f, exact);
  return BivectorField{std::move(chart), std::move(info), std::move(e), std::move(singular)};
}

}  // namespace todalab
