#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "todalab/exact.hpp"
#include "todalab/field.hpp"

namespace todalab {

/// Coefficient times a product of chart coordinates (indices may repeat).
struct Term {
  Rational coeff;
  std::vector<std::size_t> vars;
};

/// Sparse polynomial over the rationals in chart coordinates.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Term> terms) : terms_(terms) {}

  static Polynomial constant(const Rational& c) { return Polynomial({Term{c, {}}}); }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

  Polynomial& operator+=(const Polynomial& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  template <class T>
  T evaluate(const std::vector<T>& x) const {
    T acc;
    for (const auto& t : terms_) {
      T m = T::from_rational(t.coeff);
      for (std::size_t v : t.vars) m = m * x[v];
      acc += m;
    }
    return acc;
  }

  /// Human-readable form, e.g. "-a1*b1^2 + 1/2*a1*a2".
  std::string to_string(const std::vector<std::string>& labels) const;

 private:
  std::vector<Term> terms_;
};

inline Term term(long num, std::initializer_list<std::size_t> vars, long den = 1) {
  return Term{make_rational(num, den), std::vector<std::size_t>(vars)};
}

struct TableEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  Polynomial numerator;
  Polynomial denominator;  // empty means 1
};

/// A bracket given by its structure functions {x_i, x_j}.
struct BracketTable {
  ChartPtr chart;
  std::vector<TableEntry> entries;
  std::vector<Predicate> singular;

  /// Adds {x_i, x_j} = num (or num/den); repeated pairs accumulate.
  void add(std::size_t i, std::size_t j, Polynomial num, Polynomial den = {});
};

BivectorField table_bivector(const BracketTable& table, FieldInfo info);

/// One line per nonzero entry: label_i, label_j, formula.
struct TableRow {
  std::string i;
  std::string j;
  std::string poly;
};

std::vector<TableRow> table_rows(const BracketTable& table);

}  // namespace todalab
