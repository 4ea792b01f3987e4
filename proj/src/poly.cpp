#include "todalab/poly.hpp"

#include <algorithm>
#include <map>

namespace todalab {

std::string Polynomial::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    Rational c = t.coeff;
    const bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (k == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::vector<std::size_t> vars = t.vars;
    std::sort(vars.begin(), vars.end());
    std::string mono;
    for (std::size_t i = 0; i < vars.size();) {
      std::size_t j = i;
      while (j < vars.size() && vars[j] == vars[i]) ++j;
      if (!mono.empty()) mono += "*";
      mono += labels.at(vars[i]);
      if (j - i > 1) mono += "^" + std::to_string(j - i);
      i = j;
    }
    if (mono.empty()) {
      out += todalab::to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += todalab::to_string(c) + "*" + mono;
    }
  }
  return out;
}

void BracketTable::add(std::size_t i, std::size_t j, Polynomial num, Polynomial den) {
  if (i == j) throw std::logic_error("diagonal bracket entry");
  if (i > j) {
    std::swap(i, j);
    num = -num;
  }
  for (auto& e : entries) {
    if (e.i == i && e.j == j && e.denominator.is_zero() && den.is_zero()) {
      e.numerator += num;
      return;
    }
  }
  entries.push_back(TableEntry{i, j, std::move(num), std::move(den)});
}

BivectorField table_bivector(const BracketTable& table, FieldInfo info) {
  const std::size_t n = table.chart->dimension();
  const auto entries = table.entries;
  auto f = [entries](const auto& x, auto& out) {
    using T = std::decay_t<decltype(x[0])>;
    for (const auto& e : entries) {
      T v = e.numerator.evaluate(x);
      if (!e.denominator.is_zero()) v = v / e.denominator.evaluate(x);
      out.add(e.i, e.j, v);
    }
  };
  return BivectorField{table.chart, std::move(info), bivector_evaluator(n, f, table.chart->exact()), table.singular};
}

std::vector<TableRow> table_rows(const BracketTable& table) {
  const auto& labels = table.chart->labels();
  std::vector<TableRow> rows;
  for (const auto& e : table.entries) {
    if (e.numerator.is_zero()) continue;
    std::string poly = e.numerator.to_string(labels);
    if (!e.denominator.is_zero()) poly = "(" + poly + ")/(" + e.denominator.to_string(labels) + ")";
    rows.push_back({labels[e.i], labels[e.j], poly});
  }
  return rows;
}

}  // namespace todalab
