#include "todalab/identity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace todalab {

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::real;
  throw std::invalid_argument("unknown mode '" + s + "' (expected exact or float)");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::string scalar_text(const Rational& x) { return to_string(x); }
std::string scalar_text(double x) { return format_double(x); }

template <class S>
void run_samples(const CheckSpec& spec, const SamplerConfig& config, PointSampler& sampler,
                 IdentityReport& report,
                 const std::function<Comparison<S>(std::span<const S>)>& fn) {
  Rational max_exact(0);
  double max_real = 0.0;
  const std::size_t dim = spec.chart->dimension();
  for (std::size_t s = 0; s < config.samples; ++s) {
    const std::vector<S> x = sampler.draw<S>(dim, spec.predicates);
    const Comparison<S> c = fn(std::span<const S>(x));
    if (!c.rhs.empty() && c.rhs.size() != c.lhs.size()) throw std::logic_error("comparison sides differ in size");
    bool failed = false;
    std::size_t worst = 0;
    Rational worst_exact(0);
    double worst_real = 0.0;
    for (std::size_t k = 0; k < c.lhs.size(); ++k) {
      if constexpr (ScalarTraits<S>::exact) {
        Rational d = c.rhs.empty() ? Rational(abs(c.lhs[k])) : Rational(abs(c.lhs[k] - c.rhs[k]));
        if (d > max_exact) max_exact = d;
        if (d > worst_exact) {
          worst_exact = d;
          worst = k;
          failed = true;
        }
      } else {
        const double l = c.lhs[k];
        const double r = c.rhs.empty() ? 0.0 : c.rhs[k];
        double d = std::fabs(l - r) / (1.0 + std::fabs(l) + std::fabs(r));
        if (!std::isfinite(d)) d = std::numeric_limits<double>::infinity();
        if (d > max_real) max_real = d;
        if (d > worst_real) {
          worst_real = d;
          worst = k;
        }
        if (d > config.tolerance) failed = true;
      }
    }
    if (failed && !report.witness) {
      Witness w;
      w.sample_index = s;
      for (const auto& v : x) w.point.push_back(scalar_text(v));
      w.component = spec.label(worst);
      if constexpr (ScalarTraits<S>::exact) {
        w.residual = to_string(worst_exact);
      } else {
        w.residual = format_double(worst_real);
      }
      report.witness = std::move(w);
    }
  }
  if constexpr (ScalarTraits<S>::exact) {
    report.max_residual = to_string(max_exact);
    report.max_residual_value = to_double(max_exact);
    report.passed = is_zero(max_exact);
  } else {
    report.max_residual = format_double(max_real);
    report.max_residual_value = max_real;
    report.passed = max_real <= config.tolerance;
  }
}

std::string pair_label(const ChartPtr& chart, std::size_t slot) {
  const std::size_t n = chart->dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (BivectorValues<int>::slot(n, i, j) == slot)
        return "{" + chart->labels()[i] + "," + chart->labels()[j] + "}";
  return "?";
}

}  // namespace

IdentityReport run_check(const CheckSpec& spec, const SamplerConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("sample count must be at least 1");
  const bool exact = config.mode == Mode::exact && static_cast<bool>(spec.exact);
  if (!exact && !(config.tolerance > 0.0)) throw std::invalid_argument("float mode needs a positive tolerance");
  IdentityReport report;
  report.name = spec.name;
  report.samples = config.samples;
  report.seed = config.seed;
  report.mode = exact ? Mode::exact : Mode::real;
  report.tolerance = exact ? 0.0 : config.tolerance;
  PointSampler sampler(config.seed, spec.max_numerator > 0 ? spec.max_numerator : config.max_numerator);
  if (exact) {
    run_samples<Rational>(spec, config, sampler, report, spec.exact);
  } else {
    run_samples<double>(spec, config, sampler, report, spec.real);
  }
  return report;
}

IdentityReport check_compatibility(const BivectorField& pi, const BivectorField& rho, const SamplerConfig& config) {
  require_same_chart(pi.chart, rho.chart);
  const ChartPtr chart = pi.chart;
  auto g = [pi, rho](auto x) {
    using S = typename decltype(x)::value_type;
    auto t = schouten_at<S>(pi, rho, x);
    return Comparison<S>{std::move(t.values()), {}};
  };
  TrivectorValues<int> shape(chart->dimension());
  auto label = [chart, triples = shape.triples()](std::size_t k) {
    const auto& t = triples.at(k);
    const auto& l = chart->labels();
    return "[" + l[t[0]] + "," + l[t[1]] + "," + l[t[2]] + "]";
  };
  return run_check(make_check("schouten(" + pi.info.name + "," + rho.info.name + ")", chart,
                              merge_predicates(pi.singular, rho.singular), g, label),
                   config);
}

IdentityReport check_jacobi(const BivectorField& pi, const SamplerConfig& config) {
  IdentityReport r = check_compatibility(pi, pi, config);
  r.name = "jacobi(" + pi.info.name + ")";
  return r;
}

IdentityReport check_casimir(const BivectorField& pi, const ScalarField& f, const SamplerConfig& config) {
  return check_trivial_bracket(pi, {f}, config);
}

IdentityReport check_trivial_bracket(const BivectorField& pi, const std::vector<ScalarField>& family,
                                     const SamplerConfig& config) {
  std::vector<Predicate> preds = pi.singular;
  std::string names;
  for (const auto& f : family) {
    require_same_chart(pi.chart, f.chart);
    preds = merge_predicates(preds, f.singular);
    names += (names.empty() ? "" : ",") + f.info.name;
  }
  const ChartPtr chart = pi.chart;
  const std::size_t n = chart->dimension();
  auto g = [pi, family, n](auto x) {
    using S = typename decltype(x)::value_type;
    const auto p = pi.jets<S>(x, 0);
    Comparison<S> c;
    for (const auto& f : family) {
      const auto fj = f.jet(x, 1);
      for (std::size_t i = 0; i < n; ++i) {
        S acc(0);
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) acc += p.get(i, j).value() * fj.partial(j);
        c.lhs.push_back(acc);
      }
    }
    return c;
  };
  auto simple_label = [chart, family, n](std::size_t k) {
    return "pi.grad(" + family.at(k / n).info.name + ")[" + chart->labels()[k % n] + "]";
  };
  const std::string name = (family.size() == 1 ? "casimir(" : "trivial(") + pi.info.name + ";" + names + ")";
  return run_check(make_check(name, chart, preds, g, simple_label), config);
}

IdentityReport check_involution(const BivectorField& pi, const std::vector<ScalarField>& family,
                                const SamplerConfig& config) {
  std::vector<Predicate> preds = pi.singular;
  for (const auto& f : family) {
    require_same_chart(pi.chart, f.chart);
    preds = merge_predicates(preds, f.singular);
  }
  const ChartPtr chart = pi.chart;
  const std::size_t n = chart->dimension();
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b)
      labels.push_back("{" + family[a].info.name + "," + family[b].info.name + "}");
  auto g = [pi, family, n](auto x) {
    using S = typename decltype(x)::value_type;
    const auto p = pi.jets<S>(x, 0);
    std::vector<std::vector<S>> pg;  // pi . grad f
    std::vector<std::vector<S>> grads;
    for (const auto& f : family) {
      const auto fj = f.jet(x, 1);
      std::vector<S> gr(n);
      for (std::size_t k = 0; k < n; ++k) gr[k] = fj.partial(k);
      grads.push_back(std::move(gr));
    }
    Comparison<S> c;
    for (std::size_t a = 0; a < family.size(); ++a)
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        S acc(0);
        for (std::size_t i = 0; i < n; ++i) {
          if (is_zero(grads[a][i])) continue;
          for (std::size_t j = 0; j < n; ++j)
            if (i != j && !is_zero(grads[b][j])) acc += grads[a][i] * p.get(i, j).value() * grads[b][j];
        }
        c.lhs.push_back(acc);
      }
    return c;
  };
  return run_check(make_check("involution(" + pi.info.name + ")", chart, preds, g,
                              [labels](std::size_t k) { return labels.at(k); }),
                   config);
}

IdentityReport check_poisson_map(const SmoothMap& F, const BivectorField& src, const BivectorField& dst,
                                 const SamplerConfig& config) {
  require_same_chart(F.source, src.chart);
  require_same_chart(F.target, dst.chart);
  const ChartPtr target = F.target;
  auto g = [F, src, dst](auto x) {
    using S = typename decltype(x)::value_type;
    auto [lhs, rhs] = poisson_map_sides<S>(F, src, dst, x);
    Comparison<S> c;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = i + 1; j < lhs.cols(); ++j) {
        c.lhs.push_back(lhs(i, j));
        c.rhs.push_back(rhs(i, j));
      }
    return c;
  };
  return run_check(make_check("poisson_map(" + F.name + ":" + src.info.name + "->" + dst.info.name + ")", F.source,
                              merge_predicates(F.singular, src.singular), g,
                              [target](std::size_t k) { return pair_label(target, k); }),
                   config);
}

IdentityReport check_equal(const BivectorField& lhs, const BivectorField& rhs, const SamplerConfig& config,
                           std::string name) {
  require_same_chart(lhs.chart, rhs.chart);
  const ChartPtr chart = lhs.chart;
  auto g = [lhs, rhs](auto x) {
    using S = typename decltype(x)::value_type;
    Comparison<S> c;
    for (const auto& j : lhs.eval(x, 0)) c.lhs.push_back(j.value());
    for (const auto& j : rhs.eval(x, 0)) c.rhs.push_back(j.value());
    return c;
  };
  if (name.empty()) name = lhs.info.name + "==" + rhs.info.name;
  return run_check(make_check(std::move(name), chart, merge_predicates(lhs.singular, rhs.singular), g,
                              [chart](std::size_t k) { return pair_label(chart, k); }),
                   config);
}

IdentityReport check_equal(const VectorField& lhs, const VectorField& rhs, const SamplerConfig& config,
                           std::string name) {
  require_same_chart(lhs.chart, rhs.chart);
  const ChartPtr chart = lhs.chart;
  auto g = [lhs, rhs](auto x) {
    using S = typename decltype(x)::value_type;
    Comparison<S> c;
    for (const auto& j : lhs.eval(x, 0)) c.lhs.push_back(j.value());
    for (const auto& j : rhs.eval(x, 0)) c.rhs.push_back(j.value());
    return c;
  };
  if (name.empty()) name = lhs.info.name + "==" + rhs.info.name;
  return run_check(make_check(std::move(name), chart, merge_predicates(lhs.singular, rhs.singular), g,
                              [chart](std::size_t k) { return chart->labels().at(k); }),
                   config);
}

IdentityReport check_equal(const ScalarField& lhs, const ScalarField& rhs, const SamplerConfig& config,
                           std::string name) {
  require_same_chart(lhs.chart, rhs.chart);
  auto g = [lhs, rhs](auto x) {
    using S = typename decltype(x)::value_type;
    return Comparison<S>{{lhs.jet(x, 0).value()}, {rhs.jet(x, 0).value()}};
  };
  if (name.empty()) name = lhs.info.name + "==" + rhs.info.name;
  return run_check(make_check(std::move(name), lhs.chart, merge_predicates(lhs.singular, rhs.singular), g,
                              [](std::size_t) { return std::string("value"); }),
                   config);
}

BivectorField operator-(const BivectorField& a, const BivectorField& b) {
  return combine({{Rational(1), a}, {Rational(-1), b}}, a.info.name + "-" + b.info.name);
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return combine({{Rational(1), a}, {Rational(-1), b}}, a.info.name + "-" + b.info.name);
}

}  // namespace todalab
