#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"

namespace todalab {

enum class Mode { exact, real };

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  Mode mode = Mode::exact;
  double tolerance = 1e-9;
  int max_numerator = 9;
};

/// Draws rationals num/den with |num| <= max_numerator and den in {1,2,3},
/// rejecting points where any predicate vanishes.
class PointSampler {
 public:
  PointSampler(std::uint64_t seed, int max_numerator) : rng_(seed), numerator_(-max_numerator, max_numerator), denominator_(1, 3) {}

  template <class S>
  std::vector<S> draw(std::size_t dimension, const std::vector<Predicate>& preds) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      std::vector<S> x;
      x.reserve(dimension);
      for (std::size_t k = 0; k < dimension; ++k) {
        const long num = numerator_(rng_);
        const long den = denominator_(rng_);
        x.push_back(ScalarTraits<S>::fraction(num, den));
      }
      if (violated_predicate(preds, std::span<const S>(x)).empty()) return x;
    }
    throw std::runtime_error("sampler could not avoid the singular loci");
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long> numerator_;
  std::uniform_int_distribution<long> denominator_;
};

template <class S>
struct Comparison {
  std::vector<S> lhs;
  std::vector<S> rhs;  // empty means all zero
};

struct Witness {
  std::size_t sample_index = 0;
  std::vector<std::string> point;
  std::string component;
  std::string residual;
};

struct IdentityReport {
  std::string name;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::exact;
  double tolerance = 0.0;
  std::string max_residual = "0";
  double max_residual_value = 0.0;
  bool passed = true;
  std::optional<Witness> witness;
};

/// One identity, defined pointwise on a chart. `exact`/`real` return both sides
/// of the identity at a sample point; `label` names component k.
struct CheckSpec {
  std::string name;
  ChartPtr chart;
  std::vector<Predicate> predicates;
  std::function<Comparison<Rational>(std::span<const Rational>)> exact;
  std::function<Comparison<double>(std::span<const double>)> real;
  std::function<std::string(std::size_t)> label;
  int max_numerator = 0;  // 0: use the sampler default
};

/// g(std::span<const S>) -> Comparison<S>, generic in S.
template <class G>
CheckSpec make_check(std::string name, ChartPtr chart, std::vector<Predicate> predicates, G g,
                     std::function<std::string(std::size_t)> label = {}) {
  CheckSpec c;
  c.name = std::move(name);
  c.predicates = merge_predicates(chart->singular(), predicates);
  if (chart->exact()) c.exact = [g](std::span<const Rational> x) { return g(x); };
  c.real = [g](std::span<const double> x) { return g(x); };
  c.chart = std::move(chart);
  c.label = label ? std::move(label) : [](std::size_t k) { return "component " + std::to_string(k); };
  return c;
}

/// Runs a check; exact mode is used only when requested and the chart is exact.
IdentityReport run_check(const CheckSpec& spec, const SamplerConfig& config);

std::string format_double(double x);

// Standard checks -----------------------------------------------------------

IdentityReport check_jacobi(const BivectorField& pi, const SamplerConfig& config);
IdentityReport check_compatibility(const BivectorField& pi, const BivectorField& rho, const SamplerConfig& config);
IdentityReport check_casimir(const BivectorField& pi, const ScalarField& f, const SamplerConfig& config);
IdentityReport check_involution(const BivectorField& pi, const std::vector<ScalarField>& family,
                                const SamplerConfig& config);
IdentityReport check_trivial_bracket(const BivectorField& pi, const std::vector<ScalarField>& family,
                                     const SamplerConfig& config);
IdentityReport check_poisson_map(const SmoothMap& F, const BivectorField& src, const BivectorField& dst,
                                 const SamplerConfig& config);

IdentityReport check_equal(const BivectorField& lhs, const BivectorField& rhs, const SamplerConfig& config,
                           std::string name = {});
IdentityReport check_equal(const VectorField& lhs, const VectorField& rhs, const SamplerConfig& config,
                           std::string name = {});
IdentityReport check_equal(const ScalarField& lhs, const ScalarField& rhs, const SamplerConfig& config,
                           std::string name = {});

/// Pointwise difference of two fields on one chart.
BivectorField operator-(const BivectorField& a, const BivectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);

}  // namespace todalab
