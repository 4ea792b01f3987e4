#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/linalg.hpp"

namespace todalab {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Lax matrices as jet evaluators with size*size row-major outputs, so the
/// same builders serve exact commutator checks, invariants and float runs.
struct LaxPair {
  ChartPtr chart;
  std::size_t size = 0;
  Evaluator L;
  Evaluator B;
};

template <class F>
Evaluator matrix_evaluator(std::size_t size, F f, bool exact = true) {
  return formula_evaluator(
      size * size,
      [f, size](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        Matrix<T> m(size, size);
        f(x, m);
        std::vector<T> out;
        out.reserve(size * size);
        for (std::size_t i = 0; i < size; ++i)
          for (std::size_t j = 0; j < size; ++j) out.push_back(m(i, j));
        return out;
      },
      exact);
}

template <class T>
Matrix<T> unflatten(const std::vector<T>& v, std::size_t size) {
  Matrix<T> m(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m(i, j) = v[i * size + j];
  return m;
}

template <class S>
Matrix<Jet<S>> lax_jets(const Evaluator& e, std::size_t size, std::span<const S> x, int order) {
  return unflatten(e(x, order), size);
}

template <class S>
Matrix<S> lax_values(const Evaluator& e, std::size_t size, std::span<const S> x) {
  const auto j = e(x, 0);
  Matrix<S> m(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t k = 0; k < size; ++k) m(i, k) = j[i * size + k].value();
  return m;
}

RealMatrix to_eigen(const Matrix<double>& m);

/// dL/dt along `flow` against [B,L] (or [L,B] when l_first).
IdentityReport check_lax_equation(const LaxPair& lax, const VectorField& flow, bool l_first,
                                  const SamplerConfig& config, std::string name = {});

/// H_k = (1/k) tr L^k.
ScalarField trace_power(const LaxPair& lax, int k, std::string system);

/// Determinant of L as a scalar field.
ScalarField lax_determinant(const LaxPair& lax, std::string system);

struct Trajectory {
  ChartPtr chart;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  double step = 0.0;
  int order = 4;
};

/// Raised when a state component stops being finite.
class FlowBlowup : public std::runtime_error {
 public:
  FlowBlowup(double t, const std::string& what) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Fixed-step classical RK4; the last step is shortened to land on t_end.
Trajectory integrate_flow(const VectorField& X, const RealPoint& x0, double t_end, double step);

struct RichardsonPair {
  Trajectory coarse;
  Trajectory fine;  // half step
};

RichardsonPair integrate_with_halving(const VectorField& X, const RealPoint& x0, double t_end, double step);

/// Ascending eigenvalues of a symmetric matrix.
RealVector eigenvalues(const RealMatrix& m);

/// exp(t L0) = k b with k orthogonal and b upper triangular with positive
/// diagonal; returns k^{-1} L0 k.
RealMatrix qr_solve(const RealMatrix& L0, double t);

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_drift = 0.0;
};

struct DriftReport {
  std::vector<DriftEntry> entries;
  double max_drift() const;
};

DriftReport drift_report(const Trajectory& traj, const std::vector<ScalarField>& invariants);

/// Header t,label1,...; shortest round-trip decimals.
void write_csv(const Trajectory& traj, std::ostream& os);

}  // namespace todalab
