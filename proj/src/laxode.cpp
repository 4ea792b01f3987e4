#include "todalab/laxode.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "todalab/identity.hpp"

namespace todalab {

RealMatrix to_eigen(const Matrix<double>& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IdentityReport check_lax_equation(const LaxPair& lax, const VectorField& flow, bool l_first,
                                  const SamplerConfig& config, std::string name) {
  require_same_chart(lax.chart, flow.chart);
  const std::size_t size = lax.size;
  const std::size_t dim = lax.chart->dimension();
  auto g = [lax, flow, l_first, size, dim](auto x) {
    using S = typename decltype(x)::value_type;
    const auto lj = lax_jets(lax.L, size, x, 1);
    const Matrix<S> b = lax_values(lax.B, size, x);
    Matrix<S> l(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) l(i, j) = lj(i, j).value();
    std::vector<S> f;
    for (const auto& c : flow.eval(x, 0)) f.push_back(c.value());
    const Matrix<S> rhs = l_first ? commutator(l, b) : commutator(b, l);
    Comparison<S> c;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        S acc(0);
        for (std::size_t k = 0; k < dim; ++k) acc += f[k] * lj(i, j).partial(k);
        c.lhs.push_back(acc);
        c.rhs.push_back(rhs(i, j));
      }
    return c;
  };
  auto label = [size](std::size_t k) { return "L(" + std::to_string(k / size + 1) + "," + std::to_string(k % size + 1) + ")"; };
  if (name.empty()) name = std::string("lax(") + (l_first ? "[L,B]" : "[B,L]") + "," + flow.info.name + ")";
  return run_check(make_check(std::move(name), lax.chart, flow.singular, g, label), config);
}

ScalarField trace_power(const LaxPair& lax, int k, std::string system) {
  if (k < 1) throw std::invalid_argument("invariant index must be positive");
  const std::size_t size = lax.size;
  const Evaluator L = lax.L;
  auto g = [L, size, k](auto x, int order) {
    using S = typename decltype(x)::value_type;
    using J = Jet<S>;
    const Matrix<J> m = lax_jets(L, size, x, order);
    return std::vector<J>{trace(power(m, k)) * J::fraction(1, k)};
  };
  return ScalarField{lax.chart, {"H" + std::to_string(k), std::move(system), k},
                     point_evaluator(1, g, lax.L.has_exact()), {}};
}

ScalarField lax_determinant(const LaxPair& lax, std::string system) {
  const std::size_t size = lax.size;
  const Evaluator L = lax.L;
  auto g = [L, size](auto x, int order) {
    using S = typename decltype(x)::value_type;
    return std::vector<Jet<S>>{determinant(lax_jets(L, size, x, order))};
  };
  return ScalarField{lax.chart, {"detL", std::move(system), 0}, point_evaluator(1, g, lax.L.has_exact()), {}};
}

namespace {

std::vector<double> field_values(const VectorField& X, const std::vector<double>& x) {
  const auto j = X.eval(std::span<const double>(x), 0);
  std::vector<double> v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v[k] = j[k].value();
  return v;
}

void require_finite(const std::vector<double>& x, double t) {
  for (double v : x)
    if (!std::isfinite(v)) throw FlowBlowup(t, "non-finite state at t=" + format_double(t));
}

}  // namespace

Trajectory integrate_flow(const VectorField& X, const RealPoint& x0, double t_end, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  require_same_chart(X.chart, x0.chart);
  if (x0.coords.size() != X.chart->dimension()) throw std::invalid_argument("initial point has the wrong dimension");
  Trajectory traj;
  traj.chart = X.chart;
  traj.step = step;
  traj.times.push_back(0.0);
  traj.states.push_back(x0.coords);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  std::vector<double> x = x0.coords;
  const std::size_t n = x.size();
  double t = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t_next = (s + 1 == steps) ? t_end : static_cast<double>(s + 1) * step;
    const double h = t_next - t;
    auto shifted = [&](const std::vector<double>& k, double c) {
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + c * k[i];
      return y;
    };
    const auto k1 = field_values(X, x);
    const auto k2 = field_values(X, shifted(k1, h / 2));
    const auto k3 = field_values(X, shifted(k2, h / 2));
    const auto k4 = field_values(X, shifted(k3, h));
    for (std::size_t i = 0; i < n; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    t = t_next;
    require_finite(x, t);
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

RichardsonPair integrate_with_halving(const VectorField& X, const RealPoint& x0, double t_end, double step) {
  return {integrate_flow(X, x0, t_end, step), integrate_flow(X, x0, t_end, step / 2)};
}

RealVector eigenvalues(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues of a non-square matrix");
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("eigenvalues expects a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver failed");
  return solver.eigenvalues();
}

RealMatrix qr_solve(const RealMatrix& L0, double t) {
  if (L0.rows() != L0.cols()) throw std::invalid_argument("qr_solve expects a square matrix");
  const RealMatrix e = (t * L0).exp();
  if (!e.allFinite()) throw std::runtime_error("exp(t L0) overflowed; reduce t or |L0|");
  Eigen::HouseholderQR<RealMatrix> qr(e);
  RealMatrix k = qr.householderQ();
  const RealMatrix b = qr.matrixQR().triangularView<Eigen::Upper>();
  // Flip columns of k so that b has a positive diagonal.
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    if (b(i, i) < 0) k.col(i) = -k.col(i);
  return k.transpose() * L0 * k;
}

double DriftReport::max_drift() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_drift);
  return m;
}

DriftReport drift_report(const Trajectory& traj, const std::vector<ScalarField>& invariants) {
  DriftReport r;
  for (const auto& f : invariants) {
    require_same_chart(traj.chart, f.chart);
    DriftEntry e;
    e.name = f.info.name;
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
      const double v = f.jet(std::span<const double>(traj.states[s]), 0).value();
      if (s == 0) {
        e.initial = v;
      } else {
        e.max_drift = std::max(e.max_drift, std::fabs(v - e.initial));
      }
    }
    r.entries.push_back(e);
  }
  return r;
}

void write_csv(const Trajectory& traj, std::ostream& os) {
  os << "t";
  for (const auto& l : traj.chart->labels()) os << ',' << l;
  os << '\n';
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    os << format_double(traj.times[s]);
    for (double v : traj.states[s]) os << ',' << format_double(v);
    os << '\n';
  }
}

}  // namespace todalab
