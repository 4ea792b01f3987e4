#include "todalab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "todalab/kostant.hpp"
#include "todalab/toda_an.hpp"
#include "todalab/toda_lie.hpp"
#include "todalab/toda_rel.hpp"

namespace todalab::harness {

using nlohmann::json;
using Reports = std::vector<IdentityReport>;

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k];
  return s;
}

std::string str(int k) { return std::to_string(k); }

Rational q(int k) { return Rational(k); }

ScalarField zero_scalar(const ScalarField& like) { return combine({{q(0), like}}, "0"); }

/// X(H_m) = c H_k as an identity report.
IdentityReport pairing(const VectorField& X, const ScalarField& H, int c, const ScalarField& rhs,
                       const SamplerConfig& config) {
  const std::string name = X.info.name + "(" + H.info.name + ")=" + str(c) + "*" + rhs.info.name;
  return check_equal(apply_vf(X, H), combine({{q(c), rhs}}, name), config, name);
}

SamplerConfig canonical_config(SamplerConfig c) {
  c.mode = Mode::real;
  c.max_numerator = 3;
  return c;
}

// ---------------------------------------------------------------------------
// Registry

struct Entry {
  std::string name;
  std::function<bool(const RunConfig&)> available;
  std::function<Reports(const RunConfig&, const SamplerConfig&)> run;
  bool in_default = true;
};

auto always = [](const RunConfig&) { return true; };

// Classical ------------------------------------------------------------------

int classical_cap(int N) { return N <= 4 ? 5 : 3; }

std::vector<Entry> classical_entries() {
  using namespace classical;
  std::vector<Entry> e;
  e.push_back({"jacobi", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 1; n <= classical_cap(rc.size); ++n) r.push_back(check_jacobi(bracket(rc.size, n), c));
                 return r;
               }});
  e.push_back({"compatibility", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 const int top = classical_cap(rc.size);
                 for (int m = 1; m <= top; ++m)
                   for (int n = m + 1; n <= top; ++n)
                     r.push_back(check_compatibility(bracket(rc.size, m), bracket(rc.size, n), c));
                 return r;
               }});
  e.push_back({"lax", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 return Reports{check_lax_equation(lax_pair(rc.size), flow(rc.size), false, c)};
               }});
  e.push_back({"lenard", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 2; n <= classical_cap(rc.size); ++n)
                   for (int l = 1; l < rc.size; ++l) r.push_back(lenard_check(rc.size, n, l, c));
                 return r;
               }});
  e.push_back({"involution", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 1; n <= classical_cap(rc.size); ++n)
                   r.push_back(check_involution(bracket(rc.size, n), invariants(rc.size), c));
                 return r;
               }});
  e.push_back({"casimir", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 Reports r{check_casimir(bracket(N, 1), invariant(N, 1), c), check_casimir(bracket(N, 2), det_l(N), c)};
                 for (int n = 3; n <= classical_cap(N); ++n)
                   r.push_back(check_casimir(bracket(N, n), trace_inverse_power(N, n - 2), c));
                 return r;
               }});
  e.push_back({"master", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 Reports r;
                 // X_n(H_m) = (n+m) H_{n+m}; X_{-1}(H_1) is excluded.
                 for (int n = -1; n <= 1; ++n)
                   for (int m = (n == -1 ? 2 : 1); m <= N; ++m)
                     r.push_back(pairing(master_field(N, n), invariant(N, m), n + m, invariant(N, n + m), c));
                 // L_{X_1} pi_m - (m-3) pi_{m+1} is trivial.
                 for (int m = 1; m <= 3; ++m)
                   if (m + 1 <= classical_cap(N))
                     r.push_back(check_trivial_bracket(
                         lie_derivative(master_field(N, 1), bracket(N, m)) - scaled(bracket(N, m + 1), q(m - 3)),
                         invariants(N), c));
                 // [X_n, chi_l] = (l-1) chi_{l+n}
                 for (int n = 0; n <= 2; ++n)
                   for (int l = 1; l <= 3; ++l)
                     r.push_back(check_equal(vf_commutator(master_field(N, n), chi(N, l)),
                                             scaled(chi(N, l + n), q(l - 1)), c,
                                             "[X" + str(n) + ",chi" + str(l) + "]=" + str(l - 1) + "*chi" + str(l + n)));
                 // L_{Zr_i} pi_m = (m-i-2) pi_{m+i}
                 for (int i = 0; i <= 2; ++i)
                   for (int m = 1; m <= 3; ++m)
                     if (m + i <= classical_cap(N))
                       r.push_back(check_equal(lie_derivative(reduced_z(N, i), bracket(N, m)),
                                               scaled(bracket(N, m + i), q(m - i - 2)), c,
                                               "L_Z" + str(i) + "pi" + str(m) + "=" + str(m - i - 2) + "*pi" + str(m + i)));
                 // [X_1, X_2](H_k) = X_3(H_k)
                 for (int k = 1; k <= N; ++k)
                   r.push_back(check_equal(apply_vf(vf_commutator(master_field(N, 1), master_field(N, 2)), invariant(N, k)),
                                           apply_vf(master_field(N, 3), invariant(N, k)), c,
                                           "[X1,X2](H" + str(k) + ")=X3(H" + str(k) + ")"));
                 return r;
               }});
  e.push_back({"symmetry", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = -1; n <= 2; ++n) r.push_back(symmetry_residual(rc.size, n, c));
                 return r;
               }});
  e.push_back({"shift", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 1; n <= classical_cap(rc.size); ++n) r.push_back(shift_isomorphism_check(rc.size, n, c));
                 return r;
               }});
  e.push_back({"canonical", always, [](const RunConfig& rc, const SamplerConfig& base) {
                 const int N = rc.size;
                 const SamplerConfig f = canonical_config(base);
                 const CanonicalStructures s = canonical_structures(N);
                 Reports r;
                 r.push_back(check_jacobi(s.J1, f));
                 r.push_back(check_equal(apply_vf(s.Z0, s.h0), s.h0, f, "Z0(h0)=h0"));
                 for (int i = 0; i <= 2; ++i)
                   for (int j = 0; j <= 2; ++j) {
                     if (i + j <= 3)
                       r.push_back(check_equal(lie_derivative(z_field(N, i), canonical_j(N, j)),
                                               scaled(canonical_j(N, i + j), q(j - i - 1)), f,
                                               "L_Z" + str(i) + "J" + str(j) + "=" + str(j - i - 1) + "*J" + str(i + j)));
                     r.push_back(check_equal(vf_commutator(z_field(N, i), z_field(N, j)),
                                             scaled(z_field(N, i + j), q(j - i)), f,
                                             "[Z" + str(i) + ",Z" + str(j) + "]=" + str(j - i) + "*Z" + str(i + j)));
                     if (j >= 1)
                       r.push_back(check_equal(vf_commutator(z_field(N, i), canonical_chi(N, j)),
                                               scaled(canonical_chi(N, i + j), q(j)), f,
                                               "[Z" + str(i) + ",chi" + str(j) + "]=" + str(j) + "*chi" + str(i + j)));
                   }
                 r.push_back(check_poisson_map(flaschka_smooth_map(N), scaled(s.J0, q(4)), bracket(N, 1), f));
                 r.push_back(check_poisson_map(flaschka_smooth_map(N), scaled(s.J1, q(2)), bracket(N, 2), f));
                 for (int i = 0; i <= 3; ++i) r.push_back(reduction_check(N, i, f));
                 return r;
               }});
  return e;
}

// Relativistic ----------------------------------------------------------------

std::vector<Entry> relativistic_entries() {
  using namespace relativistic;
  auto top = [](int N) { return N == 3 ? 4 : 3; };
  std::vector<Entry> e;
  e.push_back({"jacobi", always, [top](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 1; n <= top(rc.size); ++n) r.push_back(check_jacobi(rel_bracket(rc.size, n), c));
                 return r;
               }});
  e.push_back({"compatibility", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 Reports r;
                 for (int m = 1; m <= 3; ++m)
                   for (int n = m + 1; n <= 3; ++n) r.push_back(check_compatibility(rel_bracket(N, m), rel_bracket(N, n), c));
                 if (N == 3) r.push_back(check_compatibility(rel_bracket(N, 2), rel_bracket(N, 4), c));
                 return r;
               }});
  e.push_back({"lax", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 return Reports{check_lax_equation(rel_lax(N), rel_equations(N), true, c),
                                check_equal(rel_equations(N), scaled(hamiltonian_vf(rel_bracket(N, 2), invariant(N, 1)), q(-1)),
                                            c, "equations=-pi2*grad(H1)")};
               }});
  e.push_back({"lenard", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 Reports r;
                 for (int n = 2; n <= 3; ++n)
                   for (int l = 1; l < N; ++l)
                     r.push_back(check_equal(hamiltonian_vf(rel_bracket(N, n), invariant(N, l)),
                                             hamiltonian_vf(rel_bracket(N, n - 1), invariant(N, l + 1)), c,
                                             "pi" + str(n) + "*grad(H" + str(l) + ")=pi" + str(n - 1) + "*grad(H" + str(l + 1) + ")"));
                 return r;
               }});
  e.push_back({"involution", always, [top](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int n = 1; n <= top(rc.size); ++n)
                   r.push_back(check_involution(rel_bracket(rc.size, n), invariants(rc.size), c));
                 return r;
               }});
  e.push_back({"casimir", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 return Reports{check_casimir(rel_bracket(N, 1), invariant(N, 1), c),
                                check_casimir(rel_bracket(N, 2), product_b(N), c),
                                check_casimir(rel_bracket(N, 3), trace_inverse(N), c)};
               }});
  e.push_back({"master", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int N = rc.size;
                 Reports r;
                 for (int m = 1; m <= 3; ++m) r.push_back(pairing(rel_master(N, 1), invariant(N, m), m + 1, invariant(N, m + 1), c));
                 r.push_back(check_equal(lie_derivative(rel_master(N, 1), rel_bracket(N, 2)), scaled(rel_bracket(N, 3), q(-1)), c,
                                         "L_X1pi2=-pi3"));
                 r.push_back(check_equal(lie_derivative(rel_master(N, 1), rel_bracket(N, 3)), zero_bivector(chart(N)), c,
                                         "L_X1pi3=0"));
                 if (N == 3) {
                   for (int m = 1; m <= 3; ++m)
                     r.push_back(pairing(rel_master(N, 2), invariant(N, m), m + 2, invariant(N, m + 2), c));
                   r.push_back(check_trivial_bracket(lie_derivative(rel_master(N, 2), rel_bracket(N, 4)), invariants(N), c));
                   r.push_back(pairing(rel_master(N, 3), invariant(N, 1), 4, invariant(N, 4), c));
                 }
                 return r;
               }});
  return e;
}

// B_n ----------------------------------------------------------------------------

std::vector<Entry> bn_entries() {
  using namespace lie;
  auto top = [](int n) { return n <= 3 ? 5 : 3; };
  auto is_b2 = [](const RunConfig& rc) { return rc.size == 2; };
  std::vector<Entry> e;
  e.push_back({"jacobi", always, [top](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int k = 1; k <= top(rc.size); k += 2) r.push_back(check_jacobi(bn_bracket(rc.size, k), c));
                 return r;
               }});
  e.push_back({"compatibility", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 return Reports{check_compatibility(bn_bracket(rc.size, 1), bn_bracket(rc.size, 3), c)};
               }});
  e.push_back({"lax", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 return Reports{check_lax_equation(bn_lax(rc.size), bn_flow(rc.size), false, c)};
               }});
  e.push_back({"odd-traces", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int k = 1; k <= 2 * rc.size + 1; k += 2) {
                   const ScalarField t = trace_power(bn_lax(rc.size), k, "bn");
                   r.push_back(check_equal(t, zero_scalar(t), c, "trL^" + str(k) + "=0"));
                 }
                 return r;
               }});
  e.push_back({"involution", always, [top](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int k = 1; k <= top(rc.size); k += 2)
                   r.push_back(check_involution(bn_bracket(rc.size, k), bn_invariants(rc.size), c));
                 return r;
               }});
  e.push_back({"lenard", always, [top](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 Reports r;
                 for (int j = 1; j + 2 <= top(n); j += 2)
                   for (int i = 1; i < n; ++i)
                     r.push_back(check_equal(hamiltonian_vf(bn_bracket(n, j + 2), bn_invariant(n, 2 * i)),
                                             hamiltonian_vf(bn_bracket(n, j), bn_invariant(n, 2 * i + 2)), c,
                                             "pi" + str(j + 2) + "*grad(H" + str(2 * i) + ")=pi" + str(j) + "*grad(H" +
                                                 str(2 * i + 2) + ")"));
                 return r;
               }});
  e.push_back({"recursion", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 return Reports{check_equal(bn_recursion_apply(bn_bracket(n, 1)), bn_bracket(n, 3), c, "N*pi1=pi3"),
                                bn_recursion_antisymmetry(bn_bracket(n, 3), c)};
               }});
  e.push_back({"flaschka", always, [](const RunConfig& rc, const SamplerConfig& base) {
                 const SamplerConfig f = canonical_config(base);
                 return Reports{
                     check_poisson_map(bn_flaschka_map(rc.size), scaled(symplectic(rc.size), q(4)), bn_bracket(rc.size, 1), f)};
               }});
  e.push_back({"dirac", is_b2, [](const RunConfig&, const SamplerConfig& c) {
                 const B2DiracReport d = b2_dirac_check(c);
                 return Reports{d.bracket, d.p_matrix};
               }});
  e.push_back({"dirac-inverse", is_b2, [](const RunConfig&, const SamplerConfig& c) {
                 return Reports{b2_dirac_check(c).p_inverse};
               }});
  e.push_back({"b2-properties", is_b2, [](const RunConfig&, const SamplerConfig& c) {
                 const BivectorField pi2 = b2_rational_bracket();
                 std::vector<ScalarField> h;
                 for (int k = 1; k <= 5; ++k) h.push_back(b2_invariant(k));
                 return Reports{check_jacobi(pi2, c), check_jacobi(b2_linear_bracket(), c), check_involution(pi2, h, c),
                                check_equal(hamiltonian_vf(pi2, h[0]), hamiltonian_vf(b2_linear_bracket(), h[1]), c,
                                            "pi2*grad(H1)=pi1*grad(H2)"),
                                check_casimir(pi2, b2_det(), c)};
               }});
  // Stated properties that do not hold for the reconstructed linear bracket.
  e.push_back({"b2-compatibility", is_b2,
               [](const RunConfig&, const SamplerConfig& c) {
                 return Reports{check_compatibility(b2_linear_bracket(), b2_rational_bracket(), c)};
               },
               false});
  e.push_back({"b2-lenard-higher", is_b2,
               [](const RunConfig&, const SamplerConfig& c) {
                 Reports r;
                 const BivectorField pi2 = b2_rational_bracket();
                 const BivectorField pi1 = b2_linear_bracket();
                 for (int i = 2; i <= 4; ++i)
                   r.push_back(check_equal(hamiltonian_vf(pi2, b2_invariant(i)), hamiltonian_vf(pi1, b2_invariant(i + 1)), c,
                                           "pi2*grad(H" + str(i) + ")=pi1*grad(H" + str(i + 1) + ")"));
                 return r;
               },
               false});
  return e;
}

// Kostant ------------------------------------------------------------------

std::vector<ScalarField> kostant_family(int n) {
  std::vector<ScalarField> f = kostant::poly_invariants(n);
  for (const auto& s : kostant::rational_invariants(n)) f.push_back(s);
  return f;
}

std::vector<Entry> kostant_entries() {
  using namespace kostant;
  auto is_gl5 = [](const RunConfig& rc) { return rc.size == 5; };
  std::vector<Entry> e;
  e.push_back({"jacobi", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int k = 1; k <= 3; ++k) r.push_back(check_jacobi(kostant_bracket(rc.size, k), c));
                 return r;
               }});
  e.push_back({"compatibility", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 for (int m = 1; m <= 3; ++m)
                   for (int k = m + 1; k <= 3; ++k)
                     r.push_back(check_compatibility(kostant_bracket(rc.size, m), kostant_bracket(rc.size, k), c));
                 return r;
               }});
  e.push_back({"lax", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 return Reports{check_lax_equation(lax(n), kostant_flow(n), true, c),
                                check_equal(kostant_flow(n), hamiltonian_vf(kostant_bracket(n, 1), poly_invariant(n, 2)), c,
                                            "flow=pi1*grad(H2)")};
               }});
  e.push_back({"lenard", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 Reports r;
                 for (int i = 2; i <= 3; ++i)
                   for (int l = 1; l < n; ++l)
                     r.push_back(check_equal(hamiltonian_vf(kostant_bracket(n, i), poly_invariant(n, l)),
                                             hamiltonian_vf(kostant_bracket(n, i - 1), poly_invariant(n, l + 1)), c,
                                             "pi" + str(i) + "*grad(H" + str(l) + ")=pi" + str(i - 1) + "*grad(H" + str(l + 1) + ")"));
                 return r;
               }});
  e.push_back({"involution", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 Reports r;
                 const auto fam = kostant_family(rc.size);
                 for (int k = 1; k <= 3; ++k) r.push_back(check_involution(kostant_bracket(rc.size, k), fam, c));
                 return r;
               }});
  e.push_back({"casimir", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 Reports r{check_casimir(kostant_bracket(n, 1), poly_invariant(n, 1), c)};
                 if (n >= 3) r.push_back(check_casimir(kostant_bracket(n, 1), rational_invariant(n, 1, 1).value, c));
                 r.push_back(check_casimir(kostant_bracket(n, 2), determinant_x(n), c));
                 r.push_back(check_casimir(kostant_bracket(n, 3), trace_inverse(n), c));
                 if (n == 5) {
                   r.push_back(check_casimir(kostant_bracket(n, 2), gl5_k(3), c));
                   r.push_back(check_casimir(kostant_bracket(n, 2), gl5_k(4), c));
                   r.push_back(check_casimir(kostant_bracket(n, 3), gl5_k(4), c));
                 }
                 return r;
               }});
  e.push_back({"master", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const int n = rc.size;
                 Reports r;
                 for (int i = 1; i <= 2; ++i) r.push_back(master_consistency(n, i, c));
                 for (int i = 1; i <= 2; ++i)
                   for (int j = 1; j <= 4; ++j)
                     r.push_back(pairing(kostant_master(n, i), poly_invariant(n, j), i + j, poly_invariant(n, i + j), c));
                 const auto fam = kostant_family(n);
                 for (int j = 1; j <= 2; ++j)
                   r.push_back(check_trivial_bracket(
                       lie_derivative(kostant_master(n, 1), kostant_bracket(n, j)) - scaled(kostant_bracket(n, j + 1), q(j - 3)),
                       fam, c));
                 auto chi = [n](int l) { return hamiltonian_vf(kostant_bracket(n, 1), poly_invariant(n, l)); };
                 for (int i = 1; i <= 2; ++i)
                   for (int l = 2; l <= 3; ++l)
                     r.push_back(check_equal(vf_commutator(kostant_master(n, i), chi(l)), scaled(chi(l + i), q(l - 1)), c,
                                             "[X" + str(i) + ",chi" + str(l) + "]=" + str(l - 1) + "*chi" + str(l + i)));
                 r.push_back(check_equal(lie_derivative(kostant_master(n, 1), kostant_bracket(n, 3)),
                                         zero_bivector(chart(n)), c, "L_X1pi3=0"));
                 return r;
               }});
  e.push_back({"master-action", is_gl5, [](const RunConfig&, const SamplerConfig& c) { return gl5_master_action_check(c); }});
  e.push_back({"rational-lenard", is_gl5, [](const RunConfig&, const SamplerConfig& c) { return rational_lenard_check(c); }});
  return e;
}

// Lie catalog ----------------------------------------------------------------

lie::RootSystemId lie_id(const RunConfig& rc) {
  lie::RootSystemId id{lie::parse_family(rc.family), rc.size};
  lie::validate(id);
  return id;
}

std::vector<double> seeded_point(const ChartPtr& chart, std::uint64_t seed, int max_numerator,
                                 const std::vector<Predicate>& preds = {}) {
  PointSampler s(seed, max_numerator);
  return s.draw<double>(chart->dimension(), merge_predicates(chart->singular(), preds));
}

std::vector<Entry> lie_entries() {
  std::vector<Entry> e;
  e.push_back({"energy-drift", always, [](const RunConfig& rc, const SamplerConfig& c) {
                 const lie::RootSystemId id = lie_id(rc);
                 const VectorField X = lie::lie_flow(id);
                 const ScalarField H = lie::lie_hamiltonian(id);
                 const RealPoint x0{X.chart, seeded_point(X.chart, c.seed, 1)};
                 const double t_end = 5.0;
                 const Trajectory traj = integrate_flow(X, x0, t_end, 1e-3);
                 const DriftReport d = drift_report(traj, {H});
                 IdentityReport r;
                 r.name = "energy-drift(" + lie::family_name(id.family) + str(id.rank) + ",t=5,h=1e-3)";
                 r.samples = 1;
                 r.seed = c.seed;
                 r.mode = Mode::real;
                 r.tolerance = c.tolerance;
                 r.max_residual_value = d.max_drift() / (1.0 + std::fabs(d.entries.front().initial));
                 r.max_residual = format_double(r.max_residual_value);
                 r.passed = r.max_residual_value <= c.tolerance;
                 if (!r.passed) {
                   Witness w;
                   for (double v : x0.coords) w.point.push_back(format_double(v));
                   w.component = "H";
                   w.residual = r.max_residual;
                   r.witness = w;
                 }
                 return Reports{r};
               }});
  e.push_back({"a2-equivalence",
               [](const RunConfig& rc) { return lie_id(rc).family == lie::Family::A && rc.size == 2; },
               [](const RunConfig&, const SamplerConfig& c) {
                 const lie::A2Report a = lie::a2_equivalence_check(canonical_config(c));
                 return Reports{a.brackets, a.potential, a.kinetic};
               }});
  return e;
}

struct SystemInfo {
  int min_size;
  int max_size;
  std::function<std::vector<Entry>()> entries;
};

const std::map<std::string, SystemInfo>& systems() {
  static const std::map<std::string, SystemInfo> s{
      {"classical", {2, 6, classical_entries}},
      {"relativistic", {2, 5, relativistic_entries}},
      {"bn", {2, 4, bn_entries}},
      {"kostant", {2, 6, kostant_entries}},
      {"lie-catalog", {1, 8, lie_entries}},
  };
  return s;
}

const SystemInfo& system_info(const std::string& name) {
  const auto it = systems().find(name);
  if (it == systems().end())
    throw ConfigError("unknown system '" + name + "' (valid: " + join(system_names()) + ")");
  return it->second;
}

void validate_size(const RunConfig& config) {
  const SystemInfo& s = system_info(config.system);
  if (config.system == "lie-catalog") {
    try {
      lie_id(config);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    return;
  }
  if (config.size < s.min_size || config.size > s.max_size)
    throw ConfigError("size " + str(config.size) + " out of range for " + config.system + " (valid: " + str(s.min_size) +
                      ".." + str(s.max_size) + ")");
}

std::vector<Entry> available_entries(const RunConfig& config) {
  std::vector<Entry> out;
  for (auto& e : system_info(config.system).entries())
    if (e.available(config)) out.push_back(std::move(e));
  return out;
}

std::vector<std::string> selected_checks(const RunConfig& config) {
  std::vector<std::string> names;
  for (const auto& c : config.checks)
    if (!c.empty()) names.push_back(c);
  if (names.empty()) throw ConfigError("no checks selected");
  const auto valid = check_names(config.system, config);
  std::vector<std::string> out;
  for (const auto& n : names) {
    if (n == "all") {
      for (const auto& d : default_checks(config))
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
      continue;
    }
    if (std::find(valid.begin(), valid.end(), n) == valid.end())
      throw ConfigError("unknown check '" + n + "' for " + config.system + " at size " + str(config.size) +
                        " (valid: all, " + join(valid) + ")");
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool RunReport::passed() const {
  return std::all_of(runs.begin(), runs.end(), [](const CheckRun& r) { return r.report.passed; });
}

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names{"classical", "relativistic", "bn", "kostant", "lie-catalog"};
  return names;
}

std::vector<std::string> check_names(const std::string& system, const RunConfig& config) {
  RunConfig c = config;
  c.system = system;
  std::vector<std::string> out;
  for (const auto& e : available_entries(c)) out.push_back(e.name);
  return out;
}

std::vector<std::string> default_checks(const RunConfig& config) {
  std::vector<std::string> out;
  for (const auto& e : available_entries(config))
    if (e.in_default) out.push_back(e.name);
  return out;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("TODA_LAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("TODA_LAB_SEED is not an unsigned integer: ") + env);
  }
}

void validate(const RunConfig& config) {
  system_info(config.system);
  validate_size(config);
  if (config.samples < 1) throw ConfigError("samples must be at least 1");
  if (config.mode == Mode::real && !(config.tolerance > 0.0)) throw ConfigError("float mode needs a positive tolerance");
  if (!(config.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  selected_checks(config);
}

RunReport cmd_verify(const RunConfig& config) {
  validate(config);
  RunReport report;
  report.config = config;
  SamplerConfig sc;
  sc.seed = config.seed;
  sc.samples = config.samples;
  sc.mode = config.mode;
  sc.tolerance = config.tolerance;
  const auto entries = available_entries(config);
  for (const auto& name : selected_checks(config)) {
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.name == name; });
    const auto start = std::chrono::steady_clock::now();
    const Reports reports = it->run(config, sc);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& r : reports) report.runs.push_back({name, r, seconds});
  }
  return report;
}

json config_json(const RunConfig& c) {
  json j{{"system", c.system},       {"size", c.size},     {"checks", c.checks},
         {"seed", c.seed},           {"samples", c.samples}, {"mode", mode_name(c.mode)},
         {"tolerance", c.tolerance}, {"out", c.out}};
  if (c.system == "lie-catalog") j["family"] = c.family;
  return j;
}

RunConfig config_from_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "system") base.system = value.get<std::string>();
      else if (key == "size" || key == "N" || key == "n" || key == "rank") base.size = value.get<int>();
      else if (key == "family") base.family = value.get<std::string>();
      else if (key == "checks") {
        if (value.is_string()) base.checks = {value.get<std::string>()};
        else base.checks = value.get<std::vector<std::string>>();
      } else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "samples") base.samples = value.get<std::size_t>();
      else if (key == "mode") base.mode = parse_mode(value.get<std::string>());
      else if (key == "tolerance" || key == "tol") base.tolerance = value.get<double>();
      else if (key == "out") base.out = value.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

json identity_json(const IdentityReport& r) {
  json j{{"name", r.name},
         {"samples", r.samples},
         {"seed", r.seed},
         {"mode", mode_name(r.mode)},
         {"max_residual", r.max_residual},
         {"verdict", r.passed ? "pass" : "fail"}};
  if (r.mode == Mode::real) j["tolerance"] = r.tolerance;
  if (r.witness) {
    j["witness"] = {{"sample_index", r.witness->sample_index},
                    {"point", r.witness->point},
                    {"component", r.witness->component},
                    {"residual", r.witness->residual}};
  }
  return j;
}

json report_json(const RunReport& report, bool timing) {
  json checks = json::array();
  for (const auto& run : report.runs) {
    json j = identity_json(run.report);
    j["check"] = run.check;
    if (timing) j["check_seconds"] = run.seconds;
    checks.push_back(std::move(j));
  }
  return json{{"schema", 1},
              {"config", config_json(report.config)},
              {"checks", std::move(checks)},
              {"verdict", report.passed() ? "pass" : "fail"}};
}

// ---------------------------------------------------------------------------
// integrate

namespace {

struct FlowSetup {
  VectorField flow;
  std::vector<ScalarField> invariants;
  int max_numerator = 3;
  std::vector<Predicate> predicates;
  std::function<void(std::vector<double>&)> shape;  // adjusts a seeded random point
};

FlowSetup flow_setup(const IntegrateConfig& c) {
  RunConfig rc;
  rc.system = c.system;
  rc.size = c.size;
  rc.family = c.family;
  validate_size(rc);
  if (c.system == "classical") return {classical::flow(c.size), classical::invariants(c.size), 3, {}};
  if (c.system == "relativistic") {
    auto inv = relativistic::invariants(c.size);
    inv.push_back(relativistic::product_b(c.size));
    return {relativistic::rel_equations(c.size), inv, 3, {}};
  }
  if (c.system == "bn") return {lie::bn_flow(c.size), lie::bn_invariants(c.size), 3, {}};
  if (c.system == "kostant") {
    auto fam = kostant_family(c.size);
    std::vector<Predicate> preds;
    for (const auto& f : fam) preds = merge_predicates(preds, f.singular);
    // Positive first subdiagonal and a small remainder keep the spectrum real
    // and the flow global; generic real data can blow up in finite time.
    const int n = c.size;
    auto shape = [n](std::vector<double>& x) {
      for (int i = 2; i <= n; ++i) x[kostant::index(n, i, i - 1)] = std::fabs(x[kostant::index(n, i, i - 1)]) + 0.5;
      for (int i = 3; i <= n; ++i)
        for (int j = 1; j + 1 < i; ++j) x[kostant::index(n, i, j)] /= 16.0;
    };
    return {kostant::kostant_flow(c.size), fam, 2, preds, shape};
  }
  const lie::RootSystemId id = lie_id(rc);
  return {lie::lie_flow(id), {lie::lie_hamiltonian(id)}, 1, {}};
}

}  // namespace

IntegrateResult cmd_integrate(const IntegrateConfig& c) {
  if (!(c.step > 0.0)) throw ConfigError("step must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  const FlowSetup s = flow_setup(c);
  const ChartPtr chart = s.flow.chart;
  std::vector<Predicate> preds = merge_predicates(s.flow.singular, s.predicates);
  RealPoint x0{chart, c.point};
  if (c.point.empty()) {
    x0.coords = seeded_point(chart, c.seed, s.max_numerator, preds);
    if (s.shape) {
      s.shape(x0.coords);
      if (!violated_predicate(preds, std::span<const double>(x0.coords)).empty())
        throw ConfigError("seeded point lies on a singular locus; choose another seed");
    }
  } else {
    if (c.point.size() != chart->dimension())
      throw ConfigError("point has " + std::to_string(c.point.size()) + " coordinates, chart " + chart->name() + " needs " +
                        std::to_string(chart->dimension()) + " (" + join(chart->labels()) + ")");
    try {
      require_regular(chart, preds, x0);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
  }
  IntegrateResult r;
  r.trajectory = integrate_flow(s.flow, x0, c.t_end, c.step);
  r.drift = drift_report(r.trajectory, s.invariants);
  return r;
}

json drift_json(const IntegrateConfig& c, const IntegrateResult& r) {
  json inv = json::array();
  for (const auto& e : r.drift.entries)
    inv.push_back({{"name", e.name}, {"initial", e.initial}, {"max_drift", e.max_drift}});
  json j{{"schema", 1},
         {"system", c.system},
         {"size", c.size},
         {"t_end", c.t_end},
         {"step", c.step},
         {"steps", r.trajectory.times.size() - 1},
         {"labels", r.trajectory.chart->labels()},
         {"initial_point", r.trajectory.states.front()},
         {"final_point", r.trajectory.states.back()},
         {"invariants", std::move(inv)},
         {"max_drift", r.drift.max_drift()}};
  if (c.system == "lie-catalog") j["family"] = c.family;
  if (c.point.empty()) j["seed"] = c.seed;
  return j;
}

// ---------------------------------------------------------------------------
// table

namespace {

/// {x_ij, x_kl} = delta_li x_kj - delta_jk x_il on the chart entries.
BracketTable kostant_delta_table(int n) {
  BracketTable t{kostant::chart(n), {}, {}};
  struct Ent {
    int i, j;
  };
  std::vector<Ent> ents(t.chart->dimension());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) ents[kostant::index(n, i, j)] = {i, j};
  // x_ab as a polynomial: chart coordinate, 1 on the superdiagonal, else 0.
  auto entry = [n](int a, int b) -> Polynomial {
    if (a >= b) return Polynomial({Term{Rational(1), {kostant::index(n, a, b)}}});
    if (b == a + 1) return Polynomial::constant(Rational(1));
    return {};
  };
  for (std::size_t p = 0; p < ents.size(); ++p)
    for (std::size_t r = p + 1; r < ents.size(); ++r) {
      const auto [i, j] = ents[p];
      const auto [k, l] = ents[r];
      Polynomial v;
      if (l == i) v += entry(k, j);
      if (j == k) v += -entry(i, l);
      if (!v.is_zero()) t.add(p, r, v);
    }
  return t;
}

Rational parse_rational(const std::string& s) {
  try {
    Rational r(s, 10);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a rational number: '" + s + "'");
  }
}

json rows_json(const BracketTable& t) {
  json rows = json::array();
  for (const auto& r : table_rows(t)) rows.push_back({{"i", r.i}, {"j", r.j}, {"poly", r.poly}});
  return rows;
}

json values_json(const BivectorField& pi, const PhasePoint& x) {
  Matrix<Rational> m;
  try {
    m = eval_bivector(pi, x);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  const auto& labels = pi.chart->labels();
  json out = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (!is_zero(m(i, j))) out.push_back({{"i", labels[i]}, {"j", labels[j]}, {"value", to_string(m(i, j))}});
  return out;
}

json matrix_json(const Matrix<Rational>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

PhasePoint table_point(const ChartPtr& chart, const TableRequest& req, std::uint64_t fallback_seed,
                       const std::vector<Predicate>& preds) {
  PhasePoint x{chart, {}};
  if (req.point.empty()) {
    PointSampler s(fallback_seed, 9);
    x.coords = s.draw<Rational>(chart->dimension(), merge_predicates(chart->singular(), preds));
    return x;
  }
  if (req.point.size() != chart->dimension())
    throw ConfigError("point has " + std::to_string(req.point.size()) + " coordinates, chart " + chart->name() + " needs " +
                      std::to_string(chart->dimension()) + " (" + join(chart->labels()) + ")");
  for (const auto& s : req.point) x.coords.push_back(parse_rational(s));
  return x;
}

}  // namespace

std::vector<std::string> table_indices(const std::string& system, int size) {
  RunConfig rc;
  rc.system = system;
  rc.size = size;
  validate_size(rc);
  if (system == "classical") {
    std::vector<std::string> v{"1", "2", "3"};
    if (size <= 4) v.insert(v.end(), {"4", "5"});
    return v;
  }
  if (system == "relativistic") {
    std::vector<std::string> v{"1", "2", "3"};
    if (size == 3) v.push_back("4");
    return v;
  }
  if (system == "bn") {
    std::vector<std::string> v{"1", "3"};
    if (size <= 3) v.push_back("5");
    if (size == 2) v.insert(v.end(), {"b2", "b2-p"});
    return v;
  }
  if (system == "kostant") {
    std::vector<std::string> v{"1", "2", "3"};
    if (size >= 3) v.push_back("rational");
    return v;
  }
  return {};
}

json cmd_table(const TableRequest& req) {
  const auto valid = table_indices(req.system, req.size);
  if (std::find(valid.begin(), valid.end(), req.index) == valid.end()) {
    if (valid.empty()) throw ConfigError("system " + req.system + " has no bracket tables");
    throw ConfigError("unknown table index '" + req.index + "' for " + req.system + " at size " + str(req.size) +
                      " (valid: " + join(valid) + ")");
  }
  const int n = req.size;
  json out{{"schema", 1}, {"system", req.system}, {"size", n}, {"index", req.index}};

  std::optional<BracketTable> table;
  std::optional<BivectorField> field;
  if (req.system == "classical") {
    const int k = std::stoi(req.index);
    if (k <= 3) table = classical::bracket_table(n, k);
    field = classical::bracket(n, k);
  } else if (req.system == "relativistic") {
    const int k = std::stoi(req.index);
    if (k <= 3) table = relativistic::bracket_table(n, k);
    field = relativistic::rel_bracket(n, k);
  } else if (req.system == "bn") {
    if (req.index == "b2") {
      table = lie::b2_rational_table();
      field = lie::b2_rational_bracket();
    } else if (req.index == "b2-p") {
      const lie::ConstraintSet C = lie::b2_constraints();
      const BivectorField pi2 = classical::bracket(5, 2);
      const PhasePoint y = table_point(C.reduced, req, 0, lie::b2_rational_bracket().singular);
      std::vector<Jet<Rational>> yj;
      for (const auto& v : y.coords) yj.push_back(Jet<Rational>(v));
      PhasePoint x{C.ambient, {}};
      for (const auto& p : C.embedding) x.coords.push_back(p.evaluate(yj).value());
      Matrix<Rational> P;
      try {
        P = lie::constraint_matrix<Rational>(pi2, C, x);
      } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
      }
      out["labels"] = C.reduced->labels();
      out["point"] = json::array();
      for (const auto& v : y.coords) out["point"].push_back(to_string(v));
      out["constraints"] = C.names;
      out["P"] = matrix_json(P);
      out["P_inverse"] = matrix_json(inverse(P));
      out["printed_P"] = matrix_json(lie::b2_printed_p<Rational>(y.coords));
      out["printed_P_inverse"] = matrix_json(lie::b2_printed_p_inverse<Rational>(y.coords));
      return out;
    } else {
      const int k = std::stoi(req.index);
      if (k <= 3) table = lie::bn_bracket_table(n, k);
      field = lie::bn_bracket(n, k);
    }
  } else if (req.system == "kostant") {
    if (req.index == "rational") {
      std::vector<kostant::RationalInvariant> invs;
      std::vector<Predicate> preds;
      for (int k = 1; 2 * k < n; ++k)
        for (int r = 1; r <= n - 2 * k; ++r) {
          invs.push_back(kostant::rational_invariant(n, r, k));
          preds = merge_predicates(preds, invs.back().value.singular);
        }
      const PhasePoint x = table_point(kostant::chart(n), req, 0, preds);
      json list = json::array();
      for (const auto& inv : invs) {
        json e{{"name", inv.value.info.name},
               {"r", inv.r},
               {"k", inv.k},
               {"numerator", to_string(eval_scalar(inv.numerator, x))},
               {"denominator", to_string(eval_scalar(inv.denominator, x))}};
        if (!is_zero(eval_scalar(inv.denominator, x))) e["value"] = to_string(eval_scalar(inv.value, x));
        list.push_back(std::move(e));
      }
      out["labels"] = kostant::chart(n)->labels();
      out["point"] = json::array();
      for (const auto& v : x.coords) out["point"].push_back(to_string(v));
      out["invariants"] = std::move(list);
      return out;
    }
    const int k = std::stoi(req.index);
    if (k == 1) table = kostant_delta_table(n);
    field = kostant::kostant_bracket(n, k);
  }

  out["labels"] = field->chart->labels();
  if (table) out["entries"] = rows_json(*table);
  if (!table || !req.point.empty()) {
    const PhasePoint x = table_point(field->chart, req, 0, field->singular);
    out["point"] = json::array();
    for (const auto& v : x.coords) out["point"].push_back(to_string(v));
    out["values"] = values_json(*field, x);
  }
  return out;
}

}  // namespace todalab::harness
