#pragma once

#include <cstddef>
#include <vector>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/laxode.hpp"
#include "todalab/poly.hpp"

/// Finite nonperiodic Toda lattice of type A_{N-1}. Flaschka coordinates are
/// ordered a_1..a_{N-1}, b_1..b_N; canonical ones q_1..q_N, p_1..p_N.
namespace todalab::classical {

struct CanonicalState {
  std::vector<double> q;
  std::vector<double> p;
};

struct FlaschkaState {
  std::vector<double> a;
  std::vector<double> b;
};

ChartPtr flaschka_chart(int N);
ChartPtr canonical_chart(int N);

std::size_t a_index(int N, int i);  // 1-based i
std::size_t b_index(int N, int i);

/// a_i = exp((q_i - q_{i+1})/2)/2, b_i = -p_i/2.
FlaschkaState flaschka_map(const CanonicalState& s);
SmoothMap flaschka_smooth_map(int N);
std::vector<double> to_coords(const FlaschkaState& s);

/// H(q,p) = sum p^2/2 + sum exp(q_i - q_{i+1}).
ScalarField canonical_hamiltonian(int N);

LaxPair lax_pair(int N);
ScalarField invariant(int N, int k);
std::vector<ScalarField> invariants(int N);  // H_1..H_N
ScalarField det_l(int N);
/// tr L^{-k}, defined where det L != 0.
ScalarField trace_inverse_power(int N, int k);

BracketTable bracket_table(int N, int n);  // n = 1, 2, 3
BivectorField bracket(int N, int n);       // n >= 1; n >= 4 generated
/// Hamiltonian field of H_l for pi_n; chi(N, l) uses pi_1.
VectorField chi(int N, int l, int n = 1);
/// The Toda flow pi_1 grad H_2.
VectorField flow(int N);

/// X_{-1}, X_0, X_1 in closed form; n >= 2 gives the reduced Z-ladder field.
VectorField master_field(int N, int n);

struct CanonicalStructures {
  BivectorField J0;
  BivectorField J1;
  VectorField Z0;
  ScalarField h0;
  ScalarField h1;
};

CanonicalStructures canonical_structures(int N);
/// J_k = R^k J_0 with R = J_1 J_0^{-1}.
BivectorField canonical_j(int N, int k);
/// Z_i = R^i Z_0.
VectorField z_field(int N, int i);
/// chi_j = R^{j-1} J_0 grad h_1.
VectorField canonical_chi(int N, int j);

/// 2^{-i} F_* Z_i evaluated from (a,b); normalized so that
/// L_{Z_i} pi_m = (m - i - 2) pi_{m+i} on the Flaschka chart.
VectorField reduced_z(int N, int i);

/// Compares DF.Z_i at (q,p) with the same at (q + c, p) and with reduced_z at F(q,p).
IdentityReport reduction_check(int N, int i, const SamplerConfig& config);

/// pi_n grad H_l = pi_{n-1} grad H_{l+1}; n >= 2.
IdentityReport lenard_check(int N, int n, int l, const SamplerConfig& config);

/// Gradient of the eigenvalue with index `which` (ascending) in Flaschka coordinates.
std::vector<double> eigen_gradient(const FlaschkaState& s, std::size_t which);

/// pi_n(x + s) against sum_j C(n-1, j) pi_{n-j}(x) with s = (0, 1): exact for
/// n <= 3, up to a trivial bracket for n >= 4.
IdentityReport shift_isomorphism_check(int N, int n, const SamplerConfig& config);

/// Y_n = X_n + t chi_{n+2} on the chart extended by t. `perturbed` flips the
/// sign of one X_1 term to give a negative control.
VectorField symmetry_field(int N, int n, bool perturbed = false);
ChartPtr extended_chart(int N);
/// dY/dt + [chi_2, Y] = 0 at sampled (x, t).
IdentityReport symmetry_residual(int N, int n, const SamplerConfig& config, bool perturbed = false);

}  // namespace todalab::classical
