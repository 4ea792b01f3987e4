#pragma once

#include <cstddef>
#include <vector>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/laxode.hpp"

/// Full Kostant-Toda lattice on epsilon + B_- in gl(n). The chart holds x_ij
/// for i >= j ordered by subdiagonal: x11..xnn, x21..xn(n-1), ..., xn1.
/// For gl(4) these are f_i, g_i, h_i, k_1.
namespace todalab::kostant {

ChartPtr chart(int n);
std::size_t index(int n, int i, int j);  // 1-based, i >= j

/// X(x) as a matrix of jets: x_ij on and below the diagonal, 1 above it.
template <class T>
Matrix<T> state_matrix(const std::vector<T>& x, int n) {
  const std::size_t m = static_cast<std::size_t>(n);
  Matrix<T> X(m, m);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) X(i - 1, j - 1) = x[index(n, i, j)];
    if (i < n) X(i - 1, i) = T(1);
  }
  return X;
}

/// Xdot = [X, P X] with P the strictly lower projection; B = P X and the
/// pair satisfies Ldot = [L, B].
LaxPair lax(int n);
VectorField kostant_flow(int n);

/// pi_1 from {x_ij, x_kl} = delta_li x_kj - delta_jk x_il; pi_2 = -(1/2) L_{X_1} pi_1,
/// pi_3 = -L_{X_1} pi_2.
BivectorField kostant_bracket(int n, int index);

/// -1: grad H_1, 0: Euler field, 1 and 2: Y ansatz, >= 3: [X_1, X_{i-1}]/(i-2).
VectorField kostant_master(int n, int index);
/// Entries of [Y,X] + X^{i+1} above the diagonal vanish (i = 1, 2).
IdentityReport master_consistency(int n, int index, const SamplerConfig& config);

ScalarField poly_invariant(int n, int k);  // (1/k) tr X^k
std::vector<ScalarField> poly_invariants(int n);
ScalarField determinant_x(int n);
/// tr X^{-1}, singular where det X = 0.
ScalarField trace_inverse(int n);

/// det((X - lambda)_{(k)}) = E_0k lambda^{n-2k} + ... + E_{n-2k,k}; I_rk = E_rk/E_0k.
struct RationalInvariant {
  int r = 0;
  int k = 0;
  ScalarField numerator;    // E_rk
  ScalarField denominator;  // E_0k
  ScalarField value;        // I_rk, singular where E_0k = 0
};

RationalInvariant rational_invariant(int n, int r, int k);
/// All I_rk with k >= 1.
std::vector<ScalarField> rational_invariants(int n);
/// K_1 = -I_11, K_2 = -I_21, K_3 = -I_31, K_4 = -I_12 on gl(5).
ScalarField gl5_k(int i);

/// X_1 on the K's and the printed X_2(K_3) on gl(5).
std::vector<IdentityReport> gl5_master_action_check(const SamplerConfig& config);
/// pi_1 grad K_{i+1} = pi_2 grad K_i (i = 1..3) and pi_2 grad M_1 = pi_3 grad K_1.
std::vector<IdentityReport> rational_lenard_check(const SamplerConfig& config);

}  // namespace todalab::kostant
