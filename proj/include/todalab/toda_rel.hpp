#pragma once

#include <vector>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/laxode.hpp"
#include "todalab/poly.hpp"

/// Relativistic Toda lattice. Chart a_1..a_{N-1}, b_1..b_N; a_0 = a_N = 0 in
/// every formula.
namespace todalab::relativistic {

struct RelState {
  std::vector<double> a;  // N-1 entries
  std::vector<double> b;  // N entries
};

ChartPtr chart(int N);
std::size_t a_index(int N, int i);
std::size_t b_index(int N, int i);

/// sum_j e^{p_j} f(q_{j-1} - q_j) f(q_j - q_{j+1}) with f(x) = sqrt(1 + g^2 e^x)
/// and f = 1 at both ends.
double rel_hamiltonian(const std::vector<double>& q, const std::vector<double>& p, double g);
/// a_j = g^2 e^{q_j - q_{j+1} + p_j} f(q_{j-1} - q_j)/f(q_j - q_{j+1}), b_j = qdot_j - a_j.
RelState rel_coordinates(const std::vector<double>& q, const std::vector<double>& p, double g);

/// adot_j = a_j(b_j - b_{j+1} + a_{j-1} - a_{j+1}), bdot_j = b_j(a_{j-1} - a_j).
VectorField rel_equations(int N);
/// dL/dt = [L, B].
LaxPair rel_lax(int N);

ScalarField invariant(int N, int k);
std::vector<ScalarField> invariants(int N);
ScalarField product_b(int N);
/// tr L^{-1}, defined where prod b_i != 0.
ScalarField trace_inverse(int N);

BracketTable bracket_table(int N, int n);  // n = 1, 2, 3
/// n = 1..3 from tables; n = 4 is L_{X_2} pi_2 and needs N = 3.
BivectorField rel_bracket(int N, int n);
/// n = 1 any N; n = 2 needs N = 3; n >= 3 from [X_1, X_{n-1}] = (n-2) X_n.
VectorField rel_master(int N, int n);

/// Maximum deviation over [0, t_end] between the relativistic Newton
/// equations (qdot = Qdot + c, g = 1/c) and the classical Toda equations, one
/// entry per c.
std::vector<double> nonrelativistic_limit(int N, const std::vector<double>& Q0, const std::vector<double>& V0,
                                          const std::vector<double>& cs, double t_end, double step);

}  // namespace todalab::relativistic
