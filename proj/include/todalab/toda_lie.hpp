#pragma once

#include <string>
#include <vector>

#include "todalab/field.hpp"
#include "todalab/geometry.hpp"
#include "todalab/identity.hpp"
#include "todalab/laxode.hpp"
#include "todalab/linalg.hpp"
#include "todalab/poly.hpp"

namespace todalab::lie {

// ---------------------------------------------------------------------------
// Hamiltonian catalog

enum class Family { A, B, C, D, G2, F4, E6, E7, E8 };

struct RootSystemId {
  Family family = Family::A;
  int rank = 1;
};

Family parse_family(const std::string& s);
std::string family_name(Family f);
/// Throws std::invalid_argument when the rank does not fit the family.
void validate(const RootSystemId& id);
/// Number of q coordinates used by the printed Hamiltonian.
int coordinate_count(const RootSystemId& id);

ChartPtr canonical_chart(int n);
ScalarField lie_hamiltonian(const RootSystemId& id);
/// Hamilton's equations J0 grad H.
VectorField lie_flow(const RootSystemId& id);
BivectorField symplectic(int n);

/// Canonical transformation between the two A_2 Hamiltonians.
struct A2Report {
  IdentityReport brackets;   // {Q_a, P_b} = delta, {Q_a, Q_b} = {P_a, P_b} = 0
  IdentityReport potential;  // potential of the second form pulled back equals the first
  IdentityReport kinetic;    // kinetic terms agree up to 4/3 where p1 + p2 + p3 = 0
};
A2Report a2_equivalence_check(const SamplerConfig& config);

// ---------------------------------------------------------------------------
// B_n Toda: chart a_1..a_n, b_1..b_n

ChartPtr bn_chart(int n);
/// a_i = exp((q_i - q_{i+1})/2)/2, a_n = exp(q_n/2)/2, b_i = -p_i/2.
SmoothMap bn_flaschka_map(int n);
LaxPair bn_lax(int n);
/// Hamilton's equations in (a,b): (1/2) pi_1 grad H_2, which is [B,L].
VectorField bn_flow(int n);
ScalarField bn_invariant(int n, int k);            // (1/k) tr L^k
std::vector<ScalarField> bn_invariants(int n);     // H_2, H_4, ..., H_2n
BracketTable bn_bracket_table(int n, int index);   // index 1 or 3
/// Odd index; 1 and 3 are tables, 5 and 7 come from N = pi_3 pi_1^{-1}.
BivectorField bn_bracket(int n, int index);
BivectorField bn_recursion_apply(const BivectorField& T);
VectorField bn_recursion_apply(const VectorField& V);
/// (N T) + (N T)^T = 0 at samples.
IdentityReport bn_recursion_antisymmetry(const BivectorField& T, const SamplerConfig& config);

// ---------------------------------------------------------------------------
// Dirac reduction

/// Constraint functions on an ambient chart plus a parameterization of the
/// constraint surface by a reduced chart. Constraints are linear forms; the
/// embedding is polynomial.
struct ConstraintSet {
  ChartPtr ambient;
  std::vector<std::string> names;
  std::vector<std::vector<Rational>> forms;  // p_i(x) = forms[i] . x
  ChartPtr reduced;
  std::vector<Polynomial> embedding;         // ambient coordinate k as a polynomial in reduced coordinates
  std::vector<std::size_t> coordinates;      // ambient index of each reduced coordinate function
};

/// {F,G}_N(x) = {F,G}(x) + sum_ij {F,p_i}(x) P^{ij}(x) {G,p_j}(x), P^{ij} the inverse of P = {p_i,p_j}.
template <class S>
S dirac_bracket(const BivectorField& pi, const ConstraintSet& C, const ScalarField& F, const ScalarField& G,
                const Point<S>& x);

template <class S>
Matrix<S> constraint_matrix(const BivectorField& pi, const ConstraintSet& C, const Point<S>& x);

/// The reduced bracket of the coordinate functions as a field on C.reduced.
BivectorField dirac_bivector(const BracketTable& ambient, const ConstraintSet& C, FieldInfo info);

// ---------------------------------------------------------------------------
// B_2 from A_4 (with center)

ChartPtr b2_chart();                 // a1, a2, b1, b2, b3
ConstraintSet b2_constraints();      // ambient: classical Flaschka chart with N = 5
LaxPair b2_lax();
ScalarField b2_invariant(int k);
ScalarField b2_det();
BracketTable b2_rational_table();
BivectorField b2_rational_bracket();
/// Dirac reduction of the A_4 linear bracket.
BivectorField b2_linear_bracket();
/// Dirac reduction of the A_4 quadratic bracket.
BivectorField b2_dirac_bracket();

/// Printed constraint matrix and its printed inverse at a B_2 point.
template <class S>
Matrix<S> b2_printed_p(const std::vector<S>& y);
template <class S>
Matrix<S> b2_printed_p_inverse(const std::vector<S>& y);

struct B2DiracReport {
  IdentityReport bracket;    // Dirac bracket equals the rational table
  IdentityReport p_matrix;   // computed P equals the printed P
  IdentityReport p_inverse;  // computed P^{-1} equals the printed P^{-1}
};
B2DiracReport b2_dirac_check(const SamplerConfig& config);

}  // namespace todalab::lie
