#pragma once

#include <vector>

#include "spdgeo/satake.hpp"
#include "spdgeo/spd_core.hpp"

namespace spdgeo {

// Boundary data determining a finite pencil: velocity plus limit flag.
struct FinitePencilData {
    Velocity velocity; // canonical representative
    Flag limitFlag;
};

// Velocity plus Satake limit; determines a solvable pencil.
struct SolvablePencilData {
    Velocity velocity;
    SatakePoint satake;
};

// Velocity, limit flag, and literal subquotient forms stored in the canonical
// slice of the origin-shift action (forms scale by e^{psi_k s}; the slice
// fixes det = 1 on the first block with nonzero exponent).
struct NullPencilData {
    Velocity velocity;
    Flag flag;
    std::vector<SubquotientForm> forms; // Literal mode
};

FinitePencilData finite_pencil_data(const Geodesic& gamma);
SolvablePencilData solvable_pencil_data(const Geodesic& gamma);
NullPencilData null_pencil_data(const Geodesic& gamma, double originShift = 0.0);

bool same_finite_pencil(const Geodesic& a, const Geodesic& b, double tol = 1e-7);
bool same_solvable_pencil(const Geodesic& a, const Geodesic& b, double tol = 1e-7);
bool same_null_pencil(const Geodesic& a, const Geodesic& b, double tol = 1e-7);

bool null_data_equal(const NullPencilData& a, const NullPencilData& b, double tol = 1e-7);

// Image of mu in the product space attached to gamma's finite pencil: the
// diagonal-block Gram matrices of mu's triangular representative relative to
// gamma's canonical frame.
std::vector<SPDMatrix> finite_pencil_project(const Geodesic& gamma, const Geodesic& mu);

// Geodesic distance in that product space between two members of one pencil.
double distance_at_infinity(const Geodesic& nu1, const Geodesic& nu2);

// The unique member of gamma's finite pencil passing X at t = 0.
Geodesic pencil_through_point(const Geodesic& gamma, const SPDMatrix& x);

// Visibility-sphere cell closure: true when every subspace of sub occurs
// among the subspaces of w.
bool sphere_cell_closure_contains(const Flag& w, const Flag& sub, double tol = 1e-7);

} // namespace spdgeo
