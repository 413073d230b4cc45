#pragma once

#include <optional>
#include <vector>

#include "spdgeo/growth.hpp"
#include "spdgeo/partitions.hpp"
#include "spdgeo/pencils.hpp"
#include "spdgeo/satake.hpp"

namespace spdgeo {

enum class BoundaryKind { Ass, Karp, Martin };

// Velocity-side data of a hybrid boundary point. Rays are directions modulo
// per-staff constants and one positive factor (canonical: min 0, norm 1);
// blockValues hold the within-segment exponents gauge-fixed to sum zero.
struct ChamberData {
    std::vector<std::vector<double>> rays;        // one per level (one for Ass/Martin)
    std::vector<std::vector<double>> blockValues; // one per irreducible segment
};

struct BoundaryPoint {
    BoundaryKind kind = BoundaryKind::Karp;
    bool interior = false;

    std::optional<TreePartition> assIndex;           // kind == Ass
    std::optional<LeveledTreePartition> karpIndex;   // kind == Karp
    std::vector<int> martinCodims;                   // kind == Martin

    ChamberData chamber;
    SatakePoint satake; // Literal forms; log-eigenvalues match blockValues
};

// Limit of a geodesic in the chosen hybrid compactification. Single-block
// velocities give the interior point (no boundary index).
BoundaryPoint geodesic_boundary_point(const Geodesic& gamma, BoundaryKind kind);

// Boundary point of a matrix sequence whose sorted log-eigenvalue growth is
// polynomial; frameLimit supplies the Satake part. Throws NotSorted when the
// growth vector is not eventually non-increasing, SemiaxisMismatch when the
// forms' log-eigenvalues disagree with the growth data.
BoundaryPoint sequence_boundary_point(const GrowthVector& eigen,
                                      const SatakePoint& frameLimit, BoundaryKind kind,
                                      double tol = 1e-8);

} // namespace spdgeo
