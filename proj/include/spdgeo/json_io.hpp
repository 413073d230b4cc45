#pragma once

#include <json.hpp>

#include "spdgeo/boundary.hpp"
#include "spdgeo/growth.hpp"
#include "spdgeo/partitions.hpp"
#include "spdgeo/pencils.hpp"
#include "spdgeo/satake.hpp"
#include "spdgeo/spd_core.hpp"
#include "spdgeo/urchin.hpp"

namespace spdgeo {

using Json = nlohmann::ordered_json;

// floats are emitted rounded to 12 significant digits
double round12(double x);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json spd_to_json(const SPDMatrix& x);
SPDMatrix spd_from_json(const Json& j);

Json geodesic_to_json(const Geodesic& g);
Geodesic geodesic_from_json(const Json& j);

Json satake_to_json(const SatakePoint& p);
SatakePoint satake_from_json(const Json& j);

Json finite_pencil_to_json(const FinitePencilData& d);
Json solvable_pencil_to_json(const SolvablePencilData& d);
Json null_pencil_to_json(const NullPencilData& d);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j, int n);
Json tree_to_json(const TreePartition& t);
TreePartition tree_from_json(const Json& j, int n);
Json leveled_to_json(const LeveledTreePartition& l);
LeveledTreePartition leveled_from_json(const Json& j, int n);

Json stratum_to_json(const Stratum& s);
Json face_lattice_to_json(const FaceLattice& l);

Json pass_limit_to_json(const PassLimit& p);
Json karp_limit_to_json(const KarpLimit& k);

Json boundary_point_to_json(const BoundaryPoint& p);

Json curve_to_json(const MeromorphicCurve& c);
MeromorphicCurve curve_from_json(const Json& j);
Json factorization_to_json(const CurveFactorization& f);

} // namespace spdgeo
