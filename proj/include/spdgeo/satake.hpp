#pragma once

#include <cmath>
#include <vector>

#include "spdgeo/linalg.hpp"
#include "spdgeo/spd_core.hpp"

namespace spdgeo {

// A flag R^n = W_0 > W_1 > ... > W_p > 0 with codim W_k = codims[k-1].
// basis is orthonormal; the trailing n - codims[k-1] columns span W_k.
// Equality is equality of the orthogonal projectors onto the W_k.
class Flag {
public:
    Flag() = default;
    Flag(int n, std::vector<int> codims, Matrix basis);

    static Flag trivial(int n);
    // Flag whose W_k is the orthogonal complement of the leading codims[k]
    // columns of the given (invertible) frame, taken in column order.
    static Flag from_frame_blocks(const Matrix& frame, const std::vector<int>& codims);

    int n() const { return n_; }
    const std::vector<int>& codims() const { return codims_; }
    int depth() const { return static_cast<int>(codims_.size()); }
    const Matrix& basis() const { return basis_; }

    // Projector onto W_k, k = 1..p (k = 0 gives the identity).
    Matrix projector(int k) const;
    // Columns i_{k-1}..i_k-1 of the basis: representatives of W_{k-1}/W_k.
    Matrix subquotient_basis(int k) const; // k = 1..p+1

    bool equals(const Flag& other, double tol = 1e-8) const;
    // True when every subspace of `sub` occurs among this flag's subspaces.
    bool contains_subflag(const Flag& sub, double tol = 1e-8) const;

private:
    int n_ = 0;
    std::vector<int> codims_;
    Matrix basis_;
};

enum class ScaleMode { UpToScale, Literal };

// Positive form on a subquotient, expressed in the flag's basis columns.
// UpToScale representatives are normalized to largest eigenvalue 1.
struct SubquotientForm {
    int dim = 0;
    Matrix matrix;
    ScaleMode scaleMode = ScaleMode::UpToScale;

    static SubquotientForm up_to_scale(Matrix m);
    static SubquotientForm literal(Matrix m);
};

struct SatakePoint {
    Flag flag;
    std::vector<SubquotientForm> forms; // one per subquotient, p+1 of them

    int n() const { return flag.n(); }
    bool interior() const { return flag.depth() == 0; }
};

// Closed-form limit of a geodesic in S_n (single-block velocities give the
// interior point g g^T).
SatakePoint geodesic_satake_limit(const Geodesic& gamma);

// Inductive limit of a declared-convergent sequence: normalize, detect the
// degenerate limit, recurse on the kernel. tol doubles as the tail
// stabilization bound and the kernel eigenvalue threshold.
SatakePoint sequence_limit_inductive(const std::vector<SPDMatrix>& samples, double tol = 1e-6);

// Non-inductive packet algorithm: cluster log-eigenvalues of the tail samples
// into packets, build the limit flag from eigenvector spans, align with the
// orthogonal polar factor, and take limits of the restricted forms.
SatakePoint sequence_limit_packets(const std::vector<SPDMatrix>& samples, double tol = 1e-6,
                                   double logGap = std::log(10.0));

int satake_stratum_dim(int n, const std::vector<int>& codims);
bool satake_closure_contains(const std::vector<int>& i, const std::vector<int>& j);
bool satake_point_equal(const SatakePoint& a, const SatakePoint& b, double tol = 1e-8);

// Image of a point under X -> g X g^T (flags map by the inverse transpose).
SatakePoint transform_satake_point(const Matrix& g, const SatakePoint& p);

} // namespace spdgeo
