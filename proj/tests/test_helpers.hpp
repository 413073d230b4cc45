#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spdgeo/linalg.hpp"
#include "spdgeo/spd_core.hpp"

namespace spdgeo::testing {

inline Matrix random_rotation(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = g(rng);
    return qr_positive(m).q;
}

// Random invertible frame with singular values in [1/spread, spread].
inline Matrix random_frame(int n, std::mt19937_64& rng, double spread = 2.0) {
    std::uniform_real_distribution<double> u(1.0 / spread, spread);
    std::vector<double> s(n);
    for (double& x : s) x = u(rng);
    return random_rotation(n, rng) * Matrix::diagonal(s) * random_rotation(n, rng);
}

inline SPDMatrix random_spd(int n, std::mt19937_64& rng, Model model = Model::E,
                            double spread = 3.0) {
    std::uniform_real_distribution<double> u(1.0 / spread, spread);
    std::vector<double> d(n);
    for (double& x : d) x = u(rng);
    Matrix q = random_rotation(n, rng);
    return SPDMatrix::make(q * Matrix::diagonal(d) * q.transposed(), model);
}

// Strictly decreasing velocity values with inter-block gaps in [minGap, maxGap].
inline Velocity random_velocity(int n, std::mt19937_64& rng, Model model,
                                double minGap = 0.5, double maxGap = 1.5) {
    std::uniform_int_distribution<int> blocksDist(1, n);
    std::uniform_real_distribution<double> gapDist(minGap, maxGap);
    int m = blocksDist(rng);
    std::vector<int> sizes(m, 1);
    for (int extra = 0; extra < n - m; ++extra) {
        std::uniform_int_distribution<int> pick(0, m - 1);
        ++sizes[pick(rng)];
    }
    std::vector<double> vals(m);
    double cur = 1.0 + gapDist(rng);
    for (int k = 0; k < m; ++k) {
        vals[k] = cur;
        cur -= gapDist(rng);
    }
    Velocity v;
    v.blockSizes = sizes;
    v.values = vals;
    v.model = model;
    return v;
}

// Velocity with at most two blocks; the single inter-block gap lies in
// [minGap, maxGap]. Sampling matrices of such geodesics keeps every scale
// within double precision over the usual time grids.
inline Velocity two_block_velocity(int n, std::mt19937_64& rng, Model model,
                                   double minGap, double maxGap) {
    std::uniform_int_distribution<int> splitDist(1, n - 1);
    std::uniform_real_distribution<double> gapDist(minGap, maxGap);
    const int a = splitDist(rng);
    Velocity v;
    v.blockSizes = {a, n - a};
    const double top = 0.6;
    v.values = {top, top - gapDist(rng)};
    v.model = model;
    return v;
}

inline Geodesic random_geodesic(int n, std::mt19937_64& rng, Model model = Model::E,
                                double frameSpread = 2.0, double minGap = 0.5,
                                double maxGap = 1.5) {
    Geodesic g;
    g.frame = random_frame(n, rng, frameSpread);
    g.velocity = random_velocity(n, rng, model, minGap, maxGap);
    return g;
}

inline Matrix random_permutation_matrix(int n, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) p(perm[i], i) = 1.0;
    return p;
}

// Frame of the form permutation * block-diagonal mixing. Matrices sampled
// from such geodesics carry each velocity block at its own scale, so deep
// flags stay resolvable in double precision at any time.
inline Matrix block_frame(const Velocity& vel, std::mt19937_64& rng,
                          double spread = 1.5) {
    const int n = vel.n();
    Matrix b(n, n);
    int off = 0;
    for (int len : vel.blockSizes) {
        Matrix u = random_frame(len, rng, spread);
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j) b(off + i, off + j) = u(i, j);
        off += len;
    }
    return random_permutation_matrix(n, rng) * b;
}

// Block matrices relative to a velocity's block sizes, in the orientation that
// preserves trailing flags for decreasing exponents: zero strictly below the
// block diagonal, arbitrary above.
enum class ShapeKind { Finite, Solvable, Null };

inline Matrix random_pencil_shape(const Velocity& vel, ShapeKind kind,
                                  std::mt19937_64& rng) {
    const int n = vel.n();
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> diagDist(0.6, 1.8);
    Matrix h(n, n);
    std::vector<int> startOf;
    int s = 0;
    for (int len : vel.blockSizes) {
        startOf.push_back(s);
        s += len;
    }
    for (size_t k = 0; k < vel.blockSizes.size(); ++k) {
        const int lo = startOf[k], len = vel.blockSizes[k];
        switch (kind) {
            case ShapeKind::Finite:
                for (int i = 0; i < len; ++i)
                    for (int j = 0; j < len; ++j) h(lo + i, lo + j) = g(rng);
                // keep the diagonal block well-conditioned
                for (int i = 0; i < len; ++i) h(lo + i, lo + i) += 2.0;
                break;
            case ShapeKind::Solvable: {
                const double tau = diagDist(rng);
                for (int i = 0; i < len; ++i) h(lo + i, lo + i) = tau;
                break;
            }
            case ShapeKind::Null:
                for (int i = 0; i < len; ++i) h(lo + i, lo + i) = 1.0;
                break;
        }
        // blocks strictly above the diagonal
        for (int j2 = lo + len; j2 < n; ++j2)
            for (int i = 0; i < len; ++i) h(lo + i, j2) = 0.5 * g(rng);
    }
    return h;
}

inline Geodesic conjugate(const Matrix& h, const Geodesic& g) {
    Geodesic out;
    out.frame = h * g.frame;
    out.velocity = g.velocity;
    return out;
}

// Member of g's pencil: the shape acts in g's own frame coordinates.
inline Geodesic shape_member(const Geodesic& g, ShapeKind kind, std::mt19937_64& rng) {
    Geodesic out;
    out.frame = g.frame * random_pencil_shape(g.velocity, kind, rng);
    out.velocity = g.velocity;
    return out;
}

} // namespace spdgeo::testing
