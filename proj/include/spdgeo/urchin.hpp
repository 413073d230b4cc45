#pragma once

#include <cstdint>
#include <vector>

#include "spdgeo/laurent.hpp"
#include "spdgeo/pencils.hpp"

namespace spdgeo {

using SeriesMatrix = std::vector<std::vector<LaurentSeries>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

// Symmetric matrix of Laurent series, positive definite for small z > 0.
struct MeromorphicCurve {
    int n = 0;
    long truncation = 16; // working window for series arithmetic
    SeriesMatrix entries;

    static MeromorphicCurve make(SeriesMatrix entries, long truncation = 16);
};

// X(z) = g(z) diag(c_i z^{-k_i}) g(z)^T with g analytic, g(0) invertible over
// the rationals, exponents sorted descending, scales positive.
struct CurveFactorization {
    SeriesMatrix g;
    std::vector<long> exponents;
    std::vector<Rational> scales;
    long window = 16;

    // residual X - g D g^T, each entry truncated to its guaranteed window
    SeriesMatrix residual(const MeromorphicCurve& x) const;
};

// Symmetric congruence elimination over the Laurent field with the minimal
// valuation pivot rule; doubles the working window on WindowExhausted up to
// 256. pivotSeed != 0 randomizes the choice among minimal-valuation pivots.
CurveFactorization factor_curve(const MeromorphicCurve& x, std::uint64_t pivotSeed = 0);

// Exact sea-urchin limit data: integer velocity, flag projectors, and the
// extended subquotient forms (compressed to W_{p-1}), all rational. Compared
// modulo the origin-shift scaling of the forms.
struct ExactNullData {
    std::vector<int> blockSizes;
    std::vector<long> values; // distinct exponents, descending
    std::vector<RationalMatrix> flagProjectors;
    std::vector<RationalMatrix> extendedForms;
};

ExactNullData exact_null_data(const CurveFactorization& f);
bool exact_null_data_equal(const ExactNullData& a, const ExactNullData& b);

// Limit of the curve in the sea urchin: the null-pencil data of the geodesic
// obtained by substituting z = e^{-t} into the factorization.
NullPencilData urchin_limit(const MeromorphicCurve& x);
ExactNullData urchin_limit_exact(const MeromorphicCurve& x, std::uint64_t pivotSeed = 0);

// Entrywise substitution z <- w u(w), u(0) > 0.
MeromorphicCurve reparametrize(const MeromorphicCurve& x, const LaurentSeries& u);

// True when the randomized-pivot factorization reproduces the default limit.
bool refactor_invariance_check(const MeromorphicCurve& x, std::uint64_t seed);

} // namespace spdgeo
