#include "spdgeo/urchin.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spdgeo/errors.hpp"

namespace spdgeo {

namespace {

RationalMatrix rat_identity(int n) {
    RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RationalMatrix rat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    const int n = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int m = static_cast<int>(b.front().size());
    RationalMatrix c(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RationalMatrix rat_transpose(const RationalMatrix& a) {
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(a.front().size());
    RationalMatrix t(m, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) t[j][i] = a[i][j];
    return t;
}

RationalMatrix rat_inverse(RationalMatrix a) {
    const int n = static_cast<int>(a.size());
    RationalMatrix inv = rat_identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw NotPositiveDefinite("singular rational matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

MeromorphicCurve MeromorphicCurve::make(SeriesMatrix entries, long truncation) {
    MeromorphicCurve c;
    c.n = static_cast<int>(entries.size());
    for (const auto& row : entries)
        if (static_cast<int>(row.size()) != c.n)
            throw DimensionMismatch("curve entries must form a square matrix");
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j)
            if (!entries[i][j].identical(entries[j][i]))
                throw NotSymmetric("curve must be exactly symmetric");
    c.truncation = truncation;
    c.entries = std::move(entries);
    return c;
}

namespace {

struct Eliminator {
    SeriesMatrix a;
    SeriesMatrix g; // accumulated frame: X = g A g^T
    long w;
    std::mt19937_64 rng;
    bool randomize;

    Eliminator(const MeromorphicCurve& x, long window, std::uint64_t seed)
        : a(x.entries), w(window), rng(seed), randomize(seed != 0) {
        const int n = x.n;
        g.assign(n, std::vector<LaurentSeries>(n, LaurentSeries::zero()));
        for (int i = 0; i < n; ++i) g[i][i] = LaurentSeries::monomial(Rational(1), 0);
        for (auto& row : a)
            for (LaurentSeries& s : row)
                if (!s.tail_exact()) s = s.truncated(std::min(s.window_end(), s.start() + w));
    }

    int n() const { return static_cast<int>(a.size()); }

    void swap_index(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < n(); ++r) std::swap(a[r][i], a[r][j]);
        std::swap(a[i], a[j]);
        for (int r = 0; r < n(); ++r) std::swap(g[r][i], g[r][j]);
    }

    // congruence row/col j += sign * row/col k (j != k); inverse op on g.
    // The sign is chosen so the new (j,j) entry keeps the merged valuation
    // even when the diagonal entries also attain it.
    void merge_into(int j, int k, long mergedValuation) {
        auto at = [&](int r, int c) {
            const LaurentSeries& s = a[r][c];
            return (s.is_exact_zero() || s.window_end() <= mergedValuation)
                       ? Rational(0)
                       : s.coeff(mergedValuation);
        };
        const Rational plus = at(j, j) + at(k, k) + Rational(2) * at(j, k);
        const Rational sign = plus != 0 ? Rational(1) : Rational(-1);
        for (int c = 0; c < n(); ++c) a[j][c] = a[j][c] + a[k][c].scaled(sign);
        for (int r = 0; r < n(); ++r) a[r][j] = a[r][j] + a[r][k].scaled(sign);
        for (int r = 0; r < n(); ++r) g[r][k] = g[r][k] - g[r][j].scaled(sign);
    }

    void eliminate(int i) {
        const LaurentSeries pivot = a[i][i];
        std::vector<LaurentSeries> lambda(n(), LaurentSeries::zero());
        for (int r = i + 1; r < n(); ++r)
            if (!a[r][i].is_exact_zero()) lambda[r] = divide(a[r][i], pivot, w);
        SeriesMatrix next = a;
        for (int r = i + 1; r < n(); ++r)
            for (int c = i + 1; c < n(); ++c) {
                LaurentSeries t = a[r][c] - lambda[r] * a[i][c] - lambda[c] * a[r][i] +
                                  lambda[r] * lambda[c] * a[i][i];
                next[r][c] = std::move(t);
            }
        for (int r = i + 1; r < n(); ++r) {
            next[r][i] = LaurentSeries::zero();
            next[i][r] = LaurentSeries::zero();
        }
        a = std::move(next);
        for (int r = i + 1; r < n(); ++r) {
            if (lambda[r].is_exact_zero()) continue;
            for (int row = 0; row < n(); ++row)
                g[row][i] = g[row][i] + g[row][r] * lambda[r];
        }
    }

    // position of a minimal-valuation entry in the trailing submatrix;
    // window-zero entries only block the choice when their zero-bound could
    // still undercut the best known valuation
    void pivot_step(int i) {
        long best = LaurentSeries::kInf;
        long unknownBound = LaurentSeries::kInf;
        std::vector<std::pair<int, int>> candidates;
        for (int r = i; r < n(); ++r)
            for (int c = r; c < n(); ++c) {
                const LaurentSeries& s = a[r][c];
                if (s.is_exact_zero()) continue;
                if (s.window_zero()) {
                    unknownBound = std::min(unknownBound, s.window_end());
                    continue;
                }
                const long v = s.valuation();
                if (v < best) {
                    best = v;
                    candidates.clear();
                }
                if (v == best) candidates.emplace_back(r, c);
            }
        if (candidates.empty()) {
            if (unknownBound < LaurentSeries::kInf)
                throw WindowExhausted("pivot undecidable: every entry is zero through its window");
            throw NotPositive("curve is singular");
        }
        if (unknownBound < best)
            throw WindowExhausted("pivot undecidable: an entry window ends below the best valuation");
        std::pair<int, int> pick = candidates.front();
        if (randomize) {
            std::uniform_int_distribution<size_t> d(0, candidates.size() - 1);
            pick = candidates[d(rng)];
        } else {
            // prefer a diagonal candidate, smallest index first
            for (const auto& cand : candidates)
                if (cand.first == cand.second) {
                    pick = cand;
                    break;
                }
        }
        if (pick.first != pick.second) {
            merge_into(pick.first, pick.second, best);
            // diagonal entry (first,first) now has the minimal valuation
        }
        swap_index(i, pick.first);
        eliminate(i);
    }
};

CurveFactorization factor_attempt(const MeromorphicCurve& x, long window, std::uint64_t seed) {
    Eliminator e(x, window, seed);
    const int n = x.n;
    for (int i = 0; i < n; ++i) e.pivot_step(i);

    CurveFactorization f;
    f.window = window;
    std::vector<long> ks(n);
    std::vector<Rational> cs(n);
    SeriesMatrix g = e.g;
    for (int i = 0; i < n; ++i) {
        const LaurentSeries& d = e.a[i][i];
        const long v = d.valuation();
        const Rational lead = d.leading_coeff();
        if (!(lead > 0)) throw NotPositive("curve is not positive for small z > 0");
        ks[i] = -v;
        cs[i] = lead;
        // unit part u = d z^{-v} / lead has constant term 1
        LaurentSeries u = d.shifted(-v).scaled(Rational(1) / lead);
        LaurentSeries s = sqrt_one(u, window);
        for (int r = 0; r < n; ++r) g[r][i] = g[r][i] * s;
    }
    // sort exponents descending, stable in the original order
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) { return ks[p] > ks[q]; });
    f.exponents.resize(n);
    f.scales.resize(n);
    f.g.assign(n, std::vector<LaurentSeries>(n, LaurentSeries::zero()));
    for (int j = 0; j < n; ++j) {
        f.exponents[j] = ks[order[j]];
        f.scales[j] = cs[order[j]];
        for (int r = 0; r < n; ++r) f.g[r][j] = g[r][order[j]];
    }
    return f;
}

} // namespace

SeriesMatrix CurveFactorization::residual(const MeromorphicCurve& x) const {
    const int n = x.n;
    SeriesMatrix res(n, std::vector<LaurentSeries>(n, LaurentSeries::zero()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LaurentSeries acc = LaurentSeries::zero();
            for (int k = 0; k < n; ++k) {
                LaurentSeries term = g[i][k] * g[j][k];
                term = term.scaled(scales[k]).shifted(-exponents[k]);
                acc = acc + term;
            }
            res[i][j] = x.entries[i][j] - acc;
        }
    return res;
}

CurveFactorization factor_curve(const MeromorphicCurve& x, std::uint64_t pivotSeed) {
    long window = x.truncation;
    while (true) {
        try {
            return factor_attempt(x, window, pivotSeed);
        } catch (const WindowExhausted&) {
            if (window >= 256) throw;
            window *= 2;
        }
    }
}

ExactNullData exact_null_data(const CurveFactorization& f) {
    const int n = static_cast<int>(f.g.size());
    ExactNullData d;
    // velocity blocks from the sorted exponents
    for (int i = 0; i < n; ++i) {
        if (d.values.empty() || d.values.back() != f.exponents[i]) {
            d.values.push_back(f.exponents[i]);
            d.blockSizes.push_back(1);
        } else {
            ++d.blockSizes.back();
        }
    }
    RationalMatrix g0(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g0[i][j] = f.g[i][j].is_exact_zero() || f.g[i][j].start() > 0
                           ? Rational(0)
                           : f.g[i][j].coeff(0);

    const int m = static_cast<int>(d.blockSizes.size());
    RationalMatrix prevComplement = rat_identity(n); // projector onto W_{p-1}
    int start = 0;
    for (int p = 0; p < m; ++p) {
        const int len = d.blockSizes[p];
        // columns of blocks 1..p
        RationalMatrix lead(n, std::vector<Rational>(start + len));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < start + len; ++j) lead[i][j] = g0[i][j];
        // extended form on W_{p-1}: compress G_p C_p G_p^T by the projector
        RationalMatrix gp(n, std::vector<Rational>(len));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < len; ++j) gp[i][j] = g0[i][start + j] * f.scales[start + j];
        RationalMatrix gpRaw(n, std::vector<Rational>(len));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < len; ++j) gpRaw[i][j] = g0[i][start + j];
        RationalMatrix form = rat_mul(gp, rat_transpose(gpRaw)); // G_p C_p G_p^T
        form = rat_mul(rat_mul(prevComplement, form), prevComplement);
        d.extendedForms.push_back(std::move(form));

        if (p + 1 < m) {
            // projector onto span(blocks 1..p+1)^perp
            RationalMatrix bt = rat_transpose(lead);
            RationalMatrix gram = rat_mul(bt, lead);
            RationalMatrix proj = rat_mul(rat_mul(lead, rat_inverse(gram)), bt);
            RationalMatrix comp = rat_identity(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) comp[i][j] -= proj[i][j];
            d.flagProjectors.push_back(comp);
            prevComplement = std::move(comp);
        }
        start += len;
    }
    return d;
}

namespace {

Rational rational_power(const Rational& r, long e) {
    Rational acc(1);
    const Rational base = e >= 0 ? r : Rational(1) / r;
    for (long k = 0; k < std::abs(e); ++k) acc *= base;
    return acc;
}

} // namespace

bool exact_null_data_equal(const ExactNullData& a, const ExactNullData& b) {
    if (a.blockSizes != b.blockSizes || a.values != b.values) return false;
    if (a.flagProjectors != b.flagProjectors) return false;
    const int m = static_cast<int>(a.extendedForms.size());
    // forms must match modulo (sigma_p) = (e^{k_p s}): positively proportional
    // per block with exponent-consistent ratios
    std::vector<Rational> sigma(m);
    for (int p = 0; p < m; ++p) {
        const RationalMatrix& fa = a.extendedForms[p];
        const RationalMatrix& fb = b.extendedForms[p];
        Rational ratio(0);
        for (size_t i = 0; i < fa.size() && ratio == 0; ++i)
            for (size_t j = 0; j < fa.size() && ratio == 0; ++j)
                if (fa[i][j] != 0) {
                    if (fb[i][j] == 0) return false;
                    ratio = fb[i][j] / fa[i][j];
                }
        if (ratio == 0) {
            // zero form on both sides (cannot happen for nondegenerate data)
            ratio = 1;
        }
        if (!(ratio > 0)) return false;
        for (size_t i = 0; i < fa.size(); ++i)
            for (size_t j = 0; j < fa.size(); ++j)
                if (fb[i][j] != fa[i][j] * ratio) return false;
        sigma[p] = ratio;
    }
    for (int p = 0; p < m; ++p) {
        if (a.values[p] == 0 && sigma[p] != 1) return false;
        for (int q = p + 1; q < m; ++q)
            if (rational_power(sigma[p], a.values[q]) != rational_power(sigma[q], a.values[p]))
                return false;
    }
    return true;
}

NullPencilData urchin_limit(const MeromorphicCurve& x) {
    CurveFactorization f = factor_curve(x);
    const int n = x.n;
    Geodesic gamma;
    gamma.frame = Matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const LaurentSeries& s = f.g[i][j];
            const double g0 = (s.is_exact_zero() || s.start() > 0)
                                  ? 0.0
                                  : static_cast<double>(s.coeff(0));
            gamma.frame(i, j) = g0 * std::sqrt(static_cast<double>(f.scales[j]));
        }
    Velocity vel;
    vel.model = Model::E;
    for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(f.exponents[i]);
        if (vel.values.empty() || vel.values.back() != v) {
            vel.values.push_back(v);
            vel.blockSizes.push_back(1);
        } else {
            ++vel.blockSizes.back();
        }
    }
    gamma.velocity = vel;
    return null_pencil_data(gamma);
}

ExactNullData urchin_limit_exact(const MeromorphicCurve& x, std::uint64_t pivotSeed) {
    return exact_null_data(factor_curve(x, pivotSeed));
}

MeromorphicCurve reparametrize(const MeromorphicCurve& x, const LaurentSeries& u) {
    if (u.is_exact_zero() || u.valuation() != 0 || !(u.leading_coeff() > 0))
        throw NotPositive("reparametrization needs u(0) > 0");
    LaurentSeries inner = u.shifted(1); // w * u(w)
    SeriesMatrix out(x.n, std::vector<LaurentSeries>(x.n, LaurentSeries::zero()));
    for (int i = 0; i < x.n; ++i)
        for (int j = i; j < x.n; ++j) {
            out[i][j] = compose(x.entries[i][j], inner, x.truncation);
            out[j][i] = out[i][j];
        }
    return MeromorphicCurve::make(std::move(out), x.truncation);
}

bool refactor_invariance_check(const MeromorphicCurve& x, std::uint64_t seed) {
    ExactNullData base = urchin_limit_exact(x, 0);
    ExactNullData alt = urchin_limit_exact(x, seed == 0 ? 1 : seed);
    return exact_null_data_equal(base, alt);
}

} // namespace spdgeo
