#include "spdgeo/satake.hpp"

#include <algorithm>
#include <cmath>

#include "spdgeo/errors.hpp"

namespace spdgeo {

Flag::Flag(int n, std::vector<int> codims, Matrix basis)
    : n_(n), codims_(std::move(codims)), basis_(std::move(basis)) {
    if (basis_.rows() != n_ || basis_.cols() != n_)
        throw DimensionMismatch("flag basis must be n x n");
    int prev = 0;
    for (int c : codims_) {
        if (c <= prev || c >= n_) throw BadCodims("flag codims must be strictly increasing in 1..n-1");
        prev = c;
    }
    Matrix gram = basis_.transposed() * basis_;
    if ((gram - Matrix::identity(n_)).max_abs() > 1e-8)
        throw NotSymmetric("flag basis is not orthonormal");
}

Flag Flag::trivial(int n) { return Flag(n, {}, Matrix::identity(n)); }

Flag Flag::from_frame_blocks(const Matrix& frame, const std::vector<int>& codims) {
    QRResult qr = qr_positive(frame);
    return Flag(frame.rows(), codims, qr.q);
}

Matrix Flag::projector(int k) const {
    if (k == 0) return Matrix::identity(n_);
    const int start = codims_[k - 1];
    Matrix p(n_, n_);
    for (int c = start; c < n_; ++c)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) p(i, j) += basis_(i, c) * basis_(j, c);
    return p;
}

Matrix Flag::subquotient_basis(int k) const {
    const int lo = k == 1 ? 0 : codims_[k - 2];
    const int hi = k == depth() + 1 ? n_ : codims_[k - 1];
    return basis_.block(0, lo, n_, hi - lo);
}

bool Flag::equals(const Flag& other, double tol) const {
    if (n_ != other.n_ || codims_ != other.codims_) return false;
    for (int k = 1; k <= depth(); ++k)
        if ((projector(k) - other.projector(k)).max_abs() > tol) return false;
    return true;
}

bool Flag::contains_subflag(const Flag& sub, double tol) const {
    if (n_ != sub.n_) throw DimensionMismatch("flags must share ambient dimension");
    for (int k = 1; k <= sub.depth(); ++k) {
        const Matrix p = sub.projector(k);
        bool found = false;
        for (int l = 1; l <= depth() && !found; ++l)
            found = (projector(l) - p).max_abs() <= tol;
        if (!found) return false;
    }
    return true;
}

namespace {

double top_eigenvalue(const Matrix& m) {
    EigenResult e = jacobi_eigen(m);
    return e.values.front();
}

Matrix normalized_top_eig(const Matrix& m) {
    const double top = top_eigenvalue(m);
    if (!(top > 0.0)) throw NotPositiveDefinite("form has no positive direction");
    return m * (1.0 / top);
}

// Orthonormal basis whose trailing j columns span the same space as the
// trailing j input columns, for every block boundary (reverse Gram-Schmidt).
Matrix orthonormalize_keep_trailing_spans(const Matrix& cols) {
    const int n = cols.rows(), m = cols.cols();
    Matrix rev(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) rev(i, j) = cols(i, m - 1 - j);
    QRResult qr = qr_positive(rev);
    Matrix out(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) out(i, j) = qr.q(i, m - 1 - j);
    return out;
}

} // namespace

SubquotientForm SubquotientForm::up_to_scale(Matrix m) {
    SubquotientForm f;
    f.dim = m.rows();
    f.matrix = normalized_top_eig(m);
    f.scaleMode = ScaleMode::UpToScale;
    return f;
}

SubquotientForm SubquotientForm::literal(Matrix m) {
    SubquotientForm f;
    f.dim = m.rows();
    f.matrix = std::move(m);
    f.scaleMode = ScaleMode::Literal;
    return f;
}

SatakePoint geodesic_satake_limit(const Geodesic& gamma) {
    const int n = gamma.n();
    const Velocity& vel = gamma.velocity;
    if (vel.blockSizes.size() <= 1) {
        SatakePoint p;
        p.flag = Flag::trivial(n);
        p.forms.push_back(SubquotientForm::up_to_scale(gamma.frame * gamma.frame.transposed()));
        return p;
    }
    const std::vector<int> codims = vel.interior_codims();
    Flag flag = Flag::from_frame_blocks(gamma.frame, codims);
    SatakePoint p;
    p.flag = flag;
    int start = 0;
    for (size_t k = 0; k < vel.blockSizes.size(); ++k) {
        const int len = vel.blockSizes[k];
        Matrix gk = gamma.frame.block(0, start, n, len);
        Matrix bk = flag.subquotient_basis(static_cast<int>(k) + 1);
        Matrix bg = bk.transposed() * gk;
        p.forms.push_back(SubquotientForm::up_to_scale(bg * bg.transposed()));
        start += len;
    }
    return p;
}

namespace {

void inductive_rec(const std::vector<Matrix>& samples, double tol,
                   std::vector<int>& codimsOut, std::vector<Matrix>& basisColsOut,
                   std::vector<Matrix>& formsOut, int ambientOffset,
                   const Matrix& embed) {
    const int dim = samples.front().rows();
    std::vector<Matrix> norm;
    norm.reserve(samples.size());
    for (const Matrix& s : samples) norm.push_back(normalized_top_eig(s));
    const size_t m = norm.size();
    if ((norm[m - 1] - norm[m - 2]).max_abs() > tol ||
        (norm[m - 2] - norm[m - 3]).max_abs() > tol ||
        (norm[m - 1] - norm[m - 3]).max_abs() > tol)
        throw NotStabilized("tail samples do not stabilize within tolerance");

    const Matrix& limit = norm.back();
    EigenResult e = jacobi_eigen(limit);
    int kernelDim = 0;
    for (double v : e.values)
        if (v < tol) ++kernelDim;
    const int rangeDim = dim - kernelDim;

    Matrix range = e.vectors.block(0, 0, dim, rangeDim);
    Matrix rangeEmbedded = embed * range;
    Matrix quotForm = range.transposed() * limit * range;
    basisColsOut.push_back(rangeEmbedded);
    formsOut.push_back(quotForm);

    if (kernelDim == 0) return;

    codimsOut.push_back(ambientOffset + rangeDim);
    Matrix kernel = e.vectors.block(0, rangeDim, dim, kernelDim);
    std::vector<Matrix> restricted;
    restricted.reserve(samples.size());
    for (const Matrix& s : samples)
        restricted.push_back(kernel.transposed() * s * kernel);
    inductive_rec(restricted, tol, codimsOut, basisColsOut, formsOut,
                  ambientOffset + rangeDim, embed * kernel);
}

SatakePoint assemble_point(int n, const std::vector<int>& codims,
                           const std::vector<Matrix>& basisCols,
                           const std::vector<Matrix>& forms) {
    Matrix basis(n, n);
    int col = 0;
    for (const Matrix& b : basisCols)
        for (int j = 0; j < b.cols(); ++j, ++col)
            for (int i = 0; i < n; ++i) basis(i, col) = b(i, j);
    SatakePoint p;
    p.flag = Flag(n, codims, basis);
    for (const Matrix& f : forms) p.forms.push_back(SubquotientForm::up_to_scale(f));
    return p;
}

} // namespace

SatakePoint sequence_limit_inductive(const std::vector<SPDMatrix>& samples, double tol) {
    if (samples.size() < 3) throw NotStabilized("need at least three samples");
    const int n = samples.front().n();
    std::vector<Matrix> mats;
    mats.reserve(samples.size());
    for (const SPDMatrix& s : samples) {
        if (s.n() != n) throw DimensionMismatch("samples must share dimension");
        mats.push_back(s.entries());
    }
    std::vector<int> codims;
    std::vector<Matrix> basisCols, forms;
    inductive_rec(mats, tol, codims, basisCols, forms, 0, Matrix::identity(n));
    return assemble_point(n, codims, basisCols, forms);
}

SatakePoint sequence_limit_packets(const std::vector<SPDMatrix>& samples, double tol,
                                   double logGap) {
    if (samples.size() < 3) throw NotStabilized("need at least three samples");
    const int n = samples.front().n();
    const size_t last = samples.size() - 1;

    std::vector<EigenResult> eig(3);
    for (int k = 0; k < 3; ++k) eig[k] = jacobi_eigen(samples[last - 2 + k].entries());
    // sorted log-eigenvalue gaps of the tail samples
    auto gaps = [&](const EigenResult& e) {
        std::vector<double> g(n - 1);
        for (int i = 0; i + 1 < n; ++i) g[i] = std::log(e.values[i]) - std::log(e.values[i + 1]);
        return g;
    };
    const std::vector<double> g0 = gaps(eig[0]), g1 = gaps(eig[1]), g2 = gaps(eig[2]);

    // adjacent eigenvalues fall in one packet when the final gap is small and
    // the gap trend over the last three samples is non-increasing; the slack
    // absorbs roundoff-level oscillation of already-converged gaps
    std::vector<int> packetSizes;
    packetSizes.push_back(1);
    const double slack = 1e-6;
    for (int i = 0; i + 1 < n; ++i) {
        const bool small = g2[i] < logGap;
        const bool nonIncreasing =
            g1[i] <= g0[i] * (1.0 + slack) + slack && g2[i] <= g1[i] * (1.0 + slack) + slack;
        if (small && nonIncreasing)
            ++packetSizes.back();
        else
            packetSizes.push_back(1);
    }

    const int numPackets = static_cast<int>(packetSizes.size());
    std::vector<int> codims;
    {
        int s = 0;
        for (int k = 0; k + 1 < numPackets; ++k) {
            s += packetSizes[k];
            codims.push_back(s);
        }
    }

    // limit flag surrogate: packet spans of the final sample
    const Matrix& bFinal = eig[2].vectors;

    // per-sample alignment h_j: orthogonal polar factor of sum_q P_q^ P_q^{(j)}
    std::vector<Matrix> aligned(3);
    for (int k = 0; k < 3; ++k) {
        Matrix m(n, n);
        int start = 0;
        for (int q = 0; q < numPackets; ++q) {
            const int len = packetSizes[q];
            Matrix pHat(n, n), pJ(n, n);
            for (int c = start; c < start + len; ++c)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        pHat(i, j) += bFinal(i, c) * bFinal(j, c);
                        pJ(i, j) += eig[k].vectors(i, c) * eig[k].vectors(j, c);
                    }
            m = m + pHat * pJ;
            start += len;
        }
        Matrix h = polar_orthogonal(m);
        const Matrix& x = samples[last - 2 + k].entries();
        Matrix t = h * (x * (1.0 / eig[k].values.front())) * h.transposed();
        aligned[k] = bFinal.transposed() * t * bFinal;
    }

    // restricted forms per packet, normalized to top eigenvalue 1
    std::vector<Matrix> forms(numPackets);
    {
        int start = 0;
        for (int q = 0; q < numPackets; ++q) {
            const int len = packetSizes[q];
            std::vector<Matrix> blocks(3);
            for (int k = 0; k < 3; ++k)
                blocks[k] = normalized_top_eig(aligned[k].block(start, start, len, len));
            if ((blocks[2] - blocks[1]).max_abs() > tol || (blocks[1] - blocks[0]).max_abs() > tol)
                throw NotStabilized("restricted forms do not stabilize within tolerance");
            forms[q] = blocks[2];
            start += len;
        }
    }

    SatakePoint p;
    p.flag = Flag(n, codims, bFinal);
    for (const Matrix& f : forms) p.forms.push_back(SubquotientForm::up_to_scale(f));
    return p;
}

int satake_stratum_dim(int n, const std::vector<int>& codims) {
    int prev = 0;
    for (int c : codims) {
        if (c <= prev || c >= n) throw BadCodims("codims must be strictly increasing in 1..n-1");
        prev = c;
    }
    return n * n - 1 - static_cast<int>(codims.size());
}

bool satake_closure_contains(const std::vector<int>& i, const std::vector<int>& j) {
    return std::includes(j.begin(), j.end(), i.begin(), i.end());
}

bool satake_point_equal(const SatakePoint& a, const SatakePoint& b, double tol) {
    if (a.n() != b.n()) return false;
    if (!a.flag.equals(b.flag, tol)) return false;
    if (a.forms.size() != b.forms.size()) return false;
    for (size_t k = 0; k < a.forms.size(); ++k) {
        const SubquotientForm& fa = a.forms[k];
        const SubquotientForm& fb = b.forms[k];
        if (fa.dim != fb.dim || fa.scaleMode != fb.scaleMode) return false;
        // express b's form in a's subquotient basis
        Matrix q = a.flag.subquotient_basis(static_cast<int>(k) + 1).transposed() *
                   b.flag.subquotient_basis(static_cast<int>(k) + 1);
        Matrix fbInA = q * fb.matrix * q.transposed();
        if (fa.scaleMode == ScaleMode::UpToScale) fbInA = normalized_top_eig(fbInA);
        const double scale = std::max(1.0, fa.matrix.max_abs());
        if ((fa.matrix - fbInA).max_abs() > tol * scale) return false;
    }
    return true;
}

SatakePoint transform_satake_point(const Matrix& g, const SatakePoint& p) {
    const int n = p.n();
    Matrix gInvT = inverse(g).transposed();

    // new flag subspaces are g^{-T} W_k; rebuild an orthonormal basis whose
    // trailing column blocks keep spanning the transported W_k
    Matrix stacked = gInvT * p.flag.basis();
    Flag flag(n, p.flag.codims(), orthonormalize_keep_trailing_spans(stacked));

    SatakePoint out;
    out.flag = flag;
    for (int k = 1; k <= p.flag.depth() + 1; ++k) {
        // old form extended to an ambient PSD with kernel W_k, evaluated on
        // representatives pulled back through g^T
        Matrix bOld = p.flag.subquotient_basis(k);
        Matrix ambient = bOld * p.forms[k - 1].matrix * bOld.transposed();
        Matrix bNew = flag.subquotient_basis(k);
        Matrix rep = g.transposed() * bNew;
        Matrix m = rep.transposed() * ambient * rep;
        if (p.forms[k - 1].scaleMode == ScaleMode::UpToScale)
            out.forms.push_back(SubquotientForm::up_to_scale(m));
        else
            out.forms.push_back(SubquotientForm::literal(m));
    }
    return out;
}

} // namespace spdgeo
