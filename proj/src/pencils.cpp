#include "spdgeo/pencils.hpp"

#include <algorithm>
#include <cmath>

#include "spdgeo/errors.hpp"

namespace spdgeo {

namespace {

void require_comparable(const Geodesic& a, const Geodesic& b) {
    if (a.n() != b.n()) throw DimensionMismatch("geodesics have different dimensions");
    if (a.model() != b.model()) throw DimensionMismatch("geodesics have different models");
}

// Upper-triangular factor U with X = U U^T and positive diagonal.
Matrix upper_cholesky(const Matrix& x) {
    const int n = x.rows();
    Matrix flipped(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flipped(i, j) = x(n - 1 - i, n - 1 - j);
    Matrix l = cholesky(flipped);
    Matrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u(i, j) = l(n - 1 - i, n - 1 - j);
    return u;
}

bool forms_equal_through_bases(const Flag& fa, const std::vector<SubquotientForm>& a,
                               const Flag& fb, const std::vector<SubquotientForm>& b,
                               double tol) {
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].dim != b[k].dim) return false;
        Matrix q = fa.subquotient_basis(static_cast<int>(k) + 1).transposed() *
                   fb.subquotient_basis(static_cast<int>(k) + 1);
        Matrix bInA = q * b[k].matrix * q.transposed();
        const double scale = std::max(1.0, a[k].matrix.max_abs());
        if ((a[k].matrix - bInA).max_abs() > tol * scale) return false;
    }
    return true;
}

} // namespace

FinitePencilData finite_pencil_data(const Geodesic& gamma) {
    FinitePencilData d;
    d.velocity = gamma.velocity.canonical();
    const std::vector<int> codims = gamma.velocity.interior_codims();
    d.limitFlag = codims.empty() ? Flag::trivial(gamma.n())
                                 : Flag::from_frame_blocks(gamma.frame, codims);
    return d;
}

SolvablePencilData solvable_pencil_data(const Geodesic& gamma) {
    SolvablePencilData d;
    d.velocity = gamma.velocity.canonical();
    d.satake = geodesic_satake_limit(gamma);
    return d;
}

NullPencilData null_pencil_data(const Geodesic& gamma, double originShift) {
    if (gamma.model() != Model::E)
        throw ModelMismatch("null pencil data is defined for the E model");
    const Velocity& vel = gamma.velocity;
    const int n = gamma.n();

    Matrix frame = gamma.frame;
    if (originShift != 0.0) {
        std::vector<double> d(n);
        const std::vector<double> phi = vel.expanded();
        for (int i = 0; i < n; ++i) d[i] = std::exp(0.5 * phi[i] * originShift);
        frame = frame * Matrix::diagonal(d);
    }

    QRResult qr = qr_positive(frame);
    NullPencilData out;
    out.velocity = vel.canonical();
    const std::vector<int> codims = vel.interior_codims();
    out.flag = Flag(n, codims, qr.q);

    std::vector<Matrix> forms;
    int start = 0;
    for (size_t k = 0; k < vel.blockSizes.size(); ++k) {
        const int len = vel.blockSizes[k];
        Matrix rkk = qr.r.block(start, start, len, len);
        forms.push_back(rkk * rkk.transposed());
        start += len;
    }

    // canonical slice of the origin-shift action: pick the first block with a
    // nonzero exponent and scale its form to determinant 1
    int k0 = -1;
    for (size_t k = 0; k < vel.values.size(); ++k)
        if (std::abs(vel.values[k]) > 1e-12) {
            k0 = static_cast<int>(k);
            break;
        }
    if (k0 >= 0) {
        Matrix l = cholesky(forms[k0]);
        double logDet = 0.0;
        for (int i = 0; i < l.rows(); ++i) logDet += 2.0 * std::log(l(i, i));
        const double s = -logDet / (vel.values[k0] * vel.blockSizes[k0]);
        for (size_t k = 0; k < forms.size(); ++k)
            forms[k] = forms[k] * std::exp(vel.values[k] * s);
    }
    for (Matrix& f : forms) out.forms.push_back(SubquotientForm::literal(std::move(f)));
    return out;
}

bool same_finite_pencil(const Geodesic& a, const Geodesic& b, double tol) {
    require_comparable(a, b);
    FinitePencilData da = finite_pencil_data(a), db = finite_pencil_data(b);
    if (!da.velocity.equals_canonical(db.velocity, tol)) return false;
    return da.limitFlag.equals(db.limitFlag, tol);
}

bool same_solvable_pencil(const Geodesic& a, const Geodesic& b, double tol) {
    require_comparable(a, b);
    SolvablePencilData da = solvable_pencil_data(a), db = solvable_pencil_data(b);
    if (!da.velocity.equals_canonical(db.velocity, tol)) return false;
    return satake_point_equal(da.satake, db.satake, tol);
}

bool null_data_equal(const NullPencilData& a, const NullPencilData& b, double tol) {
    if (a.velocity.blockSizes != b.velocity.blockSizes) return false;
    if (!a.velocity.equals_canonical(b.velocity, tol)) return false;
    if (!a.flag.equals(b.flag, tol)) return false;
    return forms_equal_through_bases(a.flag, a.forms, b.flag, b.forms, tol);
}

bool same_null_pencil(const Geodesic& a, const Geodesic& b, double tol) {
    require_comparable(a, b);
    return null_data_equal(null_pencil_data(a), null_pencil_data(b), tol);
}

std::vector<SPDMatrix> finite_pencil_project(const Geodesic& gamma, const Geodesic& mu) {
    if (!same_finite_pencil(gamma, mu)) throw NotInPencil("geodesics lie in distinct finite pencils");
    Matrix gInv = inverse(gamma.frame);
    Matrix f = gInv * mu.frame;
    // with F = h S (h block triangular, S block orthogonal), the QR of F^{-1}
    // recovers h as the inverse of the triangular factor
    QRResult qr = qr_positive(inverse(f));
    Matrix h = inverse(qr.r);
    std::vector<SPDMatrix> out;
    int start = 0;
    for (int len : gamma.velocity.blockSizes) {
        Matrix hkk = h.block(start, start, len, len);
        out.push_back(SPDMatrix::make(hkk * hkk.transposed(), Model::E));
        start += len;
    }
    return out;
}

double distance_at_infinity(const Geodesic& nu1, const Geodesic& nu2) {
    std::vector<SPDMatrix> proj = finite_pencil_project(nu1, nu2);
    double sum = 0.0;
    for (const SPDMatrix& b : proj) {
        EigenResult e = jacobi_eigen(b.entries());
        for (double lam : e.values) {
            const double psi = std::log(lam);
            sum += psi * psi;
        }
    }
    return std::sqrt(sum);
}

Geodesic pencil_through_point(const Geodesic& gamma, const SPDMatrix& x) {
    if (gamma.n() != x.n()) throw DimensionMismatch("pencil and point dimensions differ");
    Matrix gInv = inverse(gamma.frame);
    Matrix conj = gInv * x.entries() * gInv.transposed();
    Matrix u = upper_cholesky(conj);
    Geodesic mu;
    mu.frame = gamma.frame * u;
    mu.velocity = gamma.velocity;
    return mu;
}

bool sphere_cell_closure_contains(const Flag& w, const Flag& sub, double tol) {
    return w.contains_subflag(sub, tol);
}

} // namespace spdgeo
