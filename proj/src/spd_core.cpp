#include "spdgeo/spd_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spdgeo/errors.hpp"

namespace spdgeo {

SPDMatrix SPDMatrix::make(Matrix entries, Model model, double symTol) {
    const int n = entries.rows();
    if (n == 0 || n != entries.cols()) throw DimensionMismatch("SPD matrix must be square");
    if (!entries.symmetric_within(symTol)) throw NotSymmetric("matrix is not symmetric");
    // exact symmetrization so downstream factorizations see clean input
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (entries(i, j) + entries(j, i));
            entries(i, j) = entries(j, i) = s;
        }
    Matrix l = cholesky(entries); // throws NotPositiveDefinite when a pivot fails
    if (model == Model::PE) {
        // det normalization via the factor diagonal; avoids overflow for
        // points far along a geodesic
        double logDet = 0.0;
        for (int i = 0; i < n; ++i) logDet += 2.0 * std::log(l(i, i));
        entries = entries * std::exp(-logDet / n);
    }
    return SPDMatrix(n, std::move(entries), model);
}

bool SPDMatrix::equals(const SPDMatrix& other, double tol) const {
    if (n_ != other.n_ || model_ != other.model_) return false;
    return (entries_ - other.entries_).max_abs() <= tol * std::max(1.0, entries_.max_abs());
}

SPDMatrix SPDMatrix::trusted(Matrix entries, Model model) {
    const int n = entries.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double s = 0.5 * (entries(i, j) + entries(j, i));
            entries(i, j) = entries(j, i) = s;
        }
    return SPDMatrix(n, std::move(entries), model);
}

SPDMatrix make_spd(const Matrix& entries, Model model, double symTol) {
    return SPDMatrix::make(entries, model, symTol);
}

int Velocity::n() const {
    int s = 0;
    for (int b : blockSizes) s += b;
    return s;
}

std::vector<double> Velocity::expanded() const {
    std::vector<double> v;
    v.reserve(n());
    for (size_t k = 0; k < blockSizes.size(); ++k)
        v.insert(v.end(), blockSizes[k], values[k]);
    return v;
}

std::vector<int> Velocity::interior_codims() const {
    std::vector<int> out;
    int s = 0;
    for (size_t k = 0; k + 1 < blockSizes.size(); ++k) {
        s += blockSizes[k];
        out.push_back(s);
    }
    return out;
}

Velocity Velocity::canonical() const {
    Velocity v = *this;
    const int dim = n();
    double mean = 0.0;
    for (size_t k = 0; k < v.values.size(); ++k) mean += v.values[k] * blockSizes[k];
    mean /= dim;
    if (model == Model::PE)
        for (double& x : v.values) x -= mean;
    double norm = 0.0;
    for (size_t k = 0; k < v.values.size(); ++k) norm += v.values[k] * v.values[k] * blockSizes[k];
    norm = std::sqrt(norm);
    if (norm > 1e-300)
        for (double& x : v.values) x /= norm;
    return v;
}

bool Velocity::equals_canonical(const Velocity& other, double tol) const {
    if (model != other.model || blockSizes != other.blockSizes) return false;
    Velocity a = canonical(), b = other.canonical();
    for (size_t k = 0; k < a.values.size(); ++k)
        if (std::abs(a.values[k] - b.values[k]) > tol) return false;
    return true;
}

Velocity group_velocity(const std::vector<double>& sorted, Model model, double groupTol) {
    Velocity v;
    v.model = model;
    for (double x : sorted) {
        if (!v.values.empty() && std::abs(v.values.back() - x) <= groupTol) {
            ++v.blockSizes.back();
            continue;
        }
        if (!v.values.empty() && x > v.values.back())
            throw NotSorted("velocity values must be non-increasing");
        v.values.push_back(x);
        v.blockSizes.push_back(1);
    }
    return v;
}

ComplexDistance complex_distance(const SPDMatrix& x, const SPDMatrix& y) {
    if (x.n() != y.n() || x.model() != y.model())
        throw DimensionMismatch("complex distance needs matching dimension and model");
    EigenResult e = generalized_eigen(x.entries(), y.entries());
    ComplexDistance d;
    d.model = x.model();
    d.psis.reserve(x.n());
    for (double lam : e.values) d.psis.push_back(std::log(lam));
    std::sort(d.psis.begin(), d.psis.end(), std::greater<double>());
    if (d.model == Model::PE) {
        const double mean =
            std::accumulate(d.psis.begin(), d.psis.end(), 0.0) / d.psis.size();
        for (double& p : d.psis) p -= mean;
    }
    return d;
}

double riemannian_distance(const SPDMatrix& x, const SPDMatrix& y) {
    ComplexDistance d = complex_distance(x, y);
    double s = 0.0;
    for (double p : d.psis) s += p * p;
    return std::sqrt(s);
}

bool triangle_membership(const ComplexDistance& theta, const ComplexDistance& psi,
                         const ComplexDistance& phi, double tol) {
    const size_t n = theta.psis.size();
    if (psi.psis.size() != n || phi.psis.size() != n)
        throw DimensionMismatch("complex distances must share length");
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = theta.psis[i] - psi.psis[i];
    std::vector<double> f = phi.psis;
    std::sort(d.begin(), d.end(), std::greater<double>());
    std::sort(f.begin(), f.end(), std::greater<double>());
    double sd = 0.0, sf = 0.0;
    for (size_t k = 0; k < n; ++k) {
        sd += d[k];
        sf += f[k];
        if (k + 1 < n && sd > sf + tol) return false;
    }
    return std::abs(sd - sf) <= tol;
}

Geodesic geodesic_through(const SPDMatrix& x, const SPDMatrix& y) {
    if (x.n() != y.n() || x.model() != y.model())
        throw DimensionMismatch("geodesic endpoints need matching dimension and model");
    if (x.equals(y)) throw CoincidentPoints("no directed geodesic through one point");
    // gamma(t) = g diag(e^{phi t}) g^T with g g^T = X and gamma(1) = Y.
    Matrix l = cholesky(x.entries());
    Matrix m = solve_lower_matrix(l, y.entries());
    m = solve_lower_matrix(l, m.transposed()).transposed();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double s = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = m(j, i) = s;
        }
    EigenResult e = jacobi_eigen(m); // descending
    std::vector<double> phi(e.values.size());
    for (size_t i = 0; i < phi.size(); ++i) phi[i] = std::log(e.values[i]);
    Geodesic g;
    g.frame = l * e.vectors;
    g.velocity = group_velocity(phi, x.model());
    if (g.velocity.blockSizes.size() == 1 && std::abs(g.velocity.values[0]) < 1e-12)
        throw CoincidentPoints("endpoints coincide up to tolerance");
    return g;
}

SPDMatrix geodesic_eval(const Geodesic& gamma, double t) {
    const std::vector<double> phi = gamma.velocity.expanded();
    const int n = gamma.n();
    std::vector<double> exps(n);
    for (int i = 0; i < n; ++i) exps[i] = phi[i] * t;
    if (gamma.model() == Model::PE) {
        // shift exponents so the determinant is one without forming it
        double shift = 2.0 * log_abs_det(gamma.frame);
        for (double e : exps) shift += e;
        shift /= n;
        for (double& e : exps) e -= shift;
    }
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = std::exp(exps[i]);
    Matrix m = gamma.frame * Matrix::diagonal(d) * gamma.frame.transposed();
    return SPDMatrix::trusted(std::move(m), gamma.model());
}

bool cartan_contains(const CartanFrame& frame, const SPDMatrix& x, double tol) {
    if (frame.frame.rows() != x.n())
        throw DimensionMismatch("Cartan frame and point dimensions differ");
    Matrix gInv = inverse(frame.frame);
    Matrix d = gInv * x.entries() * gInv.transposed();
    const double scale = std::max(1.0, d.max_abs());
    for (int i = 0; i < d.rows(); ++i) {
        if (d(i, i) <= 0.0) return false;
        for (int j = 0; j < d.cols(); ++j)
            if (i != j && std::abs(d(i, j)) > tol * scale) return false;
    }
    return true;
}

} // namespace spdgeo
