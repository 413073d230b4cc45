#include "spdgeo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spdgeo/errors.hpp"

namespace spdgeo {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw DimensionMismatch("ragged initializer for Matrix");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < rhs.cols_; ++j) c(i, j) += aik * rhs(k, j);
        }
    return c;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum shape mismatch");
    Matrix c = *this;
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] += rhs.a_[i];
    return c;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference shape mismatch");
    Matrix c = *this;
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] -= rhs.a_[i];
    return c;
}

Matrix Matrix::operator*(double s) const {
    Matrix c = *this;
    for (double& x : c.a_) x *= s;
    return c;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

std::vector<double> Matrix::column(int j) const {
    std::vector<double> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(int j, const std::vector<double>& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

bool Matrix::symmetric_within(double relTol) const {
    if (rows_ != cols_) return false;
    const double scale = std::max(1.0, max_abs());
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > relTol * scale) return false;
    return true;
}

EigenResult jacobi_eigen(Matrix a) {
    const int n = a.rows();
    if (n != a.cols()) throw DimensionMismatch("jacobi_eigen needs a square matrix");
    Matrix v = Matrix::identity(n);
    const double norm = std::max(a.frobenius_norm(), 1e-300);
    const double thresh = 1e-12 * norm;

    auto off = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off() >= thresh; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) > a(j, j); });

    EigenResult res;
    res.values.resize(n);
    res.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        res.values[j] = a(src, src);
        int arg = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v(i, src)) > std::abs(v(arg, src))) arg = i;
        const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) res.vectors(i, j) = sign * v(i, src);
    }
    return res;
}

Matrix cholesky(const Matrix& a, double pivotTol) {
    const int n = a.rows();
    if (n != a.cols()) throw DimensionMismatch("cholesky needs a square matrix");
    if (pivotTol < 0.0) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += a(i, i);
        pivotTol = 1e-12 * std::max(tr / std::max(n, 1), 1e-300);
    }
    Matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > pivotTol)) throw NotPositiveDefinite("non-positive pivot in triangular factorization");
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

QRResult qr_positive(const Matrix& a) {
    const int n = a.rows(), m = a.cols();
    // Modified Gram-Schmidt with a second orthogonalization pass.
    Matrix q(n, m), r(m, m);
    for (int j = 0; j < m; ++j) {
        std::vector<double> v = a.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += q(i, k) * v[i];
                r(k, j) += dot;
                for (int i = 0; i < n; ++i) v[i] -= dot * q(i, k);
            }
        }
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        if (nv < 1e-300) throw NotPositiveDefinite("rank-deficient matrix in QR");
        r(j, j) = nv;
        for (int i = 0; i < n; ++i) q(i, j) = v[i] / nv;
    }
    return {q, r};
}

namespace {

// PLU decomposition with partial pivoting; returns false if singular.
struct Lu {
    Matrix lu;
    std::vector<int> perm;
    int sign = 1;
    bool ok = false;
};

Lu lu_decompose(Matrix a) {
    const int n = a.rows();
    Lu res;
    res.perm.resize(n);
    std::iota(res.perm.begin(), res.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-300) return res;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(res.perm[k], res.perm[piv]);
            res.sign = -res.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            for (int j = k + 1; j < n; ++j) a(i, j) -= a(i, k) * a(k, j);
        }
    }
    res.lu = std::move(a);
    res.ok = true;
    return res;
}

} // namespace

Matrix inverse(const Matrix& a) {
    const int n = a.rows();
    if (n != a.cols()) throw DimensionMismatch("inverse needs a square matrix");
    Lu f = lu_decompose(a);
    if (!f.ok) throw NotPositiveDefinite("singular matrix has no inverse");
    Matrix inv(n, n);
    std::vector<double> x(n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) x[i] = (f.perm[i] == col) ? 1.0 : 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
        for (int i = n - 1; i >= 0; --i) {
            for (int k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
            x[i] /= f.lu(i, i);
        }
        inv.set_column(col, x);
    }
    return inv;
}

double determinant(const Matrix& a) {
    Lu f = lu_decompose(a);
    if (!f.ok) return 0.0;
    double d = f.sign;
    for (int i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

double log_abs_det(const Matrix& a) {
    Lu f = lu_decompose(a);
    if (!f.ok) throw NotPositiveDefinite("log-determinant of a singular matrix");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::log(std::abs(f.lu(i, i)));
    return s;
}

std::vector<double> solve_lower(const Matrix& l, const std::vector<double>& b) {
    const int n = l.rows();
    std::vector<double> x(b);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
        x[i] /= l(i, i);
    }
    return x;
}

Matrix solve_lower_matrix(const Matrix& l, const Matrix& b) {
    Matrix x = b;
    const int n = l.rows();
    for (int col = 0; col < b.cols(); ++col)
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < i; ++k) x(i, col) -= l(i, k) * x(k, col);
            x(i, col) /= l(i, i);
        }
    return x;
}

Matrix solve_lower_transposed_matrix(const Matrix& l, const Matrix& b) {
    Matrix x = b;
    const int n = l.rows();
    for (int col = 0; col < b.cols(); ++col)
        for (int i = n - 1; i >= 0; --i) {
            for (int k = i + 1; k < n; ++k) x(i, col) -= l(k, i) * x(k, col);
            x(i, col) /= l(i, i);
        }
    return x;
}

Matrix polar_orthogonal(const Matrix& m) {
    EigenResult e = jacobi_eigen(m.transposed() * m);
    Matrix invSqrt(m.cols(), m.cols());
    for (int k = 0; k < m.cols(); ++k) {
        if (!(e.values[k] > 0.0)) throw NotPositiveDefinite("polar factor of a singular matrix");
        const double w = 1.0 / std::sqrt(e.values[k]);
        for (int i = 0; i < m.cols(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                invSqrt(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
    }
    return m * invSqrt;
}

double condition_number(const Matrix& m) {
    EigenResult e = jacobi_eigen(m.transposed() * m);
    const double hi = e.values.front(), lo = e.values.back();
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

EigenResult generalized_eigen(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("pencil matrices must share dimensions");
    Matrix l = cholesky(b);
    // C = L^{-1} A L^{-T}
    Matrix c = solve_lower_matrix(l, a);
    c = solve_lower_matrix(l, c.transposed()).transposed();
    // symmetrize against roundoff
    for (int i = 0; i < c.rows(); ++i)
        for (int j = i + 1; j < c.cols(); ++j) {
            const double s = 0.5 * (c(i, j) + c(j, i));
            c(i, j) = c(j, i) = s;
        }
    EigenResult e = jacobi_eigen(c);
    e.vectors = solve_lower_transposed_matrix(l, e.vectors);
    return e;
}

} // namespace spdgeo
