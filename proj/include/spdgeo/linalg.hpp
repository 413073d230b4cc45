#pragma once

#include <initializer_list>
#include <vector>

namespace spdgeo {

// Dense row-major matrix of doubles. Sized for desk-scale problems (n <= ~50);
// everything here is O(n^3) direct algorithms.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(double s) const;

    Matrix block(int r0, int c0, int nr, int nc) const;
    std::vector<double> column(int j) const;
    void set_column(int j, const std::vector<double>& v);

    double max_abs() const;
    double frobenius_norm() const;
    bool symmetric_within(double relTol) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

struct EigenResult {
    std::vector<double> values; // sorted descending
    Matrix vectors;             // columns are the matching orthonormal eigenvectors
};

// Cyclic Jacobi rotations for a symmetric matrix; sweeps run until
// off(A) < 1e-12 * ||A||_F. Column signs are fixed so the entry of largest
// magnitude in each eigenvector is positive.
EigenResult jacobi_eigen(Matrix a);

// Lower-triangular Cholesky factor; pivots must exceed pivotTol (throws
// NotPositiveDefinite otherwise). pivotTol < 0 selects 1e-12 * trace/n.
Matrix cholesky(const Matrix& a, double pivotTol = -1.0);

struct QRResult {
    Matrix q; // orthonormal columns
    Matrix r; // upper triangular, positive diagonal
};
QRResult qr_positive(const Matrix& a);

Matrix inverse(const Matrix& a);
double determinant(const Matrix& a);
double log_abs_det(const Matrix& a); // overflow-safe

// Solve L x = b / L^T x = b for triangular L.
std::vector<double> solve_lower(const Matrix& l, const std::vector<double>& b);
Matrix solve_lower_matrix(const Matrix& l, const Matrix& b);       // L X = B
Matrix solve_lower_transposed_matrix(const Matrix& l, const Matrix& b); // L^T X = B

// Orthogonal polar factor of an invertible matrix (via the symmetric
// eigendecomposition of M^T M; fine for the near-orthogonal inputs used here).
Matrix polar_orthogonal(const Matrix& m);

// Ratio of extreme singular values.
double condition_number(const Matrix& m);

// Generalized symmetric eigenvalues of det(A - lambda B) = 0 with B SPD,
// reduced through the triangular square root of B. Values sorted descending;
// vectors are the generalized eigenvectors (columns), B-orthonormal.
EigenResult generalized_eigen(const Matrix& a, const Matrix& b);

} // namespace spdgeo
