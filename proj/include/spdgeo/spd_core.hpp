#pragma once

#include <vector>

#include "spdgeo/linalg.hpp"

namespace spdgeo {

enum class Model { E, PE };

constexpr double kSymTol = 1e-10;

// A point of E_n, or of PE_n when model == PE (then stored det-normalized and
// compared up to that normalization).
class SPDMatrix {
public:
    static SPDMatrix make(Matrix entries, Model model, double symTol = kSymTol);
    // Construction without the definiteness check, for values that are SPD by
    // construction (geodesic evaluation can be singular to working precision).
    // PE entries must already carry the det-one normalization.
    static SPDMatrix trusted(Matrix entries, Model model);

    int n() const { return n_; }
    Model model() const { return model_; }
    const Matrix& entries() const { return entries_; }

    bool equals(const SPDMatrix& other, double tol = 1e-9) const;

private:
    SPDMatrix(int n, Matrix entries, Model model)
        : n_(n), entries_(std::move(entries)), model_(model) {}
    int n_ = 0;
    Matrix entries_;
    Model model_;
};

// Sorted non-increasing logs of the generalized eigenvalues of det(X - lambda Y).
struct ComplexDistance {
    std::vector<double> psis;
    Model model = Model::E;
};

// Exponent data of a geodesic: strictly decreasing values with multiplicities.
struct Velocity {
    std::vector<int> blockSizes;
    std::vector<double> values; // strictly decreasing, one per block
    Model model = Model::E;

    int n() const;
    std::vector<double> expanded() const;
    // Partial block sums i_1 < ... < i_{m-1} (the interior jump positions).
    std::vector<int> interior_codims() const;
    // Unique representative: E scales the expanded vector to norm 1; PE first
    // shifts it to mean zero. Zero velocity is returned unchanged.
    Velocity canonical() const;
    bool equals_canonical(const Velocity& other, double tol = 1e-9) const;
};

// Groups a sorted-descending exponent vector into strictly decreasing blocks.
Velocity group_velocity(const std::vector<double>& sortedValues, Model model,
                        double groupTol = 1e-9);

struct Geodesic {
    Matrix frame;      // invertible
    Velocity velocity; // literal exponents (evaluation uses them as-is)

    int n() const { return frame.rows(); }
    Model model() const { return velocity.model; }
};

struct CartanFrame {
    Matrix frame;
};

SPDMatrix make_spd(const Matrix& entries, Model model, double symTol = kSymTol);

ComplexDistance complex_distance(const SPDMatrix& x, const SPDMatrix& y);
double riemannian_distance(const SPDMatrix& x, const SPDMatrix& y);

// Thm 1.2 membership: theta - psi lies in the permutohedron of phi, decided by
// the majorization criterion.
bool triangle_membership(const ComplexDistance& theta, const ComplexDistance& psi,
                         const ComplexDistance& phi, double tol = 1e-9);

Geodesic geodesic_through(const SPDMatrix& x, const SPDMatrix& y);
SPDMatrix geodesic_eval(const Geodesic& gamma, double t);

bool cartan_contains(const CartanFrame& frame, const SPDMatrix& x, double tol = 1e-8);

} // namespace spdgeo
