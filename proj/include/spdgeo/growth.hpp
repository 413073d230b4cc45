#pragma once

#include <string>
#include <vector>

#include "spdgeo/partitions.hpp"
#include "spdgeo/rational.hpp"

namespace spdgeo {

// Univariate polynomial in the sequence index with rational coefficients,
// stored by ascending degree with no trailing zeros.
struct Polynomial {
    std::vector<Rational> c;

    int degree() const { return static_cast<int>(c.size()) - 1; } // zero: -1
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    Rational coeff(int k) const;
    Rational eval(const Rational& x) const;
    void trim();

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    bool operator==(const Polynomial& rhs) const { return c == rhs.c; }
};

// Grammar: expr := term (("+"|"-") term)* ; term := coeff? var ("^" nat)? | coeff ;
// coeff := int | int "/" int ; var := "n" ; whitespace ignored.
Polynomial parse_polynomial(const std::string& text); // throws ParseError with position

// One polynomial per element of the ground set (labels sorted ascending).
struct GrowthVector {
    std::vector<int> ground;
    std::vector<Polynomial> coords;

    int size() const { return static_cast<int>(ground.size()); }
};

GrowthVector parse_growth(const std::vector<std::string>& perCoordinate);
GrowthVector parse_growth_list(const std::string& commaSeparated);

// A point of Xi(I) (isRay = false) or a ray direction (isRay = true), stored
// by canonical representative: points have minimum value 0; rays additionally
// are integer vectors with gcd 1.
struct XiElement {
    bool isRay = false;
    std::vector<Rational> values;

    bool operator==(const XiElement& other) const {
        return isRay == other.isRay && values == other.values;
    }
};

XiElement canonical_point(std::vector<Rational> values);
XiElement canonical_ray(std::vector<Rational> values);
// Per-block constants: each block's minimum becomes 0; rays then scale to an
// integer vector with gcd 1 across all coordinates.
XiElement canonical_point_blocks(std::vector<Rational> values,
                                 const std::vector<std::vector<int>>& blocks);
XiElement canonical_ray_blocks(std::vector<Rational> values,
                               const std::vector<std::vector<int>>& blocks);

// Limit of a polynomial trajectory in the compactified Xi(I): a point when all
// pairwise differences are constant, otherwise the ray of leading coefficients
// at the maximal difference degree.
XiElement xi_limit(const GrowthVector& v);

struct PassNodeData {
    Block set;
    bool isRay = false;                // rays sit on reducible nodes
    std::vector<Rational> values;      // expanded per element of `set`, canonical
};

struct PassLimit {
    TreePartition tree;
    std::vector<PassNodeData> data; // one per tree set, in the tree's set order
};

struct KarpLevelData {
    bool isRay = false;
    std::vector<Rational> values; // per element of the full ground set, canonical
};

struct KarpLimit {
    LeveledTreePartition leveled;
    std::vector<KarpLevelData> data; // tau rays followed by the final point tuple
};

PassLimit pass_limit(const GrowthVector& v);
KarpLimit karp_limit(const GrowthVector& v);

} // namespace spdgeo
