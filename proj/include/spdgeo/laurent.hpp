#pragma once

#include <limits>
#include <vector>

#include "spdgeo/rational.hpp"

namespace spdgeo {

// Truncated Laurent series with exact rational coefficients. Every value
// tracks the order window through which its coefficients are guaranteed:
// either all orders (exact Laurent polynomials, tailExact) or orders below
// window_end(). Arithmetic computes the correct guaranteed window of each
// result; nothing shrinks silently.
class LaurentSeries {
public:
    static constexpr long kInf = std::numeric_limits<long>::max() / 4;

    LaurentSeries() : start_(0), tailExact_(true) {} // exact zero
    static LaurentSeries zero() { return LaurentSeries(); }
    static LaurentSeries exact(long low, std::vector<Rational> coeffs);
    static LaurentSeries windowed(long start, std::vector<Rational> coeffs);
    static LaurentSeries monomial(const Rational& c, long order);

    bool tail_exact() const { return tailExact_; }
    bool is_exact_zero() const { return tailExact_ && c_.empty(); }
    // True when every guaranteed coefficient is zero (exact zero included).
    bool window_zero() const { return c_.empty(); }

    long start() const { return start_; }
    long stored_end() const { return start_ + static_cast<long>(c_.size()); }
    long window_end() const { return tailExact_ ? kInf : stored_end(); }

    // Order of the first nonzero coefficient; throws WindowExhausted when the
    // window holds only zeros without an exact tail, DivisionByZeroSeries on
    // the exact zero series.
    long valuation() const;
    const Rational& leading_coeff() const; // coefficient at the valuation
    Rational coeff(long order) const;      // throws WindowExhausted beyond the window

    LaurentSeries truncated(long end) const; // restrict the window to orders < end

    LaurentSeries operator+(const LaurentSeries& rhs) const;
    LaurentSeries operator-(const LaurentSeries& rhs) const;
    LaurentSeries operator*(const LaurentSeries& rhs) const;
    LaurentSeries scaled(const Rational& c) const;
    LaurentSeries shifted(long orders) const; // multiply by z^orders

    bool identical(const LaurentSeries& rhs) const; // same stored representation

private:
    void normalize();

    long start_ = 0;
    std::vector<Rational> c_; // c_[i] is the coefficient of z^{start_ + i}
    bool tailExact_ = true;
};

// Reciprocal of a series with known valuation; window terms beyond the input
// guarantee are generated up to `working` coefficients.
LaurentSeries invert(const LaurentSeries& a, long working);
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, long working);

// Square root of a series with constant term 1 (rational coefficients).
LaurentSeries sqrt_one(const LaurentSeries& a, long working);

// Substitution z <- inner(w); inner must have valuation >= 1.
LaurentSeries compose(const LaurentSeries& outer, const LaurentSeries& inner, long working);

} // namespace spdgeo
