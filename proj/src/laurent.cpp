#include "spdgeo/laurent.hpp"

#include <algorithm>

#include "spdgeo/errors.hpp"

namespace spdgeo {

LaurentSeries LaurentSeries::exact(long low, std::vector<Rational> coeffs) {
    LaurentSeries s;
    s.start_ = low;
    s.c_ = std::move(coeffs);
    s.tailExact_ = true;
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::windowed(long start, std::vector<Rational> coeffs) {
    LaurentSeries s;
    s.start_ = start;
    s.c_ = std::move(coeffs);
    s.tailExact_ = false;
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::monomial(const Rational& c, long order) {
    return exact(order, {c});
}

void LaurentSeries::normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        start_ += static_cast<long>(lead);
    }
    if (tailExact_) {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) start_ = 0;
    }
}

long LaurentSeries::valuation() const {
    if (is_exact_zero()) throw DivisionByZeroSeries("valuation of the zero series");
    if (c_.empty()) throw WindowExhausted("valuation unknown: window holds only zeros");
    return start_;
}

const Rational& LaurentSeries::leading_coeff() const {
    valuation(); // validity checks
    return c_.front();
}

Rational LaurentSeries::coeff(long order) const {
    if (order >= window_end()) throw WindowExhausted("coefficient beyond the guaranteed window");
    if (order < start_ || order >= stored_end()) return Rational(0);
    return c_[static_cast<size_t>(order - start_)];
}

LaurentSeries LaurentSeries::truncated(long end) const {
    if (end >= window_end()) return *this;
    LaurentSeries s;
    s.tailExact_ = false;
    s.start_ = std::min(start_, end);
    const long keep = std::max(0L, end - start_);
    s.c_.assign(c_.begin(), c_.begin() + std::min<long>(static_cast<long>(c_.size()), keep));
    s.normalize();
    if (s.c_.empty()) s.start_ = end;
    return s;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& rhs) const {
    if (is_exact_zero()) return rhs;
    if (rhs.is_exact_zero()) return *this;
    LaurentSeries s;
    s.tailExact_ = tailExact_ && rhs.tailExact_;
    const long end = s.tailExact_ ? std::max(stored_end(), rhs.stored_end())
                                  : std::min(window_end(), rhs.window_end());
    s.start_ = std::min(start_, rhs.start_);
    if (end <= s.start_) {
        s.c_.clear();
        s.start_ = end;
        return s;
    }
    s.c_.reserve(static_cast<size_t>(end - s.start_));
    for (long o = s.start_; o < end; ++o) {
        Rational a = (o < start_ || o >= stored_end()) ? Rational(0) : c_[o - start_];
        Rational b = (o < rhs.start_ || o >= rhs.stored_end()) ? Rational(0) : rhs.c_[o - rhs.start_];
        s.c_.push_back(a + b);
    }
    s.normalize();
    if (!s.tailExact_ && s.c_.empty()) s.start_ = end;
    return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& rhs) const {
    return *this + rhs.scaled(Rational(-1));
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& rhs) const {
    if (is_exact_zero() || rhs.is_exact_zero()) return zero();
    LaurentSeries s;
    s.tailExact_ = tailExact_ && rhs.tailExact_;
    if (window_zero() || rhs.window_zero()) {
        // zero through each factor's window; the product is guaranteed zero
        // through the sum of the known starts
        s.start_ = start_ + rhs.start_;
        return s;
    }
    s.start_ = start_ + rhs.start_;
    long end;
    if (s.tailExact_)
        end = stored_end() + rhs.stored_end() - 1;
    else
        end = std::min(window_end() + rhs.start_, rhs.window_end() + start_);
    s.c_.assign(static_cast<size_t>(std::max(0L, end - s.start_)), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < rhs.c_.size(); ++j) {
            const size_t k = i + j;
            if (k >= s.c_.size()) break;
            s.c_[k] += c_[i] * rhs.c_[j];
        }
    }
    s.normalize();
    if (!s.tailExact_ && s.c_.empty()) s.start_ = end;
    return s;
}

LaurentSeries LaurentSeries::scaled(const Rational& c) const {
    if (c == 0 && tailExact_) return zero();
    LaurentSeries s = *this;
    for (Rational& x : s.c_) x *= c;
    s.normalize();
    if (!s.tailExact_ && s.c_.empty()) s.start_ = window_end();
    return s;
}

LaurentSeries LaurentSeries::shifted(long orders) const {
    LaurentSeries s = *this;
    if (!s.is_exact_zero()) s.start_ += orders;
    return s;
}

bool LaurentSeries::identical(const LaurentSeries& rhs) const {
    return start_ == rhs.start_ && tailExact_ == rhs.tailExact_ && c_ == rhs.c_;
}

LaurentSeries invert(const LaurentSeries& a, long working) {
    const long v = a.valuation(); // throws on zero / unknown
    const Rational& a0 = a.leading_coeff();
    const long len = a.tail_exact() ? working : std::min<long>(working, a.window_end() - v);
    std::vector<Rational> b(static_cast<size_t>(std::max(1L, len)), Rational(0));
    b[0] = Rational(1) / a0;
    for (size_t k = 1; k < b.size(); ++k) {
        Rational acc(0);
        for (size_t j = 1; j <= k; ++j) {
            const Rational aj = a.coeff(v + static_cast<long>(j));
            if (aj != 0) acc += aj * b[k - j];
        }
        b[k] = -acc / a0;
    }
    return LaurentSeries::windowed(-v, std::move(b));
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, long working) {
    return a * invert(b, working);
}

LaurentSeries sqrt_one(const LaurentSeries& a, long working) {
    if (a.valuation() != 0 || a.leading_coeff() != 1)
        throw NotPositive("series square root requires constant term 1");
    const long len = a.tail_exact() ? working : std::min<long>(working, a.window_end());
    std::vector<Rational> s(static_cast<size_t>(std::max(1L, len)), Rational(0));
    s[0] = 1;
    for (size_t k = 1; k < s.size(); ++k) {
        Rational acc(0);
        for (size_t j = 1; j < k; ++j) acc += s[j] * s[k - j];
        s[k] = (a.coeff(static_cast<long>(k)) - acc) / 2;
    }
    return LaurentSeries::windowed(0, std::move(s));
}

LaurentSeries compose(const LaurentSeries& outer, const LaurentSeries& inner, long working) {
    if (outer.is_exact_zero()) return LaurentSeries::zero();
    const long vIn = inner.valuation();
    if (vIn < 1) throw NotPositive("composition requires an inner series of positive valuation");
    if (outer.window_zero()) {
        const long bound = outer.start() >= 0 ? outer.start() : outer.start() * vIn;
        std::vector<Rational> none;
        LaurentSeries s = LaurentSeries::windowed(bound, std::move(none));
        return s.truncated(bound);
    }
    const long v = outer.valuation();
    const long last = outer.tail_exact() ? outer.stored_end() : outer.window_end();

    LaurentSeries power = LaurentSeries::monomial(Rational(1), 0); // inner^v
    if (v >= 0) {
        for (long k = 0; k < v; ++k) power = power * inner;
    } else {
        LaurentSeries innerInv = invert(inner, working + (-v) * vIn + 1);
        for (long k = 0; k < -v; ++k) power = power * innerInv;
    }

    LaurentSeries acc = LaurentSeries::zero();
    for (long o = v; o < last; ++o) {
        const Rational c = outer.coeff(o);
        if (c != 0) acc = acc + power.scaled(c);
        if (o + 1 < last) power = power * inner;
    }
    if (!outer.tail_exact()) {
        // unknown tail terms c_o inner^o for o >= window_end contribute only
        // from order o * val(inner) upward
        const long e = outer.window_end();
        const long bound = e >= 0 ? e : e * vIn;
        acc = acc.truncated(bound);
    }
    return acc;
}

} // namespace spdgeo
