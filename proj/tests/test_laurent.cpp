#include <doctest.h>

#include "spdgeo/errors.hpp"
#include "spdgeo/laurent.hpp"

using namespace spdgeo;

namespace {
Rational rat(long p, long q = 1) { return Rational(p, q); }
} // namespace

TEST_CASE("series basics and addition") {
    LaurentSeries a = LaurentSeries::exact(-1, {rat(1), rat(1)}); // z^{-1} + 1
    LaurentSeries b = LaurentSeries::exact(0, {rat(1)});          // 1
    LaurentSeries s = a + b;                                      // z^{-1} + 2
    CHECK(s.coeff(-1) == rat(1));
    CHECK(s.coeff(0) == rat(2));
    CHECK(s.tail_exact());
    CHECK(s.coeff(5) == rat(0));

    LaurentSeries cancel = a - a;
    CHECK(cancel.is_exact_zero());
}

TEST_CASE("geometric series by inversion") {
    LaurentSeries oneMinusZ = LaurentSeries::exact(0, {rat(1), rat(-1)});
    LaurentSeries inv = invert(oneMinusZ, 8);
    for (long k = 0; k < 8; ++k) CHECK(inv.coeff(k) == rat(1));
    CHECK(inv.window_end() == 8);
    CHECK_THROWS_AS(inv.coeff(8), WindowExhausted);
}

TEST_CASE("monomial products") {
    LaurentSeries zm2 = LaurentSeries::monomial(rat(1), -2);
    LaurentSeries z3 = LaurentSeries::monomial(rat(1), 3);
    LaurentSeries p = zm2 * z3;
    CHECK(p.valuation() == 1);
    CHECK(p.coeff(1) == rat(1));
}

TEST_CASE("window accounting through multiplication") {
    LaurentSeries a = LaurentSeries::windowed(0, {rat(1), rat(2), rat(3)}); // window [0,3)
    LaurentSeries b = LaurentSeries::exact(1, {rat(1)});                    // z
    LaurentSeries p = a * b;
    CHECK(p.valuation() == 1);
    CHECK(p.window_end() == 4); // shifted window, never silently extended
    CHECK(p.coeff(3) == rat(3));
    CHECK_THROWS_AS(p.coeff(4), WindowExhausted);
}

TEST_CASE("division by a window-zero series is rejected") {
    LaurentSeries unknown = LaurentSeries::windowed(2, {});
    CHECK_THROWS_AS(invert(unknown, 8), WindowExhausted);
    CHECK_THROWS_AS(invert(LaurentSeries::zero(), 8), DivisionByZeroSeries);
}

TEST_CASE("series square root") {
    // (1 + z)^{1/2} squared reproduces 1 + z through the window
    LaurentSeries onePlusZ = LaurentSeries::exact(0, {rat(1), rat(1)});
    LaurentSeries r = sqrt_one(onePlusZ, 10);
    LaurentSeries sq = r * r;
    CHECK(sq.coeff(0) == rat(1));
    CHECK(sq.coeff(1) == rat(1));
    for (long k = 2; k < sq.window_end(); ++k) CHECK(sq.coeff(k) == rat(0));
    CHECK(r.coeff(1) == rat(1, 2));
    CHECK(r.coeff(2) == rat(-1, 8));
}

TEST_CASE("composition with a power series") {
    // identity substitution leaves the series unchanged
    LaurentSeries x = LaurentSeries::exact(-1, {rat(3), rat(0), rat(5)}); // 3/z + 5z
    LaurentSeries w = LaurentSeries::monomial(rat(1), 1);
    LaurentSeries same = compose(x, w, 12);
    CHECK(same.coeff(-1) == rat(3));
    CHECK(same.coeff(1) == rat(5));

    // z <- 2w: 1/z becomes 1/(2w)
    LaurentSeries half = compose(LaurentSeries::monomial(rat(1), -1),
                                 LaurentSeries::monomial(rat(2), 1), 12);
    CHECK(half.coeff(-1) == rat(1, 2));

    // z <- w(1+w) on z^{-1}: geometric correction terms
    LaurentSeries inner = LaurentSeries::exact(1, {rat(1), rat(1)});
    LaurentSeries res = compose(LaurentSeries::monomial(rat(1), -1), inner, 8);
    CHECK(res.coeff(-1) == rat(1));
    CHECK(res.coeff(0) == rat(-1));
    CHECK(res.coeff(1) == rat(1));
}
