#include <doctest.h>

#include <random>

#include "spdgeo/json_io.hpp"
#include "test_helpers.hpp"

using namespace spdgeo;

TEST_CASE("spd matrix round trip") {
    std::mt19937_64 rng(3);
    SPDMatrix x = testing::random_spd(3, rng, Model::PE);
    Json j = spd_to_json(x);
    SPDMatrix back = spd_from_json(j);
    CHECK(back.equals(x, 1e-9));
    CHECK(j.dump() == spd_to_json(back).dump()); // stable bytes after one round
}

TEST_CASE("geodesic round trip") {
    std::mt19937_64 rng(5);
    Geodesic g = testing::random_geodesic(3, rng, Model::E);
    Json j = geodesic_to_json(g);
    Geodesic back = geodesic_from_json(j);
    CHECK((back.frame - g.frame).max_abs() < 1e-9);
    CHECK(back.velocity.blockSizes == g.velocity.blockSizes);
}

TEST_CASE("satake point round trip") {
    std::mt19937_64 rng(7);
    Geodesic g = testing::random_geodesic(3, rng, Model::PE, 1.5, 0.6);
    SatakePoint p = geodesic_satake_limit(g);
    SatakePoint back = satake_from_json(satake_to_json(p));
    CHECK(satake_point_equal(p, back, 1e-8));
}

TEST_CASE("tree and leveled round trips") {
    TreePartition t(4, {{1, 2, 3, 4}, {1, 2}, {3, 4}, {1}, {2}});
    CHECK(tree_from_json(tree_to_json(t), 4) == t);

    LeveledTreePartition l({Partition::trivial(3), Partition{3, {{1}, {2, 3}}}});
    CHECK(leveled_from_json(leveled_to_json(l), 3) == l);
}

TEST_CASE("curve round trip keeps exact coefficients") {
    Json j = Json::parse(R"({"n":2,"T":16,"entries":[
        [{"low":-2,"coeffs":["1"]},{"low":0,"coeffs":["1","1/2"]}],
        [{"low":0,"coeffs":["1"]}]]})");
    MeromorphicCurve c = curve_from_json(j);
    CHECK(c.entries[0][1].coeff(1) == Rational(1, 2));
    CHECK(c.entries[1][0].identical(c.entries[0][1]));
    Json out = curve_to_json(c);
    MeromorphicCurve back = curve_from_json(out);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) CHECK(back.entries[i][k].identical(c.entries[i][k]));
}

TEST_CASE("floats are rounded to twelve significant digits") {
    CHECK(round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-13));
    Json j = matrix_to_json(Matrix{{1.0 / 3.0}});
    CHECK(j.dump() == "[[0.333333333333]]");
}
