#include <doctest.h>

#include <cmath>
#include <random>

#include "spdgeo/boundary.hpp"
#include "spdgeo/errors.hpp"
#include "test_helpers.hpp"

using namespace spdgeo;
using namespace spdgeo::testing;

TEST_CASE("single-block velocity gives an interior point") {
    std::mt19937_64 rng(3);
    Geodesic g;
    g.frame = random_frame(3, rng);
    g.velocity = Velocity{{3}, {1.0}, Model::PE};
    BoundaryPoint p = geodesic_boundary_point(g, BoundaryKind::Karp);
    CHECK(p.interior);
    CHECK_FALSE(p.karpIndex.has_value());
}

TEST_CASE("martin point of a diagonal geodesic") {
    Geodesic g;
    g.frame = Matrix::identity(3);
    g.velocity = Velocity{{2, 1}, {2.0, 0.0}, Model::PE};
    BoundaryPoint p = geodesic_boundary_point(g, BoundaryKind::Martin);
    CHECK_FALSE(p.interior);
    CHECK(p.martinCodims == std::vector<int>{2});
    // chamber ray: (2,0) canonicalized to min 0, norm 1
    CHECK(p.chamber.rays.size() == 1);
    CHECK(p.chamber.rays[0][0] == doctest::Approx(1.0));
    CHECK(p.chamber.rays[0][1] == doctest::Approx(0.0));
    // sphere forms: determinant-one identity blocks with zero log-semiaxes
    for (const auto& vals : p.chamber.blockValues)
        for (double v : vals) CHECK(v == doctest::Approx(0.0));
    for (const SubquotientForm& f : p.satake.forms) {
        CHECK(f.scaleMode == ScaleMode::Literal);
        CHECK((f.matrix - Matrix::identity(f.dim)).max_abs() < 1e-10);
    }
}

TEST_CASE("karp and ass points share the satake part") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Geodesic g = random_geodesic(3, rng, Model::PE, 1.8, 0.6);
        if (g.velocity.blockSizes.size() < 2) continue;
        BoundaryPoint karp = geodesic_boundary_point(g, BoundaryKind::Karp);
        BoundaryPoint ass = geodesic_boundary_point(g, BoundaryKind::Ass);
        CHECK(satake_point_equal(karp.satake, ass.satake, 1e-10));
        REQUIRE(karp.karpIndex.has_value());
        REQUIRE(ass.assIndex.has_value());
        CHECK(karp_to_pass(*karp.karpIndex) == *ass.assIndex);
    }
}

TEST_CASE("semiaxis constraint holds on geodesic boundary points") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 15; ++trial) {
        Geodesic g = random_geodesic(4, rng, Model::PE, 1.8, 0.6);
        if (g.velocity.blockSizes.size() < 2) continue;
        BoundaryPoint p = geodesic_boundary_point(g, BoundaryKind::Karp);
        REQUIRE(p.satake.forms.size() == p.chamber.blockValues.size());
        for (size_t k = 0; k < p.satake.forms.size(); ++k) {
            EigenResult e = jacobi_eigen(p.satake.forms[k].matrix);
            double sum = 0.0;
            for (size_t i = 0; i < e.values.size(); ++i) {
                CHECK(std::log(e.values[i]) ==
                      doctest::Approx(p.chamber.blockValues[k][i]).epsilon(1e-8));
                sum += std::log(e.values[i]);
            }
            CHECK(sum == doctest::Approx(0.0).epsilon(1e-9)); // det-one gauge
        }
    }
}

TEST_CASE("index of the boundary point follows the velocity blocks") {
    Geodesic g;
    g.frame = Matrix::identity(4);
    g.velocity = Velocity{{1, 2, 1}, {1.0, 0.0, -2.0}, Model::PE};
    BoundaryPoint ass = geodesic_boundary_point(g, BoundaryKind::Ass);
    TreePartition expected(4, {{1, 2, 3, 4}, {1}, {2, 3}, {4}});
    CHECK(*ass.assIndex == expected);

    BoundaryPoint karp = geodesic_boundary_point(g, BoundaryKind::Karp);
    CHECK(karp.karpIndex->tau() == 1);
    Partition a1{4, {{1}, {2, 3}, {4}}};
    a1.canonicalize();
    CHECK(karp.karpIndex->levels()[1] == a1);
}

TEST_CASE("sequence boundary point from a growth vector") {
    // eigen growth (2t, t, 0): one-level index with singleton blocks
    GrowthVector eigen = parse_growth({"2n", "n", "0"});
    // consistent satake part: complete flag with trivial forms
    SatakePoint frame;
    frame.flag = Flag(3, {1, 2}, Matrix::identity(3));
    for (int k = 0; k < 3; ++k)
        frame.forms.push_back(SubquotientForm::up_to_scale(Matrix::identity(1)));
    BoundaryPoint p = sequence_boundary_point(eigen, frame, BoundaryKind::Karp);
    CHECK_FALSE(p.interior);
    CHECK(p.karpIndex->tau() == 1);
    CHECK(p.karpIndex->levels()[1] == Partition::singletons(3));

    BoundaryPoint martin = sequence_boundary_point(eigen, frame, BoundaryKind::Martin);
    CHECK(martin.martinCodims == std::vector<int>{1, 2});

    // constant growth: interior
    GrowthVector flat = parse_growth({"1", "1", "1"});
    SatakePoint interior;
    interior.flag = Flag::trivial(3);
    interior.forms.push_back(SubquotientForm::up_to_scale(Matrix::identity(3)));
    CHECK(sequence_boundary_point(flat, interior, BoundaryKind::Karp).interior);

    // unsorted input is rejected
    GrowthVector bad = parse_growth({"n", "2n", "0"});
    CHECK_THROWS_AS(sequence_boundary_point(bad, frame, BoundaryKind::Karp), NotSorted);

    // mismatched flag codims are rejected
    SatakePoint wrong;
    wrong.flag = Flag(3, {1}, Matrix::identity(3));
    wrong.forms.push_back(SubquotientForm::up_to_scale(Matrix::identity(1)));
    wrong.forms.push_back(SubquotientForm::up_to_scale(Matrix::identity(2)));
    CHECK_THROWS_AS(sequence_boundary_point(eigen, wrong, BoundaryKind::Karp),
                    SemiaxisMismatch);
}

TEST_CASE("sequence boundary point with a two-element trailing block") {
    GrowthVector eigen = parse_growth_list("n^3+2n, n^3+n, n^3, 3n, 2n+1, 2n");
    SatakePoint frame;
    frame.flag = Flag(6, {1, 2, 3, 4}, Matrix::identity(6));
    for (int k = 0; k < 4; ++k)
        frame.forms.push_back(SubquotientForm::up_to_scale(Matrix::identity(1)));
    // final block {5,6} carries the point (1,0): semiaxes e^{1/2}, e^{-1/2}
    Matrix q(2, 2);
    q(0, 0) = std::exp(0.5);
    q(1, 1) = std::exp(-0.5);
    frame.forms.push_back(SubquotientForm::literal(q));
    BoundaryPoint p = sequence_boundary_point(eigen, frame, BoundaryKind::Karp);
    CHECK(p.karpIndex->tau() == 2);
    CHECK(p.chamber.blockValues.back()[0] == doctest::Approx(0.5));
    CHECK(p.chamber.blockValues.back()[1] == doctest::Approx(-0.5));
}
