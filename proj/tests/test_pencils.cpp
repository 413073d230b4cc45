#include <doctest.h>

#include <cmath>
#include <random>

#include "spdgeo/errors.hpp"
#include "spdgeo/pencils.hpp"
#include "test_helpers.hpp"

using namespace spdgeo;
using namespace spdgeo::testing;

namespace {

Geodesic diag_geodesic(const Velocity& vel) {
    Geodesic g;
    g.frame = Matrix::identity(vel.n());
    g.velocity = vel;
    return g;
}

} // namespace

TEST_CASE("finite pencil data of block frames") {
    // frame I, blocks (1,2) in R^3: W_1 = span(e2, e3)
    Geodesic g = diag_geodesic(Velocity{{1, 2}, {1.0, 0.0}, Model::E});
    FinitePencilData d = finite_pencil_data(g);
    CHECK(d.limitFlag.codims() == std::vector<int>{1});
    Matrix w1(3, 3);
    w1(1, 1) = w1(2, 2) = 1.0;
    CHECK((d.limitFlag.projector(1) - w1).max_abs() < 1e-12);

    // rotation inside a block preserves the data
    const double c = std::cos(0.7), s = std::sin(0.7);
    Matrix blockRot{{1, 0, 0}, {0, c, -s}, {0, s, c}};
    Geodesic h = conjugate(blockRot, g);
    CHECK(same_finite_pencil(g, h));

    // generic rotation moves the flag
    Matrix rot{{std::cos(0.5), -std::sin(0.5), 0}, {std::sin(0.5), std::cos(0.5), 0}, {0, 0, 1}};
    Geodesic k = conjugate(rot, g);
    CHECK_FALSE(same_finite_pencil(g, k));
}

TEST_CASE("pencil shapes land in the predicted classes") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3); // n <= 4
        Velocity vel = random_velocity(n, rng, Model::E, 0.5);
        if (vel.blockSizes.size() < 2) continue;
        Geodesic gamma = diag_geodesic(vel);

        Geodesic nullG = conjugate(random_pencil_shape(vel, ShapeKind::Null, rng), gamma);
        CHECK(same_null_pencil(gamma, nullG));
        CHECK(same_solvable_pencil(gamma, nullG));
        CHECK(same_finite_pencil(gamma, nullG));

        Geodesic solvG = conjugate(random_pencil_shape(vel, ShapeKind::Solvable, rng), gamma);
        CHECK(same_solvable_pencil(gamma, solvG));
        CHECK(same_finite_pencil(gamma, solvG));

        Geodesic finG = conjugate(random_pencil_shape(vel, ShapeKind::Finite, rng), gamma);
        CHECK(same_finite_pencil(gamma, finG));
    }
}

TEST_CASE("reparametrized geodesics share every pencil") {
    Velocity vel{{1, 1}, {1.0, 0.0}, Model::E};
    Geodesic g = diag_geodesic(vel);
    // shift the origin by 5: frame absorbs D(5)^{1/2}
    Geodesic shifted = g;
    shifted.frame = Matrix::diagonal({std::exp(2.5), 1.0});
    CHECK(same_finite_pencil(g, shifted));
    CHECK(same_solvable_pencil(g, shifted));
    CHECK(same_null_pencil(g, shifted));
}

TEST_CASE("solvable but not null: scaling a zero-exponent block") {
    Velocity vel{{1, 1}, {1.0, 0.0}, Model::E};
    Geodesic g = diag_geodesic(vel);
    Geodesic h = conjugate(Matrix::diagonal({1.0, 2.0}), g); // tau_2 = 2 on psi = 0
    CHECK(same_solvable_pencil(g, h));
    CHECK_FALSE(same_null_pencil(g, h));
}

TEST_CASE("finite but not solvable: non-scalar diagonal block") {
    Velocity vel{{2, 1}, {1.0, 0.0}, Model::E};
    Geodesic g = diag_geodesic(vel);
    Matrix h = Matrix::diagonal({2.0, 0.5, 1.0}); // non-scalar on the first block
    Geodesic k = conjugate(h, g);
    CHECK(same_finite_pencil(g, k));
    CHECK_FALSE(same_solvable_pencil(g, k));
}

TEST_CASE("null pencil data and the canonical slice") {
    Geodesic g = diag_geodesic(Velocity{{1, 1}, {1.0, 0.0}, Model::E});
    NullPencilData d = null_pencil_data(g);
    CHECK(d.forms[0].matrix(0, 0) == doctest::Approx(1.0));
    CHECK(d.forms[1].matrix(0, 0) == doctest::Approx(1.0));

    // origin shifts leave the canonical representative unchanged
    NullPencilData shifted = null_pencil_data(g, 5.0);
    CHECK(null_data_equal(d, shifted, 1e-9));

    // mu(t) = 4 gamma(t): only the first block can rescale; slice differs
    Geodesic mu = g;
    mu.frame = Matrix::diagonal({2.0, 2.0});
    NullPencilData dm = null_pencil_data(mu);
    CHECK(dm.forms[0].matrix(0, 0) == doctest::Approx(1.0)); // slice normalizes block 1
    CHECK(dm.forms[1].matrix(0, 0) == doctest::Approx(4.0));
    CHECK_FALSE(same_null_pencil(g, mu));
}

TEST_CASE("nesting of the pencil relations on random pairs") {
    std::mt19937_64 rng(73);
    int checked = 0;
    int positives = 0;
    while (checked < 150) {
        const int n = 2 + static_cast<int>(rng() % 3); // n <= 4
        Geodesic a = random_geodesic(n, rng, Model::E, 1.7, 0.5);
        Geodesic b;
        switch (rng() % 4) {
            case 0: b = shape_member(a, ShapeKind::Null, rng); break;
            case 1: b = shape_member(a, ShapeKind::Solvable, rng); break;
            case 2: b = shape_member(a, ShapeKind::Finite, rng); break;
            default: b = random_geodesic(n, rng, Model::E, 1.7, 0.5); break;
        }
        if (a.velocity.blockSizes != b.velocity.blockSizes) continue;
        ++checked;
        if (same_null_pencil(a, b)) {
            ++positives;
            CHECK(same_solvable_pencil(a, b));
        }
        if (same_solvable_pencil(a, b)) CHECK(same_finite_pencil(a, b));
    }
    CHECK(positives > 20); // the sample must exercise true positives
}

TEST_CASE("pencil relations are equivalences") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3;
        Geodesic a = random_geodesic(n, rng, Model::E, 1.5, 0.6);
        Geodesic b = shape_member(a, ShapeKind::Null, rng);
        Geodesic c = shape_member(b, ShapeKind::Null, rng);
        CHECK(same_null_pencil(a, a));
        CHECK(same_null_pencil(a, b));
        CHECK(same_null_pencil(b, a));
        CHECK(same_null_pencil(a, c));
        CHECK(same_finite_pencil(a, c));
    }
}

TEST_CASE("finite pencil projection") {
    Velocity vel{{1, 1}, {1.0, 0.0}, Model::E};
    Geodesic gamma = diag_geodesic(vel);

    std::vector<SPDMatrix> self = finite_pencil_project(gamma, gamma);
    CHECK(self[0].entries()(0, 0) == doctest::Approx(1.0));
    CHECK(self[1].entries()(0, 0) == doctest::Approx(1.0));

    Matrix h{{2, 0.7}, {0, 3}}; // diagonal blocks 2 and 3, mixing above
    Geodesic mu = conjugate(h, gamma);
    std::vector<SPDMatrix> proj = finite_pencil_project(gamma, mu);
    CHECK(proj[0].entries()(0, 0) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(proj[1].entries()(0, 0) == doctest::Approx(9.0).epsilon(1e-9));

    // the mixing part does not influence the projection
    Matrix hd = Matrix::diagonal({2.0, 3.0});
    std::vector<SPDMatrix> projD = finite_pencil_project(gamma, conjugate(hd, gamma));
    CHECK(projD[0].entries()(0, 0) == doctest::Approx(proj[0].entries()(0, 0)));
    CHECK(projD[1].entries()(0, 0) == doctest::Approx(proj[1].entries()(0, 0)));

    Geodesic other = diag_geodesic(Velocity{{2}, {1.0}, Model::E});
    CHECK_THROWS_AS(finite_pencil_project(gamma, other), NotInPencil);

    // same velocity but a different limit flag is rejected too
    const double c = std::cos(0.4), s = std::sin(0.4);
    Geodesic rotated = conjugate(Matrix{{c, -s}, {s, c}}, gamma);
    CHECK_THROWS_AS(finite_pencil_project(gamma, rotated), NotInPencil);
}

TEST_CASE("distance at infinity") {
    Velocity vel{{1, 1}, {1.0, 0.0}, Model::E};
    Geodesic gamma = diag_geodesic(vel);
    CHECK(distance_at_infinity(gamma, gamma) == doctest::Approx(0.0));

    Geodesic mu = conjugate(Matrix::diagonal({2.0, 3.0}), gamma);
    const double expected = std::hypot(std::log(4.0), std::log(9.0));
    CHECK(distance_at_infinity(gamma, mu) == doctest::Approx(expected).epsilon(1e-9));

    // invariance under a unipotent move applied to both
    std::mt19937_64 rng(83);
    Matrix u = random_pencil_shape(vel, ShapeKind::Null, rng);
    CHECK(distance_at_infinity(conjugate(u, gamma), conjugate(u, mu)) ==
          doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("pencil through a point") {
    std::mt19937_64 rng(89);
    Velocity vel{{1, 2}, {1.0, -0.5}, Model::E};
    Geodesic gamma = diag_geodesic(vel);

    SPDMatrix at0 = geodesic_eval(gamma, 0.0);
    Geodesic self = pencil_through_point(gamma, at0);
    CHECK(same_finite_pencil(gamma, self));
    CHECK(geodesic_eval(self, 0.0).equals(at0, 1e-9));

    for (int trial = 0; trial < 10; ++trial) {
        SPDMatrix x = random_spd(3, rng);
        Geodesic mu = pencil_through_point(gamma, x);
        CHECK(geodesic_eval(mu, 0.0).equals(x, 1e-8));
        CHECK(same_finite_pencil(gamma, mu));
    }
}

TEST_CASE("visibility sphere cell closures") {
    Flag complete(3, {1, 2}, Matrix::identity(3));
    Flag oneStep(3, {1}, Matrix::identity(3));
    CHECK(sphere_cell_closure_contains(complete, complete));
    CHECK(sphere_cell_closure_contains(complete, oneStep));
    CHECK_FALSE(sphere_cell_closure_contains(oneStep, complete));

    std::mt19937_64 rng(97);
    Flag transverse = Flag::from_frame_blocks(random_frame(3, rng), {1});
    CHECK_FALSE(sphere_cell_closure_contains(oneStep, transverse));
}

TEST_CASE("solvable pencil dimension count") {
    // dim K(I) = dim Delta_circ(I) + satake stratum dim = n^2 - 2
    for (int n = 2; n <= 6; ++n)
        for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> codims;
            for (int i = 1; i < n; ++i)
                if (mask & (1u << (i - 1))) codims.push_back(i);
            const int blocks = static_cast<int>(codims.size()) + 1;
            const int deltaDim = blocks - 2;
            CHECK(deltaDim + satake_stratum_dim(n, codims) == n * n - 2);
        }
}

TEST_CASE("complex distance to a pencil member grows with the velocity") {
    std::mt19937_64 rng(101);
    const double t = 50.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        Geodesic gamma = random_geodesic(n, rng, Model::E, 1.1, 0.15, 0.25);
        Matrix h = random_pencil_shape(gamma.velocity, ShapeKind::Null, rng);
        // keep the member's constants small so the limit is visible at t = 50
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) h(i, j) *= 0.2;
        Geodesic mu;
        mu.frame = gamma.frame * h;
        mu.velocity = gamma.velocity;
        SPDMatrix a = geodesic_eval(gamma, 0.0);
        ComplexDistance cd = complex_distance(geodesic_eval(mu, t), a);
        const std::vector<double> phi = gamma.velocity.expanded();
        for (int j = 0; j < n; ++j) CHECK(std::abs(cd.psis[j] / t - phi[j]) < 0.01);
    }
}
