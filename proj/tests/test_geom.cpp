#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polylab/geom.hpp"
#include "polylab/rng.hpp"
#include "polylab/samplers.hpp"

using namespace polylab;
using namespace polylab::geom;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("geom") {

TEST_CASE("turning angle on axis-aligned pairs") {
    CHECK(turning_angle({1, 0, 0}, {1, 0, 0}) == 0.0);
    CHECK(turning_angle({1, 0, 0}, {-1, 0, 0}) == doctest::Approx(kPi));
    CHECK(turning_angle({1, 0, 0}, {0, 2, 0}) == doctest::Approx(kPi / 2));
}

TEST_CASE("turning angle properties: symmetry, scaling, rotation invariance") {
    Rng rng(7, 0);
    for (int i = 0; i < 20000; ++i) {
        Vec3 a{rng.normal(), rng.normal(), rng.normal()};
        Vec3 b{rng.normal(), rng.normal(), rng.normal()};
        const double t = turning_angle(a, b);
        CHECK(t >= 0.0);
        CHECK(t <= kPi);
        CHECK(turning_angle(b, a) == t);
        CHECK(turning_angle(a * 3.5, b) == doctest::Approx(t).epsilon(1e-12));
        CHECK(turning_angle(a, b * 0.25) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("zero-length edge raises a domain error naming the index") {
    ClosedPolygon p(3, {{1, 0, 0}, {0, 0, 0}, {-1, 0, 0}}, 1e-6);
    try {
        total_curvature(p);
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("total curvature of triangles and squares is 2 pi") {
    ClosedPolygon tri(3, {{1, 0, 0}, {-0.3, 0.8, 0.1}, {-0.7, -0.8, -0.1}});
    CHECK(total_curvature(tri) == doctest::Approx(2 * kPi).epsilon(1e-13));

    ClosedPolygon square(2, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}});
    CHECK(total_curvature(square) == doctest::Approx(2 * kPi).epsilon(1e-14));
}

TEST_CASE("arm with identical edges has zero curvature") {
    PolygonArm arm(3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
    CHECK(total_curvature(arm) == 0.0);
}

TEST_CASE("curvature is invariant under cyclic relabeling") {
    samplers::SymmetricClosedSampler s({8, 3, 100, 0});
    for (int trial = 0; trial < 200; ++trial) {
        ClosedPolygon p = s.next();
        const double k0 = total_curvature(p);
        auto edges = p.edges();
        std::rotate(edges.begin(), edges.begin() + 3, edges.end());
        ClosedPolygon q(3, std::move(edges));
        CHECK(total_curvature(q) == doctest::Approx(k0).epsilon(1e-12));
    }
}

TEST_CASE("torsion vanishes on planar polygons and rejects d = 2") {
    ClosedPolygon tri(3, {{1, 0, 0}, {-0.5, 0.5, 0}, {-0.5, -0.5, 0}});
    CHECK(total_torsion(tri) == 0.0);

    ClosedPolygon hex_planar(
        3, {{1, 0, 0}, {0.5, 0.8, 0}, {-0.5, 0.8, 0}, {-1, 0, 0}, {-0.5, -0.8, 0},
            {0.5, -0.8, 0}});
    CHECK(total_torsion(hex_planar) == doctest::Approx(0.0).epsilon(1e-12));

    ClosedPolygon square2(2, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}});
    CHECK_THROWS_AS(total_torsion(square2), std::invalid_argument);
}

TEST_CASE("torsion of a nonplanar polygon is positive and finite") {
    samplers::SymmetricClosedSampler s({12, 3, 5, 0});
    for (int trial = 0; trial < 100; ++trial) {
        const double t = total_torsion(s.next());
        CHECK(t > 0.0);
        CHECK(t < 12 * kPi);
    }
}

TEST_CASE("chord squared mean on the unit square") {
    ClosedPolygon square(2, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}});
    CHECK(chord_squared_mean(square, 1) == doctest::Approx(1.0));
    CHECK(chord_squared_mean(square, 2) == doctest::Approx(2.0));  // diagonals
    CHECK(chord_squared_mean(square, 4) == 0.0);                   // closure
    CHECK_THROWS_AS(chord_squared_mean(square, 0), std::invalid_argument);
    CHECK_THROWS_AS(chord_squared_mean(square, 5), std::invalid_argument);
}

TEST_CASE("closed chord symmetry chord(k) == chord(n-k) is exact per sample") {
    samplers::SymmetricClosedSampler s({9, 3, 11, 0});
    for (int trial = 0; trial < 300; ++trial) {
        ClosedPolygon p = s.next();
        for (int k = 1; k <= 4; ++k)
            CHECK(chord_squared_mean(p, k) == chord_squared_mean(p, 9 - k));
    }
}

TEST_CASE("arm chords use the n-k leading windows") {
    // vertices 0, 1, 3, 6 along a line; k = 1 averages windows (0,1), (1,3)
    PolygonArm arm(3, {{1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
    CHECK(chord_squared_mean(arm, 1) == doctest::Approx((1.0 + 4.0) / 2));
    CHECK(chord_squared_mean(arm, 2) == doctest::Approx(9.0));
    CHECK_THROWS_AS(chord_squared_mean(arm, 3), std::invalid_argument);
}

TEST_CASE("gyradius of coincident vertices is zero and translation invariant") {
    ClosedPolygon degenerate(3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(gyradius_squared(degenerate) == 0.0);

    samplers::HopfGaussianArmSampler s({10, 3, 13, 0});
    for (int trial = 0; trial < 100; ++trial) {
        PolygonArm arm = s.next();
        auto pts = vertices(arm);
        const double g = gyradius_squared_of_points(pts);
        const Vec3 shift{12.5, -3.25, 7.75};
        for (auto& v : pts) v += shift;
        CHECK(gyradius_squared_of_points(pts) == doctest::Approx(g).epsilon(1e-12));
    }
}

TEST_CASE("closure defect") {
    PolygonArm single(3, {{0.5, -2, 1}});
    const Vec3 d1 = closure_defect(single);
    CHECK(d1.x == 0.5);
    CHECK(d1.y == -2.0);
    CHECK(d1.z == 1.0);

    PolygonArm pair(3, {{0.5, -2, 1}, {-0.5, 2, -1}});
    CHECK(closure_defect(pair).norm() == 0.0);
}

TEST_CASE("total length of the unit equilateral triangle") {
    const double h = std::sqrt(3.0) / 2;
    ClosedPolygon tri(2, {{1, 0, 0}, {-0.5, h, 0}, {-0.5, -h, 0}});
    CHECK(total_length(tri) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(PolygonArm(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonArm(4, {{1, 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonArm(3, {{std::nan(""), 0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(PolygonArm(2, {{1, 0, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(ClosedPolygon(3, {{1, 0, 0}, {0, 1, 0}}), std::invalid_argument);
    // closure defect beyond tolerance
    CHECK_THROWS_AS(ClosedPolygon(3, {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}}),
                    std::invalid_argument);
}

}  // TEST_SUITE
