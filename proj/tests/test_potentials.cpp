#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bubble/potentials.hpp"
#include "oracles.hpp"

using namespace bubble;

namespace {

Vec3 rotate_z(const Vec3& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

}  // namespace

TEST_CASE("panel potential matches the refined quadrature oracle off-panel") {
    const Vec3 a{0, 0, 0}, b{1.3, 0.1, 0}, c{0.2, 0.9, 0.3};
    for (const Vec3& x : {Vec3{0.5, 0.4, 1.0}, Vec3{-1, 2, 0.5}, Vec3{3, -1, -2}}) {
        const double exact = panel_potential(a, b, c, x);
        const double ref = oracles::triangle_integral_refined(
            a, b, c, [&](const Vec3& p) { return 1.0 / (p - x).norm(); }, 256);
        CHECK(exact == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("panel potential at the center of a square (analytic value)") {
    // int over the square [-a,a]^2 of 1/r dA = 8 a ln(1 + sqrt(2)).
    const double half = 0.75;
    const Vec3 p00{-half, -half, 0}, p10{half, -half, 0};
    const Vec3 p11{half, half, 0}, p01{-half, half, 0};
    const Vec3 center{0, 0, 0};
    const double total =
        panel_potential(p00, p10, p11, center) + panel_potential(p00, p11, p01, center);
    CHECK(total == doctest::Approx(8.0 * half * std::log(1.0 + std::sqrt(2.0)))
                       .epsilon(1e-14));
}

TEST_CASE("panel potential is invariant under rigid motions") {
    const Vec3 a{0, 0, 0}, b{1.1, 0.2, -0.3}, c{0.4, 0.9, 0.5};
    const Vec3 x{0.3, -0.6, 0.8};
    const double base = panel_potential(a, b, c, x);
    const Vec3 shift{4, -7, 2};
    const double angle = 1.234;
    const double moved = panel_potential(rotate_z(a, angle) + shift, rotate_z(b, angle) + shift,
                                         rotate_z(c, angle) + shift, rotate_z(x, angle) + shift);
    CHECK(std::abs(moved - base) <= 1e-14 * std::abs(base));
}

TEST_CASE("panel potential keeps digits in the far field") {
    const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
    const double area = 0.5;
    for (double r : {1e3, 1e6, 1e8}) {
        const Vec3 x{r, 0.3 * r, 0.1 * r};
        const double dist = (x - Vec3{1.0 / 3, 1.0 / 3, 0}).norm();
        CHECK(panel_potential(a, b, c, x) == doctest::Approx(area / dist).epsilon(1e-6));
    }
}

TEST_CASE("solid angle of a coordinate octant triangle") {
    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    // One eighth of the full sphere, positively oriented as seen from outside.
    CHECK(triangle_solid_angle(ex, ey, ez, Vec3{0, 0, 0}) ==
          doctest::Approx(4.0 * M_PI / 8.0).epsilon(1e-14));
    // Swapping two vertices flips the sign.
    CHECK(triangle_solid_angle(ey, ex, ez, Vec3{0, 0, 0}) ==
          doctest::Approx(-4.0 * M_PI / 8.0).epsilon(1e-14));
    // Coplanar target sees zero.
    CHECK(triangle_solid_angle(ex, ey, Vec3{1, 1, 0}, Vec3{5, -2, 0}) == 0.0);
}

TEST_CASE("single layer mean on the unit sphere: 1/r outside, 1 inside") {
    const SurfaceMesh m = make_icosphere(1.0, 3);
    for (double r : {1.2, 2.0, 5.0}) {
        CHECK(single_layer_mean(m, Vec3{r, 0, 0}) * r == doctest::Approx(1.0).epsilon(2e-3));
        CHECK(single_layer_mean(m, Vec3{0, -r / 2, r / 2} * std::sqrt(2.0)) * r ==
              doctest::Approx(1.0).epsilon(2e-3));
    }
    // Constant potential of a uniform spherical layer in the interior.
    CHECK(single_layer_mean(m, Vec3{0.3, 0.1, -0.2}) == doctest::Approx(1.0).epsilon(3e-3));

    CHECK_THROWS_WITH_AS(single_layer_mean(m, m.vertices[0]),
                         "on-surface evaluation of Q(x)", std::runtime_error);
}

TEST_CASE("A(y) on a tetrahedron matches the refined quadrature oracle") {
    SurfaceMesh tet;
    tet.vertices = {{0, 0, 0}, {1.2, 0, 0}, {0.1, 0.9, 0}, {0.3, 0.2, 1.1}};
    tet.faces = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}};
    validate_mesh(tet);

    const Vec3 y = tet.vertices[3];
    double ref = 0.0;
    for (int f = 0; f < tet.num_faces(); ++f) {
        const Vec3 n = face_normal(tet, f);
        ref += oracles::triangle_integral_refined(
            tet.vertices[tet.faces[f][0]], tet.vertices[tet.faces[f][1]],
            tet.vertices[tet.faces[f][2]],
            [&](const Vec3& p) {
                const Vec3 r = p - y;
                const double rn = r.norm();
                return rn == 0.0 ? 0.0 : dot(r, n) / rn;
            },
            400);
    }
    QuadratureConfig cfg;
    cfg.singular_subdivision_depth = 6;
    cfg.curved_panels = false;  // sharp edges: the flat facets are exact
    CHECK(A_of_y(tet, y, cfg) == doctest::Approx(ref).epsilon(1e-4));
}

TEST_CASE("A(y) on the unit sphere approaches the constant 8 pi / 3") {
    const SurfaceMesh m = make_icosphere(1.0, 3);
    const QuadratureConfig cfg;
    const double exact = 8.0 * M_PI / 3.0;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pick(0, m.num_vertices() - 1);
    for (int i = 0; i < 5; ++i) {
        const double a = A_of_y(m, m.vertices[pick(rng)], cfg);
        CHECK(a == doctest::Approx(exact).epsilon(5e-3));
    }
}

TEST_CASE("shape factors: weights, scaling and the serial twin") {
    const SurfaceMesh m = make_icosphere(1.0, 2);
    const QuadratureConfig cfg;
    const ShapeFactors f = shape_factors(m, cfg);
    CHECK(f.area_B == doctest::Approx(area(m)).epsilon(1e-14));
    CHECK(f.vol_B == doctest::Approx(volume(m)).epsilon(1e-14));
    CHECK(static_cast<int>(f.A_profile.size()) == m.num_vertices());
    CHECK(f.A_dB == doctest::Approx(8.0 * M_PI / 3.0).epsilon(2e-2));

    const ShapeFactors serial = shape_factors_serial(m, cfg);
    CHECK(serial.A_dB == f.A_dB);  // bitwise
    CHECK(serial.A_profile == f.A_profile);

    // Exact delta^2 law for the scaled and shifted surface.
    const SurfaceMesh s = scale_translate(m, 0.05, Vec3{-2, 1, 4});
    const ShapeFactors fs = shape_factors(s, cfg);
    CHECK(fs.A_dB == doctest::Approx(0.05 * 0.05 * f.A_dB).epsilon(1e-12));
}

TEST_CASE("gauss solid angle and flux identity") {
    const SurfaceMesh m = make_icosphere(1.0, 3);
    CHECK(gauss_solid_angle(m, Vec3{0.2, -0.1, 0.3}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gauss_solid_angle(m, Vec3{3, 1, -2}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(gauss_solid_angle(m, face_centroid(m, 17)) == doctest::Approx(0.5).epsilon(2e-3));

    const double v3 = 3.0 * volume(m);
    for (const Vec3& y : {Vec3{0, 0, 0}, Vec3{10, -4, 2}, Vec3{-0.3, 0.8, 0.1}})
        CHECK(flux_identity(m, y) == doctest::Approx(v3).epsilon(1e-13));
}

TEST_CASE("quadrature config validation") {
    QuadratureConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.regular_order = 5;
    CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
    cfg.regular_order = 7;
    cfg.singular_subdivision_depth = 9;
    CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
    cfg.singular_subdivision_depth = 3;
    cfg.near_singular_threshold = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::runtime_error);
}
