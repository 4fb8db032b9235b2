#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bubble/incident.hpp"
#include "oracles.hpp"

using namespace bubble;

TEST_CASE("bump support is exactly (0, T_p)") {
    IncidentPulse pulse;
    pulse.T_p = 2.0;
    for (double t : {-1.0, 0.0, 2.0, 3.0, 100.0}) {
        const LambdaDerivs l = lambda_derivs(pulse, t);
        CHECK(l.value == 0.0);
        CHECK(l.d1 == 0.0);
        CHECK(l.d2 == 0.0);
    }
    CHECK(lambda_derivs(pulse, 1.0).value == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
    CHECK(lambda_derivs(pulse, 1.0).d1 == 0.0);  // odd about the midpoint
    CHECK(lambda_derivs(pulse, 0.6).value > 0.0);
}

TEST_CASE("amplitude scales the bump linearly") {
    IncidentPulse one, three;
    three.amplitude = 3.0;
    const LambdaDerivs a = lambda_derivs(one, 0.37);
    const LambdaDerivs b = lambda_derivs(three, 0.37);
    CHECK(b.value == doctest::Approx(3.0 * a.value).epsilon(1e-15));
    CHECK(b.d2 == doctest::Approx(3.0 * a.d2).epsilon(1e-15));
}

TEST_CASE("analytic bump derivatives match finite differences") {
    IncidentPulse pulse;
    pulse.T_p = 1.3;
    pulse.amplitude = 2.0;
    for (double t : {0.2, 0.41, 0.65, 0.9, 1.1}) {
        const LambdaDerivs l = lambda_derivs(pulse, t);
        const double h = 1e-4;
        const double fd1 = (lambda_derivs(pulse, t + h).value -
                            lambda_derivs(pulse, t - h).value) /
                           (2.0 * h);
        const double fd2 = oracles::second_derivative_fd(
            [&](double s) { return lambda_derivs(pulse, s).value; }, t, 1e-3);
        CHECK(l.d1 == doctest::Approx(fd1).epsilon(1e-6));
        CHECK(l.d2 == doctest::Approx(fd2).epsilon(1e-6));
    }
}

TEST_CASE("incident field is a retarded spherical wave") {
    IncidentPulse pulse;
    pulse.x0 = {0, 0, 0};
    const double c0 = 2.0;
    const Vec3 x{3, 0, 0};
    // u(x, t) = lambda(t - r/c0)/r: value and second time derivative.
    for (double t : {1.6, 1.9, 2.3}) {
        const double r = 3.0;
        CHECK(u_i(pulse, c0, x, t) ==
              doctest::Approx(lambda_derivs(pulse, t - r / c0).value / r).epsilon(1e-15));
        const double fd_tt = oracles::second_derivative_fd(
            [&](double s) { return u_i(pulse, c0, x, s); }, t, 1e-3);
        CHECK(u_i_tt(pulse, c0, x, t) == doctest::Approx(fd_tt).epsilon(1e-6));
    }
}

TEST_CASE("gradient matches finite differences") {
    IncidentPulse pulse;
    pulse.x0 = {1, -2, 0.5};
    const double c0 = 1.5;
    const Vec3 x{2.2, -1.1, 1.4};
    const double t = 1.3;
    const Vec3 g = grad_u_i(pulse, c0, x, t);
    const double h = 1e-6;
    const Vec3 ex{1, 0, 0}, ey{0, 1, 0}, ez{0, 0, 1};
    CHECK(g.x == doctest::Approx((u_i(pulse, c0, x + ex * h, t) -
                                  u_i(pulse, c0, x - ex * h, t)) /
                                 (2 * h))
                     .epsilon(1e-6));
    CHECK(g.y == doctest::Approx((u_i(pulse, c0, x + ey * h, t) -
                                  u_i(pulse, c0, x - ey * h, t)) /
                                 (2 * h))
                     .epsilon(1e-6));
    CHECK(g.z == doctest::Approx((u_i(pulse, c0, x + ez * h, t) -
                                  u_i(pulse, c0, x - ez * h, t)) /
                                 (2 * h))
                     .epsilon(1e-6));
}

TEST_CASE("wave equation residual of the spherical pulse") {
    // u_tt = c0^2 Laplacian(u); for a radial wave r u = lambda(t - r/c0),
    // Laplacian(u) = (1/r) d^2/dr^2 (r u).
    IncidentPulse pulse;
    pulse.x0 = {0, 0, 0};
    const double c0 = 1.0;
    const double r = 2.0, t = 2.5;
    auto ru = [&](double rr) { return rr * u_i(pulse, c0, Vec3{rr, 0, 0}, t); };
    const double lap = oracles::second_derivative_fd(ru, r, 1e-3) / r;
    const double utt = u_i_tt(pulse, c0, Vec3{r, 0, 0}, t);
    CHECK(utt == doctest::Approx(c0 * c0 * lap).epsilon(1e-5));
}

TEST_CASE("delta front has no pointwise derivatives and the source is singular") {
    IncidentPulse front;
    front.kind = PulseKind::DeltaFront;
    CHECK_THROWS_WITH_AS(lambda_derivs(front, 0.5),
                         "delta_front pulse has no pointwise derivatives",
                         std::runtime_error);

    IncidentPulse pulse;
    CHECK_THROWS_AS(u_i(pulse, 1.0, pulse.x0, 1.0), std::runtime_error);

    IncidentPulse bad;
    bad.T_p = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::runtime_error);
}
