#include "bubble/incident.hpp"

#include <cmath>
#include <stdexcept>

namespace bubble {

void IncidentPulse::validate() const {
    if (kind == PulseKind::SmoothBump && !(T_p > 0.0))
        throw std::runtime_error("pulse support T_p must be > 0");
}

LambdaDerivs lambda_derivs(const IncidentPulse& pulse, double t) {
    if (pulse.kind == PulseKind::DeltaFront)
        throw std::runtime_error("delta_front pulse has no pointwise derivatives");
    pulse.validate();

    const double s = t / pulse.T_p;
    LambdaDerivs out;
    if (s <= 0.0 || s >= 1.0) return out;

    const double w = s * (1.0 - s);
    // exp(-1/w) underflows long before these terms matter.
    if (w < 1.0 / 700.0) return out;

    const double e = pulse.amplitude * std::exp(-1.0 / w);
    const double wp = 1.0 - 2.0 * s;
    const double phi1 = wp / (w * w);                      // d/ds of -1/w
    const double phi2 = (-2.0 * w - 2.0 * wp * wp) / (w * w * w);

    out.value = e;
    out.d1 = e * phi1 / pulse.T_p;
    out.d2 = e * (phi2 + phi1 * phi1) / (pulse.T_p * pulse.T_p);
    return out;
}

namespace {

double source_distance(const IncidentPulse& pulse, const Vec3& x) {
    const double r = (x - pulse.x0).norm();
    if (r <= 0.0) throw std::runtime_error("incident field singular at the source point");
    return r;
}

}  // namespace

double u_i(const IncidentPulse& pulse, double c0, const Vec3& x, double t) {
    const double r = source_distance(pulse, x);
    return lambda_derivs(pulse, t - r / c0).value / r;
}

double u_i_tt(const IncidentPulse& pulse, double c0, const Vec3& x, double t) {
    const double r = source_distance(pulse, x);
    return lambda_derivs(pulse, t - r / c0).d2 / r;
}

Vec3 grad_u_i(const IncidentPulse& pulse, double c0, const Vec3& x, double t) {
    const double r = source_distance(pulse, x);
    const LambdaDerivs l = lambda_derivs(pulse, t - r / c0);
    const Vec3 rhat = (x - pulse.x0) / r;
    return rhat * (-l.d1 / (c0 * r) - l.value / (r * r));
}

}  // namespace bubble
