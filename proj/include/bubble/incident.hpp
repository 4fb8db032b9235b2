#pragma once

#include <array>
#include <string>

#include "bubble/vec3.hpp"

namespace bubble {

enum class PulseKind { SmoothBump, DeltaFront };

/// Causal incident point source u^i(x,t) = lambda(t - |x-x0|/c0) / |x-x0|.
/// The smooth bump lambda(t) = amplitude * exp(-1/(s(1-s))), s = t/T_p, is
/// C-infinity with support exactly (0, T_p), so zero initial data holds
/// exactly. The delta front is the idealized wavefront; it has no pointwise
/// derivatives and is only consumed by the closed-form secondary wave.
struct IncidentPulse {
    PulseKind kind = PulseKind::SmoothBump;
    double T_p = 1.0;        // support length, s
    double amplitude = 1.0;  // peak scale factor
    Vec3 x0{10, 0, 0};       // source location, m

    void validate() const;
};

struct LambdaDerivs {
    double value = 0.0, d1 = 0.0, d2 = 0.0;
};

/// (lambda, lambda', lambda'') at time t; zero outside (0, T_p).
LambdaDerivs lambda_derivs(const IncidentPulse& pulse, double t);

double u_i(const IncidentPulse& pulse, double c0, const Vec3& x, double t);
double u_i_tt(const IncidentPulse& pulse, double c0, const Vec3& x, double t);

/// Gradient of u^i at x (analytic; needs lambda').
Vec3 grad_u_i(const IncidentPulse& pulse, double c0, const Vec3& x, double t);

}  // namespace bubble
