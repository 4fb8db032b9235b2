#pragma once

#include <string>
#include <vector>

#include "bubble/field.hpp"

namespace bubble {

enum class FreeParameter { KcBar, Delta };

struct TuningProblem {
    double target_peak = 0.0;       // Pa
    double standoff_q = 0.0;        // probe at dist(x, Omega) = delta^q
    FreeParameter free_parameter = FreeParameter::KcBar;
    double lo = 0.0, hi = 0.0;      // bracket for the free parameter
    MediumBubbleSpec fixed;         // all other physical parameters
    IncidentPulse pulse;
    double tolerance = 1e-6;        // relative, on the achieved peak
    Vec3 probe_direction{1, 0, 0};
    double time_horizon = 0.0;      // 0: choose from arrival + pulse + ringing
    double dt = 1e-3;
    int mesh_subdivisions = 3;

    void validate() const;
};

struct TuningResult {
    std::string parameter;
    double value = 0.0;
    double achieved_peak = 0.0;
    int iterations = 0;
    std::vector<std::string> warnings;
};

/// Max over the time grid of |u_s| at a probe point placed at standoff
/// distance delta^q from the bubble surface along probe_direction. Pass the
/// reference-mesh shape factors when they are already known (they do not
/// depend on delta or the material parameters, so the tuner reuses them).
double peak_pressure(const MediumBubbleSpec& spec, const SurfaceMesh& reference_mesh,
                     const IncidentPulse& pulse, double standoff_q,
                     double time_horizon, double dt,
                     const Vec3& probe_direction = Vec3{1, 0, 0},
                     const ShapeFactors* reference_factors = nullptr);

/// Bracketed root find of peak(theta) = target over [lo, hi]. Throws
/// "target unattainable in bounds" when the endpoint peaks do not bracket
/// the target; attaches a warning when a 16-point scan sees the objective
/// change sign more than once.
TuningResult tune(const TuningProblem& problem);

}  // namespace bubble
