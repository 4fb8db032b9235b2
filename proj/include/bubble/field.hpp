#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bubble/incident.hpp"
#include "bubble/physics.hpp"

namespace bubble {

struct FieldRequest {
    std::vector<Vec3> points;
    double t0 = 0.0, t1 = 1.0, dt = 1e-3;  // uniform time grid
    bool want_decomposition = false;

    void validate() const;
    int num_times() const;
    double time(int i) const { return t0 + i * dt; }
};

struct FieldSample {
    Vec3 point;
    double time = 0.0;
    double u_s = 0.0;
    double u1 = 0.0;          // primary reflected wave
    double u2 = 0.0;          // secondary reflected wave
    double q_effective = 0.0; // log_delta of the standoff distance
};

/// Sign pair recombining the decomposition: u_s = kSigmaU1*U1 + kSigmaU2*U2.
/// Fixed once by the integration-by-parts oracle in the validation module.
inline constexpr double kSigmaU1 = +1.0;
inline constexpr double kSigmaU2 = -1.0;

/// int_0^s sin(omega (s - tau)) f(tau) dtau by composite Simpson with step
/// <= dt (s is snapped onto an even uniform grid, f evaluated exactly at the
/// nodes). Returns 0 for s <= 0.
double sine_convolution(double omega, const std::function<double(double)>& f,
                        double s, double dt);

/// Dominant scattered field at every (point, time) of the request; fills the
/// U1/U2 decomposition when asked. Points must be strictly exterior to the
/// bubble mesh. OpenMP over points; deterministic output ordering.
std::vector<FieldSample> evaluate_dominant(const MediumBubbleSpec& spec,
                                           const DerivedConstants& constants,
                                           const SurfaceMesh& bubble_mesh,
                                           const IncidentPulse& pulse,
                                           const FieldRequest& request);
/// Serial reference; bitwise identical to evaluate_dominant.
std::vector<FieldSample> evaluate_dominant_serial(const MediumBubbleSpec& spec,
                                                  const DerivedConstants& constants,
                                                  const SurfaceMesh& bubble_mesh,
                                                  const IncidentPulse& pulse,
                                                  const FieldRequest& request);

/// Closed-form secondary wave for the delta-front pulse, gated by causality.
double delta_front_u2(const MediumBubbleSpec& spec, const DerivedConstants& constants,
                      const SurfaceMesh& bubble_mesh, const IncidentPulse& pulse,
                      const Vec3& x, double t);

/// CSV with header "x,y,z,t,u_s,u1,u2,q_eff", 17 significant digits.
void write_field_csv(const std::string& path, const std::vector<FieldSample>& samples);

}  // namespace bubble
