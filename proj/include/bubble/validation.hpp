#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bubble/field.hpp"

namespace bubble {

struct OracleReport {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string details;

    static OracleReport make(std::string name, double max_error, double tolerance,
                             std::string details = {});
};

/// Fixed-step classical Runge-Kutta solution of p Y'' + Y = g, Y(0)=Y'(0)=0,
/// sampled on the uniform grid {0, dt, ..., horizon}.
std::vector<double> rk4_resonator(double p, const std::function<double(double)>& g,
                                  double horizon, double dt);

/// Duhamel closed form Y(t) = p^{-1/2} int_0^t sin(p^{-1/2}(t-tau)) g(tau) dtau
/// against the RK4 path, max pointwise difference on shared check times.
OracleReport duhamel_vs_rk4(double p, const std::function<double(double)>& g,
                            double horizon, double dt);

/// Surface flux of the incident wave against the pointwise volume surrogate
/// (rho_m/k_m) |Omega| u_tt(z, t); both sides refer to the same polyhedron so
/// the residual isolates the Taylor remainder.
struct FluxComparison {
    double flux = 0.0;
    double surrogate = 0.0;
    double residual() const;
};
FluxComparison incident_flux_comparison(const SurfaceMesh& bubble_mesh,
                                        const IncidentPulse& pulse,
                                        const MediumBubbleSpec& spec, double t);
OracleReport incident_flux_vs_pointwise(const SurfaceMesh& bubble_mesh,
                                        const IncidentPulse& pulse,
                                        const MediumBubbleSpec& spec, double t);

/// Numerically picks the sign pair (s1, s2) with u_s = s1 U1 + s2 U2 on a
/// reference configuration; aborts if neither pair reproduces the field.
std::pair<double, double> determine_decomposition_signs();

/// The release gate: Gauss identities, scaling laws, sphere oracles,
/// prefactor redundancy and the decomposition signs, at the given icosphere
/// refinement levels. Reports are sorted by name and bit-reproducible.
std::vector<OracleReport> identity_suite(const std::vector<int>& mesh_levels);

}  // namespace bubble
