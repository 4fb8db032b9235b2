#include "bubble/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubble {

void TuningProblem::validate() const {
    if (!(target_peak > 0.0)) throw std::runtime_error("target_peak must be > 0");
    if (!(standoff_q >= 0.0 && standoff_q <= 1.0))
        throw std::runtime_error("standoff_q must be in [0, 1]");
    if (!(lo > 0.0 && hi > lo)) throw std::runtime_error("need 0 < lo < hi");
    if (!(tolerance > 0.0)) throw std::runtime_error("tolerance must be > 0");
    if (!(dt > 0.0)) throw std::runtime_error("dt must be > 0");
}

double peak_pressure(const MediumBubbleSpec& spec, const SurfaceMesh& reference_mesh,
                     const IncidentPulse& pulse, double standoff_q,
                     double time_horizon, double dt, const Vec3& probe_direction,
                     const ShapeFactors* reference_factors) {
    const ShapeFactors factors = reference_factors
                                     ? *reference_factors
                                     : shape_factors(reference_mesh, QuadratureConfig{});
    const DerivedConstants constants = derive_constants(spec, factors);
    const SurfaceMesh bubble = scale_translate(reference_mesh, spec.delta, spec.z);

    // Probe at dist(x, Omega) = delta^q past the support point along the
    // probe direction (exact standoff for convex shapes).
    const Vec3 dir = probe_direction.normalized();
    double support = 0.0;
    for (const auto& v : bubble.vertices) support = std::max(support, dot(v - spec.z, dir));
    const double standoff = std::pow(spec.delta, standoff_q);
    const Vec3 x = spec.z + dir * (support + standoff);

    const double arrival =
        ((spec.z - pulse.x0).norm() + (x - spec.z).norm()) / constants.c0;
    double t1 = time_horizon;
    if (t1 <= 0.0)
        t1 = arrival + pulse.T_p + 3.0 * (2.0 * M_PI / constants.omega_M);

    FieldRequest request;
    request.points = {x};
    request.t0 = std::max(0.0, arrival - dt);
    request.t1 = t1;
    request.dt = dt;
    const auto samples = evaluate_dominant(spec, constants, bubble, pulse, request);

    double peak = 0.0;
    for (const auto& s : samples) peak = std::max(peak, std::abs(s.u_s));
    return peak;
}

namespace {

double evaluate_theta(const TuningProblem& prob, const SurfaceMesh& mesh,
                      const ShapeFactors& factors, double theta) {
    MediumBubbleSpec spec = prob.fixed;
    if (prob.free_parameter == FreeParameter::KcBar)
        spec.k_c_bar = theta;
    else
        spec.delta = theta;
    return peak_pressure(spec, mesh, prob.pulse, prob.standoff_q, prob.time_horizon,
                         prob.dt, prob.probe_direction, &factors);
}

}  // namespace

TuningResult tune(const TuningProblem& problem) {
    problem.validate();
    const SurfaceMesh mesh = make_icosphere(1.0, problem.mesh_subdivisions);
    const ShapeFactors factors = shape_factors(mesh, QuadratureConfig{});

    TuningResult result;
    result.parameter =
        problem.free_parameter == FreeParameter::KcBar ? "k_c_bar" : "delta";

    auto g = [&](double theta) {
        return evaluate_theta(problem, mesh, factors, theta) - problem.target_peak;
    };

    double a = problem.lo, b = problem.hi;
    double ga = g(a), gb = g(b);
    result.iterations = 2;
    if (ga == 0.0) { result.value = a; result.achieved_peak = problem.target_peak; return result; }
    if (gb == 0.0) { result.value = b; result.achieved_peak = problem.target_peak; return result; }
    if (ga * gb > 0.0) throw std::runtime_error("target unattainable in bounds");

    // Monotonicity scan; more than one sign change means several roots and we
    // keep the first bracketed one.
    {
        int changes = 0;
        double prev = ga;
        for (int i = 1; i <= 16; ++i) {
            const double theta = a + (b - a) * i / 16.0;
            const double gi = (i == 16) ? gb : g(theta);
            if (prev * gi < 0.0) {
                if (++changes == 1) { b = theta; gb = gi; }
                // a stays at the left end of the first bracket
            } else if (changes == 0) {
                a = theta;
                ga = gi;
            }
            prev = gi;
        }
        result.iterations += 15;
        if (changes > 1)
            result.warnings.push_back("objective is not monotone in bounds; returning first bracketed root");
    }

    double mid = 0.5 * (a + b), gm = 0.0;
    while (result.iterations < 200) {
        mid = 0.5 * (a + b);
        gm = g(mid);
        ++result.iterations;
        if (std::abs(gm) <= problem.tolerance * problem.target_peak &&
            b - a <= problem.tolerance * std::abs(mid))
            break;
        if (b - a <= 1e-15 * std::abs(mid)) {
            result.warnings.push_back("bracket exhausted before reaching tolerance");
            break;
        }
        if (ga * gm < 0.0) {
            b = mid;
        } else {
            a = mid;
            ga = gm;
        }
    }
    result.value = mid;
    result.achieved_peak = gm + problem.target_peak;
    return result;
}

}  // namespace bubble
