#include "bubble/field.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bubble {

void FieldRequest::validate() const {
    if (!(dt > 0.0)) throw std::runtime_error("dt must be > 0");
    if (!(t0 >= 0.0)) throw std::runtime_error("t0 must be >= 0");
    if (!(t1 >= t0)) throw std::runtime_error("t1 must be >= t0");
    if (points.empty()) throw std::runtime_error("no evaluation points");
}

int FieldRequest::num_times() const {
    return static_cast<int>(std::floor((t1 - t0) / dt + 1e-9)) + 1;
}

double sine_convolution(double omega, const std::function<double(double)>& f,
                        double s, double dt) {
    if (s <= 0.0) return 0.0;
    int n = 2 * static_cast<int>(std::ceil(s / (2.0 * dt)));
    if (n < 2) n = 2;
    const double h = s / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double tau = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::sin(omega * (s - tau)) * f(tau);
    }
    return acc * h / 3.0;
}

namespace {

struct PointContext {
    double Q = 0.0;          // boundary-averaged single layer at the point
    double travel = 0.0;     // c0^{-1} |x - z|
    double q_eff = 0.0;
};

PointContext make_context(const MediumBubbleSpec& spec, const DerivedConstants& constants,
                          const SurfaceMesh& bubble_mesh, const Vec3& x) {
    if (point_inside(bubble_mesh, x))
        throw std::runtime_error("interior evaluation point (field not defined inside the bubble)");
    PointContext ctx;
    ctx.Q = single_layer_mean(bubble_mesh, x);
    ctx.travel = (x - spec.z).norm() / constants.c0;
    const double standoff = distance_to_surface(bubble_mesh, x);
    const double q = std::log(standoff) / std::log(spec.delta);
    ctx.q_eff = std::isfinite(q) ? q : 0.0;
    return ctx;
}

void evaluate_point(const MediumBubbleSpec& spec, const DerivedConstants& constants,
                    const IncidentPulse& pulse, const FieldRequest& request,
                    const PointContext& ctx, const Vec3& x,
                    FieldSample* out) {
    const double c0 = constants.c0;
    const double omega = constants.omega_M;
    const double arrival = (spec.z - pulse.x0).norm() / c0;  // pulse reaches z
    const double coeff = constants.prefactor * ctx.Q;

    const int nt = request.num_times();
    for (int i = 0; i < nt; ++i) {
        const double t = request.time(i);
        FieldSample& s = out[i];
        s.point = x;
        s.time = t;
        s.q_effective = ctx.q_eff;

        const double ret = t - ctx.travel;  // retarded time at the bubble
        if (ret <= arrival) continue;       // integrand identically zero

        s.u_s = coeff * sine_convolution(
                            omega, [&](double tau) { return u_i_tt(pulse, c0, spec.z, tau); },
                            ret, request.dt);
        if (request.want_decomposition) {
            s.u1 = omega * coeff * u_i(pulse, c0, spec.z, ret);
            s.u2 = omega * omega * coeff *
                   sine_convolution(
                       omega, [&](double tau) { return u_i(pulse, c0, spec.z, tau); },
                       ret, request.dt);
        }
    }
}

std::vector<FieldSample> evaluate_impl(const MediumBubbleSpec& spec,
                                       const DerivedConstants& constants,
                                       const SurfaceMesh& bubble_mesh,
                                       const IncidentPulse& pulse,
                                       const FieldRequest& request, bool parallel) {
    request.validate();
    pulse.validate();
    if (pulse.kind != PulseKind::SmoothBump)
        throw std::runtime_error("evaluate_dominant needs a smooth_bump pulse");

    const int np = static_cast<int>(request.points.size());
    const int nt = request.num_times();

    // Interior check and Q evaluation up front, before any output is filled.
    std::vector<PointContext> ctx(np);
    for (int p = 0; p < np; ++p)
        ctx[p] = make_context(spec, constants, bubble_mesh, request.points[p]);

    std::vector<FieldSample> samples(static_cast<size_t>(np) * nt);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int p = 0; p < np; ++p)
        evaluate_point(spec, constants, pulse, request, ctx[p], request.points[p],
                       samples.data() + static_cast<size_t>(p) * nt);
    (void)parallel;
    return samples;
}

}  // namespace

std::vector<FieldSample> evaluate_dominant(const MediumBubbleSpec& spec,
                                           const DerivedConstants& constants,
                                           const SurfaceMesh& bubble_mesh,
                                           const IncidentPulse& pulse,
                                           const FieldRequest& request) {
    return evaluate_impl(spec, constants, bubble_mesh, pulse, request, true);
}

std::vector<FieldSample> evaluate_dominant_serial(const MediumBubbleSpec& spec,
                                                  const DerivedConstants& constants,
                                                  const SurfaceMesh& bubble_mesh,
                                                  const IncidentPulse& pulse,
                                                  const FieldRequest& request) {
    return evaluate_impl(spec, constants, bubble_mesh, pulse, request, false);
}

double delta_front_u2(const MediumBubbleSpec& spec, const DerivedConstants& constants,
                      const SurfaceMesh& bubble_mesh, const IncidentPulse& pulse,
                      const Vec3& x, double t) {
    if (pulse.kind != PulseKind::DeltaFront)
        throw std::runtime_error("delta_front_u2 needs a delta_front pulse");
    const double c0 = constants.c0;
    const double r_source = (spec.z - pulse.x0).norm();
    const double phase_time = t - (x - spec.z).norm() / c0 - r_source / c0;
    if (phase_time <= 0.0) return 0.0;  // Heaviside causality gate
    const double omega = constants.omega_M;
    const double Q = single_layer_mean(bubble_mesh, x);
    return omega * omega * constants.prefactor * Q * std::sin(omega * phase_time) / r_source;
}

void write_field_csv(const std::string& path, const std::vector<FieldSample>& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV: " + path);
    out.precision(17);
    out << "x,y,z,t,u_s,u1,u2,q_eff\n";
    for (const auto& s : samples) {
        out << s.point.x << ',' << s.point.y << ',' << s.point.z << ',' << s.time << ','
            << s.u_s << ',' << s.u1 << ',' << s.u2 << ',' << s.q_effective << '\n';
    }
    if (!out) throw std::runtime_error("CSV write failed: " + path);
}

}  // namespace bubble
