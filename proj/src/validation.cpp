#include "bubble/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bubble {

OracleReport OracleReport::make(std::string name, double max_error, double tolerance,
                                std::string details) {
    OracleReport r;
    r.name = std::move(name);
    r.max_error = max_error;
    r.tolerance = tolerance;
    r.passed = max_error <= tolerance;
    r.details = std::move(details);
    return r;
}

std::vector<double> rk4_resonator(double p, const std::function<double(double)>& g,
                                  double horizon, double dt) {
    if (!(p > 0.0)) throw std::runtime_error("resonator p must be > 0");
    if (!(dt > 0.0 && dt <= horizon)) throw std::runtime_error("bad RK4 step");
    // At least 50 steps per resonant period 2 pi sqrt(p).
    const double max_step = 2.0 * M_PI * std::sqrt(p) / 50.0;
    const int n = static_cast<int>(std::ceil(horizon / std::min(dt, max_step)));
    const double h = horizon / n;

    auto rhs = [&](double t, double y, double v, double* dy, double* dv) {
        *dy = v;
        *dv = (g(t) - y) / p;
    };

    std::vector<double> out;
    out.reserve(n + 1);
    double y = 0.0, v = 0.0;
    out.push_back(y);
    for (int i = 0; i < n; ++i) {
        const double t = i * h;
        double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v;
        rhs(t, y, v, &k1y, &k1v);
        rhs(t + h / 2, y + h / 2 * k1y, v + h / 2 * k1v, &k2y, &k2v);
        rhs(t + h / 2, y + h / 2 * k2y, v + h / 2 * k2v, &k3y, &k3v);
        rhs(t + h, y + h * k3y, v + h * k3v, &k4y, &k4v);
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
        out.push_back(y);
    }
    return out;
}

OracleReport duhamel_vs_rk4(double p, const std::function<double(double)>& g,
                            double horizon, double dt) {
    if (!(dt <= horizon / 100.0))
        throw std::runtime_error("duhamel_vs_rk4 needs dt <= horizon/100");
    const double max_step = 2.0 * M_PI * std::sqrt(p) / 50.0;
    const int n = static_cast<int>(std::ceil(horizon / std::min(dt, max_step)));
    const double h = horizon / n;
    const std::vector<double> rk4 = rk4_resonator(p, g, horizon, dt);

    const double rate = 1.0 / std::sqrt(p);
    const int stride = std::max(1, n / 40);
    double max_diff = 0.0;
    for (int i = 0; i <= n; i += stride) {
        const double t = i * h;
        const double duhamel = rate * sine_convolution(rate, g, t, h);
        max_diff = std::max(max_diff, std::abs(duhamel - rk4[i]));
    }
    std::ostringstream det;
    det << "p=" << p << " horizon=" << horizon << " step=" << h;
    return OracleReport::make("duhamel_vs_rk4", max_diff, 1e-6, det.str());
}

double FluxComparison::residual() const { return std::abs(flux - surrogate); }

FluxComparison incident_flux_comparison(const SurfaceMesh& bubble_mesh,
                                        const IncidentPulse& pulse,
                                        const MediumBubbleSpec& spec, double t) {
    const double c0 = std::sqrt(spec.k_m / spec.rho_m);

    // Degree-5 rule per flat panel; the integrand varies on the source
    // distance scale, far above the panel size, so this is effectively exact.
    const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
    const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
    const double bary[7][4] = {
        {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
        {a1, b1, b1, w1}, {b1, a1, b1, w1}, {b1, b1, a1, w1},
        {a2, b2, b2, w2}, {b2, a2, b2, w2}, {b2, b2, a2, w2}};

    FluxComparison cmp;
    for (int f = 0; f < bubble_mesh.num_faces(); ++f) {
        const auto& tri = bubble_mesh.faces[f];
        const Vec3& a = bubble_mesh.vertices[tri[0]];
        const Vec3& b = bubble_mesh.vertices[tri[1]];
        const Vec3& c = bubble_mesh.vertices[tri[2]];
        const Vec3 nu = face_normal(bubble_mesh, f);
        const double ar = face_area(bubble_mesh, f);
        for (const auto& q : bary) {
            const Vec3 y = a * q[0] + b * q[1] + c * q[2];
            cmp.flux += ar * q[3] * dot(grad_u_i(pulse, c0, y, t), nu);
        }
    }
    // The surrogate is anchored at the bubble center z, not the mesh centroid:
    // the linear Taylor term, and with it the delta^4 residual, lives in the
    // offset between the two.
    cmp.surrogate =
        (spec.rho_m / spec.k_m) * volume(bubble_mesh) * u_i_tt(pulse, c0, spec.z, t);
    return cmp;
}

OracleReport incident_flux_vs_pointwise(const SurfaceMesh& bubble_mesh,
                                        const IncidentPulse& pulse,
                                        const MediumBubbleSpec& spec, double t) {
    const FluxComparison cmp = incident_flux_comparison(bubble_mesh, pulse, spec, t);
    // Normalize by the peak surrogate over the pulse transit, not by the
    // instantaneous value: near zero crossings of u_tt the pointwise ratio is
    // unbounded even though the absolute residual stays O(delta^4).
    const double c0 = std::sqrt(spec.k_m / spec.rho_m);
    const double arrival = (spec.z - pulse.x0).norm() / c0;
    double peak = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double tau = arrival + pulse.T_p * i / 200.0;
        peak = std::max(peak, std::abs(u_i_tt(pulse, c0, spec.z, tau)));
    }
    const double scale = (spec.rho_m / spec.k_m) * volume(bubble_mesh) * peak;
    std::ostringstream det;
    det << "flux=" << cmp.flux << " surrogate=" << cmp.surrogate
        << " delta4_ratio=" << cmp.residual() / std::pow(spec.delta, 4);
    // Sanity gate only; the quantitative delta^4 order fit is done by the
    // suite across a delta sweep.
    return OracleReport::make("incident_flux_vs_pointwise", cmp.residual(),
                              1e-2 * scale + 1e-30, det.str());
}

namespace {

struct SignProbe {
    double residual_pp = 0.0;  // u_s - (+U1 +U2)
    double residual_pm = 0.0;  // u_s - (+U1 -U2)
    double residual_mp = 0.0;  // u_s - (-U1 +U2)
    double scale = 0.0;
};

SignProbe run_sign_probe() {
    MediumBubbleSpec spec;
    spec.rho_m = 1.0;
    spec.k_m = 1.0;
    spec.delta = 0.05;
    spec.z = {0, 0, 0};
    spec.rho_c_bar = 1.0;
    spec.k_c_bar = 1.0;

    IncidentPulse pulse;
    pulse.T_p = 1.0;
    pulse.amplitude = 1.0;
    pulse.x0 = {3, 0, 0};

    const SurfaceMesh B = make_icosphere(1.0, 2);
    const ShapeFactors factors = shape_factors(B, QuadratureConfig{});
    const DerivedConstants constants = derive_constants(spec, factors);
    const SurfaceMesh bubble = scale_translate(B, spec.delta, spec.z);

    FieldRequest req;
    req.points = {{0.5, 0.2, 0.0}};
    req.t0 = 2.0;
    req.t1 = 6.0;
    req.dt = 5e-4;
    req.want_decomposition = true;
    const auto samples = evaluate_dominant(spec, constants, bubble, pulse, req);

    SignProbe probe;
    for (const auto& s : samples) {
        probe.scale = std::max(probe.scale, std::abs(s.u_s));
        probe.residual_pp = std::max(probe.residual_pp, std::abs(s.u_s - (s.u1 + s.u2)));
        probe.residual_pm = std::max(probe.residual_pm, std::abs(s.u_s - (s.u1 - s.u2)));
        probe.residual_mp = std::max(probe.residual_mp, std::abs(s.u_s - (-s.u1 + s.u2)));
    }
    return probe;
}

}  // namespace

std::pair<double, double> determine_decomposition_signs() {
    const SignProbe probe = run_sign_probe();
    const double gate = 1e-6 * probe.scale;
    if (probe.residual_pm < gate) return {+1.0, -1.0};
    if (probe.residual_mp < gate) return {-1.0, +1.0};
    if (probe.residual_pp < gate) return {+1.0, +1.0};
    std::ostringstream msg;
    msg << "decomposition sign oracle failed: no sign pair reproduces the field "
        << "(residuals " << probe.residual_pm << ", " << probe.residual_mp << ", "
        << probe.residual_pp << " vs gate " << gate << ")";
    throw std::runtime_error(msg.str());
}

namespace {

void append_flux_identity_reports(const SurfaceMesh& mesh, int level,
                                  std::vector<OracleReport>* out) {
    std::mt19937 rng(1234u + level);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const double vol3 = 3.0 * volume(mesh);
    double max_rel = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Vec3 y{u(rng), u(rng), u(rng)};
        max_rel = std::max(max_rel, std::abs(flux_identity(mesh, y) - vol3) / vol3);
    }
    out->push_back(OracleReport::make("flux_identity_L" + std::to_string(level),
                                      max_rel, 1e-12, "3|Omega| check, 5 random y"));
}

void append_gauss_reports(const SurfaceMesh& mesh, int level,
                          std::vector<OracleReport>* out) {
    double max_err = 0.0;
    const int stride = std::max(1, mesh.num_faces() / 20);
    for (int f = 0; f < mesh.num_faces(); f += stride)
        max_err = std::max(max_err, std::abs(gauss_solid_angle(mesh, face_centroid(mesh, f)) - 0.5));
    out->push_back(OracleReport::make("gauss_boundary_half_L" + std::to_string(level),
                                      max_err, 2e-3, "panel centroids"));

    const double inner = std::abs(gauss_solid_angle(mesh, Vec3{0.05, -0.03, 0.02}) - 1.0);
    const double outer = std::abs(gauss_solid_angle(mesh, Vec3{5, 4, 3}));
    out->push_back(OracleReport::make("gauss_interior_exterior_L" + std::to_string(level),
                                      std::max(inner, outer), 1e-6, "full/zero solid angle"));
}

}  // namespace

std::vector<OracleReport> identity_suite(const std::vector<int>& mesh_levels) {
    if (mesh_levels.empty()) throw std::runtime_error("identity_suite needs mesh levels");
    std::vector<OracleReport> reports;

    std::vector<double> sphere_A;  // A_dB per level for the convergence report
    for (int level : mesh_levels) {
        const SurfaceMesh mesh = make_icosphere(1.0, level);
        append_flux_identity_reports(mesh, level, &reports);
        append_gauss_reports(mesh, level, &reports);

        const ShapeFactors factors = shape_factors(mesh, QuadratureConfig{});
        sphere_A.push_back(factors.A_dB);

        // Scaling and translation invariance of the shape factor; exact at any
        // refinement, so checking the coarsest level is enough.
        if (level == mesh_levels.front()) {
            const SurfaceMesh scaled = scale_translate(mesh, 0.01, Vec3{1, 2, 3});
            const ShapeFactors sf = shape_factors(scaled, QuadratureConfig{});
            const double rel =
                std::abs(sf.A_dB - 1e-4 * factors.A_dB) / (1e-4 * factors.A_dB);
            reports.push_back(OracleReport::make("A_scaling_L" + std::to_string(level),
                                                 rel, 1e-12,
                                                 "A(delta B + z) = delta^2 A(B)"));
        }
    }

    {
        // Q on the finest sphere level: exterior law and far-field monopole.
        const int level = *std::max_element(mesh_levels.begin(), mesh_levels.end());
        const SurfaceMesh mesh = make_icosphere(1.0, level);
        std::mt19937 rng(99u);
        std::uniform_real_distribution<double> ur(1.1, 10.0), ua(-1.0, 1.0);
        double max_err = 0.0;
        for (int i = 0; i < 20; ++i) {
            Vec3 dir{ua(rng), ua(rng), ua(rng)};
            if (dir.norm() < 1e-3) dir = {1, 0, 0};
            const double r = ur(rng);
            const Vec3 x = dir.normalized() * r;
            max_err = std::max(max_err, std::abs(single_layer_mean(mesh, x) * r - 1.0));
        }
        reports.push_back(OracleReport::make("Q_sphere_exterior", max_err, 1e-3,
                                             "Q(x)|x-z| = 1, 20 exterior points, L" +
                                                 std::to_string(level)));

        // Far-field monopole limit on a non-spherical shape: Q(x) -> 1/|x|.
        const SurfaceMesh ell = make_ellipsoid(2.0, 1.0, 1.0, level);
        const double far = 1e6 * mesh_diameter(ell);
        const double ff = std::abs(single_layer_mean(ell, Vec3{far, 0, 0}) * far - 1.0);
        reports.push_back(OracleReport::make("Q_far_field_monopole", ff, 1e-5,
                                             "2:1:1 ellipsoid, 10^6 diameters"));
    }

    if (sphere_A.size() >= 2) {
        const double last = sphere_A.back();
        const double prev = sphere_A[sphere_A.size() - 2];
        reports.push_back(OracleReport::make(
            "A_dB_self_convergence", std::abs(last - prev) / std::abs(last), 5e-3,
            "relative change across the last two levels"));
        const double exact = 8.0 * M_PI / 3.0;
        reports.push_back(OracleReport::make("A_dB_sphere_analytic",
                                             std::abs(last - exact) / exact, 1e-3,
                                             "8 pi / 3 oracle"));
    }

    {
        // Redundant prefactor assembly on the finest level.
        const int level = *std::max_element(mesh_levels.begin(), mesh_levels.end());
        const ShapeFactors factors = shape_factors(make_icosphere(1.0, level), QuadratureConfig{});
        MediumBubbleSpec spec;
        spec.rho_m = 1.0;
        spec.k_m = 1.0;
        spec.delta = 0.01;
        const DerivedConstants d = derive_constants(spec, factors);
        const double rel = std::abs(d.prefactor - d.prefactor_via_D) / d.prefactor;
        reports.push_back(OracleReport::make("prefactor_redundancy", rel, 1e-10,
                                             "Theorem route vs D-assembly route"));
    }

    {
        const auto [s1, s2] = determine_decomposition_signs();
        const double err = (s1 == kSigmaU1 && s2 == kSigmaU2) ? 0.0 : 1.0;
        std::ostringstream det;
        det << "oracle pair (" << s1 << ", " << s2 << ")";
        reports.push_back(OracleReport::make("decomposition_signs", err, 0.5, det.str()));
    }

    std::sort(reports.begin(), reports.end(),
              [](const OracleReport& a, const OracleReport& b) { return a.name < b.name; });
    return reports;
}

}  // namespace bubble
