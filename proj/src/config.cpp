#include "bubble/config.hpp"

#include <fstream>
#include <stdexcept>

namespace bubble {

using nlohmann::json;

namespace {

Vec3 parse_vec3(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error("config: \"" + key + "\" must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw std::runtime_error("config: \"" + key + "\" must be a number");
    return j[key].get<double>();
}

}  // namespace

MediumBubbleSpec parse_spec(const json& j) {
    MediumBubbleSpec spec;
    spec.rho_m = get_number(j, "rho_m", spec.rho_m);
    spec.k_m = get_number(j, "k_m", spec.k_m);
    spec.delta = get_number(j, "delta", spec.delta);
    spec.rho_c_bar = get_number(j, "rho_c_bar", spec.rho_c_bar);
    spec.k_c_bar = get_number(j, "k_c_bar", spec.k_c_bar);
    if (j.contains("z")) spec.z = parse_vec3(j["z"], "z");
    spec.validate();
    return spec;
}

IncidentPulse parse_pulse(const json& j_pulse, const json& j_root) {
    IncidentPulse pulse;
    if (!j_pulse.is_null()) {
        if (j_pulse.contains("kind")) {
            const std::string kind = j_pulse["kind"].get<std::string>();
            if (kind == "smooth_bump")
                pulse.kind = PulseKind::SmoothBump;
            else if (kind == "delta_front")
                pulse.kind = PulseKind::DeltaFront;
            else
                throw std::runtime_error("config: unknown pulse kind \"" + kind + "\"");
        }
        pulse.T_p = get_number(j_pulse, "T_p", pulse.T_p);
        pulse.amplitude = get_number(j_pulse, "amplitude", pulse.amplitude);
    }
    if (j_root.contains("x0")) pulse.x0 = parse_vec3(j_root["x0"], "x0");
    pulse.validate();
    return pulse;
}

SurfaceMesh MeshSource::build() const {
    SurfaceMesh mesh;
    if (shape == "icosphere") {
        mesh = make_icosphere(radius, subdivisions);
    } else if (shape == "ellipsoid") {
        mesh = make_ellipsoid(radii.x, radii.y, radii.z, subdivisions);
    } else if (shape == "file") {
        if (path.empty()) throw std::runtime_error("mesh source: file shape needs a path");
        mesh = load_mesh(path);
    } else {
        throw std::runtime_error("mesh source: unknown shape \"" + shape + "\"");
    }
    validate_mesh(mesh);
    return mesh;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }

    RunConfig cfg;
    cfg.spec = parse_spec(j);
    cfg.pulse = parse_pulse(j.contains("pulse") ? j["pulse"] : json(), j);

    if (j.contains("mesh")) {
        const json& m = j["mesh"];
        if (m.contains("shape")) cfg.mesh_source.shape = m["shape"].get<std::string>();
        if (m.contains("subdivisions"))
            cfg.mesh_source.subdivisions = m["subdivisions"].get<int>();
        cfg.mesh_source.radius = get_number(m, "radius", cfg.mesh_source.radius);
        if (m.contains("radii")) cfg.mesh_source.radii = parse_vec3(m["radii"], "radii");
        if (m.contains("path")) cfg.mesh_source.path = m["path"].get<std::string>();
    }

    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        if (q.contains("regular_order"))
            cfg.quadrature.regular_order = q["regular_order"].get<int>();
        if (q.contains("singular_subdivision_depth"))
            cfg.quadrature.singular_subdivision_depth =
                q["singular_subdivision_depth"].get<int>();
        cfg.quadrature.near_singular_threshold =
            get_number(q, "near_singular_threshold", cfg.quadrature.near_singular_threshold);
        cfg.quadrature.validate();
    }

    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    return cfg;
}

json to_json(const ShapeFactors& f) {
    return json{{"A_dB", f.A_dB},
                {"area_B", f.area_B},
                {"vol_B", f.vol_B},
                {"A_profile", f.A_profile}};
}

json to_json(const DerivedConstants& d) {
    return json{{"c0", d.c0},
                {"alpha", d.alpha},
                {"beta", d.beta},
                {"gamma", d.gamma},
                {"A_dB", d.A_dB},
                {"A_dOmega", d.A_dOmega},
                {"omega_M", d.omega_M},
                {"p", d.p},
                {"vol_B", d.vol_B},
                {"vol_Omega", d.vol_Omega},
                {"prefactor", d.prefactor},
                {"prefactor_via_D", d.prefactor_via_D},
                {"prefactor_exact", d.prefactor_exact}};
}

json to_json(const OracleReport& r) {
    return json{{"name", r.name},
                {"max_error", r.max_error},
                {"tolerance", r.tolerance},
                {"passed", r.passed},
                {"details", r.details}};
}

json to_json(const TuningResult& r) {
    return json{{"parameter", r.parameter},
                {"value", r.value},
                {"achieved_peak", r.achieved_peak},
                {"iterations", r.iterations},
                {"warnings", r.warnings}};
}

}  // namespace bubble
