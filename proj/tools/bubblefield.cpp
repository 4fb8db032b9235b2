// Batch front-end for the dominant bubble-field toolkit.
//
// Subcommands: mesh, factors, field, tune, validate. JSON for configs and
// reports, CSV for field grids, OFF for meshes. Exit codes: 0 success,
// 1 usage error, 2 validation failure, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "bubble/config.hpp"
#include "bubble/field.hpp"
#include "bubble/geometry.hpp"
#include "bubble/tuner.hpp"
#include "bubble/validation.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

void apply_thread_cap() {
    if (const char* env = std::getenv("BUBBLE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
}

std::vector<bubble::Vec3> load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path);
    std::vector<bubble::Vec3> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream row(line);
        bubble::Vec3 p;
        if (!(row >> p.x >> p.y >> p.z)) {
            // Allow a single header line; anything else is malformed.
            if (points.empty() && line.find_first_not_of(" xyz") == std::string::npos)
                continue;
            throw std::runtime_error("malformed point row: " + line);
        }
        points.push_back(p);
    }
    if (points.empty()) throw std::runtime_error("points file is empty: " + path);
    return points;
}

struct MeshArgs {
    std::string shape, in_path, out_path, radii_csv;
    int subdiv = 2;
};

int run_mesh(const MeshArgs& args) {
    bubble::SurfaceMesh mesh;
    if (!args.in_path.empty()) {
        mesh = bubble::load_mesh(args.in_path);
    } else if (args.shape == "icosphere") {
        mesh = bubble::make_icosphere(1.0, args.subdiv);
    } else if (args.shape == "ellipsoid") {
        double a = 0, b = 0, c = 0;
        char c1 = 0, c2 = 0;
        std::istringstream radii(args.radii_csv);
        if (!(radii >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
            throw std::runtime_error("--radii expects a,b,c");
        mesh = bubble::make_ellipsoid(a, b, c, args.subdiv);
    } else {
        std::cerr << "mesh: need --shape icosphere|ellipsoid or --in FILE\n";
        return kExitUsage;
    }
    bubble::validate_mesh(mesh);
    if (!args.out_path.empty()) bubble::save_off(mesh, args.out_path);

    const int v = mesh.num_vertices(), f = mesh.num_faces();
    json summary{{"vertices", v},
                 {"edges", 3 * f / 2},
                 {"faces", f},
                 {"area", bubble::area(mesh)},
                 {"volume", bubble::volume(mesh)}};
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

int run_factors(const std::string& mesh_path) {
    const bubble::SurfaceMesh mesh = bubble::load_mesh(mesh_path);
    bubble::validate_mesh(mesh);
    const bubble::ShapeFactors factors =
        bubble::shape_factors(mesh, bubble::QuadratureConfig{});
    std::cout << bubble::to_json(factors).dump(2) << "\n";
    return kExitOk;
}

struct FieldArgs {
    std::string config_path, points_path, out_path;
    double t0 = 0.0, t1 = 1.0, dt = 1e-3;
    bool decompose = false;
};

int run_field(const FieldArgs& args) {
    const bubble::RunConfig cfg = bubble::load_run_config(args.config_path);
    const bubble::SurfaceMesh reference = cfg.mesh_source.build();
    const bubble::ShapeFactors factors = bubble::shape_factors(reference, cfg.quadrature);
    const bubble::DerivedConstants constants = bubble::derive_constants(cfg.spec, factors);
    const bubble::SurfaceMesh bubble_mesh =
        bubble::scale_translate(reference, cfg.spec.delta, cfg.spec.z);

    bubble::FieldRequest request;
    request.points = load_points_csv(args.points_path);
    request.t0 = args.t0;
    request.t1 = args.t1;
    request.dt = args.dt;
    request.want_decomposition = args.decompose;
    request.validate();
    for (size_t i = 0; i < request.points.size(); ++i)
        if (bubble::point_inside(bubble_mesh, request.points[i]))
            throw std::runtime_error("point " + std::to_string(i) +
                                     " is interior to the bubble");

    // All inputs are good; only now touch the filesystem.
    const auto samples = bubble::evaluate_dominant(cfg.spec, constants, bubble_mesh,
                                                   cfg.pulse, request);
    bubble::write_field_csv(args.out_path, samples);

    json meta{{"constants", bubble::to_json(constants)},
              {"shape_factors", bubble::to_json(factors)},
              {"sign_pair", {bubble::kSigmaU1, bubble::kSigmaU2}},
              {"num_points", request.points.size()},
              {"num_times", request.num_times()},
              {"format_version", 1}};
    std::ofstream meta_out(args.out_path + ".meta.json");
    meta_out << meta.dump(2) << "\n";
    std::cout << "wrote " << samples.size() << " samples to " << args.out_path << "\n";
    return kExitOk;
}

struct TuneArgs {
    std::string config_path, free_name = "k_c_bar";
    double target = 0.0, q = 0.0, lo = 0.0, hi = 0.0;
    double dt = 1e-2, horizon = 0.0, tolerance = 1e-6;
};

int run_tune(const TuneArgs& args) {
    const bubble::RunConfig cfg = bubble::load_run_config(args.config_path);
    bubble::TuningProblem problem;
    problem.fixed = cfg.spec;
    problem.pulse = cfg.pulse;
    problem.target_peak = args.target;
    problem.standoff_q = args.q;
    problem.lo = args.lo;
    problem.hi = args.hi;
    if (args.free_name == "k_c_bar")
        problem.free_parameter = bubble::FreeParameter::KcBar;
    else if (args.free_name == "delta")
        problem.free_parameter = bubble::FreeParameter::Delta;
    else
        throw CLI::ValidationError("--free must be k_c_bar or delta");
    problem.mesh_subdivisions = cfg.mesh_source.subdivisions;
    problem.dt = args.dt;
    problem.time_horizon = args.horizon;
    problem.tolerance = args.tolerance;

    const bubble::TuningResult result = bubble::tune(problem);
    std::cout << bubble::to_json(result).dump(2) << "\n";
    return kExitOk;
}

int run_validate(const std::string& suite, const std::string& levels_csv) {
    std::vector<int> levels;
    {
        std::istringstream in(levels_csv);
        std::string item;
        while (std::getline(in, item, ',')) levels.push_back(std::stoi(item));
    }
    if (levels.empty()) throw std::runtime_error("--mesh-levels must be nonempty");

    std::vector<bubble::OracleReport> reports;
    if (suite == "all" || suite == "identities" || suite == "geometry") {
        for (const auto& r : bubble::identity_suite(levels)) reports.push_back(r);
    }
    if (suite == "all" || suite == "ode") {
        reports.push_back(bubble::duhamel_vs_rk4(
            1.0, [](double t) { return std::sin(t); }, 20.0, 1e-3));
        bubble::IncidentPulse bump;
        reports.push_back(bubble::duhamel_vs_rk4(
            1e-4, [&](double t) { return bubble::lambda_derivs(bump, t).value; }, 2.0,
            1e-4));
    }
    if (reports.empty()) throw std::runtime_error("unknown suite: " + suite);

    json out = json::array();
    bool all_passed = true;
    for (const auto& r : reports) {
        out.push_back(bubble::to_json(r));
        all_passed = all_passed && r.passed;
    }
    std::cout << out.dump(2) << "\n";
    return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"Dominant acoustic field of a resonating micro-bubble"};
    app.require_subcommand(1);

    MeshArgs mesh_args;
    auto* mesh_cmd = app.add_subcommand("mesh", "Build or convert a surface mesh");
    mesh_cmd->add_option("--shape", mesh_args.shape, "icosphere or ellipsoid");
    mesh_cmd->add_option("--in", mesh_args.in_path, "input OFF/OBJ file");
    mesh_cmd->add_option("--subdiv", mesh_args.subdiv, "icosphere subdivisions");
    mesh_cmd->add_option("--radii", mesh_args.radii_csv, "ellipsoid semi-axes a,b,c");
    mesh_cmd->add_option("--out", mesh_args.out_path, "output OFF file");

    std::string factors_mesh;
    auto* factors_cmd = app.add_subcommand("factors", "Shape factors of a mesh");
    factors_cmd->add_option("--mesh", factors_mesh, "mesh file")->required();

    FieldArgs field_args;
    auto* field_cmd = app.add_subcommand("field", "Evaluate the dominant field");
    field_cmd->add_option("--config", field_args.config_path)->required();
    field_cmd->add_option("--points", field_args.points_path)->required();
    field_cmd->add_option("--t0", field_args.t0);
    field_cmd->add_option("--t1", field_args.t1)->required();
    field_cmd->add_option("--dt", field_args.dt);
    field_cmd->add_flag("--decompose", field_args.decompose);
    field_cmd->add_option("--out", field_args.out_path)->required();

    TuneArgs tune_args;
    auto* tune_cmd = app.add_subcommand("tune", "Invert a parameter for a target peak");
    tune_cmd->add_option("--config", tune_args.config_path)->required();
    tune_cmd->add_option("--target", tune_args.target)->required();
    tune_cmd->add_option("--q", tune_args.q);
    tune_cmd->add_option("--free", tune_args.free_name, "k_c_bar or delta");
    tune_cmd->add_option("--lo", tune_args.lo)->required();
    tune_cmd->add_option("--hi", tune_args.hi)->required();
    tune_cmd->add_option("--dt", tune_args.dt, "time step of the peak search");
    tune_cmd->add_option("--horizon", tune_args.horizon, "0 = auto from arrival + ringing");
    tune_cmd->add_option("--tolerance", tune_args.tolerance);

    std::string validate_suite = "all", validate_levels = "2,3,4";
    auto* validate_cmd = app.add_subcommand("validate", "Run the oracle suite");
    validate_cmd->add_option("--suite", validate_suite, "all|geometry|ode|identities");
    validate_cmd->add_option("--mesh-levels", validate_levels, "comma-separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (mesh_cmd->parsed()) return run_mesh(mesh_args);
        if (factors_cmd->parsed()) return run_factors(factors_mesh);
        if (field_cmd->parsed()) return run_field(field_args);
        if (tune_cmd->parsed()) return run_tune(tune_args);
        if (validate_cmd->parsed()) return run_validate(validate_suite, validate_levels);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        if (what.find("unattainable") != std::string::npos ||
            what.find("oracle") != std::string::npos)
            return kExitNumerical;
        return kExitValidation;
    }
    return kExitUsage;
}
