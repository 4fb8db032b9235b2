#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bubble/config.hpp"

using namespace bubble;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    std::ofstream out(name);
    out << body;
    return name;
}

}  // namespace

TEST_CASE("full config round trip") {
    const std::string path = write_temp("cfg_full.json", R"({
        "rho_m": 1000.0, "k_m": 2.2e9, "delta": 0.01,
        "z": [0.1, 0.2, 0.3], "rho_c_bar": 1.2, "k_c_bar": 0.8,
        "x0": [5, 0, 0],
        "pulse": {"kind": "smooth_bump", "T_p": 0.5, "amplitude": 2.0},
        "mesh": {"shape": "icosphere", "subdivisions": 2, "radius": 1.0},
        "quadrature": {"regular_order": 3, "singular_subdivision_depth": 2},
        "output_dir": "out"
    })");
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.spec.rho_m == 1000.0);
    CHECK(cfg.spec.delta == 0.01);
    CHECK(cfg.spec.z.y == 0.2);
    CHECK(cfg.pulse.T_p == 0.5);
    CHECK(cfg.pulse.amplitude == 2.0);
    CHECK(cfg.pulse.x0.x == 5.0);
    CHECK(cfg.pulse.kind == PulseKind::SmoothBump);
    CHECK(cfg.mesh_source.subdivisions == 2);
    CHECK(cfg.quadrature.regular_order == 3);
    CHECK(cfg.output_dir == "out");

    const SurfaceMesh mesh = cfg.mesh_source.build();
    CHECK(mesh.num_faces() == 320);
    std::remove(path.c_str());
}

TEST_CASE("defaults apply when keys are absent") {
    const std::string path = write_temp("cfg_min.json", R"({"delta": 0.02})");
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.spec.delta == 0.02);
    CHECK(cfg.spec.rho_m == 1000.0);
    CHECK(cfg.pulse.kind == PulseKind::SmoothBump);
    CHECK(cfg.pulse.T_p == 1.0);
    CHECK(cfg.mesh_source.shape == "icosphere");
    std::remove(path.c_str());
}

TEST_CASE("bad configs are rejected with context") {
    const std::string bad_json = write_temp("cfg_bad1.json", "{ not json");
    CHECK_THROWS_AS(load_run_config(bad_json), std::runtime_error);
    std::remove(bad_json.c_str());

    const std::string bad_vec = write_temp("cfg_bad2.json", R"({"z": [1, 2]})");
    CHECK_THROWS_AS(load_run_config(bad_vec), std::runtime_error);
    std::remove(bad_vec.c_str());

    const std::string bad_kind =
        write_temp("cfg_bad3.json", R"({"pulse": {"kind": "sawtooth"}})");
    CHECK_THROWS_AS(load_run_config(bad_kind), std::runtime_error);
    std::remove(bad_kind.c_str());

    const std::string bad_delta = write_temp("cfg_bad4.json", R"({"delta": 2.0})");
    CHECK_THROWS_AS(load_run_config(bad_delta), std::runtime_error);
    std::remove(bad_delta.c_str());

    CHECK_THROWS_AS(load_run_config("no_such_config.json"), std::runtime_error);
}

TEST_CASE("delta front pulse kind parses") {
    const std::string path =
        write_temp("cfg_front.json", R"({"pulse": {"kind": "delta_front"}})");
    const RunConfig cfg = load_run_config(path);
    CHECK(cfg.pulse.kind == PulseKind::DeltaFront);
    std::remove(path.c_str());
}

TEST_CASE("mesh source variants") {
    MeshSource src;
    src.shape = "ellipsoid";
    src.radii = {2, 1, 1};
    src.subdivisions = 2;
    CHECK_NOTHROW(src.build());

    src.shape = "file";
    src.path = "";
    CHECK_THROWS_AS(src.build(), std::runtime_error);

    src.shape = "torus";
    CHECK_THROWS_AS(src.build(), std::runtime_error);
}

TEST_CASE("report serialization carries every field") {
    OracleReport r = OracleReport::make("demo", 1e-4, 1e-3, "details here");
    const json j = to_json(r);
    CHECK(j["name"] == "demo");
    CHECK(j["max_error"] == 1e-4);
    CHECK(j["tolerance"] == 1e-3);
    CHECK(j["passed"] == true);
    CHECK(j["details"] == "details here");

    TuningResult t;
    t.parameter = "k_c_bar";
    t.value = 1.5;
    t.achieved_peak = 0.25;
    t.iterations = 31;
    t.warnings = {"w"};
    const json jt = to_json(t);
    CHECK(jt["parameter"] == "k_c_bar");
    CHECK(jt["iterations"] == 31);
    CHECK(jt["warnings"].size() == 1);

    ShapeFactors f;
    f.A_dB = 8.0;
    f.area_B = 12.0;
    f.vol_B = 4.0;
    f.A_profile = {1.0, 2.0};
    const json jf = to_json(f);
    CHECK(jf["A_dB"] == 8.0);
    CHECK(jf["A_profile"].size() == 2);
}
