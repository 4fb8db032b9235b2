#pragma once

#include <string>

#include <json.hpp>

#include "bubble/physics.hpp"
#include "bubble/incident.hpp"
#include "bubble/tuner.hpp"
#include "bubble/validation.hpp"

namespace bubble {

/// Mesh source for the reference shape B: a builtin or a file.
struct MeshSource {
    std::string shape = "icosphere";  // "icosphere" | "ellipsoid" | "file"
    int subdivisions = 4;
    double radius = 1.0;
    Vec3 radii{1, 1, 1};
    std::string path;

    SurfaceMesh build() const;
};

struct RunConfig {
    MediumBubbleSpec spec;
    IncidentPulse pulse;
    MeshSource mesh_source;
    QuadratureConfig quadrature;
    std::string output_dir = ".";
};

MediumBubbleSpec parse_spec(const nlohmann::json& j);
IncidentPulse parse_pulse(const nlohmann::json& j_pulse, const nlohmann::json& j_root);
RunConfig load_run_config(const std::string& path);

nlohmann::json to_json(const ShapeFactors& f);
nlohmann::json to_json(const DerivedConstants& d);
nlohmann::json to_json(const OracleReport& r);
nlohmann::json to_json(const TuningResult& r);

}  // namespace bubble
