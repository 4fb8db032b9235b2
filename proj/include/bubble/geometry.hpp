#pragma once

#include <array>
#include <string>
#include <vector>

#include "bubble/vec3.hpp"

namespace bubble {

/// Triangulated closed surface. Faces are counter-clockwise seen from outside,
/// so all face normals point outward and the signed volume is positive.
struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::string label;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
};

/// Throws std::runtime_error if the mesh is not a closed, consistently
/// oriented, genus-0 triangle mesh with positive face areas and positive
/// signed volume. Inverted meshes are rejected, not flipped.
void validate_mesh(const SurfaceMesh& mesh);

/// Geodesic sphere: subdivided icosahedron with vertices projected back to
/// radius after every subdivision step. 20 * 4^subdivisions faces.
SurfaceMesh make_icosphere(double radius, int subdivisions);

/// Icosphere stretched onto the exact ellipsoid with semi-axes (a, b, c).
SurfaceMesh make_ellipsoid(double a, double b, double c, int subdivisions);

enum class MeshFormat { OFF, OBJ };

SurfaceMesh load_mesh(const std::string& path, MeshFormat format);
SurfaceMesh load_mesh(const std::string& path);  // format from extension
void save_off(const SurfaceMesh& mesh, const std::string& path);

/// v -> delta * v + z. Orientation is preserved (delta > 0).
SurfaceMesh scale_translate(const SurfaceMesh& mesh, double delta, const Vec3& z);

double area(const SurfaceMesh& mesh);
double face_area(const SurfaceMesh& mesh, int face);
Vec3 face_normal(const SurfaceMesh& mesh, int face);
Vec3 face_centroid(const SurfaceMesh& mesh, int face);

/// Volume from the x.nu flux, exact per flat panel.
double volume(const SurfaceMesh& mesh);
/// Volume from signed tetrahedra against the origin; independent route used
/// by the divergence-theorem consistency check.
double volume_signed_tets(const SurfaceMesh& mesh);
/// Volume centroid.
Vec3 centroid(const SurfaceMesh& mesh);

double mesh_diameter(const SurfaceMesh& mesh);
int euler_characteristic(const SurfaceMesh& mesh);

/// Unsigned distance from x to the surface (min over panels).
double distance_to_surface(const SurfaceMesh& mesh, const Vec3& x);

/// True if x is strictly inside the closed surface (winding-number test).
bool point_inside(const SurfaceMesh& mesh, const Vec3& x);

}  // namespace bubble
