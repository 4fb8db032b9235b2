#pragma once

#include <vector>

#include "bubble/geometry.hpp"

namespace bubble {

struct QuadratureConfig {
    int regular_order = 7;               // points per regular panel: 1, 3 or 7
    int singular_subdivision_depth = 3;  // recursive 4-way depth near the target
    double near_singular_threshold = 2.0;  // dist(target, panel) / panel diameter
    // Lift quadrature nodes onto the vertex-normal (Phong) patch of each panel
    // when integrating the bounded A(y) kernel. Recovers an order of geometric
    // accuracy on meshes that sample a smooth surface; turn off for meshes
    // with genuine sharp edges, where the flat facets are the exact geometry.
    bool curved_panels = true;

    void validate() const;
};

/// Geometric constants of the reference shape B.
struct ShapeFactors {
    double A_dB = 0.0;    // |dB|-weighted mean of A(y)
    double area_B = 0.0;  // |dB|
    double vol_B = 0.0;   // |B|
    std::vector<double> A_profile;  // A(y) at each mesh vertex
};

/// Exact integral of 1/|x-y| over a flat triangle (Wilton-Graglia edge
/// formula). Valid for x arbitrarily close to, or on, the panel.
double panel_potential(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x);

/// Signed solid angle subtended by triangle (a,b,c) at x; equals the integral
/// of (y-x).n / |y-x|^3 over the panel.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x);

/// Q(x) = (1/|dOmega|) int 1/|x-y| dsigma_y. Defined off the surface only.
double single_layer_mean(const SurfaceMesh& mesh, const Vec3& x);

/// A(y) = int (x-y).nu_x / |x-y| dsigma_x. y is a point on the surface;
/// the integrand is bounded, near panels are handled by subdivision.
double A_of_y(const SurfaceMesh& mesh, const Vec3& y, const QuadratureConfig& cfg);

/// A(y) at every vertex plus the area-weighted mean A_dB; OpenMP over vertices.
ShapeFactors shape_factors(const SurfaceMesh& mesh, const QuadratureConfig& cfg);
/// Serial reference; bitwise identical to shape_factors.
ShapeFactors shape_factors_serial(const SurfaceMesh& mesh, const QuadratureConfig& cfg);

/// (1/4pi) int (x-y).nu_x / |x-y|^3 dsigma_x: 1 inside, 1/2 on a smooth
/// boundary point, 0 outside.
double gauss_solid_angle(const SurfaceMesh& mesh, const Vec3& y);

/// int (x-y).nu_x dsigma_x = 3 |Omega|, independent of y. Exact per panel.
double flux_identity(const SurfaceMesh& mesh, const Vec3& y);

}  // namespace bubble
