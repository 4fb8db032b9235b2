#include "bubble/potentials.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bubble {

void QuadratureConfig::validate() const {
    if (regular_order != 1 && regular_order != 3 && regular_order != 7)
        throw std::runtime_error("regular_order must be 1, 3 or 7");
    if (singular_subdivision_depth < 0 || singular_subdivision_depth > 8)
        throw std::runtime_error("singular_subdivision_depth must be in [0, 8]");
    if (!(near_singular_threshold > 0.0))
        throw std::runtime_error("near_singular_threshold must be > 0");
}

namespace {

// Symmetric triangle rules in barycentric coordinates, weights summing to 1.
struct RulePoint {
    double b0, b1, b2, w;
};

const RulePoint kRule1[] = {{1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0}};

const RulePoint kRule3[] = {
    {0.5, 0.5, 0.0, 1.0 / 3}, {0.0, 0.5, 0.5, 1.0 / 3}, {0.5, 0.0, 0.5, 1.0 / 3}};

// Degree-5 rule (Radon): centroid + two three-point orbits.
const double kA1 = 0.059715871789770, kB1 = 0.470142064105115, kW1 = 0.132394152788506;
const double kA2 = 0.797426985353087, kB2 = 0.101286507323456, kW2 = 0.125939180544827;
const RulePoint kRule7[] = {
    {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
    {kA1, kB1, kB1, kW1}, {kB1, kA1, kB1, kW1}, {kB1, kB1, kA1, kW1},
    {kA2, kB2, kB2, kW2}, {kB2, kA2, kB2, kW2}, {kB2, kB2, kA2, kW2}};

template <typename F>
double quad_panel(const Vec3& a, const Vec3& b, const Vec3& c, int order, F&& f) {
    const RulePoint* rule = kRule7;
    int n = 7;
    if (order == 1) { rule = kRule1; n = 1; }
    if (order == 3) { rule = kRule3; n = 3; }
    const double area = 0.5 * cross(b - a, c - a).norm();
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec3 p = a * rule[i].b0 + b * rule[i].b1 + c * rule[i].b2;
        s += rule[i].w * f(p);
    }
    return s * area;
}

double longest_edge(const Vec3& a, const Vec3& b, const Vec3& c) {
    return std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
}

}  // namespace

double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x) {
    const Vec3 ra = a - x, rb = b - x, rc = c - x;
    const double la = ra.norm(), lb = rb.norm(), lc = rc.norm();
    const double num = dot(ra, cross(rb, rc));
    const double den =
        la * lb * lc + dot(ra, rb) * lc + dot(rb, rc) * la + dot(rc, ra) * lb;
    // Edge-on panels (x in the panel plane) subtend zero solid angle; the
    // principal value for x inside the panel itself is also zero.
    if (std::abs(num) <= 1e-12 * (la * lb * lc + std::abs(den)))
        return 0.0;
    return 2.0 * std::atan2(num, den);
}

double panel_potential(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& x) {
    const Vec3 nvec = cross(b - a, c - a);
    const double area2 = nvec.norm();
    if (!(area2 > 0.0)) throw std::runtime_error("degenerate triangle");
    const Vec3 n = nvec / area2;

    // Far targets: the edge formula sums three O(|x|) terms that cancel down
    // to O(area/|x|), so its relative error grows like (|x|/h)^2 * eps. A
    // degree-5 rule on the smooth integrand is exact to machine precision
    // there and its truncation error (h/|x|)^6 is negligible past 100 panel
    // diameters, well before the cancellation bites.
    {
        const Vec3 centroid = (a + b + c) / 3.0;
        const double dist = (x - centroid).norm();
        const double h = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});
        if (dist > 100.0 * h) {
            const double a1 = 0.059715871789770, b1 = 0.470142064105115,
                         w1 = 0.132394152788506;
            const double a2 = 0.797426985353087, b2 = 0.101286507323456,
                         w2 = 0.125939180544827;
            const double bary[7][4] = {
                {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
                {a1, b1, b1, w1}, {b1, a1, b1, w1}, {b1, b1, a1, w1},
                {a2, b2, b2, w2}, {b2, a2, b2, w2}, {b2, b2, a2, w2}};
            double sum = 0.0;
            for (const auto& q : bary)
                sum += q[3] / (a * q[0] + b * q[1] + c * q[2] - x).norm();
            return 0.5 * area2 * sum;
        }
    }

    const double d = dot(x - a, n);           // signed height above the plane
    const Vec3 rho = x - n * d;               // in-plane projection
    const double ad = std::abs(d);

    const Vec3 verts[4] = {a, b, c, a};
    double result = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 e = verts[i + 1] - verts[i];
        const double len = e.norm();
        const Vec3 lhat = e / len;
        const Vec3 uhat = cross(lhat, n);     // in-plane outward edge normal
        const double t = dot(verts[i] - rho, uhat);
        const double lm = dot(verts[i] - rho, lhat);
        const double lp = dot(verts[i + 1] - rho, lhat);
        const double r0sq = t * t + d * d;
        const double rm = std::sqrt(lm * lm + r0sq);
        const double rp = std::sqrt(lp * lp + r0sq);

        // Collinear with the edge: the whole edge term vanishes.
        if (r0sq <= 1e-28 * len * len) continue;

        // (R + l)(R - l) = R0^2: pick the cancellation-free form of each factor.
        const double num_log = (lp >= 0.0) ? (rp + lp) : (r0sq / (rp - lp));
        const double den_log = (lm >= 0.0) ? (rm + lm) : (r0sq / (rm - lm));
        result += t * std::log(num_log / den_log);
        if (ad > 0.0) {
            result -= ad * (std::atan2(t * lp, r0sq + ad * rp) -
                            std::atan2(t * lm, r0sq + ad * rm));
        }
    }
    return result;
}

double single_layer_mean(const SurfaceMesh& mesh, const Vec3& x) {
    const double diam = mesh_diameter(mesh);
    if (distance_to_surface(mesh, x) <= 1e-12 * diam)
        throw std::runtime_error("on-surface evaluation of Q(x)");
    double integral = 0.0, total_area = 0.0;
    for (const auto& tri : mesh.faces) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        integral += panel_potential(a, b, c, x);
        total_area += 0.5 * cross(b - a, c - a).norm();
    }
    return integral / total_area;
}

namespace {

/// Geometry of one panel in barycentric parameters (u, v, 1-u-v) over the
/// vertex triple (a, b, c). When curved, quadrature nodes are lifted onto the
/// Phong patch blended from the vertex tangent planes; the cross product of
/// the parameter derivatives supplies both the surface normal and the area
/// element, so the flat panel is recovered exactly when the lift is off.
struct PanelGeometry {
    Vec3 a, b, c;
    Vec3 na, nb, nc;  // unit vertex normals (only read when curved)
    bool curved = false;

    void eval(double u, double v, Vec3* point, Vec3* area_normal) const {
        const double w = 1.0 - u - v;
        const Vec3 e1 = a - c, e2 = b - c;
        const Vec3 p = a * u + b * v + c * w;
        if (!curved) {
            *point = p;
            *area_normal = cross(e1, e2);
            return;
        }
        // Half-strength tangent-plane blend: for vertices sampling any C^2
        // surface the full Phong lift overshoots the local quadratic by the
        // same margin the flat chord undershoots it, so beta = 1/2 reproduces
        // the osculating paraboloid and gains an order of accuracy.
        const double beta = 0.5;
        const double ca_ = dot(p - a, na), cb_ = dot(p - b, nb), cc_ = dot(p - c, nc);
        *point = p - (na * (u * ca_) + nb * (v * cb_) + nc * (w * cc_)) * beta;
        const Vec3 du = e1 - (na * (ca_ + u * dot(e1, na)) + nb * (v * dot(e1, nb)) -
                              nc * (cc_ - w * dot(e1, nc))) * beta;
        const Vec3 dv = e2 - (na * (u * dot(e2, na)) + nb * (cb_ + v * dot(e2, nb)) -
                              nc * (cc_ - w * dot(e2, nc))) * beta;
        *area_normal = cross(du, dv);
    }
};

// Integrand of A(y) against the area-weighted normal; bounded on the surface.
double a_kernel_weighted(const Vec3& p, const Vec3& y, const Vec3& area_normal) {
    const Vec3 r = p - y;
    const double rn = r.norm();
    if (rn == 0.0) return 0.0;
    return dot(r, area_normal) / rn;
}

/// Recursive 4-way refinement in parameter space; leaves use the centroid
/// value times the parameter-space area (1/2 for the whole panel).
double a_panel_subdivided(const PanelGeometry& geom, const Vec3& y, double u0, double v0,
                          double u1, double v1, double u2, double v2, int depth) {
    if (depth == 0) {
        const double param_area =
            0.5 * std::abs((u1 - u0) * (v2 - v0) - (u2 - u0) * (v1 - v0));
        Vec3 p, an;
        geom.eval((u0 + u1 + u2) / 3.0, (v0 + v1 + v2) / 3.0, &p, &an);
        return param_area * a_kernel_weighted(p, y, an);
    }
    const double um01 = 0.5 * (u0 + u1), vm01 = 0.5 * (v0 + v1);
    const double um12 = 0.5 * (u1 + u2), vm12 = 0.5 * (v1 + v2);
    const double um20 = 0.5 * (u2 + u0), vm20 = 0.5 * (v2 + v0);
    return a_panel_subdivided(geom, y, u0, v0, um01, vm01, um20, vm20, depth - 1) +
           a_panel_subdivided(geom, y, u1, v1, um12, vm12, um01, vm01, depth - 1) +
           a_panel_subdivided(geom, y, u2, v2, um20, vm20, um12, vm12, depth - 1) +
           a_panel_subdivided(geom, y, um01, vm01, um12, vm12, um20, vm20, depth - 1);
}

double a_panel_regular(const PanelGeometry& geom, const Vec3& y, int order) {
    const RulePoint* rule = kRule7;
    int n = 7;
    if (order == 1) { rule = kRule1; n = 1; }
    if (order == 3) { rule = kRule3; n = 3; }
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec3 p, an;
        geom.eval(rule[i].b0, rule[i].b1, &p, &an);
        s += rule[i].w * a_kernel_weighted(p, y, an);
    }
    return 0.5 * s;  // parameter-space area of the unit simplex
}

std::vector<Vec3> vertex_normals(const SurfaceMesh& mesh) {
    std::vector<Vec3> normals(mesh.num_vertices(), Vec3{0, 0, 0});
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto& tri = mesh.faces[f];
        const Vec3 an = cross(mesh.vertices[tri[1]] - mesh.vertices[tri[0]],
                              mesh.vertices[tri[2]] - mesh.vertices[tri[0]]);
        for (int k = 0; k < 3; ++k) normals[tri[k]] += an;
    }
    for (auto& n : normals) n = n.normalized();
    return normals;
}

double a_of_y_impl(const SurfaceMesh& mesh, const Vec3& y, const QuadratureConfig& cfg,
                   const std::vector<Vec3>& normals) {
    double s = 0.0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto& tri = mesh.faces[f];
        PanelGeometry geom;
        geom.a = mesh.vertices[tri[0]];
        geom.b = mesh.vertices[tri[1]];
        geom.c = mesh.vertices[tri[2]];
        geom.curved = cfg.curved_panels;
        if (geom.curved) {
            geom.na = normals[tri[0]];
            geom.nb = normals[tri[1]];
            geom.nc = normals[tri[2]];
        }
        const double diam = longest_edge(geom.a, geom.b, geom.c);
        const double dist = ((geom.a + geom.b + geom.c) / 3.0 - y).norm();
        if (dist < cfg.near_singular_threshold * diam) {
            s += a_panel_subdivided(geom, y, 1, 0, 0, 1, 0, 0,
                                    cfg.singular_subdivision_depth);
        } else {
            s += a_panel_regular(geom, y, cfg.regular_order);
        }
    }
    return s;
}

}  // namespace

double A_of_y(const SurfaceMesh& mesh, const Vec3& y, const QuadratureConfig& cfg) {
    cfg.validate();
    const std::vector<Vec3> normals =
        cfg.curved_panels ? vertex_normals(mesh) : std::vector<Vec3>{};
    return a_of_y_impl(mesh, y, cfg, normals);
}

namespace {

ShapeFactors shape_factors_impl(const SurfaceMesh& mesh, const QuadratureConfig& cfg,
                                bool parallel) {
    cfg.validate();
    const int nv = mesh.num_vertices();

    // Vertex weights: one third of each incident face area. They sum to |dB|.
    std::vector<double> weight(nv, 0.0);
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const double third = face_area(mesh, f) / 3.0;
        for (int k = 0; k < 3; ++k) weight[mesh.faces[f][k]] += third;
    }

    const std::vector<Vec3> normals =
        cfg.curved_panels ? vertex_normals(mesh) : std::vector<Vec3>{};

    ShapeFactors out;
    out.A_profile.resize(nv);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (int v = 0; v < nv; ++v)
        out.A_profile[v] = a_of_y_impl(mesh, mesh.vertices[v], cfg, normals);
    (void)parallel;

    double num = 0.0, den = 0.0;
    for (int v = 0; v < nv; ++v) {
        num += weight[v] * out.A_profile[v];
        den += weight[v];
    }
    out.A_dB = num / den;
    out.area_B = area(mesh);
    out.vol_B = volume(mesh);
    return out;
}

}  // namespace

ShapeFactors shape_factors(const SurfaceMesh& mesh, const QuadratureConfig& cfg) {
    return shape_factors_impl(mesh, cfg, true);
}

ShapeFactors shape_factors_serial(const SurfaceMesh& mesh, const QuadratureConfig& cfg) {
    return shape_factors_impl(mesh, cfg, false);
}

double gauss_solid_angle(const SurfaceMesh& mesh, const Vec3& y) {
    double omega = 0.0;
    for (const auto& tri : mesh.faces)
        omega += triangle_solid_angle(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                      mesh.vertices[tri[2]], y);
    return omega / (4.0 * M_PI);
}

double flux_identity(const SurfaceMesh& mesh, const Vec3& y) {
    // Linear integrand: exact with the centroid value per flat panel.
    double s = 0.0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const Vec3 an = face_normal(mesh, f) * face_area(mesh, f);
        s += dot(face_centroid(mesh, f) - y, an);
    }
    return s;
}

}  // namespace bubble
