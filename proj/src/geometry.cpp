#include "bubble/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bubble {

namespace {

std::array<Vec3, 3> face_verts(const SurfaceMesh& mesh, int f) {
    const auto& tri = mesh.faces[f];
    return {mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]};
}

}  // namespace

void validate_mesh(const SurfaceMesh& mesh) {
    const int nv = mesh.num_vertices();
    const int nf = mesh.num_faces();
    if (nv < 4 || nf < 1) throw std::runtime_error("mesh too small to be closed");

    for (const auto& tri : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= nv)
                throw std::runtime_error("face index out of range");
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw std::runtime_error("face repeats a vertex");
    }

    double total_area = 0.0;
    for (int f = 0; f < nf; ++f) {
        const double a = face_area(mesh, f);
        if (!(a > 0.0)) throw std::runtime_error("degenerate (zero-area) face");
        total_area += a;
    }

    // Each undirected edge must appear exactly twice, once per direction.
    std::map<std::pair<int, int>, int> directed;
    for (const auto& tri : mesh.faces) {
        for (int k = 0; k < 3; ++k) {
            const int a = tri[k], b = tri[(k + 1) % 3];
            if (++directed[{a, b}] > 1)
                throw std::runtime_error("duplicated directed edge (non-manifold or inconsistent orientation)");
        }
    }
    int ne = 0;
    for (const auto& [edge, count] : directed) {
        auto rev = directed.find({edge.second, edge.first});
        if (rev == directed.end())
            throw std::runtime_error("open surface: boundary edge found");
        if (edge.first < edge.second) ++ne;
    }

    if (nv - ne + nf != 2)
        throw std::runtime_error("mesh is not sphere topology (Euler characteristic != 2)");

    if (volume(mesh) <= 0.0)
        throw std::runtime_error("negative volume: inverted orientation rejected");
}

SurfaceMesh make_icosphere(double radius, int subdivisions) {
    if (!(radius > 0.0)) throw std::runtime_error("icosphere radius must be > 0");
    if (subdivisions < 0 || subdivisions > 7)
        throw std::runtime_error("icosphere subdivisions must be in [0, 7]");

    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    SurfaceMesh m;
    m.vertices = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : m.vertices) v = v.normalized() * radius;
    m.faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vec3 p = ((m.vertices[a] + m.vertices[b]) * 0.5).normalized() * radius;
            m.vertices.push_back(p);
            const int idx = m.num_vertices() - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(m.faces.size() * 4);
        for (const auto& tri : m.faces) {
            const int ab = mid(tri[0], tri[1]);
            const int bc = mid(tri[1], tri[2]);
            const int ca = mid(tri[2], tri[0]);
            next.push_back({tri[0], ab, ca});
            next.push_back({tri[1], bc, ab});
            next.push_back({tri[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.faces = std::move(next);
    }
    m.label = "icosphere";
    return m;
}

SurfaceMesh make_ellipsoid(double a, double b, double c, int subdivisions) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0))
        throw std::runtime_error("ellipsoid semi-axes must be > 0");
    SurfaceMesh m = make_icosphere(1.0, subdivisions);
    for (auto& v : m.vertices) v = {v.x * a, v.y * b, v.z * c};
    m.label = "ellipsoid";
    return m;
}

namespace {

SurfaceMesh parse_off(std::istream& in) {
    std::string token;
    if (!(in >> token) || token != "OFF") throw std::runtime_error("OFF: missing header");
    int nv = 0, nf = 0, ne = 0;
    if (!(in >> nv >> nf >> ne)) throw std::runtime_error("OFF: bad counts line");
    SurfaceMesh m;
    m.vertices.resize(nv);
    for (auto& v : m.vertices)
        if (!(in >> v.x >> v.y >> v.z)) throw std::runtime_error("OFF: bad vertex line");
    m.faces.resize(nf);
    for (auto& tri : m.faces) {
        int n = 0;
        if (!(in >> n) || n != 3) throw std::runtime_error("OFF: only triangle faces supported");
        if (!(in >> tri[0] >> tri[1] >> tri[2])) throw std::runtime_error("OFF: bad face line");
    }
    return m;
}

SurfaceMesh parse_obj(std::istream& in) {
    SurfaceMesh m;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z)) throw std::runtime_error("OBJ: bad vertex line");
            m.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<int, 3> tri;
            for (int k = 0; k < 3; ++k) {
                std::string ref;
                if (!(ls >> ref)) throw std::runtime_error("OBJ: only triangle faces supported");
                tri[k] = std::stoi(ref.substr(0, ref.find('/'))) - 1;  // 1-based
            }
            std::string extra;
            if (ls >> extra) throw std::runtime_error("OBJ: only triangle faces supported");
            m.faces.push_back(tri);
        }
    }
    return m;
}

}  // namespace

SurfaceMesh load_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    SurfaceMesh m = (format == MeshFormat::OFF) ? parse_off(in) : parse_obj(in);
    m.label = path;
    validate_mesh(m);
    return m;
}

SurfaceMesh load_mesh(const std::string& path) {
    const auto dot = path.rfind('.');
    std::string ext = (dot == std::string::npos) ? "" : path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "off") return load_mesh(path, MeshFormat::OFF);
    if (ext == "obj") return load_mesh(path, MeshFormat::OBJ);
    throw std::runtime_error("unknown mesh extension (expect .off or .obj): " + path);
}

void save_off(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);
    out.precision(17);
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
    for (const auto& v : mesh.vertices) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

SurfaceMesh scale_translate(const SurfaceMesh& mesh, double delta, const Vec3& z) {
    if (!(delta > 0.0)) throw std::runtime_error("scale factor must be > 0");
    SurfaceMesh out = mesh;
    for (auto& v : out.vertices) v = v * delta + z;
    return out;
}

double face_area(const SurfaceMesh& mesh, int f) {
    const auto [a, b, c] = face_verts(mesh, f);
    return 0.5 * cross(b - a, c - a).norm();
}

Vec3 face_normal(const SurfaceMesh& mesh, int f) {
    const auto [a, b, c] = face_verts(mesh, f);
    return cross(b - a, c - a).normalized();
}

Vec3 face_centroid(const SurfaceMesh& mesh, int f) {
    const auto [a, b, c] = face_verts(mesh, f);
    return (a + b + c) / 3.0;
}

double area(const SurfaceMesh& mesh) {
    double s = 0.0;
    for (int f = 0; f < mesh.num_faces(); ++f) s += face_area(mesh, f);
    return s;
}

double volume(const SurfaceMesh& mesh) {
    // (1/3) sum_T area(T) * (centroid(T) . n(T)); exact for flat panels.
    double s = 0.0;
    for (int f = 0; f < mesh.num_faces(); ++f) {
        const auto [a, b, c] = face_verts(mesh, f);
        const Vec3 an = cross(b - a, c - a) * 0.5;  // area-weighted normal
        s += dot((a + b + c) / 3.0, an);
    }
    return s / 3.0;
}

double volume_signed_tets(const SurfaceMesh& mesh) {
    double s = 0.0;
    for (const auto& tri : mesh.faces) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        s += dot(a, cross(b, c));
    }
    return s / 6.0;
}

Vec3 centroid(const SurfaceMesh& mesh) {
    double vol = 0.0;
    Vec3 moment{0, 0, 0};
    for (const auto& tri : mesh.faces) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        const double v = dot(a, cross(b, c)) / 6.0;  // signed tet against origin
        vol += v;
        moment += (a + b + c) * (v / 4.0);  // tet centroid is (0+a+b+c)/4
    }
    return moment / vol;
}

double mesh_diameter(const SurfaceMesh& mesh) {
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const auto& v : mesh.vertices) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return (hi - lo).norm();
}

int euler_characteristic(const SurfaceMesh& mesh) {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& tri : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(tri[k], tri[(k + 1) % 3]);
            edges[{key.first, key.second}] = 1;
        }
    return mesh.num_vertices() - static_cast<int>(edges.size()) + mesh.num_faces();
}

namespace {

double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, "Real-Time Collision Detection", closest point on triangle.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return (p - (a + ab * v)).norm();
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return (p - (a + ac * w)).norm();
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (b + (c - b) * w)).norm();
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom, w = vc * denom;
    return (p - (a + ab * v + ac * w)).norm();
}

}  // namespace

double distance_to_surface(const SurfaceMesh& mesh, const Vec3& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& tri : mesh.faces) {
        best = std::min(best, point_triangle_distance(x, mesh.vertices[tri[0]],
                                                      mesh.vertices[tri[1]],
                                                      mesh.vertices[tri[2]]));
    }
    return best;
}

bool point_inside(const SurfaceMesh& mesh, const Vec3& x) {
    // Winding number via van Oosterom-Strackee solid angles.
    double omega = 0.0;
    for (const auto& tri : mesh.faces) {
        const Vec3 a = mesh.vertices[tri[0]] - x;
        const Vec3 b = mesh.vertices[tri[1]] - x;
        const Vec3 c = mesh.vertices[tri[2]] - x;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double num = dot(a, cross(b, c));
        const double den = la * lb * lc + dot(a, b) * lc + dot(b, c) * la + dot(c, a) * lb;
        omega += 2.0 * std::atan2(num, den);
    }
    return omega > 2.0 * M_PI;  // ~4pi inside, ~0 outside
}

}  // namespace bubble
