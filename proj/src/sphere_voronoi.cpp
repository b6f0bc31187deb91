// Lloyd relaxation on the unit sphere. Voronoi cells come from convex-hull
// duality: for points on a sphere the hull triangles are the Delaunay
// triangles, and each face's circumcenter direction is a Voronoi vertex.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "turretlab/errors.hpp"
#include "turretlab/rng.hpp"
#include "turretlab/sphere3d.hpp"

namespace turretlab::sphere3d {

namespace {

struct Face {
    int a, b, c;
    Vec3 normal;   // outward, not normalized
    bool alive = true;
};

double orient(const Vec3& p, const Face& f, const std::vector<Vec3>& pts) {
    return (p - pts[f.a]).dot(f.normal);
}

Face make_face(int a, int b, int c, const std::vector<Vec3>& pts,
               const Vec3& interior) {
    Face f{a, b, c, {}, true};
    f.normal = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    if ((interior - pts[a]).dot(f.normal) > 0.0) {
        std::swap(f.b, f.c);
        f.normal = f.normal * -1.0;
    }
    return f;
}

/// Incremental convex hull of points in general position (all hull vertices,
/// as is the case on a sphere). Returns alive triangular faces.
std::vector<Face> convex_hull(const std::vector<Vec3>& pts) {
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw OutOfParameterRange("convex_hull: needs >= 4 points");

    // Seed tetrahedron: spread the first four indices as far as possible.
    int i0 = 0;
    int i1 = -1;
    double best = -1.0;
    for (int i = 1; i < n; ++i) {
        double d = (pts[i] - pts[i0]).norm();
        if (d > best) { best = d; i1 = i; }
    }
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1) continue;
        double d = (pts[i1] - pts[i0]).cross(pts[i] - pts[i0]).norm();
        if (d > best) { best = d; i2 = i; }
    }
    Vec3 base_n = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
    int i3 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2) continue;
        double d = std::abs((pts[i] - pts[i0]).dot(base_n));
        if (d > best) { best = d; i3 = i; }
    }
    if (i3 < 0 || best < 1e-12) {
        throw NumericalFailure("convex_hull: degenerate (coplanar) input");
    }

    Vec3 interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    std::vector<Face> faces;
    faces.push_back(make_face(i0, i1, i2, pts, interior));
    faces.push_back(make_face(i0, i1, i3, pts, interior));
    faces.push_back(make_face(i0, i2, i3, pts, interior));
    faces.push_back(make_face(i1, i2, i3, pts, interior));

    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        // Faces visible from p.
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (faces[f].alive && orient(pts[p], faces[f], pts) > 1e-12) {
                visible.push_back(f);
            }
        }
        if (visible.empty()) continue;  // coincident/interior point

        // Horizon edges appear in exactly one visible face.
        std::map<std::pair<int, int>, std::pair<int, int>> edges;
        for (int f : visible) {
            const Face& face = faces[f];
            std::array<std::pair<int, int>, 3> tri = {
                std::pair{face.a, face.b}, {face.b, face.c}, {face.c, face.a}};
            for (auto [u, v] : tri) {
                auto key = std::minmax(u, v);
                auto it = edges.find(key);
                if (it == edges.end()) {
                    edges[key] = {u, v};
                } else {
                    edges.erase(it);
                }
            }
        }
        for (int f : visible) faces[f].alive = false;
        for (const auto& [key, dir_edge] : edges) {
            // Keep the winding of the removed face so the new face points out.
            faces.push_back(make_face(dir_edge.first, dir_edge.second, p, pts,
                                      interior));
        }
    }

    std::vector<Face> alive;
    for (const Face& f : faces) {
        if (f.alive) alive.push_back(f);
    }
    return alive;
}

/// Signed spherical excess (solid angle) of the triangle (a, b, c).
double spherical_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    double num = a.dot(b.cross(c));
    double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return std::abs(2.0 * std::atan2(num, den));
}

}  // namespace

SpherePointSet lloyd_relax(int n, std::uint64_t seed, int iterations) {
    if (n < 4) throw OutOfParameterRange("lloyd_relax: n must be >= 4");
    if (iterations < 0) {
        throw OutOfParameterRange("lloyd_relax: iterations must be >= 0");
    }
    Rng rng(seed);
    SpherePointSet set;
    set.origin = Generator::LloydRelaxed;
    set.seed = seed;
    set.points.reserve(n);
    auto too_close = [&](const Vec3& cand) {
        for (const Vec3& q : set.points) {
            if (std::acos(std::clamp(cand.dot(q), -1.0, 1.0)) < 1e-6) return true;
        }
        return false;
    };
    while (static_cast<int>(set.points.size()) < n) {
        Vec3 cand = rng.uniform_direction();
        if (!too_close(cand)) set.points.push_back(cand);
    }

    for (int iter = 0; iter < iterations; ++iter) {
        auto faces = convex_hull(set.points);

        // Voronoi vertices (circumcenter directions) per cell.
        std::vector<std::vector<Vec3>> cells(n);
        for (const Face& f : faces) {
            Vec3 c = f.normal.normalized();
            cells[f.a].push_back(c);
            cells[f.b].push_back(c);
            cells[f.c].push_back(c);
        }

        std::vector<Vec3> next(n);
        for (int i = 0; i < n; ++i) {
            auto& verts = cells[i];
            if (verts.size() < 3) {
                next[i] = rng.uniform_direction();  // degenerate cell
                continue;
            }
            // Order around the site in its tangent plane. The cell is an
            // intersection of hemispheres containing the site, so it is
            // star-shaped from the site and a site-anchored fan covers it
            // even when the cell exceeds a hemisphere.
            const Vec3 axis = set.points[i];
            Vec3 ref = std::abs(axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
            Vec3 e1 = axis.cross(ref).normalized();
            Vec3 e2 = axis.cross(e1);
            std::sort(verts.begin(), verts.end(), [&](const Vec3& u, const Vec3& v) {
                return std::atan2(u.dot(e2), u.dot(e1)) <
                       std::atan2(v.dot(e2), v.dot(e1));
            });

            Vec3 acc{};
            const std::size_t m = verts.size();
            for (std::size_t t = 0; t < m; ++t) {
                const Vec3& a = verts[t];
                const Vec3& b = verts[(t + 1) % m];
                double area = spherical_triangle_area(axis, a, b);
                Vec3 centroid = (axis + a + b).normalized();
                acc += area * centroid;
            }
            double norm = acc.norm();
            next[i] = norm > 1e-12 ? acc / norm : rng.uniform_direction();
        }
        set.points = std::move(next);
    }
    return set;
}

}  // namespace turretlab::sphere3d
