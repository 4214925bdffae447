#include "jsant/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace jsant {

namespace {

// Determinant by cofactor expansion, adequate for size <= 4.
double det_small(const std::vector<Vec>& rows) {
    const std::size_t m = rows.size();
    if (m == 1) return rows[0][0];
    if (m == 2) return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
    double total = 0.0;
    double sign = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<Vec> minor(m - 1, Vec(m - 1));
        for (std::size_t r = 1; r < m; ++r) {
            std::size_t cc = 0;
            for (std::size_t c2 = 0; c2 < m; ++c2) {
                if (c2 == c) continue;
                minor[r - 1][cc++] = rows[r][c2];
            }
        }
        total += sign * rows[0][c] * det_small(minor);
        sign = -sign;
    }
    return total;
}

// Generalized cross product: vector orthogonal to d-1 vectors in R^d.
Vec generalized_cross(const std::vector<Vec>& vs, int d) {
    Vec normal(static_cast<std::size_t>(d));
    double sign = 1.0;
    for (int i = 0; i < d; ++i) {
        std::vector<Vec> minor(vs.size(), Vec(static_cast<std::size_t>(d) - 1));
        for (std::size_t r = 0; r < vs.size(); ++r) {
            std::size_t cc = 0;
            for (int c = 0; c < d; ++c) {
                if (c == i) continue;
                minor[r][cc++] = vs[r][static_cast<std::size_t>(c)];
            }
        }
        normal[static_cast<std::size_t>(i)] = sign * (d == 1 ? 1.0 : det_small(minor));
        sign = -sign;
    }
    return normal;
}

struct Facet {
    std::vector<int> verts;      // indices into the point array, size d
    Vec normal;
    double offset = 0.0;
    bool alive = true;
    std::vector<int> neighbors;  // facet ids sharing a ridge
    std::vector<int> outside;    // candidate points strictly beyond this facet
};

double plane_dist(const Facet& f, const Vec& p) { return dot(f.normal, p) - f.offset; }

// Hyperplane through d points, oriented away from `interior`.
bool facet_plane(const std::vector<Vec>& pts, std::vector<int>& verts, const Vec& interior,
                 int d, Facet& out) {
    if (d == 1) {
        out.normal = Vec{pts[static_cast<std::size_t>(verts[0])][0] > interior[0] ? 1.0 : -1.0};
        out.offset = out.normal[0] * pts[static_cast<std::size_t>(verts[0])][0];
        return true;
    }
    std::vector<Vec> edges;
    const Vec& p0 = pts[static_cast<std::size_t>(verts[0])];
    for (int i = 1; i < d; ++i) edges.push_back(pts[static_cast<std::size_t>(verts[i])] - p0);
    Vec n = generalized_cross(edges, d);
    double len = norm2(n);
    if (len == 0.0) return false;
    n = (1.0 / len) * n;
    double off = dot(n, p0);
    if (dot(n, interior) > off) {
        n = -n;
        off = -off;
    }
    out.normal = n;
    out.offset = off;
    return true;
}

}  // namespace

double simplex_volume(const std::vector<Vec>& verts) {
    const std::size_t d = verts.size() - 1;
    std::vector<Vec> rows;
    for (std::size_t i = 1; i <= d; ++i) rows.push_back(verts[i] - verts[0]);
    double fact = 1.0;
    for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<double>(i);
    return std::abs(det_small(rows)) / fact;
}

double Hull::volume() const {
    if (!full_dimensional) return 0.0;
    double fact = 1.0;
    for (int i = 2; i <= dim; ++i) fact *= i;
    double total = 0.0;
    for (const HullFacet& f : facets) {
        std::vector<Vec> rows;
        for (int vid : f.vertices) rows.push_back(points[static_cast<std::size_t>(vid)]);
        double cone = std::abs(det_small(rows)) / fact;
        total += (f.offset >= 0.0 ? cone : -cone);
    }
    return total;
}

std::vector<std::vector<int>> hull_fan_triangulation(const Hull& h) {
    std::vector<std::vector<int>> simplices;
    if (!h.full_dimensional || h.vertex_ids.empty()) return simplices;
    const int apex = h.vertex_ids[0];
    for (const HullFacet& f : h.facets) {
        if (std::find(f.vertices.begin(), f.vertices.end(), apex) != f.vertices.end()) continue;
        std::vector<int> s;
        s.push_back(apex);
        s.insert(s.end(), f.vertices.begin(), f.vertices.end());
        simplices.push_back(std::move(s));
    }
    return simplices;
}

Hull convex_hull(const std::vector<Vec>& points, double rel_tol) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
    const int d = static_cast<int>(points[0].size());
    for (const Vec& p : points)
        if (static_cast<int>(p.size()) != d) throw std::invalid_argument("convex_hull: mixed dims");

    Hull hull;
    hull.dim = d;
    hull.points = points;

    double scale = 0.0;
    for (const Vec& p : points)
        for (double c : p) scale = std::max(scale, std::abs(c));
    const double tol = rel_tol * std::max(1.0, scale);

    // Collapse near-duplicate points onto their first occurrence.
    const int m = static_cast<int>(points.size());
    std::vector<int> rep(static_cast<std::size_t>(m), -1);
    std::vector<int> uniq;
    for (int i = 0; i < m; ++i) {
        for (int u : uniq) {
            double dist = 0.0;
            for (int c = 0; c < d; ++c)
                dist = std::max(dist, std::abs(points[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -
                                               points[static_cast<std::size_t>(u)][static_cast<std::size_t>(c)]));
            if (dist <= tol) {
                rep[static_cast<std::size_t>(i)] = u;
                break;
            }
        }
        if (rep[static_cast<std::size_t>(i)] < 0) {
            rep[static_cast<std::size_t>(i)] = i;
            uniq.push_back(i);
        }
    }

    if (d == 1) {
        int lo = uniq[0], hi = uniq[0];
        for (int u : uniq) {
            if (points[static_cast<std::size_t>(u)][0] < points[static_cast<std::size_t>(lo)][0]) lo = u;
            if (points[static_cast<std::size_t>(u)][0] > points[static_cast<std::size_t>(hi)][0]) hi = u;
        }
        if (points[static_cast<std::size_t>(hi)][0] - points[static_cast<std::size_t>(lo)][0] <= tol) {
            hull.full_dimensional = false;
            hull.vertex_ids = {lo};
            return hull;
        }
        hull.full_dimensional = true;
        hull.facets.push_back({{hi}, Vec{1.0}, points[static_cast<std::size_t>(hi)][0]});
        hull.facets.push_back({{lo}, Vec{-1.0}, -points[static_cast<std::size_t>(lo)][0]});
        hull.vertex_ids = {std::min(lo, hi), std::max(lo, hi)};
        return hull;
    }

    // Initial simplex: greedily extend an affinely independent set, picking
    // the point farthest from the current affine span (Gram-Schmidt residual).
    std::vector<int> simplex{uniq[0]};
    std::vector<Vec> ortho;  // orthonormalized edge directions
    while (static_cast<int>(simplex.size()) < d + 1) {
        int best = -1;
        double best_dist = tol;
        Vec best_resid;
        for (int u : uniq) {
            Vec r = points[static_cast<std::size_t>(u)] - points[static_cast<std::size_t>(simplex[0])];
            for (const Vec& q : ortho) r = r - dot(r, q) * q;
            double dist = norm2(r);
            if (dist > best_dist) {
                best_dist = dist;
                best = u;
                best_resid = r;
            }
        }
        if (best < 0) {
            hull.full_dimensional = false;  // rank-deficient input
            return hull;
        }
        simplex.push_back(best);
        ortho.push_back((1.0 / best_dist) * best_resid);
    }

    Vec interior(static_cast<std::size_t>(d), 0.0);
    for (int s : simplex) interior = interior + (1.0 / (d + 1)) * points[static_cast<std::size_t>(s)];

    std::vector<Facet> facets;
    for (int omit = 0; omit <= d; ++omit) {
        Facet f;
        for (int i = 0; i <= d; ++i)
            if (i != omit) f.verts.push_back(simplex[static_cast<std::size_t>(i)]);
        if (!facet_plane(points, f.verts, interior, d, f))
            throw std::runtime_error("convex_hull: degenerate initial facet");
        facets.push_back(std::move(f));
    }
    for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b)
            if (a != b) facets[static_cast<std::size_t>(a)].neighbors.push_back(b);

    for (int u : uniq) {
        if (std::find(simplex.begin(), simplex.end(), u) != simplex.end()) continue;
        for (Facet& f : facets) {
            if (plane_dist(f, points[static_cast<std::size_t>(u)]) > tol) {
                f.outside.push_back(u);
                break;
            }
        }
    }

    std::vector<int> pending;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i)
        if (!facets[static_cast<std::size_t>(i)].outside.empty()) pending.push_back(i);

    while (!pending.empty()) {
        int fid = pending.back();
        pending.pop_back();
        Facet& f = facets[static_cast<std::size_t>(fid)];
        if (!f.alive || f.outside.empty()) continue;

        int apex = f.outside[0];
        double apex_dist = plane_dist(f, points[static_cast<std::size_t>(apex)]);
        for (int cand : f.outside) {
            double dist = plane_dist(f, points[static_cast<std::size_t>(cand)]);
            if (dist > apex_dist) {
                apex_dist = dist;
                apex = cand;
            }
        }
        const Vec& apex_pt = points[static_cast<std::size_t>(apex)];

        // Visible region: BFS over neighbors; coplanar facets count as
        // visible so horizon ridges sit strictly below the apex.
        std::vector<int> visible{fid};
        std::vector<char> seen(facets.size(), 0);
        seen[static_cast<std::size_t>(fid)] = 1;
        for (std::size_t head = 0; head < visible.size(); ++head) {
            for (int nb : facets[static_cast<std::size_t>(visible[head])].neighbors) {
                if (seen[static_cast<std::size_t>(nb)] || !facets[static_cast<std::size_t>(nb)].alive) continue;
                seen[static_cast<std::size_t>(nb)] = 1;
                if (plane_dist(facets[static_cast<std::size_t>(nb)], apex_pt) > -tol)
                    visible.push_back(nb);
            }
        }

        // Horizon ridges: shared between a visible facet and an invisible one.
        struct HorizonRidge {
            std::vector<int> ridge;
            int visible_facet;
            int invisible_facet;
        };
        std::vector<HorizonRidge> horizon;
        for (int vid : visible) {
            const std::vector<int> vf_verts = facets[static_cast<std::size_t>(vid)].verts;
            const std::vector<int> vf_nbs = facets[static_cast<std::size_t>(vid)].neighbors;
            for (int nb : vf_nbs) {
                const Facet& nf = facets[static_cast<std::size_t>(nb)];
                if (!nf.alive) continue;
                if (std::find(visible.begin(), visible.end(), nb) != visible.end()) continue;
                std::vector<int> ridge;
                for (int v : vf_verts)
                    if (std::find(nf.verts.begin(), nf.verts.end(), v) != nf.verts.end())
                        ridge.push_back(v);
                if (static_cast<int>(ridge.size()) != d - 1) continue;
                horizon.push_back({std::move(ridge), vid, nb});
            }
        }

        std::vector<int> new_ids;
        std::map<std::vector<int>, int> ridge_owner;  // sorted ridge -> new facet id
        for (const HorizonRidge& hr : horizon) {
            Facet nfacet;
            nfacet.verts = hr.ridge;
            nfacet.verts.push_back(apex);
            if (!facet_plane(points, nfacet.verts, interior, d, nfacet)) continue;
            int new_id = static_cast<int>(facets.size());
            nfacet.neighbors.push_back(hr.invisible_facet);
            facets.push_back(std::move(nfacet));
            new_ids.push_back(new_id);
            std::replace(facets[static_cast<std::size_t>(hr.invisible_facet)].neighbors.begin(),
                         facets[static_cast<std::size_t>(hr.invisible_facet)].neighbors.end(),
                         hr.visible_facet, new_id);
        }

        // Ridges between new facets: drop one ridge vertex, keep the apex.
        for (int nid : new_ids) {
            const std::vector<int>& verts = facets[static_cast<std::size_t>(nid)].verts;
            for (std::size_t skip = 0; skip + 1 < verts.size(); ++skip) {
                std::vector<int> key;
                for (std::size_t i = 0; i < verts.size(); ++i)
                    if (i != skip) key.push_back(verts[i]);
                std::sort(key.begin(), key.end());
                auto it = ridge_owner.find(key);
                if (it == ridge_owner.end()) {
                    ridge_owner[key] = nid;
                } else {
                    facets[static_cast<std::size_t>(nid)].neighbors.push_back(it->second);
                    facets[static_cast<std::size_t>(it->second)].neighbors.push_back(nid);
                }
            }
        }

        // Re-home outside points of the retired facets.
        for (int vid : visible) {
            for (int cand : facets[static_cast<std::size_t>(vid)].outside) {
                if (cand == apex) continue;
                for (int nid : new_ids) {
                    if (plane_dist(facets[static_cast<std::size_t>(nid)],
                                   points[static_cast<std::size_t>(cand)]) > tol) {
                        facets[static_cast<std::size_t>(nid)].outside.push_back(cand);
                        break;
                    }
                }
            }
            facets[static_cast<std::size_t>(vid)].alive = false;
            facets[static_cast<std::size_t>(vid)].outside.clear();
        }
        for (int nid : new_ids)
            if (!facets[static_cast<std::size_t>(nid)].outside.empty()) pending.push_back(nid);
    }

    hull.full_dimensional = true;
    std::vector<char> is_vertex(points.size(), 0);
    for (const Facet& f : facets) {
        if (!f.alive) continue;
        HullFacet out;
        out.vertices = f.verts;
        out.normal = f.normal;
        out.offset = f.offset;
        hull.facets.push_back(std::move(out));
        for (int v : f.verts) is_vertex[static_cast<std::size_t>(v)] = 1;
    }
    for (int i = 0; i < m; ++i)
        if (is_vertex[static_cast<std::size_t>(i)]) hull.vertex_ids.push_back(i);
    return hull;
}

}  // namespace jsant
