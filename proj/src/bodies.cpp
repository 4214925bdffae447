#include "jsant/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jsant {

namespace {

constexpr double kGeomTol = 1e-9;

// Canonical sign: first nonzero coordinate positive.
bool lex_positive(const Vec& v) {
    for (double c : v) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return true;
}

double point_dist_inf(const Vec& a, const Vec& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Rebuild facet planes from cached facet vertex sets, oriented away from the
// origin. Used after linear images, where the combinatorics are preserved.
void recompute_planes(SymmetricPolytope& P) {
    const int n = P.n;
    Vec origin(static_cast<std::size_t>(n), 0.0);
    for (std::size_t f = 0; f < P.facets.size(); ++f) {
        const auto& ids = P.facet_vertices[f];
        std::vector<Vec> edges;
        const Vec& p0 = P.vertices[static_cast<std::size_t>(ids[0])];
        for (std::size_t i = 1; i < ids.size(); ++i)
            edges.push_back(P.vertices[static_cast<std::size_t>(ids[i])] - p0);
        // Normal = generalized cross product; reuse hull facet solve via a
        // tiny local hull is overkill, do it directly.
        Vec normal(static_cast<std::size_t>(n), 0.0);
        if (n == 1) {
            normal[0] = p0[0] > 0 ? 1.0 : -1.0;
        } else {
            // Unique (up to sign) vector orthogonal to the edges.
            // Solve via repeated Gram-Schmidt against a probe basis.
            std::vector<Vec> ortho;
            for (Vec e : edges) {
                for (const Vec& q : ortho) e = e - dot(e, q) * q;
                double len = norm2(e);
                if (len > 1e-14) ortho.push_back((1.0 / len) * e);
            }
            for (int probe = 0; probe < n; ++probe) {
                Vec cand = basis_vector(n, probe);
                for (const Vec& q : ortho) cand = cand - dot(cand, q) * q;
                if (norm2(cand) > 1e-9) {
                    normal = unit(cand);
                    break;
                }
            }
        }
        double off = dot(normal, p0);
        if (off < 0) {
            normal = -normal;
            off = -off;
        }
        P.facets[f] = {normal, off};
    }
}

SymmetricPolytope from_hull(const Hull& h) {
    SymmetricPolytope P;
    P.n = h.dim;
    if (!h.full_dimensional) {
        P.degenerate = true;
        for (int id : h.vertex_ids) P.vertices.push_back(h.points[static_cast<std::size_t>(id)]);
        return P;
    }
    // Pair vertices with their negations and emit exact +/- copies.
    std::vector<Vec> hull_verts;
    for (int id : h.vertex_ids) hull_verts.push_back(h.points[static_cast<std::size_t>(id)]);
    double scale = 1.0;
    for (const Vec& v : hull_verts)
        for (double c : v) scale = std::max(scale, std::abs(c));
    std::vector<char> used(hull_verts.size(), 0);
    std::vector<int> remap(hull_verts.size(), -1);
    for (std::size_t i = 0; i < hull_verts.size(); ++i) {
        if (used[i]) continue;
        Vec rep = lex_positive(hull_verts[i]) ? hull_verts[i] : -hull_verts[i];
        int pos_id = static_cast<int>(P.vertices.size());
        P.vertices.push_back(rep);
        P.vertices.push_back(-rep);
        used[i] = 1;
        remap[i] = lex_positive(hull_verts[i]) ? pos_id : pos_id + 1;
        for (std::size_t l = i + 1; l < hull_verts.size(); ++l) {
            if (used[l]) continue;
            if (point_dist_inf(hull_verts[l], -hull_verts[i]) <= kGeomTol * scale) {
                used[l] = 1;
                remap[l] = lex_positive(hull_verts[i]) ? pos_id + 1 : pos_id;
            }
        }
    }
    // Map facet vertex ids (hull point indices) into the new vertex list.
    std::vector<int> hull_to_local(h.points.size(), -1);
    for (std::size_t i = 0; i < h.vertex_ids.size(); ++i)
        hull_to_local[static_cast<std::size_t>(h.vertex_ids[i])] = remap[i];
    for (const HullFacet& f : h.facets) {
        std::vector<int> ids;
        for (int v : f.vertices) ids.push_back(hull_to_local[static_cast<std::size_t>(v)]);
        P.facet_vertices.push_back(std::move(ids));
        P.facets.push_back({f.normal, f.offset});
    }
    recompute_planes(P);  // exact symmetrized coordinates shift planes slightly
    return P;
}

}  // namespace

bool SymmetricPolytope::contains(const Vec& x, double tol) const {
    if (degenerate) throw std::domain_error("contains: degenerate polytope");
    for (const Halfspace& h : facets)
        if (dot(h.a, x) > h.b + tol) return false;
    return true;
}

int body_dim(const Body& b) {
    return std::visit([](const auto& k) { return k.n; }, b);
}

BodyOracle make_lp_ball(int n, double p, double scale) {
    if (n < 1 || p <= 0.0 || scale <= 0.0)
        throw std::invalid_argument("make_lp_ball: need n >= 1, p > 0, scale > 0");
    BodyOracle K;
    K.n = n;
    if (std::isinf(p)) {
        K.member = [scale](const Vec& x) {
            double m = 0.0;
            for (double c : x) m = std::max(m, std::abs(c));
            return m <= scale;
        };
    } else {
        K.member = [p, scale](const Vec& x) {
            double s = 0.0;
            for (double c : x) s += std::pow(std::abs(c), p);
            return std::pow(s, 1.0 / p) <= scale;
        };
    }
    K.outer_radius = scale * std::pow(static_cast<double>(n), std::max(0.0, 0.5 - 1.0 / p));
    K.inner_radius = scale * std::pow(static_cast<double>(n), std::min(0.0, 0.5 - 1.0 / p));
    K.symmetry = SymmetryClass::Unconditional;
    return K;
}

SymmetricPolytope hull_reduce(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("hull_reduce: empty input");
    std::vector<Vec> sym;
    sym.reserve(points.size() * 2);
    for (const Vec& p : points) {
        sym.push_back(p);
        sym.push_back(-p);
    }
    return from_hull(convex_hull(sym));
}

HalfspacePolytope to_halfspaces(const SymmetricPolytope& P) {
    if (P.degenerate) throw std::domain_error("to_halfspaces: degenerate polytope");
    HalfspacePolytope H;
    H.n = P.n;
    H.bounded = Boundedness::Bounded;
    for (const Halfspace& f : P.facets) {
        bool dup = false;
        for (const Halfspace& g : H.constraints) {
            double diff = std::abs(f.b - g.b);
            for (int c = 0; c < P.n; ++c)
                diff += std::abs(f.a[static_cast<std::size_t>(c)] - g.a[static_cast<std::size_t>(c)]);
            if (diff <= 1e-8) {
                dup = true;
                break;
            }
        }
        if (!dup) H.constraints.push_back(f);
    }
    return H;
}

VertexEnumeration enumerate_vertices(const HalfspacePolytope& H) {
    VertexEnumeration result;
    double scale = 0.0;
    std::vector<Vec> dual;
    for (const Halfspace& c : H.constraints) {
        double len = norm2(c.a);
        if (len <= 1e-14) {
            if (c.b < 0) result.degenerate = true;  // 0 <= b violated
            continue;
        }
        if (c.b <= 1e-12) {
            // A symmetric body with an empty or flat interior.
            result.degenerate = true;
            continue;
        }
        dual.push_back((1.0 / c.b) * c.a);
        scale = std::max(scale, len / c.b);
    }
    if (result.degenerate || dual.empty()) {
        result.degenerate = true;
        return result;
    }
    Hull h = convex_hull(dual);
    if (!h.full_dimensional) {
        result.bounded = Boundedness::Unbounded;  // normals do not span R^n
        return result;
    }
    for (const HullFacet& f : h.facets) {
        if (f.offset <= kGeomTol * scale) {
            result.bounded = Boundedness::Unbounded;  // origin not interior to the dual
            return result;
        }
    }
    result.bounded = Boundedness::Bounded;
    std::vector<Vec> verts;
    for (const HullFacet& f : h.facets) verts.push_back((1.0 / f.offset) * f.normal);
    SymmetricPolytope P = hull_reduce(verts);
    if (P.degenerate) {
        result.degenerate = true;
        return result;
    }
    result.polytope = std::move(P);
    return result;
}

double support(const SymmetricPolytope& P, const Vec& u) {
    if (norm2(u) == 0.0) throw std::domain_error("support: zero direction");
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& v : P.vertices) best = std::max(best, dot(v, u));
    return best;
}

double radial(const BodyOracle& K, const Vec& u) {
    Vec d = unit(u);
    double lo = 0.0, hi = std::max(K.outer_radius, 1e-12) * (1.0 + 1e-9);
    if (!K.member(hi * d)) {
        for (int it = 0; it < 100 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            double mid = 0.5 * (lo + hi);
            (K.member(mid * d) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
    return hi;  // outer radius touches the boundary in this direction
}

double radial(const SymmetricPolytope& P, const Vec& u) {
    Vec d = unit(u);
    double t = std::numeric_limits<double>::infinity();
    for (const Halfspace& h : P.facets) {
        double num = dot(h.a, d);
        if (num > 1e-14) t = std::min(t, h.b / num);
    }
    return t;
}

double support(const BodyOracle& K, const Vec& u) {
    if (norm2(u) == 0.0) throw std::domain_error("support: zero direction");
    // max over the body of <x,u> = max over unit v of radial(v) <v,u>;
    // coarse directional sweep followed by shrinking local perturbations.
    const Vec uh = unit(u);
    auto value = [&](const Vec& v) { return radial(K, v) * dot(unit(v), u); };
    Vec best_dir = uh;
    double best = value(uh);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next_unit = [&]() {
        Vec v(static_cast<std::size_t>(K.n));
        for (double& c : v) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            c = static_cast<double>(state >> 11) / 4503599627370496.0 - 1.0;
        }
        return unit(v);
    };
    for (int i = 0; i < 64 * K.n; ++i) {
        Vec v = next_unit();
        double val = value(v);
        if (val > best) {
            best = val;
            best_dir = v;
        }
    }
    double step = 0.5;
    while (step > 1e-9) {
        bool improved = false;
        for (int c = 0; c < K.n; ++c) {
            for (double s : {step, -step}) {
                Vec v = best_dir;
                v[static_cast<std::size_t>(c)] += s;
                v = unit(v);
                double val = value(v);
                if (val > best) {
                    best = val;
                    best_dir = v;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

double support(const Body& b, const Vec& u) {
    return std::visit([&](const auto& k) { return support(k, u); }, b);
}

SymmetricPolytope steiner_symmetrize(const SymmetricPolytope& P, int axis) {
    if (P.degenerate) throw std::domain_error("steiner_symmetrize: degenerate polytope");
    if (axis < 0 || axis >= P.n) throw std::invalid_argument("steiner_symmetrize: axis out of range");
    const int n = P.n;
    HalfspacePolytope H = to_halfspaces(P);

    std::vector<Halfspace> upper, lower, vertical;
    for (const Halfspace& c : H.constraints) {
        double am = c.a[static_cast<std::size_t>(axis)];
        if (am > kGeomTol)
            upper.push_back(c);
        else if (am < -kGeomTol)
            lower.push_back(c);
        else
            vertical.push_back(c);
    }
    if (upper.empty() || lower.empty())
        throw std::domain_error("steiner_symmetrize: polytope unbounded along axis");

    HalfspacePolytope S;
    S.n = n;
    S.constraints = vertical;
    // Fiber of the symmetral over x~: |x_axis| <= (g_u(x~) - h_l(x~)) / 2 for
    // every pair; g and h are the facet-wise upper and lower bounds on x_axis.
    for (const Halfspace& cu : upper) {
        double alpha = 1.0 / cu.a[static_cast<std::size_t>(axis)];
        for (const Halfspace& cl : lower) {
            double beta = -1.0 / cl.a[static_cast<std::size_t>(axis)];
            Vec a(static_cast<std::size_t>(n), 0.0);
            for (int c = 0; c < n; ++c) {
                if (c == axis) continue;
                a[static_cast<std::size_t>(c)] = alpha * cu.a[static_cast<std::size_t>(c)] +
                                                 beta * cl.a[static_cast<std::size_t>(c)];
            }
            double rhs = alpha * cu.b + beta * cl.b;
            Vec ap = a, am = a;
            ap[static_cast<std::size_t>(axis)] = 2.0;
            am[static_cast<std::size_t>(axis)] = -2.0;
            S.constraints.push_back({ap, rhs});
            S.constraints.push_back({am, rhs});
        }
    }
    VertexEnumeration ve = enumerate_vertices(S);
    if (!ve.polytope)
        throw std::runtime_error("steiner_symmetrize: symmetral vertex enumeration failed");
    return *ve.polytope;
}

double unconditionality_defect(const SymmetricPolytope& P) {
    double scale = 1.0;
    for (const Vec& v : P.vertices)
        for (double c : v) scale = std::max(scale, std::abs(c));
    double defect = 0.0;
    for (int mask = 1; mask < (1 << P.n); ++mask) {
        for (const Vec& v : P.vertices) {
            Vec w = v;
            for (int c = 0; c < P.n; ++c)
                if (mask >> c & 1) w[static_cast<std::size_t>(c)] = -w[static_cast<std::size_t>(c)];
            double nearest = std::numeric_limits<double>::infinity();
            for (const Vec& x : P.vertices) nearest = std::min(nearest, point_dist_inf(w, x));
            defect = std::max(defect, nearest);
        }
    }
    return defect;
}

SweepResult unconditionalize_sweep(const SymmetricPolytope& P) {
    SweepResult r;
    r.body = P;
    for (int axis = P.n - 1; axis >= 0; --axis) r.body = steiner_symmetrize(r.body, axis);
    r.defect = unconditionality_defect(r.body);
    r.unconditional = r.defect < 1e-7;
    if (!r.unconditional)
        r.diagnostic = "single sweep left unconditionality defect " + std::to_string(r.defect);
    return r;
}

SweepResult unconditionalize(const SymmetricPolytope& P, double tol, int max_sweeps) {
    SweepResult r = unconditionalize_sweep(P);
    int sweeps = 1;
    while (r.defect >= tol && sweeps < max_sweeps) {
        r = unconditionalize_sweep(r.body);
        ++sweeps;
    }
    r.unconditional = r.defect < tol;
    if (!r.unconditional)
        r.diagnostic = "defect " + std::to_string(r.defect) + " after " +
                       std::to_string(sweeps) + " sweeps";
    else
        r.diagnostic.clear();
    return r;
}

SymmetricPolytope diagonal_image(const SymmetricPolytope& P, const Vec& d) {
    for (double c : d)
        if (c <= 0.0) throw std::invalid_argument("diagonal_image: entries must be positive");
    SymmetricPolytope Q = P;
    for (Vec& v : Q.vertices)
        for (int c = 0; c < P.n; ++c) v[static_cast<std::size_t>(c)] *= d[static_cast<std::size_t>(c)];
    if (!Q.degenerate) recompute_planes(Q);
    return Q;
}

BodyOracle diagonal_image(const BodyOracle& K, const Vec& d) {
    for (double c : d)
        if (c <= 0.0) throw std::invalid_argument("diagonal_image: entries must be positive");
    double dmax = *std::max_element(d.begin(), d.end());
    double dmin = *std::min_element(d.begin(), d.end());
    BodyOracle R = K;
    R.member = [inner = K.member, d](const Vec& x) {
        Vec y = x;
        for (std::size_t c = 0; c < y.size(); ++c) y[c] /= d[c];
        return inner(y);
    };
    R.outer_radius = K.outer_radius * dmax;
    R.inner_radius = K.inner_radius * dmin;
    if (K.symmetry != SymmetryClass::Unconditional) R.symmetry = SymmetryClass::Symmetric;
    return R;
}

Body diagonal_image(const Body& b, const Vec& d) {
    return std::visit([&](const auto& k) -> Body { return diagonal_image(k, d); }, b);
}

SymmetricPolytope linear_image(const SymmetricPolytope& P, const std::vector<Vec>& columns) {
    SymmetricPolytope Q = P;
    for (Vec& v : Q.vertices) {
        Vec w(static_cast<std::size_t>(P.n), 0.0);
        for (int c = 0; c < P.n; ++c) w = w + v[static_cast<std::size_t>(c)] * columns[static_cast<std::size_t>(c)];
        v = w;
    }
    if (!Q.degenerate) recompute_planes(Q);
    return Q;
}

SymmetricPolytope make_cube(int n, double half) {
    std::vector<Vec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec v(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) v[static_cast<std::size_t>(c)] = (mask >> c & 1) ? half : -half;
        pts.push_back(v);
    }
    return hull_reduce(pts);
}

SymmetricPolytope make_cross_polytope(int n, double scale) {
    std::vector<Vec> pts;
    for (int c = 0; c < n; ++c) pts.push_back(scale * basis_vector(n, c));
    return hull_reduce(pts);
}

SymmetricPolytope lp_ball_polytope(int n, double p, int resolution) {
    if (p < 1.0) throw std::invalid_argument("lp_ball_polytope: p >= 1 required for convexity");
    std::vector<Vec> pts;
    if (n == 1) {
        pts.push_back(Vec{1.0});
    } else if (n == 2) {
        for (int i = 0; i < resolution; ++i) {
            double th = 2.0 * M_PI * i / resolution;
            Vec v{std::cos(th), std::sin(th)};
            pts.push_back((1.0 / norm_p(v, p)) * v);
        }
    } else {
        // Deterministic low-discrepancy-ish sphere sweep.
        std::uint64_t state = 0x2545f4914f6cdd1dull;
        for (int i = 0; i < resolution * n; ++i) {
            Vec v(static_cast<std::size_t>(n));
            for (double& c : v) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                c = static_cast<double>(state >> 11) / 4503599627370496.0 - 1.0;
            }
            if (norm2(v) < 1e-9) continue;
            pts.push_back((1.0 / norm_p(v, p)) * v);
        }
        for (int c = 0; c < n; ++c) pts.push_back(basis_vector(n, c));
    }
    return hull_reduce(pts);
}

void save_polytope(const SymmetricPolytope& P, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_polytope: cannot open " + path);
    out.precision(17);
    out << P.n << " " << P.vertices.size() << "\n";
    for (const Vec& v : P.vertices) {
        for (int c = 0; c < P.n; ++c) out << (c ? " " : "") << v[static_cast<std::size_t>(c)];
        out << "\n";
    }
}

SymmetricPolytope load_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_polytope: cannot open " + path);
    int n = 0;
    std::size_t k = 0;
    in >> n >> k;
    if (!in || n < 1) throw std::runtime_error("load_polytope: bad header in " + path);
    std::vector<Vec> pts(k, Vec(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < k; ++i)
        for (int c = 0; c < n; ++c) in >> pts[i][static_cast<std::size_t>(c)];
    if (!in) throw std::runtime_error("load_polytope: truncated file " + path);
    return hull_reduce(pts);  // completes the negation closure
}

void save_halfspaces(const HalfspacePolytope& H, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_halfspaces: cannot open " + path);
    out.precision(17);
    out << H.n << " " << H.constraints.size() << "\n";
    for (const Halfspace& c : H.constraints) {
        for (int i = 0; i < H.n; ++i) out << c.a[static_cast<std::size_t>(i)] << " ";
        out << c.b << "\n";
    }
}

HalfspacePolytope load_halfspaces(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_halfspaces: cannot open " + path);
    HalfspacePolytope H;
    std::size_t m = 0;
    in >> H.n >> m;
    if (!in || H.n < 1) throw std::runtime_error("load_halfspaces: bad header in " + path);
    for (std::size_t i = 0; i < m; ++i) {
        Halfspace c;
        c.a.resize(static_cast<std::size_t>(H.n));
        for (int j = 0; j < H.n; ++j) in >> c.a[static_cast<std::size_t>(j)];
        in >> c.b;
        H.constraints.push_back(std::move(c));
    }
    if (!in) throw std::runtime_error("load_halfspaces: truncated file " + path);
    return H;
}

}  // namespace jsant
