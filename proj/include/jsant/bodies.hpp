#pragma once

// Origin-symmetric convex bodies: V-polytopes with cached facet structure,
// H-polytopes, membership oracles (l_p balls), Steiner symmetrization and
// diagonal images.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jsant/hull.hpp"
#include "jsant/linalg.hpp"

namespace jsant {

struct Halfspace {
    Vec a;
    double b = 0.0;  // <a, x> <= b
};

enum class Boundedness { Bounded, Unbounded, Unknown };

struct HalfspacePolytope {
    int n = 0;
    std::vector<Halfspace> constraints;
    Boundedness bounded = Boundedness::Unknown;
    bool degenerate = false;  // empty interior
};

// V-polytope, vertex set closed under negation and irredundant. Facet planes
// and vertex-index sets are cached at construction; the combinatorics survive
// invertible linear maps, so images only re-solve the planes.
struct SymmetricPolytope {
    int n = 0;
    std::vector<Vec> vertices;
    bool degenerate = false;
    std::vector<Halfspace> facets;                // outward, offsets > 0
    std::vector<std::vector<int>> facet_vertices; // indices into `vertices`

    bool contains(const Vec& x, double tol = 1e-9) const;
};

enum class SymmetryClass { Symmetric, Unconditional };

struct BodyOracle {
    int n = 0;
    std::function<bool(const Vec&)> member;
    double outer_radius = 0.0;  // K subset of R * B_2
    double inner_radius = 0.0;  // r * B_2 subset of K
    SymmetryClass symmetry = SymmetryClass::Symmetric;
};

using Body = std::variant<SymmetricPolytope, BodyOracle>;

int body_dim(const Body& b);

// member(x) iff ||x||_p <= scale. p < 1 produces a non-convex star body;
// hull-based code paths must not receive those.
BodyOracle make_lp_ball(int n, double p, double scale = 1.0);

// Irredundant symmetric hull of points and their negations. Rank-deficient
// input is returned with the degenerate flag set, never thrown.
SymmetricPolytope hull_reduce(const std::vector<Vec>& points);

// H-representation from the cached facet planes, coplanar duplicates merged.
HalfspacePolytope to_halfspaces(const SymmetricPolytope& P);

// Vertex enumeration by polar duality (all offsets positive since the origin
// is interior). Boundedness is decided here and recorded on the input's flag
// semantics: an unbounded intersection yields an empty optional.
struct VertexEnumeration {
    Boundedness bounded = Boundedness::Unknown;
    bool degenerate = false;
    std::optional<SymmetricPolytope> polytope;
};
VertexEnumeration enumerate_vertices(const HalfspacePolytope& H);

double support(const SymmetricPolytope& P, const Vec& u);
double support(const BodyOracle& K, const Vec& u);
double support(const Body& b, const Vec& u);

// sup{t > 0 : t u in K}, u unit, via bisection to 1e-10.
double radial(const BodyOracle& K, const Vec& u);
double radial(const SymmetricPolytope& P, const Vec& u);

// Exact Steiner symmetral about {x_axis = 0}: every (upper facet, lower
// facet) pair contributes the halfspaces 2|x_axis| <= g_u - h_l.
SymmetricPolytope steiner_symmetrize(const SymmetricPolytope& P, int axis);

struct SweepResult {
    SymmetricPolytope body;
    bool unconditional = false;
    double defect = 0.0;  // max vertex-set Hausdorff distance over sign flips
    std::string diagnostic;
};

// One Steiner sweep through axes n-1,...,0. A single sweep need not
// unconditionalize an arbitrary body; the postcondition is verified and the
// result reported either way.
SweepResult unconditionalize_sweep(const SymmetricPolytope& P);

// Iterated sweeps until the defect drops below `tol` or `max_sweeps` is hit.
SweepResult unconditionalize(const SymmetricPolytope& P, double tol = 1e-7, int max_sweeps = 50);

double unconditionality_defect(const SymmetricPolytope& P);

SymmetricPolytope diagonal_image(const SymmetricPolytope& P, const Vec& d);
BodyOracle diagonal_image(const BodyOracle& K, const Vec& d);
Body diagonal_image(const Body& b, const Vec& d);

// Image under an invertible linear map given column-wise (y = M x).
SymmetricPolytope linear_image(const SymmetricPolytope& P, const std::vector<Vec>& columns);

// Convenience constructors.
SymmetricPolytope make_cube(int n, double half = 1.0);
SymmetricPolytope make_cross_polytope(int n, double scale = 1.0);
// Boundary points of B_p^n (p >= 1) hulled; `resolution` controls the count.
SymmetricPolytope lp_ball_polytope(int n, double p, int resolution = 128);

// Plain-text V-polytope format: "n k" then one vertex per line. Negation
// closure may be stored half; it is completed on load.
void save_polytope(const SymmetricPolytope& P, const std::string& path);
SymmetricPolytope load_polytope(const std::string& path);
void save_halfspaces(const HalfspacePolytope& H, const std::string& path);
HalfspacePolytope load_halfspaces(const std::string& path);

}  // namespace jsant
