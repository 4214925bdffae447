#pragma once

// Convex hulls in dimension 1..4 with simplicial facets. One engine serves
// vertex irredundancy, exact volumes, V->H conversion and (through polar
// duality) halfspace vertex enumeration.

#include <vector>

#include "jsant/linalg.hpp"

namespace jsant {

struct HullFacet {
    std::vector<int> vertices;  // d point indices, simplicial
    Vec normal;                 // outward unit normal
    double offset = 0.0;        // <normal, x> <= offset on the hull
};

struct Hull {
    int dim = 0;
    bool full_dimensional = false;
    std::vector<Vec> points;        // input copy
    std::vector<HullFacet> facets;  // empty when degenerate
    std::vector<int> vertex_ids;    // indices of extreme points, sorted

    // Sum over facets of the cone simplex from the origin; exact for hulls
    // with the origin in the interior (our symmetric bodies) and correct in
    // general via signed determinants.
    double volume() const;
};

// Quickhull with a relative tolerance on plane distances. Throws on empty
// input; degenerate (rank-deficient) input yields full_dimensional = false.
Hull convex_hull(const std::vector<Vec>& points, double rel_tol = 1e-10);

// Simplices (as point-index tuples of size d+1) fanning the hull from its
// first vertex; used by exact volume and moment integration over clipped cells.
std::vector<std::vector<int>> hull_fan_triangulation(const Hull& h);

double simplex_volume(const std::vector<Vec>& verts);

}  // namespace jsant
