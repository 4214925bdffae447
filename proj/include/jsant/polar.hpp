#pragma once

// Generalized j-polar of a tuple of symmetric polytopes, plus polarity
// verification for mixed polytope/oracle tuples.

#include <optional>
#include <vector>

#include "jsant/bodies.hpp"
#include "jsant/measure.hpp"
#include "jsant/symfun.hpp"

namespace jsant {

// The k-1 bodies occupying every argument slot except the one being solved
// for. k = bodies.size() + 1.
struct PolarProblem {
    std::vector<SymmetricPolytope> bodies;
    PolarityParams params;

    int k() const { return static_cast<int>(bodies.size()) + 1; }
    void validate() const;
};

struct JPolarResult {
    HalfspacePolytope halfspaces;                // irredundant when bounded
    std::optional<SymmetricPolytope> polytope;   // present iff bounded
};

// Largest symmetric convex body Q with S_j(v_1, x, v_3,...,v_k) <= C(k,j)
// for all x in Q and all vertex tuples. The form is affine in the free slot,
// so vertex constraints certify the hulls; each tuple contributes its
// halfspace and the mirrored one (for odd j the raw set is not symmetric).
JPolarResult j_polar(const PolarProblem& problem);

enum class Verdict { Pass, Fail, Inconclusive };

struct TupleVerdict {
    Verdict verdict = Verdict::Inconclusive;
    double max_value = 0.0;        // worst E_j found
    std::vector<Vec> witness;      // tuple achieving it
    double last_improvement = 0.0; // ascent movement at the iteration cap
};

struct SamplerCfg {
    std::uint64_t samples = 256;  // boundary samples per oracle body
    std::uint64_t seed = 1;
    int restarts = 3;
    int sweeps = 5;
};

// Exact vertex enumeration when every body is a polytope; otherwise Monte
// Carlo boundary sampling followed by per-slot coordinate ascent (each slot
// maximization is linear). Inconclusive when the ascent is still moving by
// more than 1e-6 at the sweep cap.
TupleVerdict verify_tuple_polarity(const std::vector<Body>& bodies, const PolarityParams& params,
                                   const SamplerCfg& sampler = {});

struct ContainmentVerdict {
    bool pass = false;
    double min_slack = 0.0;  // most violated constraint slack over vertices
};

// K_i subset of j_polar(the others), checked vertex-by-vertex with 1e-9
// slack tolerance.
ContainmentVerdict largest_body_check(const std::vector<SymmetricPolytope>& bodies,
                                      const PolarityParams& params, int index);

}  // namespace jsant
