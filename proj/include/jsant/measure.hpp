#pragma once

// Volumes and axis-moment integrals: exact facet-cone routines for polytopes,
// seeded hit-or-miss Monte Carlo for oracles, and the Gamma-function oracle
// for l_p balls.

#include <cstdint>
#include <vector>

#include "jsant/bodies.hpp"

namespace jsant {

struct McConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::uint64_t batch = 10000;
};

enum class VolumeMethod { Exact, MonteCarlo };

struct VolumeResult {
    double value = 0.0;
    double stderr_ = 0.0;  // 0 for exact results
    VolumeMethod method = VolumeMethod::Exact;
};

// Deterministic counter-based stream: every (seed, stream) pair yields an
// independent reproducible sequence regardless of call interleaving.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Exact volume via the facet-cone decomposition from the origin.
VolumeResult volume_polytope(const SymmetricPolytope& P);

VolumeResult volume_mc(const BodyOracle& K, const McConfig& cfg);
VolumeResult volume_mc(const SymmetricPolytope& P, const McConfig& cfg);

// Volume of either kind: exact when possible, MC otherwise.
VolumeResult volume(const Body& b, const McConfig& cfg);

// 2^n Gamma(1+1/p)^n / Gamma(1+n/p).
double lp_ball_volume(int n, double p);

// Closed Dirichlet form of the axis moment int_{B_p^n} |x_1|^q dx.
double lp_ball_moment(int n, double p, double q);

// int_K |x_m|^j dx. Polytopes: facet cones clipped at {x_m = 0}, monomial
// integrated exactly over each piece. Oracles: weighted hit-or-miss.
VolumeResult moment_integral(const SymmetricPolytope& P, int m, int j);
VolumeResult moment_integral(const BodyOracle& K, int m, int j, const McConfig& cfg);
VolumeResult moment_integral(const Body& b, int m, int j, const McConfig& cfg);

// Exact second-moment matrix entries int_K x_a x_b dx (polytopes only).
std::vector<Vec> second_moment_matrix(const SymmetricPolytope& P);

struct RatioResult {
    double value = 0.0;
    double stderr_ = 0.0;  // first-order propagation through the product
};

// prod |K_i| / |B_j^n|^k.
RatioResult santalo_ratio(const std::vector<Body>& bodies, int j, const McConfig& cfg);

// Remark-style explicit bound a_{n,j,k} = C(k,j)^{nk/j}.
double bound_constant(int n, int j, int k);

// Clip a simplex against {<a,x> <= b}; pieces re-triangulated via hulls.
std::vector<std::vector<Vec>> clip_simplex(const std::vector<Vec>& simplex, const Vec& a, double b);

}  // namespace jsant
