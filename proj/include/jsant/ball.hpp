#pragma once

// Ball-type functionals over orthonormal bases, their minimization, isotropic
// position and the diagonal equal-moments normalization.

#include <string>
#include <vector>

#include "jsant/bodies.hpp"
#include "jsant/functional.hpp"
#include "jsant/measure.hpp"

namespace jsant {

// Orthonormal columns plus the Givens angles that generate them; sign flips
// never matter downstream (everything passes through |<x, eps_m>|).
struct OrthoBasis {
    std::vector<Vec> columns;
    std::vector<double> angles;  // n(n-1)/2 entries, pair order (0,1),(0,2),...

    int n() const { return static_cast<int>(columns.size()); }
    double orthonormality_defect() const;  // max |col_a . col_b - delta_ab|
};

OrthoBasis standard_orthobasis(int n);
OrthoBasis orthobasis_from_angles(int n, const std::vector<double>& angles);

struct BallValue {
    double value = 0.0;
    OrthoBasis basis;
    std::vector<double> per_axis_terms;
    double restart_spread = 0.0;  // max - min across restarts (minimization)
    bool upper_bound_only = false;
};

// sum_m prod_i int_{K_i} |<x, eps_m>|^j dx.
BallValue ball_value_at_basis(const std::vector<Body>& bodies, int j, const OrthoBasis& basis,
                              const McConfig& cfg = {});

struct OptimizerCfg {
    int restarts = 8;
    int max_iter = 400;
    double simplex_tol = 1e-10;
    std::uint64_t seed = 1;
};

// Multi-start Nelder-Mead over the Givens angles. The result is an upper
// bound on the true minimum (flagged as such), never a certificate.
BallValue ball_value_min(const std::vector<Body>& bodies, int j, const OptimizerCfg& opt = {},
                         const McConfig& cfg = {});

// det-1 map T with the second-moment matrix of TK proportional to the
// identity; columns of the returned matrix.
std::vector<Vec> isotropic_map(const SymmetricPolytope& K);

struct DiagonalMapResult {
    Vec d;                    // diagonal entries, product 1
    bool converged = false;
    double residual = 0.0;    // max/min moment ratio - 1 at exit
};

// Diagonal T_0 in SL(n) equalizing int_{T_0 Q} |x_m|^j dx across axes.
DiagonalMapResult equal_moments_map(const SymmetricPolytope& Q, int j);

struct Lemma52Report {
    double lhs = 0.0;     // sharp constant at the B_j^n tuple
    double rhs = 0.0;     // B_j(K_1,...,K_k) / (prod vol)^{(n+j)/n}
    double slack = 0.0;   // rhs - lhs, nonnegative up to MC error
    double stderr_ = 0.0;
    bool pass = false;
};

Lemma52Report lemma52_check(const std::vector<Body>& bodies, int j, const OptimizerCfg& opt = {},
                            const McConfig& cfg = {});

// sum_m prod_i int |<x, eps_m>|^j f_i(x) dx by lattice quadrature.
double functional_ball_value(const std::vector<GridFunction>& fs, int j, const OrthoBasis& basis);

// Conjectured companion bound n^{1-k} (int ||u||_j^j rho(C(k,j)||u||_j^j)^{1/k} du)^k.
RhsResult functional_ball_rhs(const RhoFunction& rho, int n, int j, int k);

}  // namespace jsant
