#pragma once

// Functional side of the inequality family: monotone rho machinery with
// generalized inverses, grid-sampled even functions, function-level polarity
// checks, the layer-cake right-hand side, the 1-D multiplicative
// Prekopa-Leindler verifier and the weighted orthant inequality.

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "jsant/bodies.hpp"
#include "jsant/polar.hpp"
#include "jsant/symfun.hpp"

namespace jsant {

enum class RhoKind { IndicatorStyle, Exponential, Power, CustomTable };

// Nonincreasing rho on R with values in [0, inf]; inverse is the generalized
// one, sup{t : rho(t) >= s}.
struct RhoFunction {
    RhoKind kind = RhoKind::Exponential;
    std::function<double(double)> eval;
    std::function<double(double)> inverse;
};

// infinity for t < 0, 1 on [0, C], 0 beyond.
RhoFunction rho_indicator(double C);
RhoFunction rho_exponential();                  // e^{-t}, extended to all of R
RhoFunction rho_power(double alpha);            // 1 for t < 0, (1+t)^{-alpha}
// Piecewise-linear table on sorted abscissae; rejects increasing segments.
RhoFunction rho_table(const std::vector<double>& ts, const std::vector<double>& vals);

// Samples on the centered lattice {(i - M) h : 0 <= i <= 2M}^n, M = round(L/h),
// stored row-major (last coordinate fastest). Optional exact per-cell masses
// back integral quadrature when the samples are indicators.
struct GridFunction {
    int n = 0;
    double L = 0.0;
    double h = 0.0;
    std::vector<double> values;
    bool even = true;
    std::optional<std::vector<double>> masses;

    int per_axis() const { return 2 * static_cast<int>(std::lround(L / h)) + 1; }
    Vec point(const std::vector<int>& idx) const;
    double value(const std::vector<int>& idx) const;
    double integral() const;  // masses when present, else h^n Riemann sum
    void validate() const;    // nonnegative, finite, even when flagged
};

void save_grid_function(const GridFunction& f, const std::string& path);
GridFunction load_grid_function(const std::string& path);

// Samples an arbitrary function on the lattice.
GridFunction grid_from_function(int n, double L, double h,
                                const std::function<double(const Vec&)>& fn, bool even = true);

struct FunctionVerdict {
    Verdict verdict = Verdict::Inconclusive;
    double worst_ratio = 0.0;     // max of prod f_i / rho(S_j) over tuples
    std::vector<Vec> witness;
};

// prod_i f_i(x_i) <= rho(S_j(x_1,...,x_k)) over lattice tuples; exhaustive
// when the tuple count is at most 1e7, seeded sampling plus local ascent
// otherwise.
FunctionVerdict check_function_polarity(const std::vector<GridFunction>& fs,
                                        const RhoFunction& rho, const PolarityParams& params,
                                        const SamplerCfg& sampler = {},
                                        std::optional<SymForm> form = std::nullopt);

struct RhsResult {
    double value = 0.0;
    bool converged = false;
    std::string diagnostic;
};

// [C(k,j)^{-n/j} |B_j^n| int_0^inf rho^{-1}(t^k)^{n/j} dt]^k by adaptive
// quadrature of the layer-cake identity.
RhsResult conjectured_rhs(const RhoFunction& rho, int n, int j, int k);

struct FunctionalLift {
    std::vector<GridFunction> fs;
    RhoFunction rho;
};

// Indicator grid functions of the bodies plus the matching cutoff rho.
// Polytope cells crossing the boundary get exact clipped masses.
FunctionalLift lift_from_bodies(const std::vector<Body>& bodies, int j, double spacing = 0.0);

// Lattice points where f >= r.
std::vector<Vec> superlevel_polytope(const GridFunction& f, double r);

// Samples of a 1-D function at t = (i+1) T / size over (0, T].
struct Table1D {
    double T = 1.0;
    std::vector<double> values;

    double t_at(std::size_t i) const { return (static_cast<double>(i) + 1.0) * T / static_cast<double>(values.size()); }
    double at(double t) const;   // linear interpolation, 0 outside (0, T]
    double integral() const;
};

struct PLReport {
    bool hypothesis_pass = false;
    double worst_violation = 0.0;          // max of prod h_i^{1/k} - h(geomean)
    std::vector<double> witness;           // t tuple achieving it
    double lhs = 0.0;                      // prod (int h_i)^{1/k}
    double rhs = 0.0;                      // int h
    bool conclusion_pass = false;
};

// 1-D multiplicative Prekopa-Leindler: hypothesis scan over lattice tuples,
// then the integral comparison.
PLReport prekopa_leindler_check(const std::vector<Table1D>& hs, const Table1D& h,
                                double quad_error = 1e-6);

struct OrthantReport {
    Verdict polarity = Verdict::Inconclusive;
    std::vector<Vec> polarity_witness;
    double lhs = 0.0;
    double rhs = 0.0;
    double error = 0.0;   // combined quadrature error estimate
    bool pass = false;
};

// prod_i int_{R^n_+} |<x, e_m>|^q f_i dx <= (int_{R^n_+} |u_1|^q
// rho(C ||u||_{jp}^{jp})^{1/k} du)^k, after verifying S_{j,p}-polarity.
OrthantReport weighted_orthant_check(const std::vector<GridFunction>& fs, const RhoFunction& rho,
                                     int j, double p, double q, int m,
                                     const SamplerCfg& sampler = {});

// int_0^inf g by adaptive quadrature, geometric refinement toward both ends;
// converged=false with a diagnostic when the tail fails to decay.
double improper_integral(const std::function<double(double)>& g, bool& converged,
                         std::string& diagnostic);

// Full-space version by orthant decomposition and folding.
OrthantReport full_space_from_orthants(const std::vector<GridFunction>& fs,
                                       const RhoFunction& rho, int j, double p, double q = 0.0,
                                       const SamplerCfg& sampler = {});

}  // namespace jsant
