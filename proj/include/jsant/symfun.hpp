#pragma once

// Coordinate-summed elementary symmetric forms S_j / S_{j,p}, the normalized
// E_j variants, Maclaurin gaps and polarity verdicts on finite point sets.

#include <cstdint>
#include <vector>

#include "jsant/linalg.hpp"

namespace jsant {

// Arguments (x_1,...,x_k), each a vector in R^n.
struct PointTuple {
    std::vector<Vec> points;

    int k() const { return static_cast<int>(points.size()); }
    int n() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    void validate() const;  // throws std::invalid_argument on k<2 or mixed dims
};

// Degree j, exponent p (p=1 recovers the signed S_j family) and the
// normalization threshold, by default binomial(k,j).
struct PolarityParams {
    int j = 2;
    double p = 1.0;
    double threshold = 0.0;  // 0 means "use binomial(k,j)"

    double effective_threshold(int k) const;
    void validate(int k) const;
};

double binomial(int k, int j);

// Elementary symmetric polynomial s_j(r_1,...,r_k). Uses the coefficient
// recurrence for k > 12, direct tuple enumeration below that.
double elem_sym(const std::vector<double>& r, int j);

// Test-oracle path: always enumerates the C(k,j) index tuples.
double elem_sym_enumerate(const std::vector<double>& r, int j);

enum class SymForm { Signed, Absolute };

// S_j(x_1,...,x_k) = sum_l s_j(x_1(l),...,x_k(l)); the Absolute form applies
// |.|^p to every coordinate first (the S_{j,p} of the weighted setting).
double big_S(const PointTuple& pts, const PolarityParams& params, SymForm form = SymForm::Signed);

// E_j = S_j / C(k,j).
double big_E(const PointTuple& pts, const PolarityParams& params, SymForm form = SymForm::Signed);

// E_{j1}(r)^{1/j1} - E_{j2}(r)^{1/j2}, nonnegative by Maclaurin's inequality.
// Requires r >= 0 and 1 <= j1 <= j2 <= k.
double maclaurin_gap(const std::vector<double>& r, int j1, int j2);

struct PolarityVerdict {
    bool pass = false;
    double max_value = 0.0;              // worst E_j over all tuples examined
    std::vector<std::size_t> argmax;     // index into each vertex set
    std::vector<Vec> witness;            // the worst tuple itself
};

// Exhaustive E_j <= 1 + tol check over the Cartesian product of finite point
// sets. A PASS certifies the polarity condition for the convex hulls (the
// form is affine in each argument). Argmax ties break lexicographically.
PolarityVerdict check_polarity_on_points(const std::vector<std::vector<Vec>>& vertex_sets,
                                         const PolarityParams& params, double tol = 1e-9,
                                         SymForm form = SymForm::Signed);

}  // namespace jsant
