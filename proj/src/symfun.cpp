#include "jsant/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsant {

void PointTuple::validate() const {
    if (points.size() < 2) throw std::invalid_argument("PointTuple: k >= 2 required");
    const std::size_t n0 = points[0].size();
    if (n0 < 1) throw std::invalid_argument("PointTuple: ambient dimension >= 1 required");
    for (const Vec& x : points)
        if (x.size() != n0) throw std::invalid_argument("PointTuple: mixed dimensions");
}

double binomial(int k, int j) {
    if (j < 0 || j > k) return 0.0;
    j = std::min(j, k - j);
    double r = 1.0;
    for (int i = 1; i <= j; ++i) r = r * (k - j + i) / i;
    return std::round(r);
}

double PolarityParams::effective_threshold(int k) const {
    return threshold > 0.0 ? threshold : binomial(k, j);
}

void PolarityParams::validate(int k) const {
    if (j < 1 || j > k) throw std::invalid_argument("PolarityParams: j out of range [1,k]");
    if (p <= 0.0) throw std::invalid_argument("PolarityParams: p > 0 required");
    if (threshold < 0.0) throw std::invalid_argument("PolarityParams: threshold > 0 required");
}

double elem_sym_enumerate(const std::vector<double>& r, int j) {
    const int k = static_cast<int>(r.size());
    if (j < 1 || j > k) throw std::domain_error("elem_sym: j out of range [1,k]");
    std::vector<int> idx(j);
    for (int i = 0; i < j; ++i) idx[i] = i;
    double total = 0.0;
    while (true) {
        double prod = 1.0;
        for (int i = 0; i < j; ++i) prod *= r[idx[i]];
        total += prod;
        int pos = j - 1;
        while (pos >= 0 && idx[pos] == k - j + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < j; ++i) idx[i] = idx[i - 1] + 1;
    }
    return total;
}

double elem_sym(const std::vector<double>& r, int j) {
    const int k = static_cast<int>(r.size());
    if (j < 1 || j > k) throw std::domain_error("elem_sym: j out of range [1,k]");
    if (k <= 12) return elem_sym_enumerate(r, j);
    // Coefficient recurrence: expand prod_i (1 + r_i t) truncated at degree j.
    std::vector<double> coef(static_cast<std::size_t>(j) + 1, 0.0);
    coef[0] = 1.0;
    for (int i = 0; i < k; ++i)
        for (int d = std::min(j, i + 1); d >= 1; --d) coef[d] += r[i] * coef[d - 1];
    return coef[static_cast<std::size_t>(j)];
}

double big_S(const PointTuple& pts, const PolarityParams& params, SymForm form) {
    pts.validate();
    params.validate(pts.k());
    const int n = pts.n();
    const int k = pts.k();
    std::vector<double> coords(static_cast<std::size_t>(k));
    double total = 0.0;
    for (int l = 0; l < n; ++l) {
        for (int i = 0; i < k; ++i) {
            double c = pts.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
            coords[static_cast<std::size_t>(i)] =
                form == SymForm::Absolute ? std::pow(std::abs(c), params.p) : c;
        }
        total += elem_sym(coords, params.j);
    }
    return total;
}

double big_E(const PointTuple& pts, const PolarityParams& params, SymForm form) {
    return big_S(pts, params, form) / binomial(pts.k(), params.j);
}

double maclaurin_gap(const std::vector<double>& r, int j1, int j2) {
    const int k = static_cast<int>(r.size());
    if (j1 < 1 || j1 > j2 || j2 > k) throw std::domain_error("maclaurin_gap: need 1 <= j1 <= j2 <= k");
    for (double v : r)
        if (v < 0.0) throw std::domain_error("maclaurin_gap: negative entry");
    double e1 = elem_sym(r, j1) / binomial(k, j1);
    double e2 = elem_sym(r, j2) / binomial(k, j2);
    return std::pow(e1, 1.0 / j1) - std::pow(e2, 1.0 / j2);
}

PolarityVerdict check_polarity_on_points(const std::vector<std::vector<Vec>>& vertex_sets,
                                         const PolarityParams& params, double tol, SymForm form) {
    const int k = static_cast<int>(vertex_sets.size());
    if (k < 2) throw std::domain_error("check_polarity_on_points: k >= 2 required");
    for (const auto& vs : vertex_sets)
        if (vs.empty()) throw std::domain_error("check_polarity_on_points: empty vertex set");
    params.validate(k);

    PolarityVerdict verdict;
    verdict.max_value = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    PointTuple tuple;
    tuple.points.resize(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i)
            tuple.points[static_cast<std::size_t>(i)] =
                vertex_sets[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        double e = big_S(tuple, params, form) / params.effective_threshold(k);
        if (e > verdict.max_value) {  // strict: earlier (lexicographic) tuple wins ties
            verdict.max_value = e;
            verdict.argmax = idx;
            verdict.witness = tuple.points;
        }
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 ==
                               vertex_sets[static_cast<std::size_t>(pos)].size()) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
    }
    verdict.pass = verdict.max_value <= 1.0 + tol;
    return verdict;
}

}  // namespace jsant
