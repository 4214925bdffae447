#include "jsant/functional.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "jsant/measure.hpp"

namespace jsant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
               double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(g, a, m, fa, flm, fm, tol * 0.5, depth - 1) +
           simpson(g, m, b, fm, frm, fb, tol * 0.5, depth - 1);
}

double adaptive_segment(const std::function<double(double)>& g, double a, double b, double tol) {
    // Overflowed samples are clamped to a large finite value; a NaN leaking into
    // the Simpson error estimate would otherwise force full-depth recursion.
    auto safe = [&g](double t) {
        double v = g(t);
        if (std::isnan(v)) return 0.0;
        return std::clamp(v, -1e100, 1e100);
    };
    std::function<double(double)> sg = safe;
    double fa = sg(a), fb = sg(b), fm = sg(0.5 * (a + b));
    // depth 44: a jump discontinuity recurses along a single path, and the
    // leftover sliver must stay below 1e-12 of an O(1) integrand
    return simpson(sg, a, b, fa, fm, fb, tol, 44);
}

}  // namespace

// int_0^inf g, geometric refinement toward 0 and doubling toward infinity.
double improper_integral(const std::function<double(double)>& g, bool& converged,
                         std::string& diagnostic) {
    double total = 0.0;
    double prev_lo = kInf;
    for (int m = 0; m < 100; ++m) {
        double lo = std::pow(2.0, -m - 1), hi = std::pow(2.0, -m);
        double piece = adaptive_segment(g, lo, hi, 1e-12);
        total += piece;
        if ((m > 20 && piece >= prev_lo && piece > 1.0) || !std::isfinite(piece) ||
            piece > 1e50) {
            converged = false;
            diagnostic = "layer-cake integrand is not integrable near zero";
            return total;
        }
        prev_lo = piece;
        if (m > 8 && std::abs(piece) < 1e-14 * std::max(1.0, std::abs(total))) break;
    }
    double prev = kInf;
    for (int m = 0; m < 200; ++m) {
        double lo = std::pow(2.0, m), hi = std::pow(2.0, m + 1);
        double piece = adaptive_segment(g, lo, hi, 1e-12);
        total += piece;
        if (std::abs(piece) < 1e-14 * std::max(1.0, std::abs(total))) {
            converged = true;
            return total;
        }
        if ((m > 40 && piece >= prev) || !std::isfinite(piece) || piece > 1e50) {
            converged = false;
            diagnostic = "tail of the layer-cake integral is not decaying";
            return total;
        }
        prev = piece;
    }
    converged = false;
    diagnostic = "layer-cake integral did not settle within the segment budget";
    return total;
}

namespace {

// Allocation-free coefficient recurrence for the hot exhaustive scan.
double elem_sym_flat(const std::vector<double>& r, int j) {
    double coef[16] = {1.0};
    const int k = static_cast<int>(r.size());
    if (j > k) return 0.0;
    if (k >= 16) return elem_sym(r, j);
    for (int d = 1; d <= j; ++d) coef[d] = 0.0;
    for (int i = 0; i < k; ++i)
        for (int d = std::min(j, i + 1); d >= 1; --d) coef[d] += r[static_cast<std::size_t>(i)] * coef[d - 1];
    return coef[j];
}

std::vector<int> unflatten(std::size_t flat, int n, int per_axis) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int c = n - 1; c >= 0; --c) {
        idx[static_cast<std::size_t>(c)] = static_cast<int>(flat % static_cast<std::size_t>(per_axis));
        flat /= static_cast<std::size_t>(per_axis);
    }
    return idx;
}

// Indices of lattice points carrying nonzero values.
std::vector<std::size_t> support_of(const GridFunction& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] > 0.0) out.push_back(i);
    return out;
}

struct TupleEval {
    double product = 0.0;
    double rho_value = 0.0;
    double ratio = 0.0;
    bool violation = false;
};

TupleEval eval_function_tuple(const std::vector<GridFunction>& fs, const RhoFunction& rho,
                              const PolarityParams& params, SymForm form,
                              const std::vector<std::size_t>& flat_idx) {
    TupleEval e;
    e.product = 1.0;
    PointTuple tuple;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const GridFunction& f = fs[i];
        e.product *= f.values[flat_idx[i]];
        tuple.points.push_back(f.point(unflatten(flat_idx[i], f.n, f.per_axis())));
    }
    if (e.product <= 0.0) return e;
    double S = big_S(tuple, params, form);
    e.rho_value = rho.eval(S);
    if (std::isinf(e.rho_value)) {
        e.ratio = 0.0;
    } else if (e.rho_value <= 1e-300) {
        e.ratio = kInf;
        e.violation = true;
    } else {
        e.ratio = e.product / e.rho_value;
        e.violation = e.product > e.rho_value + 1e-9;
    }
    return e;
}

// Exact mass of (cell cube) intersect P via successive simplex clipping.
double cell_mass(const SymmetricPolytope& P, const Vec& lo, const Vec& hi) {
    const int n = P.n;
    std::vector<Vec> corners;
    for (int mask = 0; mask < (1 << n); ++mask) {
        Vec c(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d)
            c[static_cast<std::size_t>(d)] = (mask >> d & 1) ? hi[static_cast<std::size_t>(d)]
                                                             : lo[static_cast<std::size_t>(d)];
        corners.push_back(std::move(c));
    }
    // Fully inside: convexity makes corner containment sufficient.
    bool all_in = true;
    for (const Vec& c : corners)
        if (!P.contains(c, 1e-12)) all_in = false;
    double cell_vol = 1.0;
    for (int d = 0; d < n; ++d)
        cell_vol *= hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)];
    if (all_in) return cell_vol;
    // Fully outside: some facet separates every corner.
    for (const Halfspace& f : P.facets) {
        bool separated = true;
        for (const Vec& c : corners)
            if (dot(f.a, c) <= f.b) separated = false;
        if (separated) return 0.0;
    }
    Hull cube = convex_hull(corners);
    std::vector<std::vector<Vec>> pieces;
    for (const auto& ids : hull_fan_triangulation(cube)) {
        std::vector<Vec> s;
        for (int id : ids) s.push_back(corners[static_cast<std::size_t>(id)]);
        pieces.push_back(std::move(s));
    }
    for (const Halfspace& f : P.facets) {
        std::vector<std::vector<Vec>> next;
        for (const auto& s : pieces)
            for (auto& kept : clip_simplex(s, f.a, f.b)) next.push_back(std::move(kept));
        pieces = std::move(next);
        if (pieces.empty()) return 0.0;
    }
    double mass = 0.0;
    for (const auto& s : pieces) mass += simplex_volume(s);
    return mass;
}

double orthant_weighted_integral(const GridFunction& f, double q, int m) {
    double sum = 0.0;
    const int per = f.per_axis();
    const double hn = std::pow(f.h, f.n);
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        if (f.values[flat] <= 0.0) continue;
        Vec x = f.point(unflatten(flat, f.n, per));
        double w = (q == 0.0) ? 1.0 : std::pow(std::abs(x[static_cast<std::size_t>(m)]), q);
        sum += w * f.values[flat] * hn;
    }
    return sum;
}

// Same sum on the twice-coarser sublattice; the difference is the error proxy.
double orthant_weighted_integral_coarse(const GridFunction& f, double q, int m) {
    double sum = 0.0;
    const int per = f.per_axis();
    const int M = per / 2;
    const double hn = std::pow(2.0 * f.h, f.n);
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        std::vector<int> idx = unflatten(flat, f.n, per);
        bool on_sub = true;
        for (int c : idx)
            if ((c - M) % 2 != 0) on_sub = false;
        if (!on_sub || f.values[flat] <= 0.0) continue;
        Vec x = f.point(idx);
        double w = (q == 0.0) ? 1.0 : std::pow(std::abs(x[static_cast<std::size_t>(m)]), q);
        sum += w * f.values[flat] * hn;
    }
    return sum;
}

double radial_orthant_rhs(const RhoFunction& rho, int n, int j, int k, double p, double q,
                          bool& converged, std::string& diagnostic) {
    const double s = static_cast<double>(j) * p;
    const double C = binomial(k, j);
    // Liouville reduction: int_{R^n_+} |u_1|^q g(||u||_s) du =
    // Gamma((q+1)/s) Gamma(1/s)^{n-1} / (s^{n-1} Gamma((n+q)/s)) *
    // int_0^inf g(r) r^{n+q-1} dr.
    double logA = std::lgamma((q + 1.0) / s) + (n - 1.0) * std::lgamma(1.0 / s) -
                  (n - 1.0) * std::log(s) - std::lgamma((n + q) / s);
    auto g = [&](double r) {
        double v = rho.eval(C * std::pow(r, s));
        if (v <= 0.0) return 0.0;
        return std::pow(r, n + q - 1.0) * std::pow(v, 1.0 / k);
    };
    double I = improper_integral(g, converged, diagnostic);
    return std::exp(logA) * I;
}

}  // namespace

RhoFunction rho_indicator(double C) {
    if (C <= 0.0) throw std::invalid_argument("rho_indicator: C > 0 required");
    RhoFunction r;
    r.kind = RhoKind::IndicatorStyle;
    r.eval = [C](double t) {
        if (t < 0.0) return kInf;
        return t <= C ? 1.0 : 0.0;
    };
    r.inverse = [C](double s) {
        if (s <= 0.0) return kInf;
        return s <= 1.0 ? C : 0.0;
    };
    return r;
}

RhoFunction rho_exponential() {
    RhoFunction r;
    r.kind = RhoKind::Exponential;
    r.eval = [](double t) { return std::exp(-t); };
    r.inverse = [](double s) {
        if (s <= 0.0) return kInf;
        return -std::log(s);
    };
    return r;
}

RhoFunction rho_power(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("rho_power: alpha > 0 required");
    RhoFunction r;
    r.kind = RhoKind::Power;
    r.eval = [alpha](double t) { return t < 0.0 ? 1.0 : std::pow(1.0 + t, -alpha); };
    r.inverse = [alpha](double s) {
        if (s <= 0.0) return kInf;
        if (s >= 1.0) return 0.0;
        return std::pow(s, -1.0 / alpha) - 1.0;
    };
    return r;
}

RhoFunction rho_table(const std::vector<double>& ts, const std::vector<double>& vals) {
    if (ts.size() != vals.size() || ts.size() < 2)
        throw std::invalid_argument("rho_table: need matching abscissae/values, size >= 2");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] <= ts[i - 1]) throw std::invalid_argument("rho_table: abscissae must increase");
        if (vals[i] > vals[i - 1] + 1e-12)
            throw std::invalid_argument("rho_table: values must be nonincreasing");
    }
    for (double v : vals)
        if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("rho_table: values in [0, inf)");
    RhoFunction r;
    r.kind = RhoKind::CustomTable;
    r.eval = [ts, vals](double t) {
        if (t <= ts.front()) return vals.front();
        if (t >= ts.back()) return vals.back();
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t i = static_cast<std::size_t>(it - ts.begin());
        double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
        return vals[i - 1] + w * (vals[i] - vals[i - 1]);
    };
    auto eval = r.eval;
    r.inverse = [ts, vals, eval](double s) {
        if (s <= vals.back()) return kInf;  // rho never drops below s
        if (s > vals.front()) return ts.front();
        double lo = ts.front(), hi = ts.back();
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (eval(mid) >= s) lo = mid;
            else hi = mid;
        }
        return lo;
    };
    return r;
}

Vec GridFunction::point(const std::vector<int>& idx) const {
    const int M = static_cast<int>(std::lround(L / h));
    Vec x(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
        x[static_cast<std::size_t>(c)] = (idx[static_cast<std::size_t>(c)] - M) * h;
    return x;
}

double GridFunction::value(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (int c = 0; c < n; ++c)
        flat = flat * static_cast<std::size_t>(per_axis()) +
               static_cast<std::size_t>(idx[static_cast<std::size_t>(c)]);
    return values[flat];
}

double GridFunction::integral() const {
    if (masses.has_value()) {
        double total = 0.0;
        for (double m : *masses) total += m;
        return total;
    }
    double total = 0.0;
    for (double v : values) total += v;
    return total * std::pow(h, n);
}

void GridFunction::validate() const {
    const std::size_t expect = static_cast<std::size_t>(std::pow(per_axis(), n) + 0.5);
    if (values.size() != expect) throw std::invalid_argument("GridFunction: value count mismatch");
    for (double v : values)
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("GridFunction: values must be finite and nonnegative");
    if (even) {
        for (std::size_t flat = 0; flat < values.size(); ++flat) {
            std::vector<int> idx = unflatten(flat, n, per_axis());
            std::size_t mirror = 0;
            for (int c = 0; c < n; ++c)
                mirror = mirror * static_cast<std::size_t>(per_axis()) +
                         static_cast<std::size_t>(per_axis() - 1 - idx[static_cast<std::size_t>(c)]);
            if (values[flat] != values[mirror])
                throw std::invalid_argument("GridFunction: even flag set but samples asymmetric");
        }
    }
}

void save_grid_function(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_grid_function: cannot open " + path);
    out.precision(17);
    out << f.n << " " << f.L << " " << f.h << "\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out << f.values[i] << (i + 1 == f.values.size() ? "\n" : " ");
}

GridFunction load_grid_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_grid_function: cannot open " + path);
    GridFunction f;
    if (!(in >> f.n >> f.L >> f.h)) throw std::runtime_error("load_grid_function: bad header");
    const std::size_t total = static_cast<std::size_t>(std::pow(f.per_axis(), f.n) + 0.5);
    f.values.resize(total);
    for (std::size_t i = 0; i < total; ++i)
        if (!(in >> f.values[i])) throw std::runtime_error("load_grid_function: truncated values");
    f.even = true;
    try {
        f.validate();
    } catch (const std::invalid_argument&) {
        f.even = false;
        f.validate();
    }
    return f;
}

GridFunction grid_from_function(int n, double L, double h,
                                const std::function<double(const Vec&)>& fn, bool even) {
    GridFunction f;
    f.n = n;
    f.L = L;
    f.h = h;
    f.even = even;
    const std::size_t total = static_cast<std::size_t>(std::pow(f.per_axis(), n) + 0.5);
    f.values.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        if (even) {
            // Mirror the already-computed half so evenness is bit-exact even
            // when fn wobbles by an ulp at the boundary.
            std::vector<int> idx = unflatten(flat, n, f.per_axis());
            std::size_t mirror = 0;
            for (int c = 0; c < n; ++c)
                mirror = mirror * static_cast<std::size_t>(f.per_axis()) +
                         static_cast<std::size_t>(f.per_axis() - 1 - idx[static_cast<std::size_t>(c)]);
            if (mirror < flat) {
                f.values[flat] = f.values[mirror];
                continue;
            }
        }
        f.values[flat] = fn(f.point(unflatten(flat, n, f.per_axis())));
    }
    f.validate();
    return f;
}

FunctionVerdict check_function_polarity(const std::vector<GridFunction>& fs,
                                        const RhoFunction& rho, const PolarityParams& params,
                                        const SamplerCfg& sampler, std::optional<SymForm> form_opt) {
    if (fs.size() < 2) throw std::invalid_argument("check_function_polarity: k >= 2 required");
    const int k = static_cast<int>(fs.size());
    params.validate(k);
    for (const auto& f : fs)
        if (f.n != fs[0].n) throw std::invalid_argument("check_function_polarity: mixed dimensions");
    SymForm form = form_opt.value_or(params.p == 1.0 ? SymForm::Signed : SymForm::Absolute);

    std::vector<std::vector<std::size_t>> supports;
    double tuple_count = 1.0;
    for (const auto& f : fs) {
        supports.push_back(support_of(f));
        tuple_count *= static_cast<double>(supports.back().size());
    }

    FunctionVerdict out;
    auto record = [&](const std::vector<std::size_t>& flat_idx) {
        TupleEval e = eval_function_tuple(fs, rho, params, form, flat_idx);
        if (e.product > 0.0 && e.ratio > out.worst_ratio) {
            out.worst_ratio = e.ratio;
            out.witness.clear();
            for (std::size_t i = 0; i < fs.size(); ++i)
                out.witness.push_back(
                    fs[i].point(unflatten(flat_idx[i], fs[i].n, fs[i].per_axis())));
        }
        return e.violation;
    };

    bool violated = false;
    if (tuple_count <= 1e7 && tuple_count > 0.0) {
        // Flat-loop evaluation with preallocated buffers; the generic tuple
        // path allocates far too much at 1e7 tuples.
        const int n = fs[0].n;
        std::vector<std::vector<Vec>> pts(static_cast<std::size_t>(k));
        std::vector<std::vector<double>> vals(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const GridFunction& f = fs[static_cast<std::size_t>(i)];
            for (std::size_t s : supports[static_cast<std::size_t>(i)]) {
                pts[static_cast<std::size_t>(i)].push_back(
                    f.point(unflatten(s, f.n, f.per_axis())));
                vals[static_cast<std::size_t>(i)].push_back(f.values[s]);
            }
        }
        std::vector<std::size_t> pos(static_cast<std::size_t>(k), 0);
        std::vector<double> coord(static_cast<std::size_t>(k));
        const double p = params.p;
        const bool absolute = form == SymForm::Absolute;
        while (true) {
            double product = 1.0;
            for (int i = 0; i < k; ++i)
                product *= vals[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
            double S = 0.0;
            for (int l = 0; l < n; ++l) {
                for (int i = 0; i < k; ++i) {
                    double c = pts[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]]
                                  [static_cast<std::size_t>(l)];
                    coord[static_cast<std::size_t>(i)] =
                        absolute ? std::pow(std::abs(c), p) : c;
                }
                S += elem_sym_flat(coord, params.j);
            }
            double rv = rho.eval(S);
            if (product > 0.0 && !std::isinf(rv)) {
                double ratio = rv <= 1e-300 ? kInf : product / rv;
                if (product > rv + 1e-9) violated = true;
                if (ratio > out.worst_ratio) {
                    out.worst_ratio = ratio;
                    out.witness.clear();
                    for (int i = 0; i < k; ++i)
                        out.witness.push_back(
                            pts[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]]);
                }
            }
            int c = k - 1;
            while (c >= 0 && ++pos[static_cast<std::size_t>(c)] ==
                                 supports[static_cast<std::size_t>(c)].size()) {
                pos[static_cast<std::size_t>(c)] = 0;
                --c;
            }
            if (c < 0) break;
        }
        out.verdict = violated ? Verdict::Fail : Verdict::Pass;
        return out;
    }

    // Sampled scan plus lattice-neighbor ascent on the worst tuples found.
    CounterRng rng(sampler.seed, 0x9e11u);
    std::vector<std::size_t> best;
    double best_ratio = -1.0;
    const std::uint64_t trials = std::max<std::uint64_t>(sampler.samples * 64, 100000);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<std::size_t> flat_idx;
        for (int i = 0; i < k; ++i) {
            const auto& s = supports[static_cast<std::size_t>(i)];
            flat_idx.push_back(s[static_cast<std::size_t>(rng.next_u64() % s.size())]);
        }
        TupleEval e = eval_function_tuple(fs, rho, params, form, flat_idx);
        violated = e.violation || violated;
        if (e.product > 0.0 && e.ratio > best_ratio) {
            best_ratio = e.ratio;
            best = flat_idx;
        }
        record(flat_idx);
    }
    if (!best.empty()) {
        // Coordinate-wise neighbor moves on each slot's lattice index.
        for (int pass = 0; pass < 200; ++pass) {
            bool moved = false;
            for (int slot = 0; slot < k; ++slot) {
                const GridFunction& f = fs[static_cast<std::size_t>(slot)];
                const int per = f.per_axis();
                std::vector<int> idx = unflatten(best[static_cast<std::size_t>(slot)], f.n, per);
                for (int c = 0; c < f.n; ++c) {
                    for (int step : {-1, 1}) {
                        std::vector<int> cand = idx;
                        cand[static_cast<std::size_t>(c)] += step;
                        if (cand[static_cast<std::size_t>(c)] < 0 ||
                            cand[static_cast<std::size_t>(c)] >= per)
                            continue;
                        std::size_t flat = 0;
                        for (int d = 0; d < f.n; ++d)
                            flat = flat * static_cast<std::size_t>(per) +
                                   static_cast<std::size_t>(cand[static_cast<std::size_t>(d)]);
                        std::vector<std::size_t> trial = best;
                        trial[static_cast<std::size_t>(slot)] = flat;
                        TupleEval e = eval_function_tuple(fs, rho, params, form, trial);
                        violated = e.violation || violated;
                        if (e.product > 0.0 && e.ratio > best_ratio) {
                            best_ratio = e.ratio;
                            best = trial;
                            idx = cand;
                            moved = true;
                        }
                        record(trial);
                    }
                }
            }
            if (!moved) break;
        }
    }
    out.verdict = violated ? Verdict::Fail : Verdict::Pass;
    return out;
}

RhsResult conjectured_rhs(const RhoFunction& rho, int n, int j, int k) {
    PolarityParams probe;
    probe.j = j;
    probe.validate(k);
    RhsResult res;
    const double exponent = static_cast<double>(n) / j;
    auto g = [&](double t) {
        double inv = rho.inverse(std::pow(t, k));
        if (inv <= 0.0) return 0.0;
        if (std::isinf(inv)) return kInf;
        return std::pow(inv, exponent);
    };
    bool converged = false;
    double I = improper_integral(g, converged, res.diagnostic);
    res.converged = converged;
    if (!converged) return res;
    double base = std::pow(binomial(k, j), -exponent) * lp_ball_volume(n, j) * I;
    res.value = std::pow(base, k);
    return res;
}

FunctionalLift lift_from_bodies(const std::vector<Body>& bodies, int j, double spacing) {
    if (bodies.empty()) throw std::invalid_argument("lift_from_bodies: empty tuple");
    const int k = static_cast<int>(bodies.size());
    const int n = body_dim(bodies[0]);
    double R = 0.0;
    for (const Body& b : bodies) {
        if (const auto* P = std::get_if<SymmetricPolytope>(&b)) {
            for (const Vec& v : P->vertices) R = std::max(R, norm2(v));
        } else {
            R = std::max(R, std::get<BodyOracle>(b).outer_radius);
        }
    }
    const double L = 4.0 * R;
    const double h = spacing > 0.0 ? spacing : (n <= 2 ? L / 64.0 : L / 24.0);

    FunctionalLift lift;
    lift.rho = rho_indicator(binomial(k, j));
    for (const Body& b : bodies) {
        GridFunction f = grid_from_function(n, L, h, [&](const Vec& x) {
            if (const auto* P = std::get_if<SymmetricPolytope>(&b)) return P->contains(x) ? 1.0 : 0.0;
            return std::get<BodyOracle>(b).member(x) ? 1.0 : 0.0;
        });
        if (const auto* P = std::get_if<SymmetricPolytope>(&b)) {
            std::vector<double> masses(f.values.size(), 0.0);
            for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
                Vec c = f.point(unflatten(flat, n, f.per_axis()));
                Vec lo = c, hi = c;
                for (int d = 0; d < n; ++d) {
                    lo[static_cast<std::size_t>(d)] -= 0.5 * h;
                    hi[static_cast<std::size_t>(d)] += 0.5 * h;
                }
                masses[flat] = cell_mass(*P, lo, hi);
            }
            f.masses = std::move(masses);
        }
        lift.fs.push_back(std::move(f));
    }
    return lift;
}

std::vector<Vec> superlevel_polytope(const GridFunction& f, double r) {
    if (r <= 0.0) throw std::invalid_argument("superlevel_polytope: r > 0 required");
    std::vector<Vec> out;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat)
        if (f.values[flat] >= r) out.push_back(f.point(unflatten(flat, f.n, f.per_axis())));
    return out;
}

double Table1D::at(double t) const {
    if (t <= 0.0 || t > T || values.empty()) return 0.0;
    double pos = t / T * static_cast<double>(values.size()) - 1.0;
    if (pos <= 0.0) return values.front();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= values.size()) return values.back();
    double w = pos - static_cast<double>(i);
    return values[i] + w * (values[i + 1] - values[i]);
}

double Table1D::integral() const {
    double dt = T / static_cast<double>(values.size());
    double total = 0.0;
    for (double v : values) total += v;
    return total * dt;
}

PLReport prekopa_leindler_check(const std::vector<Table1D>& hs, const Table1D& h,
                                double quad_error) {
    if (hs.empty()) throw std::invalid_argument("prekopa_leindler_check: empty hypothesis list");
    const int k = static_cast<int>(hs.size());
    PLReport rep;
    rep.worst_violation = -kInf;

    std::vector<std::size_t> pos(static_cast<std::size_t>(k), 0);
    while (true) {
        double geo = 1.0, prod = 1.0;
        std::vector<double> ts;
        for (int i = 0; i < k; ++i) {
            const Table1D& hi = hs[static_cast<std::size_t>(i)];
            double t = hi.t_at(pos[static_cast<std::size_t>(i)]);
            ts.push_back(t);
            geo *= std::pow(t, 1.0 / k);
            prod *= std::pow(hi.values[pos[static_cast<std::size_t>(i)]], 1.0 / k);
        }
        if (prod > 0.0) {
            double violation = prod - h.at(geo);
            if (violation > rep.worst_violation) {
                rep.worst_violation = violation;
                rep.witness = ts;
            }
        }
        int c = k - 1;
        while (c >= 0 &&
               ++pos[static_cast<std::size_t>(c)] == hs[static_cast<std::size_t>(c)].values.size()) {
            pos[static_cast<std::size_t>(c)] = 0;
            --c;
        }
        if (c < 0) break;
    }
    if (rep.worst_violation == -kInf) rep.worst_violation = 0.0;
    rep.hypothesis_pass = rep.worst_violation <= quad_error;

    rep.lhs = 1.0;
    for (const Table1D& hi : hs) rep.lhs *= std::pow(hi.integral(), 1.0 / k);
    rep.rhs = h.integral();
    rep.conclusion_pass = rep.lhs <= rep.rhs + quad_error * std::max(1.0, rep.rhs);
    return rep;
}

OrthantReport weighted_orthant_check(const std::vector<GridFunction>& fs, const RhoFunction& rho,
                                     int j, double p, double q, int m, const SamplerCfg& sampler) {
    if (q <= -1.0 || p <= 0.0) throw std::invalid_argument("weighted_orthant_check: q > -1, p > 0");
    const int k = static_cast<int>(fs.size());
    const int n = fs.empty() ? 0 : fs[0].n;
    PolarityParams params;
    params.j = j;
    params.p = p;
    params.validate(k);

    OrthantReport rep;
    FunctionVerdict fv = check_function_polarity(fs, rho, params, sampler, SymForm::Absolute);
    rep.polarity = fv.verdict;
    rep.polarity_witness = fv.witness;
    if (fv.verdict == Verdict::Fail) return rep;

    rep.lhs = 1.0;
    double coarse = 1.0;
    for (const auto& f : fs) {
        rep.lhs *= orthant_weighted_integral(f, q, m);
        coarse *= orthant_weighted_integral_coarse(f, q, m);
    }
    rep.error = std::abs(rep.lhs - coarse);

    bool converged = false;
    std::string diag;
    double I = radial_orthant_rhs(rho, n, j, k, p, q, converged, diag);
    if (!converged) {
        rep.pass = false;
        return rep;
    }
    rep.rhs = std::pow(I, k);
    rep.pass = rep.lhs <= rep.rhs + rep.error + 1e-9;
    return rep;
}

OrthantReport full_space_from_orthants(const std::vector<GridFunction>& fs,
                                       const RhoFunction& rho, int j, double p, double q,
                                       const SamplerCfg& sampler) {
    const int k = static_cast<int>(fs.size());
    const int n = fs.empty() ? 0 : fs[0].n;
    PolarityParams params;
    params.j = j;
    params.p = p;
    params.validate(k);

    OrthantReport rep;
    FunctionVerdict fv = check_function_polarity(fs, rho, params, sampler, SymForm::Absolute);
    rep.polarity = fv.verdict;
    rep.polarity_witness = fv.witness;
    if (fv.verdict == Verdict::Fail) return rep;

    // Fold every function into the positive orthant per sign vector; the
    // aggregate over orthant combinations factorizes into per-body sums.
    rep.lhs = 1.0;
    double coarse = 1.0;
    for (const auto& f : fs) {
        double body_sum = 0.0, body_coarse = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            GridFunction folded = f;
            const int per = f.per_axis();
            const int M = per / 2;
            std::fill(folded.values.begin(), folded.values.end(), 0.0);
            folded.even = false;
            folded.masses.reset();
            for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
                std::vector<int> idx = unflatten(flat, n, per);
                bool positive = true;
                for (int c = 0; c < n; ++c)
                    if (idx[static_cast<std::size_t>(c)] < M) positive = false;
                if (!positive) continue;
                std::vector<int> src = idx;
                double weight = 1.0;
                for (int c = 0; c < n; ++c) {
                    if (mask >> c & 1)
                        src[static_cast<std::size_t>(c)] = 2 * M - idx[static_cast<std::size_t>(c)];
                    if (idx[static_cast<std::size_t>(c)] == M) weight *= 0.5;  // shared axis plane
                }
                folded.values[flat] = weight * f.value(src);
            }
            body_sum += orthant_weighted_integral(folded, q, 0);
            body_coarse += orthant_weighted_integral_coarse(folded, q, 0);
        }
        rep.lhs *= body_sum;
        coarse *= body_coarse;
    }
    rep.error = std::abs(rep.lhs - coarse);

    bool converged = false;
    std::string diag;
    double I = radial_orthant_rhs(rho, n, j, k, p, q, converged, diag);
    if (!converged) {
        rep.pass = false;
        return rep;
    }
    rep.rhs = std::pow(std::pow(2.0, n) * I, k);
    rep.pass = rep.lhs <= rep.rhs + rep.error + 1e-9;
    return rep;
}

}  // namespace jsant
