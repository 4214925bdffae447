#include "jsant/ball.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jsant {

namespace {

constexpr double kInfd = std::numeric_limits<double>::infinity();

std::vector<Vec> identity_matrix(int n) {
    std::vector<Vec> M(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    return M;
}

// Right-multiply the column set by the Givens rotation in the (p, q) plane.
void apply_givens(std::vector<Vec>& cols, int p, int q, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    const int n = static_cast<int>(cols.size());
    for (int r = 0; r < n; ++r) {
        double& xp = cols[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)];
        double& xq = cols[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)];
        double np = c * xp - s * xq;
        double nq = s * xp + c * xq;
        xp = np;
        xq = nq;
    }
}

Body rotate_body(const Body& b, const OrthoBasis& basis) {
    // Moments of |<x, eps_m>| over K equal axis moments over R^T K.
    if (const auto* P = std::get_if<SymmetricPolytope>(&b)) {
        const int n = P->n;
        std::vector<Vec> cols(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n)));
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r)
                cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] =
                    basis.columns[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        return linear_image(*P, cols);
    }
    const BodyOracle& K = std::get<BodyOracle>(b);
    BodyOracle rot = K;
    auto member = K.member;
    auto columns = basis.columns;
    rot.member = [member, columns](const Vec& y) {
        Vec x(y.size(), 0.0);
        for (std::size_t c = 0; c < columns.size(); ++c)
            x = x + y[c] * columns[c];
        return member(x);
    };
    rot.symmetry = SymmetryClass::Symmetric;  // axis alignment not preserved
    return rot;
}

struct NelderMeadResult {
    std::vector<double> x;
    double value = kInfd;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double scale, int max_iter, double tol) {
    const std::size_t d = x0.size();
    std::vector<std::vector<double>> simplex{x0};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> v = x0;
        v[i] += scale;
        simplex.push_back(std::move(v));
    }
    std::vector<double> vals;
    for (const auto& v : simplex) vals.push_back(f(v));

    auto order = [&]() {
        std::vector<std::size_t> idx(simplex.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (std::size_t i : idx) {
            s2.push_back(simplex[i]);
            v2.push_back(vals[i]);
        }
        simplex = std::move(s2);
        vals = std::move(v2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (vals.back() - vals.front() < tol) break;
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t c = 0; c < d; ++c) centroid[c] += simplex[i][c] / static_cast<double>(d);
        auto affine = [&](double t) {
            std::vector<double> v(d);
            for (std::size_t c = 0; c < d; ++c) v[c] = centroid[c] + t * (simplex.back()[c] - centroid[c]);
            return v;
        };
        std::vector<double> xr = affine(-1.0);
        double fr = f(xr);
        if (fr < vals.front()) {
            std::vector<double> xe = affine(-2.0);
            double fe = f(xe);
            if (fe < fr) {
                simplex.back() = xe;
                vals.back() = fe;
            } else {
                simplex.back() = xr;
                vals.back() = fr;
            }
        } else if (fr < vals[vals.size() - 2]) {
            simplex.back() = xr;
            vals.back() = fr;
        } else {
            std::vector<double> xc = affine(0.5);
            double fc = f(xc);
            if (fc < vals.back()) {
                simplex.back() = xc;
                vals.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t c = 0; c < d; ++c)
                        simplex[i][c] = 0.5 * (simplex[i][c] + simplex[0][c]);
                    vals[i] = f(simplex[i]);
                }
            }
        }
    }
    order();
    return {simplex.front(), vals.front()};
}

// Cyclic Jacobi for symmetric matrices, n <= 4 in practice.
void jacobi_eigen(std::vector<Vec> A, std::vector<double>& eigvals, std::vector<Vec>& eigvecs) {
    const int n = static_cast<int>(A.size());
    eigvecs = identity_matrix(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                                                    A[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                if (std::abs(apq) < 1e-300) continue;
                double app = A[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
                double aqq = A[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)];
                double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                double c = std::cos(theta), s = std::sin(theta);
                for (int r = 0; r < n; ++r) {
                    double arp = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
                    double arq = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
                    A[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)] = c * arp - s * arq;
                    A[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)] = s * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    double apr = A[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)];
                    double aqr = A[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)];
                    A[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] = c * apr - s * aqr;
                    A[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)] = s * apr + c * aqr;
                }
                for (int r = 0; r < n; ++r) {
                    double vrp = eigvecs[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)];
                    double vrq = eigvecs[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)];
                    eigvecs[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] = c * vrp - s * vrq;
                    eigvecs[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)] = s * vrp + c * vrq;
                }
            }
        }
    }
    eigvals.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        eigvals[static_cast<std::size_t>(i)] = A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
}

}  // namespace

double OrthoBasis::orthonormality_defect() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < columns.size(); ++a)
        for (std::size_t b = 0; b < columns.size(); ++b) {
            double target = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot(columns[a], columns[b]) - target));
        }
    return worst;
}

OrthoBasis standard_orthobasis(int n) {
    OrthoBasis b;
    b.columns = identity_matrix(n);
    b.angles.assign(static_cast<std::size_t>(n * (n - 1) / 2), 0.0);
    return b;
}

OrthoBasis orthobasis_from_angles(int n, const std::vector<double>& angles) {
    if (static_cast<int>(angles.size()) != n * (n - 1) / 2)
        throw std::invalid_argument("orthobasis_from_angles: need n(n-1)/2 angles");
    OrthoBasis b;
    b.columns = identity_matrix(n);
    b.angles = angles;
    std::size_t idx = 0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) apply_givens(b.columns, p, q, angles[idx++]);
    return b;
}

BallValue ball_value_at_basis(const std::vector<Body>& bodies, int j, const OrthoBasis& basis,
                              const McConfig& cfg) {
    if (bodies.empty()) throw std::invalid_argument("ball_value_at_basis: empty tuple");
    const int n = body_dim(bodies[0]);
    if (basis.n() != n) throw std::invalid_argument("ball_value_at_basis: basis dimension mismatch");
    if (basis.orthonormality_defect() > 1e-10)
        throw std::invalid_argument("ball_value_at_basis: basis not orthonormal");

    std::vector<Body> rotated;
    for (const Body& b : bodies) rotated.push_back(rotate_body(b, basis));

    BallValue out;
    out.basis = basis;
    std::uint64_t stream = 0;
    for (int m = 0; m < n; ++m) {
        double term = 1.0;
        for (const Body& b : rotated) {
            McConfig local = cfg;
            local.seed = cfg.seed + 0x9d2c5681u * (++stream);
            term *= moment_integral(b, m, j, local).value;
        }
        out.per_axis_terms.push_back(term);
        out.value += term;
    }
    return out;
}

BallValue ball_value_min(const std::vector<Body>& bodies, int j, const OptimizerCfg& opt,
                         const McConfig& cfg) {
    const int n = body_dim(bodies[0]);
    const int dims = n * (n - 1) / 2;
    auto objective = [&](const std::vector<double>& angles) {
        return ball_value_at_basis(bodies, j, orthobasis_from_angles(n, angles), cfg).value;
    };

    double best = kInfd, worst = -kInfd;
    std::vector<double> best_angles(static_cast<std::size_t>(dims), 0.0);
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        std::vector<double> start(static_cast<std::size_t>(dims), 0.0);
        if (r > 0) {
            CounterRng rng(opt.seed, static_cast<std::uint64_t>(r));
            for (double& a : start) a = rng.uniform(0.0, M_PI);
        }
        NelderMeadResult res = dims == 0
                                   ? NelderMeadResult{start, objective(start)}
                                   : nelder_mead(objective, start, 0.35, opt.max_iter, opt.simplex_tol);
        if (res.value < best) {
            best = res.value;
            best_angles = res.x;
        }
        worst = std::max(worst, res.value);
    }

    BallValue out = ball_value_at_basis(bodies, j, orthobasis_from_angles(n, best_angles), cfg);
    out.restart_spread = worst - best;
    out.upper_bound_only = true;
    return out;
}

std::vector<Vec> isotropic_map(const SymmetricPolytope& K) {
    if (K.degenerate) throw std::domain_error("isotropic_map: degenerate body");
    std::vector<Vec> M = second_moment_matrix(K);
    std::vector<double> lambda;
    std::vector<Vec> Q;
    jacobi_eigen(M, lambda, Q);
    const int n = K.n;
    double logdet = 0.0;
    for (double l : lambda) {
        if (l <= 0.0) throw std::domain_error("isotropic_map: moment matrix not positive definite");
        logdet += std::log(l);
    }
    double s = std::exp(logdet / (2.0 * n));  // restores det T = 1
    // T = s Q diag(lambda^{-1/2}) Q^T, assembled column by column.
    std::vector<Vec> T(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0.0));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
            double sum = 0.0;
            for (int e = 0; e < n; ++e)
                sum += Q[static_cast<std::size_t>(e)][static_cast<std::size_t>(r)] /
                       std::sqrt(lambda[static_cast<std::size_t>(e)]) *
                       Q[static_cast<std::size_t>(e)][static_cast<std::size_t>(c)];
            T[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = s * sum;
        }
    return T;
}

DiagonalMapResult equal_moments_map(const SymmetricPolytope& Q, int j) {
    if (Q.degenerate) throw std::domain_error("equal_moments_map: degenerate body");
    const int n = Q.n;
    DiagonalMapResult res;
    res.d.assign(static_cast<std::size_t>(n), 1.0);
    for (int it = 0; it < 200; ++it) {
        SymmetricPolytope mapped = diagonal_image(Q, res.d);
        std::vector<double> moments;
        double geo = 0.0;
        for (int m = 0; m < n; ++m) {
            moments.push_back(moment_integral(mapped, m, j).value);
            geo += std::log(moments.back());
        }
        double target = std::exp(geo / n);
        double lo = kInfd, hi = 0.0;
        for (double m : moments) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        res.residual = hi / lo - 1.0;
        if (res.residual < 1e-8) {
            res.converged = true;
            return res;
        }
        double logprod = 0.0;
        for (int m = 0; m < n; ++m) {
            res.d[static_cast<std::size_t>(m)] *=
                std::pow(target / moments[static_cast<std::size_t>(m)], 1.0 / (j + 1.0));
            logprod += std::log(res.d[static_cast<std::size_t>(m)]);
        }
        double renorm = std::exp(-logprod / n);
        for (double& dm : res.d) dm *= renorm;
    }
    return res;
}

Lemma52Report lemma52_check(const std::vector<Body>& bodies, int j, const OptimizerCfg& opt,
                            const McConfig& cfg) {
    const int n = body_dim(bodies[0]);
    const int k = static_cast<int>(bodies.size());
    Lemma52Report rep;
    rep.lhs = n * std::pow(lp_ball_moment(n, j, j), k) /
              std::pow(lp_ball_volume(n, j), k * (n + j) / static_cast<double>(n));

    BallValue bv = ball_value_min(bodies, j, opt, cfg);
    double volume_product = 1.0, rel_var = 0.0;
    std::uint64_t stream = 100;
    for (const Body& b : bodies) {
        McConfig local = cfg;
        local.seed = cfg.seed + 0x632be59bu * (++stream);
        VolumeResult v = volume(b, local);
        volume_product *= v.value;
        if (v.value > 0.0) rel_var += (v.stderr_ / v.value) * (v.stderr_ / v.value);
    }
    double denom = std::pow(volume_product, (n + j) / static_cast<double>(n));
    rep.rhs = bv.value / denom;
    rep.stderr_ = rep.rhs * std::sqrt(rel_var) * ((n + j) / static_cast<double>(n));
    rep.slack = rep.rhs - rep.lhs;
    rep.pass = rep.slack >= -3.0 * rep.stderr_ - 1e-9 * std::abs(rep.lhs);
    return rep;
}

double functional_ball_value(const std::vector<GridFunction>& fs, int j, const OrthoBasis& basis) {
    if (fs.empty()) throw std::invalid_argument("functional_ball_value: empty tuple");
    const int n = fs[0].n;
    if (basis.n() != n) throw std::invalid_argument("functional_ball_value: dimension mismatch");
    double total = 0.0;
    for (int m = 0; m < n; ++m) {
        const Vec& eps = basis.columns[static_cast<std::size_t>(m)];
        double term = 1.0;
        for (const GridFunction& f : fs) {
            double sum = 0.0;
            const int per = f.per_axis();
            const double hn = std::pow(f.h, f.n);
            std::vector<int> idx(static_cast<std::size_t>(f.n), 0);
            for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
                if (f.values[flat] > 0.0) {
                    std::size_t rest = flat;
                    for (int c = f.n - 1; c >= 0; --c) {
                        idx[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::size_t>(per));
                        rest /= static_cast<std::size_t>(per);
                    }
                    Vec x = f.point(idx);
                    double w = f.masses.has_value() ? (*f.masses)[flat] : f.values[flat] * hn;
                    if (f.masses.has_value()) w *= f.values[flat];
                    sum += std::pow(std::abs(dot(x, eps)), j) * w;
                }
            }
            term *= sum;
        }
        total += term;
    }
    return total;
}

RhsResult functional_ball_rhs(const RhoFunction& rho, int n, int j, int k) {
    RhsResult res;
    const double C = binomial(k, j);
    auto g = [&](double r) {
        double v = rho.eval(C * std::pow(r, j));
        if (v <= 0.0) return 0.0;
        return std::pow(r, n + j - 1.0) * std::pow(v, 1.0 / k);
    };
    bool converged = false;
    double I = improper_integral(g, converged, res.diagnostic);
    res.converged = converged;
    if (!converged) return res;
    double inner = n * lp_ball_volume(n, j) * I;
    res.value = std::pow(static_cast<double>(n), 1.0 - k) * std::pow(inner, k);
    return res;
}

}  // namespace jsant
