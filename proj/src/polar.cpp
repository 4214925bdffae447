#include "jsant/polar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jsant {

namespace {

SymForm form_of(const PolarityParams& params) {
    return params.p == 1.0 ? SymForm::Signed : SymForm::Absolute;
}

// s_j extended to the boundary degrees: s_0 = 1, s_j = 0 for j > #vars.
double elem_sym_ext(const std::vector<double>& r, int j) {
    if (j == 0) return 1.0;
    if (j > static_cast<int>(r.size())) return 0.0;
    return elem_sym(r, j);
}

// Coefficient vector and constant of the affine slot: with the other
// arguments fixed, S_j(...) = <a, x> + c where a(l) = s_{j-1} of the other
// coordinates at l and c = sum_l s_j of them.
void affine_slot(const std::vector<const Vec*>& others, int j, Vec& a, double& c) {
    const int n = static_cast<int>(others.empty() ? 0 : others[0]->size());
    a.assign(static_cast<std::size_t>(n), 0.0);
    c = 0.0;
    std::vector<double> vals(others.size());
    for (int l = 0; l < n; ++l) {
        for (std::size_t i = 0; i < others.size(); ++i) vals[i] = (*others[i])[static_cast<std::size_t>(l)];
        a[static_cast<std::size_t>(l)] = elem_sym_ext(vals, j - 1);
        c += elem_sym_ext(vals, j);
    }
}

std::vector<Vec> boundary_samples(const Body& b, const SamplerCfg& cfg, std::uint64_t stream) {
    if (const auto* P = std::get_if<SymmetricPolytope>(&b)) return P->vertices;
    const BodyOracle& K = std::get<BodyOracle>(b);
    CounterRng rng(cfg.seed, stream);
    std::vector<Vec> out;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
        Vec d(static_cast<std::size_t>(K.n));
        for (double& c : d) c = rng.gaussian();
        if (norm2(d) < 1e-12) continue;
        d = unit(d);
        out.push_back(radial(K, d) * d);
    }
    for (int c = 0; c < K.n; ++c) {
        Vec e = basis_vector(K.n, c);
        out.push_back(radial(K, e) * e);
        out.push_back(-radial(K, e) * e);
    }
    return out;
}

double eval_tuple(const std::vector<Vec>& pts, const PolarityParams& params) {
    PointTuple t{pts};
    return big_E(t, params, form_of(params));
}

// Approximate argmax of <a, x> over an oracle body: hill-climb on the
// direction sphere with shrinking coordinate perturbations.
Vec argmax_support(const BodyOracle& K, const Vec& a) {
    Vec d = unit(a);
    Vec best_pt = radial(K, d) * d;
    double best = dot(a, best_pt);
    double step = 0.5;
    for (int round = 0; round < 40; ++round) {
        bool moved = false;
        for (int c = 0; c < K.n; ++c) {
            for (double s : {step, -step}) {
                Vec cand_dir = d;
                cand_dir[static_cast<std::size_t>(c)] += s;
                if (norm2(cand_dir) < 1e-12) continue;
                cand_dir = unit(cand_dir);
                Vec pt = radial(K, cand_dir) * cand_dir;
                double v = dot(a, pt);
                if (v > best + 1e-15) {
                    best = v;
                    best_pt = pt;
                    d = cand_dir;
                    moved = true;
                }
            }
        }
        if (!moved) step *= 0.5;
        if (step < 1e-10) break;
    }
    return best_pt;
}

// One ascent pass: every slot in turn is replaced by its best candidate.
// Candidates always include the current point, so the value never drops.
double ascend_once(std::vector<Vec>& tuple, const std::vector<Body>& bodies,
                   const PolarityParams& params, CounterRng& rng) {
    const int k = static_cast<int>(bodies.size());
    const int j = params.j;
    double value = eval_tuple(tuple, params);
    for (int slot = 0; slot < k; ++slot) {
        std::vector<const Vec*> others;
        for (int i = 0; i < k; ++i)
            if (i != slot) others.push_back(&tuple[static_cast<std::size_t>(i)]);
        Vec a;
        double c;
        affine_slot(others, j, a, c);

        std::vector<Vec> candidates;
        if (const auto* P = std::get_if<SymmetricPolytope>(&bodies[static_cast<std::size_t>(slot)])) {
            candidates = P->vertices;
        } else {
            const BodyOracle& K = std::get<BodyOracle>(bodies[static_cast<std::size_t>(slot)]);
            if (norm2(a) > 1e-12) {
                candidates.push_back(argmax_support(K, a));
                candidates.push_back(argmax_support(K, -1.0 * a));
            }
            for (int t = 0; t < 8; ++t) {
                Vec d(static_cast<std::size_t>(K.n));
                for (double& x : d) x = rng.gaussian();
                if (norm2(d) < 1e-12) continue;
                d = unit(d);
                candidates.push_back(radial(K, d) * d);
            }
        }
        for (const Vec& cand : candidates) {
            Vec saved = tuple[static_cast<std::size_t>(slot)];
            tuple[static_cast<std::size_t>(slot)] = cand;
            double v = eval_tuple(tuple, params);
            if (v > value) value = v;
            else tuple[static_cast<std::size_t>(slot)] = saved;
        }
    }
    return value;
}

}  // namespace

void PolarProblem::validate() const {
    if (bodies.empty()) throw std::invalid_argument("PolarProblem: at least one body required");
    const int n = bodies[0].n;
    for (const auto& b : bodies) {
        if (b.n != n) throw std::invalid_argument("PolarProblem: mixed dimensions");
        if (b.degenerate) throw std::invalid_argument("PolarProblem: degenerate body");
    }
    params.validate(k());
}

JPolarResult j_polar(const PolarProblem& problem) {
    problem.validate();
    const int m = static_cast<int>(problem.bodies.size());
    const int n = problem.bodies[0].n;
    const int j = problem.params.j;
    const double C = problem.params.effective_threshold(problem.k());

    HalfspacePolytope H;
    H.n = n;

    std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
    bool infeasible = false;
    while (true) {
        std::vector<const Vec*> tuple;
        for (int i = 0; i < m; ++i)
            tuple.push_back(&problem.bodies[static_cast<std::size_t>(i)].vertices[idx[static_cast<std::size_t>(i)]]);
        Vec a;
        double c;
        affine_slot(tuple, j, a, c);
        double b = C - c;
        if (norm2(a) > 1e-12) {
            H.constraints.push_back({a, b});
            H.constraints.push_back({-1.0 * a, b});
        } else if (b < -1e-12) {
            infeasible = true;  // 0 <= b fails: the polar has empty interior
        }

        int pos = m - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] <
                problem.bodies[static_cast<std::size_t>(pos)].vertices.size())
                break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }

    JPolarResult result;
    if (infeasible || H.constraints.empty()) {
        H.degenerate = infeasible;
        H.bounded = infeasible ? Boundedness::Bounded : Boundedness::Unbounded;
        result.halfspaces = std::move(H);
        return result;
    }

    VertexEnumeration ve = enumerate_vertices(H);
    H.bounded = ve.bounded;
    H.degenerate = ve.degenerate;
    if (ve.polytope.has_value()) {
        result.polytope = std::move(ve.polytope);
        HalfspacePolytope pruned = to_halfspaces(*result.polytope);
        pruned.bounded = Boundedness::Bounded;
        result.halfspaces = std::move(pruned);
    } else {
        result.halfspaces = std::move(H);
    }
    return result;
}

TupleVerdict verify_tuple_polarity(const std::vector<Body>& bodies, const PolarityParams& params,
                                   const SamplerCfg& sampler) {
    if (bodies.size() < 2) throw std::invalid_argument("verify_tuple_polarity: k >= 2 required");
    const int k = static_cast<int>(bodies.size());
    const int n = body_dim(bodies[0]);
    for (const Body& b : bodies)
        if (body_dim(b) != n) throw std::invalid_argument("verify_tuple_polarity: mixed dimensions");
    params.validate(k);

    bool all_polytopes = true;
    for (const Body& b : bodies)
        if (!std::holds_alternative<SymmetricPolytope>(b)) all_polytopes = false;

    TupleVerdict out;
    if (all_polytopes) {
        std::vector<std::vector<Vec>> vertex_sets;
        for (const Body& b : bodies) vertex_sets.push_back(std::get<SymmetricPolytope>(b).vertices);
        PolarityVerdict pv = check_polarity_on_points(vertex_sets, params, 1e-9, form_of(params));
        out.verdict = pv.pass ? Verdict::Pass : Verdict::Fail;
        out.max_value = pv.max_value;
        out.witness = pv.witness;
        return out;
    }

    std::vector<std::vector<Vec>> samples;
    for (int i = 0; i < k; ++i)
        samples.push_back(boundary_samples(bodies[static_cast<std::size_t>(i)], sampler,
                                           static_cast<std::uint64_t>(i)));

    // Monte Carlo scan for a bad tuple, then local ascent from the worst
    // finds and several random restarts.
    CounterRng rng(sampler.seed, 0xa5c3u);
    std::vector<Vec> best_tuple;
    double best = -1e300;
    std::uint64_t trials = sampler.samples * static_cast<std::uint64_t>(8 * k);
    std::vector<std::vector<Vec>> starts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Vec> tuple;
        for (int i = 0; i < k; ++i) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            tuple.push_back(s[static_cast<std::size_t>(rng.next_u64() % s.size())]);
        }
        double v = eval_tuple(tuple, params);
        if (v > best) {
            best = v;
            best_tuple = tuple;
        }
    }
    starts.push_back(best_tuple);
    for (int r = 0; r < sampler.restarts; ++r) {
        std::vector<Vec> tuple;
        for (int i = 0; i < k; ++i) {
            const auto& s = samples[static_cast<std::size_t>(i)];
            tuple.push_back(s[static_cast<std::size_t>(rng.next_u64() % s.size())]);
        }
        starts.push_back(std::move(tuple));
    }

    out.max_value = best;
    out.witness = best_tuple;
    out.last_improvement = 0.0;
    for (auto& tuple : starts) {
        double prev = eval_tuple(tuple, params);
        double cur = prev;
        for (int sweep = 0; sweep < sampler.sweeps; ++sweep) {
            prev = cur;
            cur = ascend_once(tuple, bodies, params, rng);
        }
        if (cur > out.max_value) {
            out.max_value = cur;
            out.witness = tuple;
        }
        out.last_improvement = std::max(out.last_improvement, cur - prev);
    }

    if (out.max_value > 1.0 + 1e-9) out.verdict = Verdict::Fail;
    else if (out.last_improvement > 1e-6) out.verdict = Verdict::Inconclusive;
    else out.verdict = Verdict::Pass;
    return out;
}

ContainmentVerdict largest_body_check(const std::vector<SymmetricPolytope>& bodies,
                                      const PolarityParams& params, int index) {
    if (index < 0 || index >= static_cast<int>(bodies.size()))
        throw std::invalid_argument("largest_body_check: index out of range");
    PolarProblem problem;
    problem.params = params;
    for (int i = 0; i < static_cast<int>(bodies.size()); ++i)
        if (i != index) problem.bodies.push_back(bodies[static_cast<std::size_t>(i)]);
    JPolarResult polar = j_polar(problem);

    ContainmentVerdict verdict;
    verdict.min_slack = 1e300;
    for (const Vec& v : bodies[static_cast<std::size_t>(index)].vertices)
        for (const Halfspace& h : polar.halfspaces.constraints)
            verdict.min_slack = std::min(verdict.min_slack, h.b - dot(h.a, v));
    verdict.pass = verdict.min_slack >= -1e-9;
    return verdict;
}

}  // namespace jsant
