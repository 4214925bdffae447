#include "jsantalo.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "jsant/ball.hpp"
#include "jsant/bodies.hpp"
#include "jsant/harness.hpp"
#include "jsant/measure.hpp"
#include "jsant/polar.hpp"

struct jsant_body {
    jsant::SymmetricPolytope P;
};

struct jsant_report {
    jsant::ExperimentReport rep;
};

namespace {

thread_local std::string g_error = "";

jsant_status fail(jsant_status code, const std::string& msg) {
    g_error = msg;
    return code;
}

template <typename Fn>
jsant_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(JSANT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(JSANT_ERR_DEGENERATE, e.what());
    } catch (const std::exception& e) {
        return fail(JSANT_ERR_INTERNAL, e.what());
    }
}

std::vector<jsant::Body> collect(const jsant_body* const* bodies, size_t count) {
    std::vector<jsant::Body> out;
    for (size_t i = 0; i < count; ++i) {
        if (!bodies[i]) throw std::invalid_argument("null body handle");
        out.push_back(bodies[i]->P);
    }
    return out;
}

std::vector<jsant::SymmetricPolytope> collect_polytopes(const jsant_body* const* bodies,
                                                        size_t count) {
    std::vector<jsant::SymmetricPolytope> out;
    for (size_t i = 0; i < count; ++i) {
        if (!bodies[i]) throw std::invalid_argument("null body handle");
        out.push_back(bodies[i]->P);
    }
    return out;
}

}  // namespace

extern "C" {

const char* jsant_last_error(void) { return g_error.c_str(); }

jsant_status jsant_body_from_vertices(int n, const double* coords, size_t count,
                                      jsant_body** out) {
    if (!coords || !out || n < 1 || count == 0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_from_vertices: bad arguments");
    return guarded([&]() {
        std::vector<jsant::Vec> pts;
        for (size_t i = 0; i < count; ++i) {
            jsant::Vec v(coords + i * n, coords + (i + 1) * n);
            jsant::Vec neg = v;
            for (double& c : neg) c = -c;
            pts.push_back(std::move(v));
            pts.push_back(std::move(neg));
        }
        jsant::SymmetricPolytope P = jsant::hull_reduce(pts);
        if (P.degenerate) return fail(JSANT_ERR_DEGENERATE, "vertex set is not full dimensional");
        *out = new jsant_body{std::move(P)};
        return JSANT_OK;
    });
}

jsant_status jsant_body_load(const char* path, jsant_body** out) {
    if (!path || !out) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_load: bad arguments");
    return guarded([&]() {
        try {
            *out = new jsant_body{jsant::load_polytope(path)};
        } catch (const std::runtime_error& e) {
            return fail(JSANT_ERR_IO, e.what());
        }
        return JSANT_OK;
    });
}

jsant_status jsant_body_save(const jsant_body* body, const char* path) {
    if (!body || !path) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_save: bad arguments");
    return guarded([&]() {
        try {
            jsant::save_polytope(body->P, path);
        } catch (const std::runtime_error& e) {
            return fail(JSANT_ERR_IO, e.what());
        }
        return JSANT_OK;
    });
}

jsant_status jsant_body_cube(int n, double half, jsant_body** out) {
    if (!out || n < 1 || half <= 0.0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_cube: bad arguments");
    return guarded([&]() {
        *out = new jsant_body{jsant::make_cube(n, half)};
        return JSANT_OK;
    });
}

jsant_status jsant_body_lp_ball(int n, double p, int resolution, jsant_body** out) {
    if (!out || n < 1 || p < 1.0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_lp_ball: bad arguments");
    return guarded([&]() {
        *out = new jsant_body{jsant::lp_ball_polytope(n, p, resolution > 0 ? resolution : 128)};
        return JSANT_OK;
    });
}

void jsant_body_free(jsant_body* body) { delete body; }

int jsant_body_dim(const jsant_body* body) { return body ? body->P.n : 0; }

size_t jsant_body_vertex_count(const jsant_body* body) {
    return body ? body->P.vertices.size() : 0;
}

jsant_status jsant_body_vertices(const jsant_body* body, double* out, size_t cap) {
    if (!body || !out) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_vertices: bad arguments");
    size_t need = body->P.vertices.size() * static_cast<size_t>(body->P.n);
    if (cap < need) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_vertices: buffer too small");
    size_t at = 0;
    for (const jsant::Vec& v : body->P.vertices)
        for (double c : v) out[at++] = c;
    return JSANT_OK;
}

jsant_status jsant_body_volume(const jsant_body* body, double* out) {
    if (!body || !out) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_body_volume: bad arguments");
    return guarded([&]() {
        *out = jsant::volume_polytope(body->P).value;
        return JSANT_OK;
    });
}

jsant_status jsant_steiner(const jsant_body* body, int axis, jsant_body** out) {
    if (!body || !out || axis < 0 || axis >= body->P.n)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_steiner: bad arguments");
    return guarded([&]() {
        *out = new jsant_body{jsant::steiner_symmetrize(body->P, axis)};
        return JSANT_OK;
    });
}

jsant_status jsant_polar(const jsant_body* const* bodies, size_t count, int j,
                         jsant_body** out) {
    if (!bodies || !out || count == 0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_polar: bad arguments");
    return guarded([&]() {
        jsant::PolarProblem prob;
        prob.bodies = collect_polytopes(bodies, count);
        prob.params.j = j;
        jsant::JPolarResult res = jsant::j_polar(prob);
        if (res.halfspaces.degenerate)
            return fail(JSANT_ERR_DEGENERATE, "the j-polar has empty interior");
        if (!res.polytope.has_value())
            return fail(JSANT_ERR_UNBOUNDED, "the j-polar is unbounded");
        *out = new jsant_body{*res.polytope};
        return JSANT_OK;
    });
}

jsant_status jsant_santalo_ratio(const jsant_body* const* bodies, size_t count, int j,
                                 uint64_t seed, uint64_t samples, double* value,
                                 double* stderr_out) {
    if (!bodies || !value || count == 0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_santalo_ratio: bad arguments");
    return guarded([&]() {
        jsant::McConfig cfg;
        cfg.seed = seed;
        if (samples > 0) cfg.samples = samples;
        jsant::RatioResult r = jsant::santalo_ratio(collect(bodies, count), j, cfg);
        *value = r.value;
        if (stderr_out) *stderr_out = r.stderr_;
        return JSANT_OK;
    });
}

jsant_status jsant_verify_polarity(const jsant_body* const* bodies, size_t count, int j,
                                   int* verdict, double* max_value) {
    if (!bodies || !verdict || count == 0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_verify_polarity: bad arguments");
    return guarded([&]() {
        jsant::PolarityParams params;
        params.j = j;
        jsant::TupleVerdict tv = jsant::verify_tuple_polarity(collect(bodies, count), params);
        *verdict = tv.verdict == jsant::Verdict::Pass ? 1
                   : tv.verdict == jsant::Verdict::Fail ? 0
                                                        : -1;
        if (max_value) *max_value = tv.max_value;
        return JSANT_OK;
    });
}

jsant_status jsant_ball_value_min(const jsant_body* const* bodies, size_t count, int j,
                                  uint64_t seed, double* value) {
    if (!bodies || !value || count == 0)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_ball_value_min: bad arguments");
    return guarded([&]() {
        jsant::OptimizerCfg opt;
        opt.seed = seed;
        *value = jsant::ball_value_min(collect(bodies, count), j, opt).value;
        return JSANT_OK;
    });
}

jsant_status jsant_run_campaign(const char* command, const char* config_path,
                                const char* mode, uint64_t seed, uint64_t samples,
                                double tol, const char* out_dir, jsant_report** out) {
    if (!command || !out)
        return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_run_campaign: bad arguments");
    return guarded([&]() {
        jsant::HarnessConfig cfg;
        if (config_path) {
            try {
                cfg = jsant::HarnessConfig::from_file(config_path);
            } catch (const std::runtime_error& e) {
                return fail(JSANT_ERR_IO, e.what());
            }
        }
        cfg.seed = seed;
        if (samples > 0) cfg.samples = samples;
        if (tol > 0.0) cfg.tol = tol;
        if (mode) cfg.mode = mode;

        std::string cmd = command;
        jsant::ExperimentReport rep;
        if (cmd == "verify-santalo")
            rep = jsant::cmd_verify_santalo(cfg);
        else if (cmd == "symmetrize")
            rep = jsant::cmd_symmetrize_experiment(cfg);
        else if (cmd == "search")
            rep = jsant::cmd_search_counterexample(cfg);
        else if (cmd == "radial-check")
            rep = jsant::cmd_radial_condition_check(cfg);
        else if (cmd == "functional")
            rep = jsant::cmd_functional_suite(cfg);
        else
            return fail(JSANT_ERR_INVALID_ARGUMENT, "unknown campaign: " + cmd);

        if (out_dir) jsant::write_report(rep, out_dir);
        *out = new jsant_report{std::move(rep)};
        return JSANT_OK;
    });
}

int jsant_report_exit_code(const jsant_report* rep) { return rep ? rep->rep.exit_code : 1; }

jsant_status jsant_report_json(const jsant_report* rep, char** out) {
    if (!rep || !out) return fail(JSANT_ERR_INVALID_ARGUMENT, "jsant_report_json: bad arguments");
    return guarded([&]() {
        std::string s = rep->rep.to_json(true).dump(2);
        char* buf = new (std::nothrow) char[s.size() + 1];
        if (!buf) return fail(JSANT_ERR_INTERNAL, "out of memory");
        std::memcpy(buf, s.c_str(), s.size() + 1);
        *out = buf;
        return JSANT_OK;
    });
}

void jsant_string_free(char* s) { delete[] s; }

void jsant_report_free(jsant_report* rep) { delete rep; }

}  // extern "C"
