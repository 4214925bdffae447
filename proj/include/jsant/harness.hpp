#pragma once

// Campaign orchestration: corpus generation, theorem-case verification,
// symmetrization chains, counterexample search, the radial-function
// condition and report emission.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "jsant/bodies.hpp"
#include "jsant/measure.hpp"

namespace jsant {

struct HarnessConfig {
    std::uint64_t seed = 1;
    int n = 2;
    int j = 2;
    int k = 3;
    int tuples = 20;       // corpus size per campaign
    int vertices = 5;      // random bodies get 2 * vertices vertices
    std::uint64_t samples = 100000;
    double tol = 1e-9;
    int steps = 400;       // annealing proposals
    int heights = 10;      // fiber heights per symmetrization step
    std::string mode;      // per-command case selector
    std::map<std::string, std::string> raw;

    // "key = value" lines with optional [section] headers; section names
    // prefix the key as "section.key". '#' and ';' start comments.
    static HarnessConfig from_file(const std::string& path);
    void apply(const std::map<std::string, std::string>& kv);
};

struct ExperimentReport {
    std::string id;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json cases = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::object();
    double wall_seconds = 0.0;  // excluded from the fingerprint
    int exit_code = 0;          // 0 pass, 2 theorem violation, 3 candidate

    nlohmann::json to_json(bool include_wall_clock = true) const;
    std::string csv() const;          // one row per case, sorted scalar columns
    std::uint64_t fingerprint() const;  // FNV-1a over the clock-free dump
};

// Writes <id>.json and <id>.csv under out_dir (created if needed).
void write_report(const ExperimentReport& rep, const std::string& out_dir);

// 2m vertices: +-(unit gaussian directions scaled by Beta(2,1) radii),
// hull reduced; resampled until full dimensional.
SymmetricPolytope random_polytope(int n, int half_vertices, CounterRng& rng);

// mode: unconditional / jk / mixed / general / intervals.
ExperimentReport cmd_verify_santalo(const HarnessConfig& cfg);

// Steiner chains with polar recomputation; volume monotonicity plus the
// n=2 fiber inclusion at sampled heights.
ExperimentReport cmd_symmetrize_experiment(const HarnessConfig& cfg);

// Simulated annealing over vertex perturbations, last slot always re-closed.
// Throws std::invalid_argument for j = 1 (the slab family is a known
// degeneration, not a counterexample).
ExperimentReport cmd_search_counterexample(const HarnessConfig& cfg);

// Radial-function condition on sampled unit tuples, its agreement with the
// absolute S_{k,2/k} form, and the volume bound on passing tuples.
ExperimentReport cmd_radial_condition_check(const HarnessConfig& cfg);

// mode: indicator / exponential / smooth / all.
ExperimentReport cmd_functional_suite(const HarnessConfig& cfg);

}  // namespace jsant
