#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsant/measure.hpp"
#include "jsant/polar.hpp"

using namespace jsant;

namespace {

double vertex_hausdorff(const SymmetricPolytope& A, const SymmetricPolytope& B) {
    auto one_sided = [](const SymmetricPolytope& X, const SymmetricPolytope& Y) {
        double worst = 0.0;
        for (const Vec& v : X.vertices) {
            double best = 1e300;
            for (const Vec& w : Y.vertices) best = std::min(best, norm2(v - w));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(A, B), one_sided(B, A));
}

SymmetricPolytope classical_polar(const SymmetricPolytope& P) {
    PolarProblem prob;
    prob.bodies = {P};
    prob.params.j = 2;
    JPolarResult r = j_polar(prob);
    REQUIRE(r.polytope.has_value());
    return *r.polytope;
}

SymmetricPolytope random_polytope(int n, std::uint64_t seed, int points = 8) {
    CounterRng rng(seed, 0);
    std::vector<Vec> pts;
    for (int i = 0; i < points; ++i) {
        Vec v(static_cast<std::size_t>(n));
        for (double& c : v) c = rng.gaussian();
        pts.push_back(std::sqrt(rng.uniform()) * unit(v));
    }
    return hull_reduce(pts);
}

}  // namespace

TEST_CASE("classical polar of the square is the cross polytope") {
    SymmetricPolytope polar = classical_polar(make_cube(2));
    CHECK(vertex_hausdorff(polar, make_cross_polytope(2)) < 1e-9);
    // Duality: support of P times radial of polar is 1 along any direction.
    SymmetricPolytope cube = make_cube(2);
    CounterRng rng(7, 0);
    for (int t = 0; t < 50; ++t) {
        Vec d = unit(Vec{rng.gaussian(), rng.gaussian()});
        CHECK(support(cube, d) * radial(polar, d) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("1-d triple polar is the inverse-square interval") {
    for (double a : {0.5, 1.0, 2.0}) {
        SymmetricPolytope I = hull_reduce({{a}});
        PolarProblem prob;
        prob.bodies = {I, I};
        prob.params.j = 3;
        JPolarResult r = j_polar(prob);
        REQUIRE(r.polytope.has_value());
        CHECK(support(*r.polytope, {1.0}) == doctest::Approx(1.0 / (a * a)));
        CHECK(support(*r.polytope, {-1.0}) == doctest::Approx(1.0 / (a * a)));
    }
}

TEST_CASE("shrinking the bodies eventually drops all constraints") {
    auto polar_of_eps = [](double eps) {
        SymmetricPolytope tiny = diagonal_image(make_cube(2), {eps, eps});
        PolarProblem prob;
        prob.bodies = {tiny, tiny};
        prob.params.j = 2;
        return j_polar(prob);
    };
    JPolarResult big = polar_of_eps(1.0);
    CHECK(big.halfspaces.bounded == Boundedness::Bounded);
    JPolarResult tiny = polar_of_eps(1e-14);
    CHECK(tiny.halfspaces.bounded == Boundedness::Unbounded);
    CHECK_FALSE(tiny.polytope.has_value());
}

TEST_CASE("unbounded polar is reported, not thrown") {
    // j = 1 gives slab constraints only: unbounded in n >= 2.
    PolarProblem prob;
    prob.bodies = {make_cube(2, 0.5)};
    prob.params.j = 1;
    JPolarResult r = j_polar(prob);
    CHECK(r.halfspaces.bounded == Boundedness::Unbounded);
    CHECK_FALSE(r.polytope.has_value());
}

TEST_CASE("polar with empty interior is flagged degenerate") {
    // j = 1 against the unit cube pins the constraint sum x_l = 0 exactly.
    PolarProblem prob;
    prob.bodies = {make_cube(2)};
    prob.params.j = 1;
    JPolarResult r = j_polar(prob);
    CHECK(r.halfspaces.degenerate);
    CHECK_FALSE(r.polytope.has_value());
}

TEST_CASE("odd-j polars are symmetric") {
    // Raw vertex-tuple constraints are one-sided for odd j; the mirrored
    // family must restore central symmetry.
    SymmetricPolytope I = hull_reduce({{1.0}});
    PolarProblem prob;
    prob.bodies = {I, I, I};
    prob.params.j = 3;
    JPolarResult r = j_polar(prob);
    REQUIRE(r.polytope.has_value());
    CHECK(support(*r.polytope, {1.0}) == doctest::Approx(support(*r.polytope, {-1.0})));
}

TEST_CASE("polar involution on random polytopes") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        SymmetricPolytope P = random_polytope(2, seed);
        SymmetricPolytope PP = classical_polar(classical_polar(P));
        CHECK(vertex_hausdorff(P, PP) < 1e-9);
    }
    SymmetricPolytope P3 = random_polytope(3, 9, 12);
    CHECK(vertex_hausdorff(P3, classical_polar(classical_polar(P3))) < 1e-9);
}

TEST_CASE("order reversal under containment") {
    SymmetricPolytope P = random_polytope(2, 11);
    SymmetricPolytope Q = diagonal_image(P, {1.5, 1.5});  // P subset Q
    SymmetricPolytope Pp = classical_polar(P);
    SymmetricPolytope Qp = classical_polar(Q);
    for (const Vec& v : Qp.vertices) CHECK(Pp.contains(v, 1e-9));
}

TEST_CASE("scaling law for the classical polar") {
    SymmetricPolytope P = random_polytope(2, 13);
    double lambda = 2.5;
    SymmetricPolytope Pp = classical_polar(P);
    SymmetricPolytope Sp = classical_polar(diagonal_image(P, {lambda, lambda}));
    CounterRng rng(3, 1);
    for (int t = 0; t < 30; ++t) {
        Vec d = unit(Vec{rng.gaussian(), rng.gaussian()});
        CHECK(support(Sp, d) == doctest::Approx(support(Pp, d) / lambda).epsilon(1e-10));
    }
}

TEST_CASE("exact polarity verdicts on cube and polar") {
    SymmetricPolytope cube = make_cube(2);
    SymmetricPolytope polar = classical_polar(cube);
    PolarityParams params;
    params.j = 2;

    std::vector<Body> good = {cube, polar};
    TupleVerdict v = verify_tuple_polarity(good, params);
    CHECK(v.verdict == Verdict::Pass);
    CHECK(v.max_value == doctest::Approx(1.0));

    std::vector<Body> bad = {cube, diagonal_image(polar, {1.01, 1.01})};
    TupleVerdict w = verify_tuple_polarity(bad, params);
    CHECK(w.verdict == Verdict::Fail);
    CHECK(w.max_value > 1.0 + 1e-9);
    CHECK(w.witness.size() == 2);
}

TEST_CASE("lp-ball oracle tuples pass with max E_j near 1") {
    PolarityParams params;
    params.j = 2;
    SamplerCfg cfg;
    cfg.samples = 200;
    std::vector<Body> tuple = {make_lp_ball(2, 2.0), make_lp_ball(2, 2.0)};
    TupleVerdict v = verify_tuple_polarity(tuple, params, cfg);
    CHECK(v.verdict == Verdict::Pass);
    CHECK(v.max_value <= 1.0 + 1e-9);
    CHECK(v.max_value > 0.98);

    PolarityParams p3;
    p3.j = 3;
    std::vector<Body> triple = {make_lp_ball(2, 3.0), make_lp_ball(2, 3.0), make_lp_ball(2, 3.0)};
    SamplerCfg cfg3;
    cfg3.samples = 100;
    TupleVerdict v3 = verify_tuple_polarity(triple, p3, cfg3);
    CHECK(v3.verdict == Verdict::Pass);
    CHECK(v3.max_value <= 1.0 + 1e-9);
    CHECK(v3.max_value > 0.95);
}

TEST_CASE("mixed polytope and oracle tuple fails when the oracle is inflated") {
    PolarityParams params;
    params.j = 2;
    std::vector<Body> tuple = {make_cube(2), make_lp_ball(2, 1.0, 1.2)};
    // support pairs (1,1) x (1.2, 0) give E_2 = 1.2 > 1.
    TupleVerdict v = verify_tuple_polarity(tuple, params, {});
    CHECK(v.verdict == Verdict::Fail);
}

TEST_CASE("vertex verdict agrees with dense boundary sampling") {
    PolarityParams params;
    params.j = 2;
    CounterRng rng(17, 0);
    for (int trial = 0; trial < 20; ++trial) {
        SymmetricPolytope P = random_polytope(2, 100 + static_cast<std::uint64_t>(trial));
        SymmetricPolytope Q = random_polytope(2, 200 + static_cast<std::uint64_t>(trial));
        std::vector<std::vector<Vec>> exact_sets = {P.vertices, Q.vertices};
        PolarityVerdict exact = check_polarity_on_points(exact_sets, params);

        // Dense boundary samples of the hulls.
        auto boundary = [&](const SymmetricPolytope& X) {
            std::vector<Vec> pts;
            for (int i = 0; i < 200; ++i) {
                double th = M_PI * i / 100.0;
                Vec d{std::cos(th), std::sin(th)};
                pts.push_back(radial(X, d) * d);
            }
            return pts;
        };
        PolarityVerdict dense =
            check_polarity_on_points({boundary(P), boundary(Q)}, params);
        CHECK(dense.max_value <= exact.max_value + 1e-9);
        if (exact.max_value < 0.999 || exact.max_value > 1.001)
            CHECK(exact.pass == dense.pass);
    }
}

TEST_CASE("truncated slabs pass E_1 polarity with unbounded volume product") {
    PolarityParams params;
    params.j = 1;
    double prev_volume = 0.0;
    for (double M : {1.0, 2.0, 4.0, 8.0}) {
        HalfspacePolytope H;
        H.n = 2;
        H.constraints = {{{1.0, 1.0}, 1.0}, {{-1.0, -1.0}, 1.0},
                         {{1.0, 0.0}, M},  {{-1.0, 0.0}, M},
                         {{0.0, 1.0}, M},  {{0.0, -1.0}, M}};
        VertexEnumeration ve = enumerate_vertices(H);
        REQUIRE(ve.polytope.has_value());
        std::vector<Body> pair = {*ve.polytope, *ve.polytope};
        TupleVerdict v = verify_tuple_polarity(pair, params);
        CHECK(v.verdict == Verdict::Pass);
        double vol = volume_polytope(*ve.polytope).value;
        CHECK(vol > prev_volume);
        prev_volume = vol;
    }
}

TEST_CASE("largest body check on constructed polars") {
    SymmetricPolytope cube = make_cube(2);
    SymmetricPolytope polar = classical_polar(cube);
    PolarityParams params;
    params.j = 2;

    ContainmentVerdict exact = largest_body_check({cube, polar}, params, 1);
    CHECK(exact.pass);
    CHECK(std::abs(exact.min_slack) < 1e-9);  // tight at active vertices

    ContainmentVerdict shrunk =
        largest_body_check({cube, diagonal_image(polar, {0.5, 0.5})}, params, 1);
    CHECK(shrunk.pass);
    CHECK(shrunk.min_slack > 0.1);

    ContainmentVerdict inflated =
        largest_body_check({cube, diagonal_image(polar, {1.1, 1.1})}, params, 1);
    CHECK_FALSE(inflated.pass);
}

TEST_CASE("inscribed lp-ball tuple is contained in its own polar") {
    // Tuple of B_2^2 discretizations: each is contained in the 2-polar of
    // the other within the discretization slack.
    SymmetricPolytope disc = lp_ball_polytope(2, 2.0, 128);
    PolarityParams params;
    params.j = 2;
    ContainmentVerdict v = largest_body_check({disc, disc}, params, 0);
    CHECK(v.pass);
    CHECK(v.min_slack < 1e-3);  // nearly tight
}
