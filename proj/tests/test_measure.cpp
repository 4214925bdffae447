#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsant/bodies.hpp"
#include "jsant/measure.hpp"
#include "jsant/symfun.hpp"

using namespace jsant;

TEST_CASE("counter rng streams are deterministic and decorrelated") {
    CounterRng a(42, 0), b(42, 0), c(42, 1), d(7, 0);
    for (int i = 0; i < 64; ++i) {
        std::uint64_t x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
        CHECK(x != d.next_u64());
    }
}

TEST_CASE("uniform lands in range, gaussian has sane first moments") {
    CounterRng r(3, 0);
    double sum = 0.0, sumsq = 0.0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        double u = r.uniform(-2.0, 5.0);
        CHECK(u >= -2.0);
        CHECK(u < 5.0);
        double g = r.gaussian();
        sum += g;
        sumsq += g * g;
    }
    CHECK(std::abs(sum / N) < 0.01);
    CHECK(sumsq / N == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("exact polytope volumes") {
    CHECK(volume_polytope(make_cube(2)).value == doctest::Approx(4.0));
    CHECK(volume_polytope(make_cube(3)).value == doctest::Approx(8.0));
    CHECK(volume_polytope(make_cross_polytope(3)).value == doctest::Approx(8.0 / 6.0));
    CHECK(volume_polytope(make_cross_polytope(4)).value == doctest::Approx(16.0 / 24.0));
    CHECK(volume_polytope(make_cube(2, 3.0)).value == doctest::Approx(36.0));
}

TEST_CASE("volume dispatch picks exact for polytopes") {
    Body b = make_cube(2);
    VolumeResult v = volume(b, {});
    CHECK(v.method == VolumeMethod::Exact);
    CHECK(v.stderr_ == 0.0);
    CHECK(v.value == doctest::Approx(4.0));
}

TEST_CASE("monte carlo volume of the disc within 3 standard errors") {
    McConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 11;
    VolumeResult v = volume_mc(make_lp_ball(2, 2.0), cfg);
    CHECK(v.stderr_ > 0.0);
    CHECK(std::abs(v.value - M_PI) < 3.0 * v.stderr_);
    // Same seed, same answer.
    VolumeResult w = volume_mc(make_lp_ball(2, 2.0), cfg);
    CHECK(v.value == w.value);
}

TEST_CASE("monte carlo volume of a polytope agrees with the exact value") {
    McConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 5;
    SymmetricPolytope cp = make_cross_polytope(3);
    VolumeResult v = volume_mc(cp, cfg);
    CHECK(std::abs(v.value - 8.0 / 6.0) < 4.0 * v.stderr_);
}

TEST_CASE("lp ball volume closed form") {
    CHECK(lp_ball_volume(2, 2.0) == doctest::Approx(M_PI));
    CHECK(lp_ball_volume(3, 2.0) == doctest::Approx(4.0 * M_PI / 3.0));
    CHECK(lp_ball_volume(2, 1.0) == doctest::Approx(2.0));
    CHECK(lp_ball_volume(3, 1.0) == doctest::Approx(8.0 / 6.0));
    CHECK(lp_ball_volume(4, 1.0) == doctest::Approx(16.0 / 24.0));
    CHECK(lp_ball_volume(2, 3.0) == doctest::Approx(4.0 * std::pow(std::tgamma(4.0 / 3.0), 2) /
                                                    std::tgamma(5.0 / 3.0)));
    CHECK_THROWS(lp_ball_volume(0, 2.0));
}

TEST_CASE("lp ball moment closed form") {
    // n=2, p=2, q=2: int_{B_2^2} x_1^2 = pi/4.
    CHECK(lp_ball_moment(2, 2.0, 2.0) == doctest::Approx(M_PI / 4.0));
    // q = 0 reduces to the volume.
    CHECK(lp_ball_moment(3, 1.5, 0.0) == doctest::Approx(lp_ball_volume(3, 1.5)));
    // Cross-check against exact cube moments is done below via polytopes.
    // MC cross-check on B_3^2.
    McConfig cfg;
    cfg.samples = 400000;
    cfg.seed = 9;
    VolumeResult mc = moment_integral(make_lp_ball(2, 3.0), 0, 3, cfg);
    CHECK(std::abs(mc.value - lp_ball_moment(2, 3.0, 3.0)) < 4.0 * mc.stderr_);
}

TEST_CASE("clip_simplex keeps volume additive") {
    std::vector<Vec> s = {{0, 0}, {2, 0}, {0, 2}};
    Vec a = {1.0, 0.0};
    double in_vol = 0.0;
    for (const auto& piece : clip_simplex(s, a, 1.0)) in_vol += simplex_volume(piece);
    double out_vol = 0.0;
    for (const auto& piece : clip_simplex(s, -1.0 * a, -1.0)) out_vol += simplex_volume(piece);
    CHECK(in_vol + out_vol == doctest::Approx(2.0));
    CHECK(in_vol == doctest::Approx(1.5));  // trapezoid 0 <= x <= 1

    // Plane missing the simplex leaves it whole or empty.
    CHECK(clip_simplex(s, a, 10.0).size() == 1);
    CHECK(clip_simplex(s, a, -1.0).empty());
}

TEST_CASE("exact axis moments on the cube") {
    // int_{[-1,1]^2} |x_1|^2 = 4/3, |x_1|^1 = 2, |x_1|^3 = 1.
    CHECK(moment_integral(make_cube(2), 0, 2).value == doctest::Approx(4.0 / 3.0));
    CHECK(moment_integral(make_cube(2), 1, 1).value == doctest::Approx(2.0));
    CHECK(moment_integral(make_cube(2), 0, 3).value == doctest::Approx(1.0));
    CHECK(moment_integral(make_cube(3), 2, 2).value == doctest::Approx(8.0 / 3.0));
    CHECK(moment_integral(make_cube(2), 0, 0).value == doctest::Approx(4.0));
}

TEST_CASE("exact axis moments on a fine disc polytope match pi/4") {
    SymmetricPolytope disc = lp_ball_polytope(2, 2.0, 512);
    CHECK(moment_integral(disc, 0, 2).value == doctest::Approx(M_PI / 4.0).epsilon(1e-3));
    CHECK(moment_integral(disc, 1, 2).value == doctest::Approx(M_PI / 4.0).epsilon(1e-3));
}

TEST_CASE("moment homogeneity under dilation") {
    SymmetricPolytope P = hull_reduce({{1.2, 0.1, -0.3}, {0.2, 1.1, 0.4}, {-0.5, 0.3, 0.9}});
    double m = moment_integral(P, 1, 2).value;
    double lambda = 1.7;
    Vec d = {lambda, lambda, lambda};
    double m2 = moment_integral(diagonal_image(P, d), 1, 2).value;
    CHECK(m2 == doctest::Approx(std::pow(lambda, 3 + 2) * m).epsilon(1e-9));
}

TEST_CASE("second moment matrix of the cube is diagonal") {
    auto M = second_moment_matrix(make_cube(2));
    CHECK(M[0][0] == doctest::Approx(4.0 / 3.0));
    CHECK(M[1][1] == doctest::Approx(4.0 / 3.0));
    CHECK(M[0][1] == doctest::Approx(0.0));
    CHECK(M[1][0] == doctest::Approx(0.0));
}

TEST_CASE("second moment diagonal equals the j=2 axis moments") {
    SymmetricPolytope P = hull_reduce({{1.2, 0.1}, {0.3, 0.9}, {-0.8, 0.6}});
    auto M = second_moment_matrix(P);
    CHECK(M[0][0] == doctest::Approx(moment_integral(P, 0, 2).value));
    CHECK(M[1][1] == doctest::Approx(moment_integral(P, 1, 2).value));
    CHECK(M[0][1] == doctest::Approx(M[1][0]));
}

TEST_CASE("summed j moments integrate the j-norm on unconditional bodies") {
    // sum_m int_K |x_m|^j = int_K ||x||_j^j for any K; check on the cube
    // against the iterated 1-d integral (2/(j+1))*2^{n-1} per axis.
    int j = 3;
    SymmetricPolytope cube = make_cube(2);
    double total = 0.0;
    for (int m = 0; m < 2; ++m) total += moment_integral(cube, m, j).value;
    CHECK(total == doctest::Approx(2.0 * (2.0 / (j + 1.0)) * 2.0));
}

TEST_CASE("santalo ratio for exact tuples") {
    // (cube, cube) at j=2: (4/pi)^2.
    std::vector<Body> tuple = {make_cube(2), make_cube(2)};
    RatioResult r = santalo_ratio(tuple, 2, {});
    CHECK(r.value == doctest::Approx(16.0 / (M_PI * M_PI)));
    CHECK(r.stderr_ == 0.0);
}

TEST_CASE("santalo ratio propagates MC error") {
    McConfig cfg;
    cfg.samples = 100000;
    cfg.seed = 21;
    std::vector<Body> tuple = {make_lp_ball(2, 2.0), make_lp_ball(2, 2.0)};
    RatioResult r = santalo_ratio(tuple, 2, cfg);
    CHECK(r.stderr_ > 0.0);
    CHECK(std::abs(r.value - 1.0) < 4.0 * r.stderr_);
}

TEST_CASE("bound constant") {
    CHECK(bound_constant(2, 2, 3) == doctest::Approx(std::pow(3.0, 3.0)));
    CHECK(bound_constant(3, 2, 2) == doctest::Approx(1.0));
    CHECK_THROWS(bound_constant(2, 1, 3));
    CHECK_THROWS(bound_constant(2, 3, 2));
}
