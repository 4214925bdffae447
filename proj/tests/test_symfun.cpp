#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jsant/symfun.hpp"

using namespace jsant;

TEST_CASE("elem_sym basic values") {
    CHECK(elem_sym({1, 2, 3}, 2) == doctest::Approx(11.0));
    std::vector<double> ones(7, 1.0);
    CHECK(elem_sym(ones, 3) == doctest::Approx(binomial(7, 3)));
    // Brute-force oracle on a signed input.
    std::vector<double> r{0.3, -0.7, 0.2, 0.9};
    CHECK(elem_sym(r, 3) == doctest::Approx(elem_sym_enumerate(r, 3)).epsilon(1e-14));
    CHECK_THROWS_AS(elem_sym({1.0, 2.0}, 3), std::domain_error);
    CHECK_THROWS_AS(elem_sym({1.0, 2.0}, 0), std::domain_error);
}

TEST_CASE("elem_sym recurrence matches enumeration for large k") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> r(16);
    for (double& v : r) v = u(rng);
    for (int j : {1, 2, 5, 16})
        CHECK(elem_sym(r, j) == doctest::Approx(elem_sym_enumerate(r, j)).epsilon(1e-11));
}

TEST_CASE("big_S values and invariants") {
    PolarityParams params;
    params.j = 2;

    PointTuple orth{{{1, 0}, {0, 1}}};
    CHECK(big_S(orth, params) == doctest::Approx(0.0));

    // S_2 equals the pairwise inner product sum.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Vec x1{u(rng), u(rng), u(rng)}, x2{u(rng), u(rng), u(rng)};
    PointTuple pair{{x1, x2}};
    CHECK(big_S(pair, params) == doctest::Approx(dot(x1, x2)).epsilon(1e-13));

    PolarityParams p33;
    p33.j = 3;
    PointTuple triple{{{1.7}, {-0.4}, {2.5}}};
    CHECK(big_S(triple, p33) == doctest::Approx(1.7 * -0.4 * 2.5));
}

TEST_CASE("big_S permutation symmetry and multilinearity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rnd = [&] { return Vec{u(rng), u(rng), u(rng)}; };
    Vec a = rnd(), b = rnd(), c = rnd();
    PolarityParams params;
    params.j = 2;
    CHECK(big_S({{a, b, c}}, params) == doctest::Approx(big_S({{c, a, b}}, params)).epsilon(1e-14));

    // Affine in the first slot (the Lemma on hull invariance rides on this).
    Vec y = rnd(), yp = rnd();
    double lam = 0.37;
    double lhs = big_S({{lam * y + (1 - lam) * yp, b, c}}, params);
    double rhs = lam * big_S({{y, b, c}}, params) + (1 - lam) * big_S({{yp, b, c}}, params);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("S_2 is basis independent, S_3 is not") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // A rotation by 0.4 radians in the (x,y)-plane of R^3.
    double th = 0.4, ct = std::cos(th), st = std::sin(th);
    auto rot = [&](const Vec& v) { return Vec{ct * v[0] - st * v[1], st * v[0] + ct * v[1], v[2]}; };
    auto rnd = [&] { return Vec{u(rng), u(rng), u(rng)}; };
    Vec a = rnd(), b = rnd(), c = rnd();

    PolarityParams p2;
    p2.j = 2;
    CHECK(big_S({{rot(a), rot(b), rot(c)}}, p2) ==
          doctest::Approx(big_S({{a, b, c}}, p2)).epsilon(1e-10));

    PolarityParams p3;
    p3.j = 3;
    Vec w1{1, 0, 0}, w2{1, 1, 0}, w3{0, 1, 0};  // witness where rotation changes S_3
    double before = big_S({{w1, w2, w3}}, p3);
    double after = big_S({{rot(w1), rot(w2), rot(w3)}}, p3);
    CHECK(std::abs(before - after) > 1e-3);
}

TEST_CASE("homogeneity of degree j") {
    PolarityParams params;
    params.j = 3;
    Vec a{0.3, -0.2}, b{1.1, 0.4}, c{-0.6, 0.9}, d{0.2, 0.5};
    double lam = 1.7;
    double scaled = big_S({{lam * a, lam * b, lam * c, lam * d}}, params);
    CHECK(scaled == doctest::Approx(std::pow(lam, 3) * big_S({{a, b, c, d}}, params)).epsilon(1e-12));
}

TEST_CASE("parity identities are exact rearrangements") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> r(5);
        for (double& v : r) v = u(rng);
        // j even: flipping the first sign equals flipping all the others.
        std::vector<double> flip_rest = r, flip_first = r;
        for (std::size_t i = 1; i < r.size(); ++i) flip_rest[i] = -flip_rest[i];
        flip_first[0] = -flip_first[0];
        CHECK(elem_sym(flip_rest, 4) == elem_sym(flip_first, 4));
        // j = k: flipping the first two signs in turn gives identical values.
        std::vector<double> fa = r, fb = r;
        fa[1] = -fa[1];
        fb[0] = -fb[0];
        CHECK(elem_sym(fa, 5) == elem_sym(fb, 5));
    }
}

TEST_CASE("maclaurin gap") {
    CHECK(maclaurin_gap({1, 2, 3}, 1, 2) == doctest::Approx(2.0 - std::sqrt(11.0 / 3.0)));
    CHECK(maclaurin_gap({0.7, 0.7, 0.7, 0.7}, 2, 3) == doctest::Approx(0.0));
    int k = 6;
    std::vector<double> r(k, 1.0);
    r[0] = 0.0;
    CHECK(maclaurin_gap(r, 1, k) == doctest::Approx((k - 1.0) / k));
    CHECK_THROWS_AS(maclaurin_gap({1.0, -0.5}, 1, 2), std::domain_error);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> t(4);
        for (double& v : t) v = u(rng);
        int j1 = 1 + static_cast<int>(rng() % 4);
        int j2 = j1 + static_cast<int>(rng() % static_cast<unsigned>(5 - j1));
        double e1 = std::pow(elem_sym(t, j1) / binomial(4, j1), 1.0 / j1);
        CHECK(maclaurin_gap(t, j1, j2) >= -1e-12 * std::max(1.0, e1));
    }
}

TEST_CASE("AM-GM sharpness: E_j on l_j-ball points stays below one") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    PolarityParams params;
    params.j = 3;
    for (int trial = 0; trial < 200; ++trial) {
        Vec x{u(rng), u(rng)};
        double nj = std::pow(std::abs(x[0]), 3) + std::pow(std::abs(x[1]), 3);
        if (nj > 1.0) {
            double s = std::pow(nj, -1.0 / 3.0);
            x = s * x;
        }
        CHECK(big_E({{x, x, x, x}}, params) <= 1.0 + 1e-12);
    }
}

TEST_CASE("check_polarity_on_points") {
    std::vector<Vec> cube{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    std::vector<Vec> cross{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    PolarityParams params;
    params.j = 2;

    auto v = check_polarity_on_points({cube, cross}, params);
    CHECK(v.pass);
    CHECK(v.max_value == doctest::Approx(1.0));

    std::vector<Vec> pm{{1}, {-1}};
    PolarityParams pk;
    pk.j = 3;
    auto v2 = check_polarity_on_points({pm, pm, pm}, pk);
    CHECK(v2.pass);
    CHECK(v2.max_value == doctest::Approx(1.0));

    std::vector<Vec> big = cube;
    for (Vec& p : big) p = 1.1 * p;
    auto v3 = check_polarity_on_points({big, cross}, params);
    CHECK_FALSE(v3.pass);
    CHECK(v3.max_value == doctest::Approx(1.1));

    CHECK_THROWS_AS(check_polarity_on_points({cube, {}}, params), std::domain_error);
}
