#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsant/ball.hpp"
#include "jsant/bodies.hpp"
#include "jsant/functional.hpp"
#include "jsant/measure.hpp"

using namespace jsant;

TEST_CASE("orthobasis construction") {
    OrthoBasis id3 = standard_orthobasis(3);
    CHECK(id3.n() == 3);
    CHECK(id3.orthonormality_defect() < 1e-15);
    CHECK(id3.angles.size() == 3);

    OrthoBasis b = orthobasis_from_angles(3, {0.3, -1.2, 2.7});
    CHECK(b.orthonormality_defect() < 1e-12);
    CHECK(b.angles[1] == -1.2);

    CHECK_THROWS(orthobasis_from_angles(3, {0.1}));
}

TEST_CASE("quarter turn permutes the axes") {
    OrthoBasis q = orthobasis_from_angles(2, {M_PI / 2.0});
    // columns are (0,1) and (-1,0) up to sign
    CHECK(std::abs(q.columns[0][0]) < 1e-12);
    CHECK(std::abs(std::abs(q.columns[0][1]) - 1.0) < 1e-12);
}

TEST_CASE("ball value of a cube pair at the standard basis") {
    std::vector<Body> bodies{make_cube(2), make_cube(2)};
    BallValue v = ball_value_at_basis(bodies, 2, standard_orthobasis(2));
    // per axis: (int_{[-1,1]^2} x_m^2)^2 = (4/3)^2, two axes
    CHECK(v.value == doctest::Approx(32.0 / 9.0).epsilon(1e-12));
    CHECK(v.per_axis_terms.size() == 2);
    CHECK(v.per_axis_terms[0] == doctest::Approx(16.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("j=2 ball value is rotation invariant") {
    // sum_m <eps_m, M eps_m> = trace M for any orthonormal basis
    std::vector<Body> bodies{make_cube(2), make_cross_polytope(2)};
    double at0 = ball_value_at_basis(bodies, 2, standard_orthobasis(2)).value;
    for (double t : {0.2, 0.9, 1.4}) {
        double at = ball_value_at_basis(bodies, 2, orthobasis_from_angles(2, {t})).value;
        CHECK(at == doctest::Approx(at0).epsilon(1e-10));
    }
}

TEST_CASE("j=4 cube value has a closed form in the angle") {
    // int_{[-1,1]^2} |<x,u>|^4 summed over both frame vectors reduces to
    // 8/5 + (32/15) c^2 s^2 with u = (c, s)
    std::vector<Body> bodies{make_cube(2)};
    for (double t : {0.0, 0.3, M_PI / 4.0, 1.1}) {
        double c = std::cos(t), s = std::sin(t);
        double expect = 8.0 / 5.0 + 32.0 / 15.0 * c * c * s * s;
        double got = ball_value_at_basis(bodies, 4, orthobasis_from_angles(2, {t})).value;
        CHECK(got == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("minimization finds the aligned frame of a cube") {
    std::vector<Body> bodies{make_cube(2)};
    OptimizerCfg opt;
    opt.restarts = 4;
    BallValue mn = ball_value_min(bodies, 4, opt);
    CHECK(mn.value == doctest::Approx(8.0 / 5.0).epsilon(1e-8));
    CHECK(mn.upper_bound_only);
    double c = std::cos(mn.basis.angles[0]), s = std::sin(mn.basis.angles[0]);
    CHECK(std::abs(c * s) < 1e-4);  // axis aligned up to symmetry
}

TEST_CASE("minimization undoes a rotation of the body") {
    double t = 0.3;
    std::vector<Vec> cols{{std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}};
    std::vector<Body> bodies{linear_image(make_cube(2), cols)};
    BallValue mn = ball_value_min(bodies, 4);
    CHECK(mn.value == doctest::Approx(8.0 / 5.0).epsilon(1e-7));
    double std_val = ball_value_at_basis(bodies, 4, standard_orthobasis(2)).value;
    CHECK(mn.value <= std_val + 1e-12);
}

TEST_CASE("minimum never exceeds the standard-basis value") {
    std::vector<Body> bodies{make_cube(3, 0.8), make_cross_polytope(3, 1.3)};
    double std_val = ball_value_at_basis(bodies, 2, standard_orthobasis(3)).value;
    BallValue mn = ball_value_min(bodies, 2, {.restarts = 3, .max_iter = 120});
    CHECK(mn.value <= std_val + 1e-9 * std_val);
    CHECK(mn.basis.orthonormality_defect() < 1e-10);
}

TEST_CASE("isotropic map of a cube is the identity") {
    std::vector<Vec> T = isotropic_map(make_cube(2, 1.7));
    for (int c = 0; c < 2; ++c)
        for (int r = 0; r < 2; ++r)
            CHECK(T[c][r] == doctest::Approx(c == r ? 1.0 : 0.0).epsilon(1e-10));
}

TEST_CASE("isotropic map rebalances a stretched box") {
    SymmetricPolytope box = diagonal_image(make_cube(2), Vec{2.0, 0.5});
    std::vector<Vec> T = isotropic_map(box);
    CHECK(T[0][0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(T[1][1] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(T[0][1]) < 1e-10);
}

TEST_CASE("isotropic map postconditions on a skewed polytope") {
    std::vector<Vec> pts{{1.0, 0.2}, {0.4, 1.0}, {-0.8, 0.9}, {1.2, -0.5}};
    std::vector<Vec> closed = pts;
    for (const Vec& p : pts) closed.push_back(-1.0 * p);
    SymmetricPolytope P = hull_reduce(closed);
    std::vector<Vec> T = isotropic_map(P);
    SymmetricPolytope Q = linear_image(P, T);
    CHECK(volume_polytope(Q).value == doctest::Approx(volume_polytope(P).value).epsilon(1e-9));
    std::vector<Vec> M = second_moment_matrix(Q);
    CHECK(M[0][0] == doctest::Approx(M[1][1]).epsilon(1e-8));
    CHECK(std::abs(M[0][1]) < 1e-8 * M[0][0]);
}

TEST_CASE("equal moments map on a box has a closed form") {
    // box [-4,4] x [-1,1]: axis moments match iff the rescaled box is a cube
    SymmetricPolytope box = diagonal_image(make_cube(2), Vec{4.0, 1.0});
    for (int j : {1, 2, 3}) {
        DiagonalMapResult r = equal_moments_map(box, j);
        CHECK(r.converged);
        CHECK(r.d[0] == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(r.d[1] == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(r.d[0] * r.d[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("equal moments map equalizes a generic polytope") {
    std::vector<Vec> pts{{2.0, 0.1}, {0.3, 0.9}, {-2.0, -0.1}, {-0.3, -0.9}};
    SymmetricPolytope P = hull_reduce(pts);
    DiagonalMapResult r = equal_moments_map(P, 3);
    CHECK(r.converged);
    CHECK(r.residual < 1e-8);
    SymmetricPolytope mapped = diagonal_image(P, r.d);
    double m0 = moment_integral(mapped, 0, 3).value;
    double m1 = moment_integral(mapped, 1, 3).value;
    CHECK(m0 == doctest::Approx(m1).epsilon(1e-7));
}

TEST_CASE("sharp-constant comparison holds for cubes") {
    std::vector<Body> bodies{make_cube(2), make_cube(2)};
    Lemma52Report rep = lemma52_check(bodies, 2, {.restarts = 3});
    // lhs = 1/(8 pi^2), rhs = (32/9)/16^2 for the cube pair (j=2 is frame free)
    CHECK(rep.lhs == doctest::Approx(1.0 / (8.0 * M_PI * M_PI)).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx((32.0 / 9.0) / 256.0).epsilon(1e-9));
    CHECK(rep.slack > 0.0);
    CHECK(rep.pass);
}

TEST_CASE("sharp constant is attained near the matching ball tuple") {
    std::vector<Body> bodies{lp_ball_polytope(2, 2.0, 256), lp_ball_polytope(2, 2.0, 256)};
    Lemma52Report rep = lemma52_check(bodies, 2, {.restarts = 2});
    CHECK(rep.rhs / rep.lhs == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("comparison passes on a random polytope tuple") {
    std::vector<Vec> pts{{1.5, -0.2}, {0.6, 1.1}, {-0.9, 0.8}};
    std::vector<Vec> closed = pts;
    for (const Vec& p : pts) closed.push_back(-1.0 * p);
    std::vector<Body> bodies{hull_reduce(closed), make_cross_polytope(2, 1.2)};
    Lemma52Report rep = lemma52_check(bodies, 2, {.restarts = 3});
    CHECK(rep.pass);
    CHECK(rep.slack >= -1e-9);
}

TEST_CASE("functional ball value matches the geometric one for indicators") {
    SymmetricPolytope cube = make_cube(2);
    auto ind = [&cube](const Vec& x) { return cube.contains(x) ? 1.0 : 0.0; };
    GridFunction f = grid_from_function(2, 1.8, 1.8 / 60.0, ind);
    std::vector<GridFunction> fs{f, f};
    double got = functional_ball_value(fs, 2, standard_orthobasis(2));
    // lattice points on the boundary carry full weight, biasing upward by O(h)
    CHECK(got == doctest::Approx(32.0 / 9.0).epsilon(6e-2));
    CHECK(got >= 32.0 / 9.0);
}

TEST_CASE("functional ball value of a gaussian pair is radially stable") {
    auto gauss = [](const Vec& x) {
        double s = 0.0;
        for (double c : x) s += c * c;
        return std::exp(-0.5 * s);
    };
    GridFunction f = grid_from_function(2, 6.0, 0.15, gauss);
    std::vector<GridFunction> fs{f};
    double at0 = functional_ball_value(fs, 2, standard_orthobasis(2));
    CHECK(at0 == doctest::Approx(4.0 * M_PI).epsilon(1e-3));
    double at = functional_ball_value(fs, 2, orthobasis_from_angles(2, {0.7}));
    CHECK(at == doctest::Approx(at0).epsilon(1e-6));
}

TEST_CASE("functional companion bound has the expected closed form") {
    // indicator at the binomial threshold: the radial integral is 1/(n+j)
    int n = 2, j = 2, k = 2;
    RhsResult r = functional_ball_rhs(rho_indicator(binomial(k, j)), n, j, k);
    REQUIRE(r.converged);
    double expect = std::pow(static_cast<double>(n), 1.0 - k) *
                    std::pow(n * lp_ball_volume(n, j) / (n + j), k);
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-8));

    RhsResult bad = functional_ball_rhs(rho_power(0.1), 2, 2, 2);
    CHECK_FALSE(bad.converged);
}
