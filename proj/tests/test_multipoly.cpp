#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace kstab;
using namespace kstab::testing;

TEST_CASE("compose_affine: shift of a square") {
    MultiPoly x2 = MultiPoly::monomial(1, {2}, Rational(1));
    AffineMap shift;
    shift.matrix = Mat::Ones(1, 1);
    shift.translation = vec({"1"});
    MultiPoly composed = x2.compose_affine(shift);
    MultiPoly expected(1);
    expected.add_term({2}, Rational(1));
    expected.add_term({1}, Rational(2));
    expected.add_term({0}, Rational(1));
    CHECK(composed == expected);
}

TEST_CASE("compose_affine: identity fixes xy") {
    MultiPoly xy = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
    AffineMap id;
    id.matrix = Mat::Zero(2, 2);
    id.matrix(0, 0) = 1;
    id.matrix(1, 1) = 1;
    id.translation = Vec::Zero(2);
    CHECK(xy.compose_affine(id) == xy);
}

TEST_CASE("compose_affine respects evaluation on random data") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        MultiPoly p(2);
        for (int t = 0; t < 5; ++t) {
            p.add_term({static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)},
                       random_rational(rng));
        }
        AffineMap map;
        map.matrix = Mat(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) map.matrix(i, j) = random_rational(rng, 4, 3);
        map.translation = Vec(2);
        map.translation[0] = random_rational(rng, 4, 3);
        map.translation[1] = random_rational(rng, 4, 3);
        MultiPoly q = p.compose_affine(map);
        Vec t(2);
        t[0] = random_rational(rng, 5, 4);
        t[1] = random_rational(rng, 5, 4);
        CHECK(q.evaluate(t) == p.evaluate(map.apply(t)));
    }
}

TEST_CASE("gradient and radial derivative") {
    // x^2 y -> (2xy, x^2)
    MultiPoly p = MultiPoly::monomial(2, {2, 1}, Rational(1));
    auto grads = p.gradient();
    CHECK(grads[0] == MultiPoly::monomial(2, {1, 1}, Rational(2)));
    CHECK(grads[1] == MultiPoly::monomial(2, {2, 0}, Rational(1)));

    CHECK(MultiPoly::constant(3, q("5")).gradient()[1].is_zero());

    // P = 2x: gradient (2, 0), radial derivative 2x.
    MultiPoly two_x = MultiPoly::monomial(2, {1, 0}, Rational(2));
    auto g2 = two_x.gradient();
    CHECK(g2[0] == MultiPoly::constant(2, Rational(2)));
    CHECK(g2[1].is_zero());
    CHECK(two_x.radial_derivative() == two_x);

    // Radial derivative of a homogeneous degree-d term is d times it.
    MultiPoly cubic = MultiPoly::monomial(2, {2, 1}, q("7/3"));
    CHECK(cubic.radial_derivative() == cubic.scale(Rational(3)));
}

TEST_CASE("arithmetic bookkeeping") {
    MultiPoly a = MultiPoly::affine(vec({"1", "-1"}), q("1/2"));
    MultiPoly b = MultiPoly::affine(vec({"-1", "1"}), q("-1/2"));
    CHECK((a + b).is_zero());
    CHECK((a - a).is_zero());
    CHECK(a.degree() == 1);
    CHECK((a * b).degree() == 2);
    CHECK(MultiPoly(2).is_zero());
    CHECK((-a + a).is_zero());
    CHECK(a.scale(Rational(0)).is_zero());
    CHECK(a.pow(2) == a * a);
    CHECK_THROWS_AS(a + MultiPoly::constant(3, Rational(1)), std::invalid_argument);
}
