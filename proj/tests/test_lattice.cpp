#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace kstab;
using namespace kstab::testing;

namespace {

IMat imat(std::initializer_list<std::initializer_list<long>> rows) {
    IMat m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Int det_int(const IMat& m) {
    Mat q(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
    Rational d = determinant(q);
    REQUIRE(denominator(d) == 1);
    return numerator(d);
}

bool is_row_hnf(const IMat& h) {
    // Pivots strictly to the right as rows descend, positive, and the
    // entries above each pivot reduced into [0, pivot).
    Eigen::Index last_pivot = -1;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        Eigen::Index pivot = -1;
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
            if (h(i, j) != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) {
            for (Eigen::Index k = i; k < h.rows(); ++k)
                for (Eigen::Index j = 0; j < h.cols(); ++j)
                    if (h(k, j) != 0) return false;
            return true;
        }
        if (pivot <= last_pivot) return false;
        if (h(i, pivot) <= 0) return false;
        for (Eigen::Index k = 0; k < i; ++k) {
            if (h(k, pivot) < 0 || h(k, pivot) >= h(i, pivot)) return false;
        }
        last_pivot = pivot;
    }
    return true;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(format_rational(q("-4/6")) == "-2/3");
    CHECK(q("7") == Rational(7));
    CHECK(q("-0/5") == 0);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK(decimal_string(q("1/3"), 4) == "0.3333");
    CHECK(decimal_string(q("-9/4"), 2) == "-2.25");
}

TEST_CASE("hnf on the worked examples") {
    SUBCASE("2x2 with a unimodular certificate") {
        IMat m = imat({{2, 4}, {1, 1}});
        auto [h, u] = hnf(m);
        CHECK(h == imat({{1, 1}, {0, 2}}));
        CHECK(IMat(u * m) == h);
        Int ud = det_int(u);
        CHECK((ud == 1 || ud == -1));
    }
    SUBCASE("identity is a fixed point") {
        IMat m = imat({{1, 0}, {0, 1}});
        auto [h, u] = hnf(m);
        CHECK(h == m);
        CHECK(u == m);
    }
    SUBCASE("zero row") {
        IMat m = imat({{0, 0}});
        auto [h, u] = hnf(m);
        CHECK(h == imat({{0, 0}}));
        CHECK(u == imat({{1}}));
    }
}

TEST_CASE("hnf reconstruction property on random matrices") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = dim(rng), cols = dim(rng);
        IMat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entry(rng);
        auto [h, u] = hnf(m);
        CHECK(IMat(u * m) == h);
        Int ud = det_int(u);
        CHECK((ud == 1 || ud == -1));
        CHECK(is_row_hnf(h));
    }
}

TEST_CASE("kernel_lattice_basis forced examples") {
    SUBCASE("(1,1)") {
        auto basis = kernel_lattice_basis(ivec({1, 1}));
        REQUIRE(basis.size() == 1);
        CHECK(basis[0][0] + basis[0][1] == 0);
        CHECK((basis[0][0] == 1 || basis[0][0] == -1));
    }
    SUBCASE("(1,0,0)") {
        auto basis = kernel_lattice_basis(ivec({1, 0, 0}));
        REQUIRE(basis.size() == 2);
        for (const auto& b : basis) CHECK(b[0] == 0);
        IMat span(2, 2);
        span << basis[0][1], basis[0][2], basis[1][1], basis[1][2];
        Int d = det_int(span);
        CHECK((d == 1 || d == -1));
    }
    SUBCASE("(2,3)") {
        auto basis = kernel_lattice_basis(ivec({2, 3}));
        REQUIRE(basis.size() == 1);
        // Forced up to sign: the primitive orthogonal direction (3,-2).
        CHECK(2 * basis[0][0] + 3 * basis[0][1] == 0);
        Int g = boost::multiprecision::gcd(basis[0][0], basis[0][1]);
        CHECK((g == 1 || g == -1));
    }
    SUBCASE("zero input rejected") {
        CHECK_THROWS_AS(kernel_lattice_basis(ivec({0, 0})), std::invalid_argument);
    }
}

TEST_CASE("kernel lattice basis: stacking property via hnf oracle") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> entry(-12, 12);
    std::uniform_int_distribution<int> dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = dim(rng);
        IVec u(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            u[i] = entry(rng);
            if (u[i] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        auto basis = kernel_lattice_basis(u);
        REQUIRE(static_cast<int>(basis.size()) == n - 1);
        IMat stacked(n, n);
        stacked.row(0) = u.transpose();
        for (int i = 0; i < n - 1; ++i) {
            Int dot = 0;
            for (int j = 0; j < n; ++j) dot += u[j] * basis[i][j];
            CHECK(dot == 0);
            stacked.row(i + 1) = basis[i].transpose();
        }
        CHECK(det_int(stacked) != 0);
        // Saturation: the basis spans all of the kernel lattice, i.e.
        // the gcd of the maximal minors of B is 1.
        if (n > 1) {
            IMat b(n - 1, n);
            for (int i = 0; i < n - 1; ++i) b.row(i) = basis[i].transpose();
            Int g = 0;
            for (int drop = 0; drop < n; ++drop) {
                IMat minor(n - 1, n - 1);
                int col = 0;
                for (int j = 0; j < n; ++j) {
                    if (j == drop) continue;
                    minor.col(col++) = b.col(j);
                }
                g = boost::multiprecision::gcd(g, det_int(minor));
            }
            if (g < 0) g = -g;
            CHECK(g == 1);
        }
    }
}

TEST_CASE("primitive_part examples and properties") {
    CHECK(primitive_part(vec({"1/2", "1/2"})) == ivec({1, 1}));
    CHECK(primitive_part(vec({"4", "6"})) == ivec({2, 3}));
    CHECK(primitive_part(vec({"-2/3", "0"})) == ivec({-1, 0}));
    CHECK_THROWS_AS(primitive_part(vec({"0", "0"})), std::invalid_argument);

    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 4;
        Vec v(n);
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            v[i] = random_rational(rng);
            if (v[i] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        IVec p = primitive_part(v);
        // Idempotent and invariant under positive scaling.
        CHECK(primitive_part(ivec_to_vec(p)) == p);
        Rational lambda = Rational(3, 7);
        CHECK(primitive_part(Vec(lambda * v)) == p);
        // Same ray: v = mu * p with mu > 0.
        for (int i = 0; i < n; ++i) {
            if (p[i] != 0) {
                Rational mu = v[i] / Rational(p[i]);
                CHECK(mu > 0);
                for (int j = 0; j < n; ++j) CHECK(v[j] == mu * Rational(p[j]));
                break;
            }
        }
    }
}

TEST_CASE("exact solve, determinant, kernel") {
    Mat a(2, 2);
    a << q("1/2"), q("1/3"), q("1"), q("2");
    Vec b = vec({"1", "0"});
    Vec x;
    REQUIRE(solve_linear(a, b, x));
    CHECK(Vec(a * x) == b);
    CHECK(determinant(a) == q("2/3"));

    Mat singular(2, 2);
    singular << q("1"), q("2"), q("2"), q("4");
    CHECK(determinant(singular) == 0);
    CHECK_FALSE(solve_linear(singular, b, x));
    Vec k = kernel_vector(singular);
    REQUIRE(k.size() == 2);
    CHECK(Vec(singular * k) == Vec::Zero(2));

    auto sol = solve_consistent(Mat(singular), vec({"1", "2"}));
    REQUIRE(sol.has_value());
    CHECK(Vec(singular * *sol) == vec({"1", "2"}));
    CHECK_FALSE(solve_consistent(Mat(singular), vec({"1", "1"})).has_value());
}
