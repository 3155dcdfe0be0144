#include <doctest.h>

#include <algorithm>
#include <random>

#include "test_helpers.hpp"

using namespace kstab;
using namespace kstab::testing;

namespace {

bool has_vertex(const LatticePolytope& p, std::initializer_list<std::string> coords) {
    Vec v = vec(coords);
    return std::any_of(p.vertices().begin(), p.vertices().end(),
                       [&](const Vec& w) { return w == v; });
}

}  // namespace

TEST_CASE("vertex enumeration on the worked examples") {
    SUBCASE("square") {
        auto p = box_polytope(2, "1");
        REQUIRE(p.vertices().size() == 4);
        for (const char* sx : {"-1", "1"})
            for (const char* sy : {"-1", "1"}) CHECK(has_vertex(p, {sx, sy}));
    }
    SUBCASE("rank-2 moment polytope, ambient (x, y)") {
        LatticePolytope p(LatticeChart::standard(2),
                          {hs({"-1", "0"}, "0"), hs({"1", "0"}, "3/2"), hs({"1", "-1"}, "2"),
                           hs({"1", "1"}, "2")});
        REQUIRE(p.vertices().size() == 4);
        CHECK(has_vertex(p, {"0", "-2"}));
        CHECK(has_vertex(p, {"3/2", "-1/2"}));
        CHECK(has_vertex(p, {"3/2", "1/2"}));
        CHECK(has_vertex(p, {"0", "2"}));
    }
    SUBCASE("1-simplex") {
        LatticePolytope p(LatticeChart::standard(1), {hs({"-1"}, "0"), hs({"1"}, "1")});
        REQUIRE(p.vertices().size() == 2);
        CHECK(has_vertex(p, {"0"}));
        CHECK(has_vertex(p, {"1"}));
        CHECK(p.volume() == 1);
    }
    SUBCASE("unbounded system rejected") {
        CHECK_THROWS_WITH_AS(
            LatticePolytope(LatticeChart::standard(2), {hs({"1", "0"}, "1"), hs({"0", "1"}, "1")}),
            doctest::Contains("unbounded"), std::invalid_argument);
        // Bounded in one direction only.
        CHECK_THROWS_AS(LatticePolytope(LatticeChart::standard(2),
                                        {hs({"1", "0"}, "1"), hs({"-1", "0"}, "1"),
                                         hs({"0", "1"}, "1")}),
                        std::invalid_argument);
    }
    SUBCASE("empty and lower-dimensional systems rejected") {
        CHECK_THROWS_AS(LatticePolytope(LatticeChart::standard(1),
                                        {hs({"1"}, "0"), hs({"-1"}, "-1")}),
                        std::invalid_argument);
        // Degenerate to a point.
        CHECK_THROWS_AS(LatticePolytope(LatticeChart::standard(2),
                                        {hs({"1", "0"}, "0"), hs({"-1", "0"}, "0"),
                                         hs({"0", "1"}, "1"), hs({"0", "-1"}, "1")}),
                        std::invalid_argument);
        CHECK_FALSE(LatticePolytope::try_build(LatticeChart::standard(1),
                                               {hs({"1"}, "0"), hs({"-1"}, "-1")})
                        .has_value());
    }
}

TEST_CASE("facet data of the translated rank-2 polytope at s=2") {
    // M-basis {alpha, (alpha+f)/2} in ambient coordinates; facet normals
    // must come out integral and primitive in N-coordinates.
    Mat basis(2, 2);
    basis << q("1"), q("1/2"), q("0"), q("1/2");
    LatticeChart chart(basis);
    CHECK(chart.mu_factor() == 2);

    LatticePolytope p(chart, {hs({"-2", "0"}, "2"), hs({"1", "1"}, "1"), hs({"2", "0"}, "1"),
                              hs({"1", "-1"}, "1")});
    REQUIRE(p.facets().size() == 4);
    CHECK(p.facet_for_inequality(0)->normal == ivec({-2, -1}));
    CHECK(p.facet_for_inequality(0)->offset == 2);
    CHECK(p.facet_for_inequality(1)->normal == ivec({1, 1}));
    CHECK(p.facet_for_inequality(1)->offset == 1);
    CHECK(p.facet_for_inequality(2)->normal == ivec({2, 1}));
    CHECK(p.facet_for_inequality(2)->offset == 1);
    CHECK(p.facet_for_inequality(3)->normal == ivec({1, 0}));
    CHECK(p.facet_for_inequality(3)->offset == 1);

    // dmu volume: Euclidean area 15/4 times the chart factor 2.
    CHECK(p.volume() == q("15/2"));
    // dsigma masses: E0 has length 4 against lattice step 1 in y; E1 and
    // E3 are scaled by the half-lattice step; E2 has length 1.
    CHECK(p.facet_for_inequality(0)->sigma_volume == 4);
    CHECK(p.facet_for_inequality(1)->sigma_volume == 3);
    CHECK(p.facet_for_inequality(3)->sigma_volume == 3);
    CHECK(p.facet_for_inequality(2)->sigma_volume == 1);

    // A rescaled copy of an inequality must normalize identically.
    LatticePolytope p2(chart, {hs({"-1", "0"}, "1"), hs({"1", "1"}, "1"), hs({"2", "0"}, "1"),
                               hs({"1", "-1"}, "1")});
    CHECK(p2.facet_for_inequality(0)->normal == ivec({-2, -1}));
    CHECK(p2.facet_for_inequality(0)->offset == 2);
}

TEST_CASE("vertex/inequality duality: every inequality supports a facet") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        // Random centered quadrilateral-ish system around the box.
        std::vector<HalfSpace> ineqs = {hs({"1", "0"}, "1"), hs({"-1", "0"}, "1"),
                                        hs({"0", "1"}, "1"), hs({"0", "-1"}, "1")};
        Vec n(2);
        n[0] = random_rational(rng, 3, 2);
        n[1] = random_rational(rng, 3, 2);
        if (n[0] == 0 && n[1] == 0) continue;
        ineqs.push_back({n, q("3/2")});
        auto p = LatticePolytope::try_build(LatticeChart::standard(2), ineqs);
        REQUIRE(p.has_value());
        for (const auto& f : p->facets()) {
            // Tightness: offset is the max of the normal over the vertices.
            const auto& ineq = p->inequalities()[f.index];
            Rational best;
            bool first = true;
            for (const auto& v : p->vertices()) {
                Rational val = 0;
                for (int i = 0; i < 2; ++i) val += ineq.normal[i] * v[i];
                if (first || val > best) best = val, first = false;
            }
            CHECK(best == ineq.offset);
            CHECK(f.vertex_ids.size() >= 2);
        }
        // Each vertex lies on at least r facets.
        for (size_t vid = 0; vid < p->vertices().size(); ++vid) {
            int count = 0;
            for (const auto& f : p->facets())
                if (std::find(f.vertex_ids.begin(), f.vertex_ids.end(), static_cast<int>(vid)) !=
                    f.vertex_ids.end())
                    ++count;
            CHECK(count >= 2);
        }
    }
}

TEST_CASE("pyramid decomposition") {
    SUBCASE("centered unit square: four quarters") {
        auto p = box_polytope(2, "1/2");
        auto pyramids = p.pyramid_decomposition();
        REQUIRE(pyramids.size() == 4);
        Rational total = 0;
        for (const auto& [idx, simplices] : pyramids) {
            Rational vol = 0;
            for (const auto& s : simplices) vol += s.lattice_normalized_volume;
            CHECK(vol == q("1/4"));
            total += vol;
        }
        CHECK(total == p.volume());
        CHECK(p.volume() == 1);
    }
    SUBCASE("translated rank-2 polytope: volumes sum to the total") {
        Mat basis(2, 2);
        basis << q("1"), q("1/2"), q("0"), q("1/2");
        LatticeChart chart(basis);
        LatticePolytope p(chart, {hs({"-2", "0"}, "2"), hs({"1", "1"}, "1"), hs({"2", "0"}, "1"),
                                  hs({"1", "-1"}, "1")});
        auto pyramids = p.pyramid_decomposition();
        REQUIRE(pyramids.size() == 4);
        Rational total = 0;
        for (const auto& [idx, simplices] : pyramids)
            for (const auto& s : simplices) total += s.lattice_normalized_volume;
        CHECK(total == p.volume());
    }
    SUBCASE("one dimension: two segments") {
        LatticePolytope p(LatticeChart::standard(1), {hs({"-1"}, "1"), hs({"1"}, "2")});
        auto pyramids = p.pyramid_decomposition();
        REQUIRE(pyramids.size() == 2);
        Rational total = 0;
        for (const auto& [idx, simplices] : pyramids) {
            REQUIRE(simplices.size() == 1);
            total += simplices[0].lattice_normalized_volume;
        }
        CHECK(total == 3);
    }
    SUBCASE("origin must be interior") {
        LatticePolytope p(LatticeChart::standard(1), {hs({"-1"}, "0"), hs({"1"}, "1")});
        CHECK_THROWS_AS(p.pyramid_decomposition(), std::invalid_argument);
    }
}

TEST_CASE("3d cube: facet triangulations cover the facets") {
    auto p = box_polytope(3, "1");
    CHECK(p.volume() == 8);
    REQUIRE(p.facets().size() == 6);
    for (const auto& f : p.facets()) {
        CHECK(f.vertex_ids.size() == 4);
        CHECK(f.triangulation.size() == 2);  // square splits in two
        CHECK(f.sigma_volume == 4);
    }
    CHECK(p.boundary_measure() == 24);
    // Stellar triangulation volume agrees with the pyramid route.
    Rational pyramid_total = 0;
    for (const auto& [idx, simplices] : p.pyramid_decomposition())
        for (const auto& s : simplices) pyramid_total += s.lattice_normalized_volume;
    CHECK(pyramid_total == p.volume());
}

TEST_CASE("linearity subdivision") {
    SUBCASE("two pieces split the square") {
        auto p = box_polytope(2, "1/2");
        std::vector<AffinePiece> pieces = {{vec({"0", "0"}), q("0")}, {vec({"-1", "0"}), q("0")}};
        auto regions = linearity_subdivision(p, pieces);
        REQUIRE(regions.size() == 2);
        Rational total = 0;
        for (const auto& [j, region] : regions) total += region.volume();
        CHECK(total == p.volume());
        // Piece 0 (the zero function) is minimal where 0 <= -x, i.e. x <= 0.
        for (const auto& [j, region] : regions) {
            Vec inner = Vec::Zero(2);
            for (const auto& v : region.vertices()) inner += v;
            inner /= Rational(static_cast<int>(region.vertices().size()));
            if (j == 0) CHECK(inner[0] < 0);
            if (j == 1) CHECK(inner[0] > 0);
        }
    }
    SUBCASE("single piece: the whole polytope") {
        auto p = box_polytope(2, "1");
        auto regions = linearity_subdivision(p, {{vec({"2", "-3"}), q("5")}});
        REQUIRE(regions.size() == 1);
        CHECK(regions[0].second.volume() == p.volume());
    }
    SUBCASE("nowhere strictly minimal pieces are dropped") {
        LatticePolytope p(LatticeChart::standard(1), {hs({"-1"}, "2"), hs({"1"}, "2")});
        // min(1 - x, 1 + x, 1): the constant piece is minimal only at x = 0.
        std::vector<AffinePiece> pieces = {{vec({"-1"}), q("1")}, {vec({"1"}), q("1")},
                                           {vec({"0"}), q("1")}};
        auto regions = linearity_subdivision(p, pieces);
        REQUIRE(regions.size() == 2);
        std::vector<int> piece_ids;
        for (const auto& [j, region] : regions) {
            piece_ids.push_back(j);
            CHECK(region.volume() == 2);
        }
        CHECK(piece_ids == std::vector<int>{0, 1});
        // Brute-force check: at region samples the assigned piece is the min.
        for (const auto& [j, region] : regions) {
            Vec mid = (region.vertices()[0] + region.vertices()[1]) / Rational(2);
            Rational min_val;
            bool first = true;
            for (const auto& piece : pieces) {
                Rational v = piece.slope[0] * mid[0] + piece.constant;
                if (first || v < min_val) min_val = v, first = false;
            }
            CHECK(pieces[j].slope[0] * mid[0] + pieces[j].constant == min_val);
        }
    }
    SUBCASE("dominated duplicate-slope piece vanishes") {
        auto p = box_polytope(1, "1");
        std::vector<AffinePiece> pieces = {{vec({"1"}), q("0")}, {vec({"1"}), q("3")}};
        auto regions = linearity_subdivision(p, pieces);
        REQUIRE(regions.size() == 1);
        CHECK(regions[0].first == 0);
    }
}

TEST_CASE("volume additivity under random subdivisions") {
    std::mt19937 rng(31415);
    Mat basis(2, 2);
    basis << q("1"), q("1/2"), q("0"), q("1/2");
    LatticeChart chart(basis);
    LatticePolytope p(chart, {hs({"-2", "0"}, "2"), hs({"1", "1"}, "1"), hs({"2", "0"}, "1"),
                              hs({"1", "-1"}, "1")});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<AffinePiece> pieces;
        int count = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) {
            Vec slope(2);
            slope[0] = random_rational(rng, 4, 3);
            slope[1] = random_rational(rng, 4, 3);
            pieces.push_back({slope, random_rational(rng, 4, 3)});
        }
        auto regions = linearity_subdivision(p, pieces);
        Rational total = 0;
        for (const auto& [j, region] : regions) total += region.volume();
        CHECK(total == p.volume());
    }
}

TEST_CASE("simplex halfspace representation") {
    std::vector<Vec> triangle = {vec({"0", "0"}), vec({"2", "0"}), vec({"0", "3"})};
    auto hrep = simplex_halfspaces(triangle);
    REQUIRE(hrep.size() == 3);
    LatticePolytope p(LatticeChart::standard(2), hrep);
    REQUIRE(p.vertices().size() == 3);
    for (const auto& v : triangle) CHECK(p.contains(v));
    CHECK(p.volume() == 3);

    std::vector<Vec> segment = {vec({"-1"}), vec({"4"})};
    auto h1 = simplex_halfspaces(segment);
    LatticePolytope s(LatticeChart::standard(1), h1);
    CHECK(s.volume() == 5);
}
