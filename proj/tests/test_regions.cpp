#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "macc/errors.hpp"
#include "macc/info.hpp"
#include "macc/regions.hpp"
#include "test_support.hpp"

using namespace macc;
using testsupport::h2;

namespace {

ProductInputPolicy hd_policy(double P, double D, double q) {
    return halfduplex_input_policy({P, D, q});
}

}  // namespace

TEST_CASE("corollary 1 on the half-duplex channel") {
    const MaccChannel ch = build_halfduplex_channel();
    SUBCASE("always-transmit uniform inputs give the full MAC corner") {
        const RateTriple t = corollary1_triple(ch, hd_policy(0.5, 0.0, 0.5));
        CHECK(t.c1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.c2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.c12 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.kind == BoundKind::inner_cor1);
    }
    SUBCASE("point-mass x2 kills the second rate") {
        const ProductInputPolicy pol{Pmf({0.2, 0.5, 0.3}), Pmf::point_mass(2, 1)};
        const RateTriple t = corollary1_triple(ch, pol);
        CHECK(t.c2 == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(t.c12 == doctest::Approx(t.c1).epsilon(1e-12));
    }
    SUBCASE("quarter listening point") {
        const RateTriple t = corollary1_triple(ch, hd_policy(0.25, 0.25, 0.5));
        CHECK(t.c1 == doctest::Approx(0.811278).epsilon(1e-6));
        CHECK(t.c2 == doctest::Approx(0.75).epsilon(1e-9));
        CHECK(t.c12 == doctest::Approx(0.75).epsilon(1e-9));
    }
}

TEST_CASE("theorem 2 reduces to corollary 1 under the V=X2 embedding") {
    for (std::uint64_t s = 0; s < 25; ++s) {
        const MaccChannel ch = testsupport::random_channel(300 + s, 3, 2, 2, 2);
        const ProductInputPolicy pol = testsupport::random_product_policy(400 + s, 3, 2);
        const RateTriple a = corollary1_triple(ch, pol);
        const RateTriple b = theorem2_triple(ch, embed_product_policy(pol));
        CHECK(std::abs(a.c1 - b.c1) <= 1e-12);
        CHECK(std::abs(a.c2 - b.c2) <= 1e-12);
        CHECK(std::abs(a.c12 - b.c12) <= 1e-12);
    }
}

TEST_CASE("theorem 2 secrecy deficit can push c2 negative") {
    // y noisy, y1 clean: the eavesdropper sees more of X2 than the receiver
    std::vector<double> p(2 * 2 * 2 * 2, 0.0);
    auto cell = [&](int a, int b, int y, int e) -> double& {
        return p[static_cast<std::size_t>(((a * 2 + b) * 2 + y) * 2 + e)];
    };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            cell(a, b, b, b) = 0.8;
            cell(a, b, 1 - b, b) = 0.2;
        }
    const MaccChannel ch(2, 2, 2, 2, std::move(p));
    const ProductInputPolicy pol{Pmf({0.5, 0.5}), Pmf({0.5, 0.5})};
    const RateTriple t = theorem2_triple(ch, embed_product_policy(pol));
    CHECK(t.c2 < 0.0);
    CHECK(t.c2_clamped() == 0.0);
    // and the polygon collapses to a segment on the R1 axis
    const RatePolygon poly = triple_to_polygon(t);
    for (const RatePoint& v : poly.vertices) CHECK(v.r2 == doctest::Approx(0.0));
}

TEST_CASE("theorem 2 with point-mass V and copied outputs has zero c2") {
    std::vector<double> p(2 * 2 * 2 * 2, 0.0);
    auto cell = [&](int a, int b, int y, int e) -> double& {
        return p[static_cast<std::size_t>(((a * 2 + b) * 2 + y) * 2 + e)];
    };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) cell(a, b, a ^ b, a ^ b) = 1.0;  // y1 copies y
    const MaccChannel ch(2, 2, 2, 2, std::move(p));
    AuxInputPolicy pol;
    pol.pU = Pmf({1.0});
    pol.pVgivenU = CondPmf({{1.0, 0.0}});          // point mass
    pol.pX1givenU = CondPmf({{0.5, 0.5}});
    pol.pX2givenV = CondPmf::uniform(2, 2);        // uniform noise
    const RateTriple t = theorem2_triple(ch, pol);
    CHECK(t.c2 <= 1e-12);
}

TEST_CASE("theorem 1 expressions") {
    const MaccChannel ch = build_halfduplex_channel();
    SUBCASE("singleton auxiliaries") {
        AuxInputPolicy pol;
        pol.pU = Pmf({1.0});
        pol.pVgivenU = CondPmf({{1.0}});
        pol.pX1givenU = CondPmf({{0.25, 0.5, 0.25}});
        pol.pX2givenV = CondPmf({{0.4, 0.6}});
        const RateTriple t = theorem1_triple(ch, pol);
        CHECK(t.kind == BoundKind::outer_thm1);
        CHECK(t.c2 == doctest::Approx(0.0).epsilon(1e-12));
        // with singleton V the sum bound is the plain input-output information
        const JointPmf j = build_joint(ch, pol);
        CHECK(t.c12 == doctest::Approx(mutual_information(j, {Axis::X1}, {Axis::Y})).epsilon(1e-12));
    }
    SUBCASE("V=X2 embedding matches corollary coordinates") {
        const ProductInputPolicy pol{Pmf({0.25, 0.5, 0.25}), Pmf({0.3, 0.7})};
        const RateTriple outer = theorem1_triple(ch, embed_product_policy(pol));
        const RateTriple inner = corollary1_triple(ch, pol);
        CHECK(outer.c1 == doctest::Approx(inner.c1).epsilon(1e-12));
        CHECK(outer.c2 == doctest::Approx(inner.c2).epsilon(1e-12));
        CHECK(outer.c12 == doctest::Approx(inner.c12).epsilon(1e-12));
    }
    SUBCASE("outer c1 dominates inner c1 on random policies") {
        for (std::uint64_t s = 0; s < 100; ++s) {
            const MaccChannel rch = testsupport::random_channel(700 + s, 2, 2, 2, 2);
            const AuxInputPolicy pol = testsupport::random_aux_policy(900 + s, 2, 2, 2, 2);
            const RateTriple outer = theorem1_triple(rch, pol);
            const RateTriple inner = theorem2_triple(rch, pol);
            CHECK(outer.c1 >= inner.c1 - 1e-10);
        }
    }
}

TEST_CASE("half-duplex closed form") {
    SUBCASE("paper corner points") {
        const RateTriple full = halfduplex_triple({0.5, 0.0, 0.5});
        CHECK(full.c1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(full.c2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(full.c12 == doctest::Approx(1.0).epsilon(1e-12));
        const RateTriple listen = halfduplex_triple({0.0, 1.0, 0.5});
        CHECK(listen.c2 == doctest::Approx(0.0).epsilon(1e-12));
        const RateTriple mid = halfduplex_triple({0.25, 0.25, 0.5});
        CHECK(mid.c1 == doctest::Approx(0.811278).epsilon(1e-6));
        CHECK(mid.c2 == doctest::Approx(0.75).epsilon(1e-9));
        CHECK(mid.c12 == doctest::Approx(0.75).epsilon(1e-9));
    }
    SUBCASE("matches the tensor route on a grid") {
        const MaccChannel ch = build_halfduplex_channel();
        for (int Pi = 0; Pi <= 10; ++Pi)
            for (int Di = 0; Di + Pi <= 10; ++Di)
                for (int qi = 0; qi <= 10; ++qi) {
                    const double P = Pi / 10.0, D = Di / 10.0, q = qi / 10.0;
                    const RateTriple closed = halfduplex_triple({P, D, q});
                    const RateTriple tensor = corollary1_triple(ch, hd_policy(P, D, q));
                    CHECK(std::abs(closed.c1 - tensor.c1) <= 1e-9);
                    CHECK(std::abs(closed.c2 - tensor.c2) <= 1e-9);
                    CHECK(std::abs(closed.c12 - tensor.c12) <= 1e-9);
                }
    }
    SUBCASE("c2 is nonincreasing in the listening probability") {
        double prev = 2.0;
        for (int Di = 0; Di <= 10; ++Di) {
            const RateTriple t = halfduplex_triple({0.0, Di / 10.0, 0.4});
            CHECK(t.c2 <= prev + 1e-12);
            prev = t.c2;
        }
    }
    SUBCASE("equally likely inputs make the secrecy constraint slack") {
        for (int Pi = 0; Pi <= 10; ++Pi)
            for (int Di = 0; Di + Pi <= 10; ++Di) {
                const RateTriple t = halfduplex_triple({Pi / 10.0, Di / 10.0, 0.5});
                CHECK(t.c2 >= t.c12 - 1e-9);
                CHECK(std::abs(t.c2 - t.c12) <= 1e-9);
            }
    }
    SUBCASE("invalid params rejected") {
        CHECK_THROWS_AS(halfduplex_triple({0.7, 0.4, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(halfduplex_triple({0.5, 0.0, 1.2}), std::invalid_argument);
    }
}

TEST_CASE("gaussian closed form") {
    const RateTriple t = gaussian_triple({1.0, 1.0, 1.0, 3.0});
    CHECK(t.c1 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(t.c2 == doctest::Approx(0.292481).epsilon(1e-6));
    CHECK(t.c12 == doctest::Approx(0.584963).epsilon(1e-6));

    SUBCASE("no power, no second rate") {
        CHECK(gaussian_triple({2.0, 0.0, 1.0, 3.0}).c2 == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("a deaf eavesdropper recovers the conventional MAC") {
        const RateTriple far = gaussian_triple({1.0, 1.0, 1.0, 1e12});
        CHECK(far.c2 == doctest::Approx(gaussian_capacity(1.0)).epsilon(1e-6));
        CHECK(far.c12 == doctest::Approx(gaussian_capacity(2.0)).epsilon(1e-6));
    }
    SUBCASE("c2 and c12 grow with eavesdropper noise") {
        double prev_c2 = -1.0, prev_c12 = -1.0;
        for (double n1 : {1.0, 2.0, 4.0, 8.0, 1e6}) {
            const RateTriple g = gaussian_triple({1.0, 1.0, 1.0, n1});
            CHECK(g.c2 >= prev_c2);
            CHECK(g.c12 >= prev_c12);
            prev_c2 = g.c2;
            prev_c12 = g.c12;
        }
    }
    SUBCASE("invalid params rejected") {
        CHECK_THROWS_AS(gaussian_triple({1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(gaussian_triple({-1.0, 1.0, 1.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("triple_to_polygon geometry") {
    SUBCASE("balanced triangle") {
        const RatePolygon poly = triple_to_polygon({1.0, 1.0, 1.0, BoundKind::inner_cor1});
        REQUIRE(poly.vertices.size() == 3);
        CHECK(poly.vertices[0].r1 == doctest::Approx(0.0));
        CHECK(poly.vertices[0].r2 == doctest::Approx(0.0));
        CHECK(poly.vertices[1].r1 == doctest::Approx(1.0));
        CHECK(poly.vertices[1].r2 == doctest::Approx(0.0));
        CHECK(poly.vertices[2].r1 == doctest::Approx(0.0));
        CHECK(poly.vertices[2].r2 == doctest::Approx(1.0));
    }
    SUBCASE("sum constraint dominating both singles") {
        const RatePolygon poly = triple_to_polygon({0.811278, 0.75, 0.75, BoundKind::halfduplex});
        REQUIRE(poly.vertices.size() == 3);
        CHECK(poly.vertices[1].r1 == doctest::Approx(0.75));
        CHECK(poly.vertices[2].r2 == doctest::Approx(0.75));
    }
    SUBCASE("pentagon and rectangle shapes") {
        const RatePolygon pent = triple_to_polygon({2.0, 1.0, 1.5, BoundKind::inner_cor1});
        REQUIRE(pent.vertices.size() == 4);  // (0,0),(1.5,0),(0.5,1),(0,1)
        CHECK(pent.contains({1.5, 0.0}, 1e-12));
        CHECK(pent.contains({0.5, 1.0}, 1e-12));
        CHECK_FALSE(pent.contains({1.2, 0.5}, 1e-9));
        const RatePolygon rect = triple_to_polygon({1.0, 0.5, 2.0, BoundKind::inner_cor1});
        REQUIRE(rect.vertices.size() == 4);
        CHECK(rect.contains({1.0, 0.5}, 1e-12));
    }
    SUBCASE("negative c2 collapses to a segment") {
        const RatePolygon seg = triple_to_polygon({0.8, -0.3, 0.6, BoundKind::inner_thm2});
        REQUIRE(seg.vertices.size() == 2);
        CHECK(seg.vertices[0].r1 == doctest::Approx(0.0));
        CHECK(seg.vertices[1].r1 == doctest::Approx(0.6));  // min(c1, c12)
        CHECK(seg.vertices[1].r2 == doctest::Approx(0.0));
    }
    SUBCASE("all bounds clamped to zero give the origin") {
        const RatePolygon origin = triple_to_polygon({0.0, -1.0, -2.0, BoundKind::inner_thm2});
        REQUIRE(origin.vertices.size() == 1);
        CHECK(origin.vertices[0].r1 == doctest::Approx(0.0));
    }
}

TEST_CASE("search_inner_region") {
    const MaccChannel ch = build_halfduplex_channel();
    SUBCASE("grid search spans the full MAC triangle") {
        SearchConfig cfg;
        cfg.grid_step = 0.05;
        const SearchResult res = search_inner_region(ch, cfg);
        CHECK(res.hull.contains({1.0, 0.0}, 1e-9));
        CHECK(res.hull.contains({0.0, 1.0}, 1e-9));
        CHECK(res.hull.contains({0.0, 0.0}, 1e-9));
        // every support polygon vertex lies inside the hull
        for (const SupportPoint& sp : res.support)
            for (const RatePoint& v : triple_to_polygon(sp.triple).vertices)
                CHECK(res.hull.contains(v, 1e-9));
    }
    SUBCASE("vertex-only grid") {
        SearchConfig cfg;
        cfg.grid_step = 1.0;
        const SearchResult res = search_inner_region(ch, cfg);
        CHECK(res.support.size() == 3 * 2);  // deterministic inputs only
        CHECK(res.hull.contains({1.0, 0.0}, 1e-9));  // P=1 policy reaches (1, 0)
    }
    SUBCASE("non-divisor step is rounded with a warning") {
        SearchConfig cfg;
        cfg.grid_step = 0.3;
        const SearchResult res = search_inner_region(ch, cfg);
        REQUIRE(res.warnings.size() == 1);
    }
    SUBCASE("auxiliary sampling is deterministic") {
        SearchConfig cfg;
        cfg.grid_step = 0.5;
        cfg.aux_card_u = 2;
        cfg.aux_card_v = 2;
        cfg.random_samples = 8;
        cfg.seed = 5;
        const SearchResult a = search_inner_region(ch, cfg);
        const SearchResult b = search_inner_region(ch, cfg);
        REQUIRE(a.support.size() == b.support.size());
        for (std::size_t i = 0; i < a.support.size(); ++i) {
            CHECK(a.support[i].triple.c1 == b.support[i].triple.c1);
            CHECK(a.support[i].triple.c2 == b.support[i].triple.c2);
            CHECK(a.support[i].triple.c12 == b.support[i].triple.c12);
        }
        REQUIRE(a.hull.vertices.size() == b.hull.vertices.size());
        // and the aux policies really were used
        bool any_aux = false;
        for (const auto& sp : a.support) any_aux |= sp.aux.has_value();
        CHECK(any_aux);
    }
    SUBCASE("degenerate 1x1 input alphabets collapse to the origin") {
        const MaccChannel tiny(1, 1, 2, 1, {0.5, 0.5});
        SearchConfig cfg;
        cfg.grid_step = 0.5;
        const SearchResult res = search_inner_region(tiny, cfg);
        REQUIRE(res.hull.vertices.size() == 1);
        CHECK(res.hull.vertices[0].r1 == doctest::Approx(0.0));
        CHECK(res.hull.vertices[0].r2 == doctest::Approx(0.0));
    }
    SUBCASE("joint guard rejects huge auxiliary cardinalities") {
        SearchConfig cfg;
        cfg.aux_card_u = 10000;
        cfg.aux_card_v = 10000;
        cfg.random_samples = 1;
        CHECK_THROWS_AS(search_inner_region(ch, cfg), GuardError);
    }
}

TEST_CASE("convex hull is order independent and contains its inputs") {
    std::vector<RatePoint> pts = {{0, 0}, {1, 0}, {0.5, 0.5}, {0, 1}, {0.25, 0.25}, {1, 0}};
    const RatePolygon a = convex_hull(pts);
    std::reverse(pts.begin(), pts.end());
    const RatePolygon b = convex_hull(pts);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (std::size_t i = 0; i < a.vertices.size(); ++i) {
        CHECK(a.vertices[i].r1 == b.vertices[i].r1);
        CHECK(a.vertices[i].r2 == b.vertices[i].r2);
    }
    for (const RatePoint& p : pts) CHECK(a.contains(p, 1e-12));
    // collinear interior points are dropped
    CHECK(a.vertices.size() == 3);
}
