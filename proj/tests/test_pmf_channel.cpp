#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "macc/channel.hpp"
#include "macc/channel_io.hpp"
#include "macc/errors.hpp"
#include "macc/pmf.hpp"

using namespace macc;

TEST_CASE("pmf validation") {
    CHECK_NOTHROW(Pmf({0.25, 0.75}));
    CHECK_THROWS_AS(Pmf({0.5, -0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Pmf({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Pmf({}), std::invalid_argument);
    // a 1e-13 deficit is float noise, 1e-3 is not
    CHECK_NOTHROW(Pmf({0.5, 0.5 - 1e-13}));
    CHECK_THROWS_AS(Pmf({0.5, 0.499}), std::invalid_argument);
}

TEST_CASE("cond pmf validation") {
    CHECK_NOTHROW(CondPmf({{0.5, 0.5}, {1.0, 0.0}}));
    CHECK_THROWS_AS(CondPmf({{0.5, 0.5}, {1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CondPmf({{0.5, 0.4}}), std::invalid_argument);
    const CondPmf id = CondPmf::identity(3);
    CHECK(id.row(1)[1] == 1.0);
    CHECK(id.row(1)[0] == 0.0);
}

TEST_CASE("validate_channel accepts the degenerate channel") {
    const MaccChannel ch(1, 1, 1, 1, {1.0});
    CHECK(validate_channel(ch).ok);
}

TEST_CASE("validate_channel flags a deficient slice") {
    // second slice sums to 0.999
    MaccChannel ch(1, 2, 2, 1, {0.5, 0.5, 0.5, 0.499});
    const ValidationReport report = validate_channel(ch);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].x1 == 0);
    CHECK(report.violations[0].x2 == 1);
    CHECK(report.violations[0].deficit == doctest::Approx(0.001).epsilon(1e-9));
}

TEST_CASE("validate_channel flags negative entries") {
    MaccChannel ch(1, 1, 2, 1, {1.5, -0.5});
    const ValidationReport report = validate_channel(ch);
    CHECK_FALSE(report.ok);
}

TEST_CASE("tensor shape mismatch is a structural error") {
    CHECK_THROWS_AS(MaccChannel(2, 2, 2, 2, std::vector<double>(15, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(MaccChannel(65, 1, 1, 1, std::vector<double>(65, 1.0 / 65)),
                    std::invalid_argument);
    // larger alphabets allowed when the cap is raised
    CHECK_NOTHROW(MaccChannel(65, 1, 1, 1, std::vector<double>(65, 1.0 / 65), 128));
}

TEST_CASE("half-duplex builder matches the listening/transmit law") {
    const MaccChannel ch = build_halfduplex_channel();
    CHECK(validate_channel(ch).ok);
    // listening, x2 = 1: y = 1, y1 carries it (index 2 = symbol 1)
    CHECK(ch.at(0, 1, 1, 2) == 1.0);
    // both transmit ones: y = 0, y1 null
    CHECK(ch.at(2, 1, 0, 0) == 1.0);
    // both send zeros: y = 0, y1 null
    CHECK(ch.at(1, 0, 0, 0) == 1.0);
    // exactly one unit entry per slice
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b) {
            int units = 0;
            for (double v : ch.slice(a, b))
                if (v == 1.0) ++units;
            CHECK(units == 1);
        }
}

TEST_CASE("marginalize keeps slices stochastic") {
    const MaccChannel ch = build_halfduplex_channel();
    const MaccChannel my = marginalize(ch, {.y = true, .y1 = false});
    CHECK(my.ny() == 2);
    CHECK(my.ny1() == 1);
    CHECK(validate_channel(my).ok);
    // listening with x2 = 1 puts all mass on y = 1
    CHECK(my.at(0, 1, 1, 0) == doctest::Approx(1.0));

    SUBCASE("keeping both axes is the identity") {
        const MaccChannel both = marginalize(ch, {.y = true, .y1 = true});
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                for (int y = 0; y < 2; ++y)
                    for (int e = 0; e < 3; ++e) CHECK(both.at(a, b, y, e) == ch.at(a, b, y, e));
    }
    SUBCASE("uniform channel marginalizes to one half per output") {
        const MaccChannel uni(2, 2, 2, 2, std::vector<double>(16, 0.25));
        const MaccChannel m = marginalize(uni, {.y = true});
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int y = 0; y < 2; ++y) CHECK(m.at(a, b, y, 0) == doctest::Approx(0.5));
    }
    SUBCASE("marginalizing a marginal is idempotent") {
        const MaccChannel twice = marginalize(my, {.y = true});
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                for (int y = 0; y < 2; ++y) CHECK(twice.at(a, b, y, 0) == my.at(a, b, y, 0));
    }
    SUBCASE("empty keep set is rejected") {
        CHECK_THROWS_AS(marginalize(ch, {}), std::invalid_argument);
    }
}

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("channel json round trip") {
    const MaccChannel ch = build_halfduplex_channel();
    const auto doc = channel_to_json(ch);
    const std::string path = write_temp("macc_ch_roundtrip.json", doc.dump());
    const MaccChannel back = load_channel_json(path);
    CHECK(back.nx1() == 3);
    CHECK(back.ny1() == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b)
            for (int y = 0; y < 2; ++y)
                for (int e = 0; e < 3; ++e) CHECK(back.at(a, b, y, e) == ch.at(a, b, y, e));
    std::remove(path.c_str());
}

TEST_CASE("channel json rejects bad inputs") {
    SUBCASE("missing axis") {
        const auto p = write_temp("macc_ch_missing.json", R"({"nx1":1,"nx2":1,"ny":1,"p":[[[[1.0]]]]})");
        CHECK_THROWS_AS(load_channel_json(p), FormatError);
        std::remove(p.c_str());
    }
    SUBCASE("ragged tensor") {
        const auto p = write_temp("macc_ch_ragged.json",
                                  R"({"nx1":1,"nx2":2,"ny":1,"ny1":1,"p":[[[[1.0]]]]})");
        CHECK_THROWS_AS(load_channel_json(p), FormatError);
        std::remove(p.c_str());
    }
    SUBCASE("non-stochastic tensor is rejected, not renormalized") {
        const auto p = write_temp("macc_ch_mass.json",
                                  R"({"nx1":1,"nx2":1,"ny":2,"ny1":1,"p":[[[[0.5],[0.499]]]]})");
        CHECK_THROWS_AS(load_channel_json(p), FormatError);
        std::remove(p.c_str());
    }
    SUBCASE("bad label length") {
        const auto p = write_temp(
            "macc_ch_labels.json",
            R"({"nx1":1,"nx2":1,"ny":2,"ny1":1,"p":[[[[0.5],[0.5]]]],"labels":{"y":["a"]}})");
        CHECK_THROWS_AS(load_channel_json(p), FormatError);
        std::remove(p.c_str());
    }
    SUBCASE("labels accepted when well formed") {
        const auto p = write_temp(
            "macc_ch_labels_ok.json",
            R"({"nx1":1,"nx2":1,"ny":2,"ny1":1,"p":[[[[0.5],[0.5]]]],"labels":{"y":["a","b"]}})");
        CHECK_NOTHROW(load_channel_json(p));
        std::remove(p.c_str());
    }
    SUBCASE("malformed json") {
        const auto p = write_temp("macc_ch_bad.json", "{nope");
        CHECK_THROWS_AS(load_channel_json(p), FormatError);
        std::remove(p.c_str());
    }
}

TEST_CASE("aux policy json") {
    const auto good = write_temp("macc_pol_ok.json", R"({
        "pU": [1.0],
        "pVgivenU": [[0.5, 0.5]],
        "pX1givenU": [[1.0, 0.0]],
        "pX2givenV": [[1.0, 0.0], [0.0, 1.0]]
    })");
    const AuxInputPolicy pol = load_aux_policy_json(good);
    CHECK(pol.card_u() == 1);
    CHECK(pol.card_v() == 2);
    std::remove(good.c_str());

    const auto bad = write_temp("macc_pol_bad.json", R"({
        "pU": [1.0],
        "pVgivenU": [[0.5, 0.5]],
        "pX1givenU": [[1.0, 0.0]],
        "pX2givenV": [[1.0, 0.0]]
    })");
    CHECK_THROWS_AS(load_aux_policy_json(bad), FormatError);
    std::remove(bad.c_str());
}
