#include <set>

#include "doctest.h"
#include "tforge/scheme.hpp"

using namespace tforge;

namespace {

const std::string kData = TFORGE_TEST_DATA;

// |{z : (x,z) in R_g, (z,y) in R_h}| by direct scan
std::uint64_t count_direct(const TripleSpace& ts, PointId x, PointId y, int g, int h) {
    std::uint64_t c = 0;
    for (PointId z = 0; z < ts.size(); ++z) c += classify_pair(ts, x, z) == g && classify_pair(ts, z, y) == h;
    return c;
}

}  // namespace

TEST_CASE("triple space enumeration") {
    TripleSpace k4(GroupSpec::elementary_abelian_2(2));
    CHECK(k4.size() == 16);
    CHECK(k4.triple(0) == std::array<std::uint32_t, 3>{0, 0, 0});
    CHECK(TripleSpace(GroupSpec::elementary_abelian_2(3)).size() == 64);
    TripleSpace z4(GroupSpec::from_table_file(kData + "/z4.txt"));
    CHECK(z4.size() == 16);
    for (PointId x = 0; x < z4.size(); ++x) {
        const auto& t = z4.triple(x);
        CHECK(z4.group().mul(t[0], t[1]) == t[2]);
        CHECK(z4.id_of(t[0], t[1]) == x);
    }
}

TEST_CASE("classify_pair examples") {
    TripleSpace ts(GroupSpec::elementary_abelian_2(2));
    const std::uint32_t a = 1, b = 2;
    const PointId e = ts.id_of(0, 0);
    CHECK(classify_pair(ts, e, e) == 0);
    CHECK(classify_pair(ts, e, ts.id_of(0, a)) == 1);
    CHECK(classify_pair(ts, e, ts.id_of(a, a)) == 3);
    CHECK(classify_pair(ts, e, ts.id_of(a, b)) == 4);
}

TEST_CASE("relations partition X x X and are symmetric") {
    for (const char* f : {"/z4.txt", "/s3.txt", "/d4.txt"}) {
        TripleSpace ts(GroupSpec::from_table_file(kData + f));
        std::array<std::size_t, 5> count{};
        for (PointId x = 0; x < ts.size(); ++x)
            for (PointId y = 0; y < ts.size(); ++y) {
                const int r = classify_pair(ts, x, y);
                REQUIRE(r == classify_pair(ts, y, x));
                REQUIRE((r == 0) == (x == y));
                ++count[r];
            }
        std::size_t total = 0;
        for (auto c : count) total += c;
        CHECK(total == ts.size() * ts.size());
    }
}

TEST_CASE("elementary abelian 2 criterion") {
    CHECK(is_elementary_abelian_2(GroupSpec::elementary_abelian_2(2)));
    CHECK(is_elementary_abelian_2(GroupSpec::elementary_abelian_2(4)));
    CHECK_FALSE(is_elementary_abelian_2(GroupSpec::from_table_file(kData + "/z4.txt")));
    CHECK_FALSE(is_elementary_abelian_2(GroupSpec::from_table_file(kData + "/d4.txt")));
    CHECK_FALSE(is_elementary_abelian_2(GroupSpec::from_table_file(kData + "/s3.txt")));
    // K4 written as an explicit table agrees with the XOR form
    auto k4 = GroupSpec::cayley_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    auto c = elementary_abelian_2_criteria(k4);
    CHECK(c.group_criterion);
    CHECK(c.triple_criterion);
}

TEST_CASE("malformed groups") {
    CHECK_THROWS_AS(GroupSpec::cayley_table({{0, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(GroupSpec::cayley_table({{0, 1, 2}, {1, 2}}), Error);
    CHECK_THROWS_AS(GroupSpec::cayley_table({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}), Error);
    CHECK_THROWS_AS(GroupSpec::parse("cyclic:4"), Error);
    CHECK_THROWS_AS(GroupSpec::parse("table:/nonexistent"), Error);
    CHECK_THROWS_AS(TripleSpace(GroupSpec::elementary_abelian_2(1)), Error);
    // a Latin square with identity that is not associative (order 5)
    auto loop = GroupSpec::cayley_table(
        {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
    CHECK_FALSE(loop.is_associative());
    CHECK_THROWS_AS(build_scheme(TripleSpace(loop), AxiomCheck::Full), Error);
}

TEST_CASE("identity is relabelled to 0") {
    // Z3 with identity at index 2
    auto g = GroupSpec::cayley_table({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
    for (std::uint32_t a = 0; a < 3; ++a) CHECK(g.mul(0, a) == a);
    TripleSpace ts(g);
    auto sd = build_scheme(ts, AxiomCheck::Full);
    CHECK(sd.k[0] == 1);
}

TEST_CASE("intersection numbers: brute force equals closed form") {
    for (int m : {2, 3, 4}) {
        TripleSpace ts(GroupSpec::elementary_abelian_2(m));
        const auto n = ts.n();
        const auto mode = m == 2 ? AxiomCheck::Full : AxiomCheck::Sampled;
        for (int i = 0; i <= 4; ++i) {
            for (int g = 0; g <= 4; ++g)
                for (int h = 0; h <= 4; ++h)
                    REQUIRE(intersection_brute(ts, g, h, i, m == 4 ? AxiomCheck::None : mode) ==
                            intersection_closed(g, h, i, n));
        }
        CHECK(intersection_brute(ts, 1, 2, 3) == 1);
        CHECK(intersection_brute(ts, 1, 1, 1) == n - 2);
    }
    TripleSpace t8(GroupSpec::elementary_abelian_2(3));
    CHECK(intersection_brute(t8, 4, 4, 4, AxiomCheck::Sampled) == 26);
    CHECK(intersection_closed(4, 4, 4, 8) == 26);
    CHECK(intersection_closed(4, 4, 0, 10) == 72);
    CHECK(intersection_closed(1, 1, 2, 16) == 0);
}

TEST_CASE("closed form holds for non-abelian groups too") {
    for (const char* f : {"/s3.txt", "/d4.txt", "/z4.txt"}) {
        TripleSpace ts(GroupSpec::from_table_file(kData + f));
        auto sd = build_scheme(ts, AxiomCheck::Full);
        for (int g = 0; g <= 4; ++g)
            for (int h = 0; h <= 4; ++h)
                for (int i = 0; i <= 4; ++i) CHECK(sd.p[g][h][i] == intersection_closed(g, h, i, ts.n()));
    }
}

TEST_CASE("scheme descriptor invariants") {
    for (int m : {2, 3, 4}) {
        TripleSpace ts(GroupSpec::elementary_abelian_2(m));
        auto sd = build_scheme(ts, m == 2 ? AxiomCheck::Full : AxiomCheck::Sampled);
        const std::uint64_t n = ts.n();
        CHECK(valency(sd, 0) == 1);
        CHECK(valency(sd, 2) == n - 1);
        CHECK(valency(sd, 4) == n * n - 3 * n + 2);
        std::uint64_t total = 0;
        for (int i = 0; i <= 4; ++i) {
            total += sd.k[i];
            CHECK(sd.converse[i] == i);
            CHECK(sd.p[i][i][0] == sd.k[i]);
        }
        CHECK(total == n * n);
        for (int g = 0; g <= 4; ++g)
            for (int i = 0; i <= 4; ++i) {
                std::uint64_t s = 0;
                for (int h = 0; h <= 4; ++h) s += sd.p[g][h][i];
                CHECK(s == sd.k[g]);
            }
        if (m == 2) CHECK(sd.pairs_checked >= 256);
        if (m > 2) CHECK(sd.pairs_checked >= 5 * 20);
    }
    CHECK_THROWS_AS(valency(SchemeDescriptor{}, 5), Error);
}

TEST_CASE("brute counts match a direct scan at random witnesses") {
    TripleSpace ts(GroupSpec::from_table_file(kData + "/d4.txt"));
    auto sd = build_scheme(ts, AxiomCheck::None);
    for (PointId y : {PointId{5}, PointId{17}, PointId{42}}) {
        const int i = classify_pair(ts, 0, y);
        for (int g = 0; g <= 4; ++g)
            for (int h = 0; h <= 4; ++h) CHECK(count_direct(ts, 0, y, g, h) == sd.p[g][h][i]);
    }
}

TEST_CASE("the Lemma1.2 triple criterion at every point") {
    TripleSpace ts(GroupSpec::elementary_abelian_2(3));
    const auto& G = ts.group();
    for (PointId x = 0; x < ts.size(); ++x) {
        const auto& t = ts.triple(x);
        CHECK(G.mul(t[0], t[2]) == t[1]);
        CHECK(G.mul(t[1], t[2]) == t[0]);
    }
}

TEST_CASE("point_with") {
    TripleSpace ts(GroupSpec::from_table_file(kData + "/s3.txt"));
    for (std::uint32_t a = 0; a < 6; ++a)
        for (std::uint32_t b = 0; b < 6; ++b)
            for (auto [d1, d2] : {std::pair{1, 2}, {1, 3}, {2, 3}, {3, 1}, {3, 2}, {2, 1}}) {
                const PointId y = ts.point_with(d1, a, d2, b);
                CHECK(ts.coord(y, d1) == a);
                CHECK(ts.coord(y, d2) == b);
            }
}
