#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tforge/verify.hpp"

using namespace tforge;
using namespace tforge::verify;

namespace {

std::shared_ptr<const TerwilligerContext> ea2(std::uint64_t p, std::uint64_t n) {
    int m = 0;
    while ((1u << m) < n) ++m;
    return TerwilligerContext::build(GroupSpec::elementary_abelian_2(m), p);
}

const EntryResult& find(const Report& r, const std::string& id) {
    for (const auto& e : r.entries)
        if (e.id == id) return e;
    FAIL("missing entry " << id);
    throw 0;
}

const IdentityEntry& registry_entry(const std::string& id) {
    for (const auto& e : identity_registry())
        if (e.id == id) return e;
    throw std::runtime_error("no entry " + id);
}

}  // namespace

TEST_CASE("manifest matches the checked-in snapshot") {
    std::ifstream f(std::string(TFORGE_TEST_DATA) + "/manifest.txt");
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == manifest_text());
}

TEST_CASE("manifest contents") {
    auto m = registry_manifest();
    CHECK(m.size() >= 60);
    std::set<std::string> ids;
    for (const auto& e : m) {
        CHECK(ids.insert(e.id).second);
        CHECK_FALSE(e.anchor.empty());
        CHECK_FALSE(e.hypothesis.empty());
    }
    for (const char* id : {"L2.15.iv", "Eq.4", "L1.20.v", "L2.9", "L1.8", "L1.9", "TP.vi", "L1.19"}) CHECK(ids.count(id));
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(id_less(m[i - 1].id, m[i].id));
}

TEST_CASE("natural id order") {
    CHECK(id_less("L2.9", "L2.10"));
    CHECK(id_less("L2.7.iv", "L2.7.v"));
    CHECK(id_less("L2.7.ix", "L2.7.x"));
    CHECK(id_less("L2.7.viii", "L2.7.ix"));
    CHECK(id_less("L1.20", "L1.20.i"));
    CHECK_FALSE(id_less("L2.10", "L2.9"));
    CHECK(id_less("Eq.4", "Eq.4.k"));
}

TEST_CASE("quantifier instantiations") {
    CHECK(instantiations(Quantifier::None).size() == 1);
    CHECK(instantiations(Quantifier::Perm3).size() == 6);
    CHECK(instantiations(Quantifier::DistinctPair).size() == 6);
    CHECK(instantiations(Quantifier::Index5).size() == 5);
    CHECK(instantiations(Quantifier::Pair5).size() == 25);
    CHECK(instantiations(Quantifier::Triple5).size() == 125);
}

TEST_CASE("registry examples") {
    auto c28 = ea2(2, 8);
    auto r = run_identities(*c28);
    const auto& l21 = find(r, "L2.1");
    CHECK(l21.status == Status::Pass);
    CHECK(l21.instances == 6);
    CHECK(find(r, "L1.19").status == Status::Pass);
    CHECK(find(r, "L1.20.v").status == Status::Skipped);

    auto c38 = ea2(3, 8);
    CHECK(find(run_identities(*c38), "L1.19").status == Status::Skipped);

    // at (2,4) the 2 in L1.20(v) vanishes
    auto c24 = ea2(2, 4);
    CHECK(find(run_identities(*c24), "L1.20.v").status == Status::Pass);
    CHECK(c24->parse("[2]E4A2E4 + E4A4E4") == c24->parse("E4A4E4"));

    auto p = run_predicates(*c24);
    CHECK(find(p, "L1.4").status == Status::Skipped);
    CHECK(find(p, "L1.9").status == Status::Pass);
    CHECK(find(p, "L1.8").checks > 0);
}

TEST_CASE("zero failures over the grid, transposed too") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u})
        for (std::uint64_t n : {4u, 8u}) {
            auto ctx = ea2(p, n);
            auto r = run_all(*ctx);
            INFO("p=" << p << " n=" << n);
            CHECK(r.pass());
            CHECK(r.count(Status::Pass) > 100);
            RunOptions t;
            t.transposed = true;
            CHECK(run_identities(*ctx, t).pass());
        }
}

TEST_CASE("a corrupted identity fails with a witness") {
    auto ctx = ea2(5, 8);
    IdentityEntry e = registry_entry("L2.9");
    CHECK(run_entry(*ctx, e).status == Status::Pass);
    e.rhs = "E4 + [2]E4AgE4";
    auto r = run_entry(*ctx, e);
    CHECK(r.status == Status::Fail);
    REQUIRE_FALSE(r.failures.empty());
    CHECK(r.failures[0].find("g=") != std::string::npos);
    CHECK(r.failures[0].find("vs") != std::string::npos);

    IdentityEntry nz = registry_entry("Eq.4");
    nz.lhs = "E0A1E0";
    CHECK(run_entry(*ctx, nz).status == Status::Fail);
}

TEST_CASE("non-elementary-abelian groups skip the ea2 entries") {
    auto z4 = TerwilligerContext::build(GroupSpec::from_table_file(std::string(TFORGE_TEST_DATA) + "/z4.txt"), 3);
    auto r = run_all(*z4);
    CHECK(r.pass());
    CHECK(find(r, "L2.15.i").status == Status::Skipped);
    CHECK(find(r, "L2.1").status == Status::Pass);
    CHECK(find(r, "L1.2").status == Status::Pass);
}

TEST_CASE("reports are deterministic") {
    auto ctx = ea2(3, 8);
    RunOptions one;
    one.threads = 1;
    RunOptions three;
    three.threads = 3;
    CHECK(run_all(*ctx, one).to_json() == run_all(*ctx, three).to_json());
    RunOptions other = one;
    other.seed = 99;
    CHECK(run_all(*ctx, other).pass());
}

TEST_CASE("filter selects by prefix") {
    auto ctx = ea2(3, 4);
    RunOptions o;
    o.filter = "L2.1";
    auto r = run_all(*ctx, o);
    for (const auto& e : r.entries) CHECK(e.id.rfind("L2.1", 0) == 0);
    CHECK(r.entries.size() == 1 + 6 + 4 + 12 + 2 + 6 + 6);
}
