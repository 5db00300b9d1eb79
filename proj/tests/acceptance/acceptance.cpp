// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [AC1 ... AC9]   (no args: every criterion except AC6)
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tforge/named_sets.hpp"
#include "tforge/scheme.hpp"
#include "tforge/structure.hpp"
#include "tforge/verify.hpp"

using namespace tforge;

namespace {

const std::vector<std::uint64_t> kPrimes{2, 3, 5, 7};
const std::vector<std::uint64_t> kNs{4, 8, 16};

int log2n(std::uint64_t n) {
    int m = 0;
    while ((std::uint64_t{1} << m) < n) ++m;
    return m;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            problems.push_back(what);
        }
    }
};

// decompose results are shared by AC3, AC4, AC5, AC7 and AC9
std::map<std::pair<std::uint64_t, std::uint64_t>, DecompositionReport> g_reports;

const DecompositionReport& report(std::uint64_t p, std::uint64_t n) {
    auto it = g_reports.find({p, n});
    if (it == g_reports.end()) it = g_reports.emplace(std::pair{p, n}, decompose(p, n)).first;
    return it->second;
}

std::string tag(std::uint64_t p, std::uint64_t n) {
    return "(" + std::to_string(p) + "," + std::to_string(n) + ")";
}

Outcome ac1() {
    Outcome o;
    std::size_t compared = 0;
    for (std::uint64_t n : kNs) {
        const TripleSpace ts = build_triple_space(GroupSpec::elementary_abelian_2(log2n(n)));
        const AxiomCheck mode = n == 4 ? AxiomCheck::Full : AxiomCheck::Sampled;
        for (int g = 0; g <= 4; ++g)
            for (int h = 0; h <= 4; ++h)
                for (int i = 0; i <= 4; ++i) {
                    std::uint64_t b = 0;
                    try {
                        b = intersection_brute(ts, g, h, i, mode);
                    } catch (const std::exception& e) {
                        o.require(false, "n=" + std::to_string(n) + " " + e.what());
                        continue;
                    }
                    const std::uint64_t c = intersection_closed(g, h, i, n);
                    o.require(b == c, "n=" + std::to_string(n) + " p^" + std::to_string(i) + "_" + std::to_string(g) +
                                          std::to_string(h) + ": brute " + std::to_string(b) + " vs closed " +
                                          std::to_string(c));
                    ++compared;
                }
    }
    o.detail = std::to_string(compared) + "/375 tensor values match (n=4 exhaustive constancy)";
    return o;
}

Outcome ac2() {
    Outcome o;
    std::size_t passed = 0, skipped = 0, failed = 0;
    for (std::uint64_t p : kPrimes)
        for (std::uint64_t n : kNs) {
            auto ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(log2n(n)), p);
            const verify::Report r = verify::run_all(*ctx);
            passed += r.count(verify::Status::Pass);
            skipped += r.count(verify::Status::Skipped);
            failed += r.count(verify::Status::Fail);
            for (const auto& e : r.entries)
                if (e.status == verify::Status::Fail)
                    o.require(false, tag(p, n) + " " + e.id + (e.failures.empty() ? "" : ": " + e.failures[0]));
        }
    o.detail = "12 grid points, " + std::to_string(passed) + " entry runs passed, " + std::to_string(failed) +
               " failed, " + std::to_string(skipped) + " not applicable";
    return o;
}

std::size_t expected_corner4(std::uint64_t p, std::uint64_t n) {
    if (n == 4) return 6;
    if (p == 2 && n == 8) return 10;
    return 11;
}

Outcome ac3() {
    Outcome o;
    for (std::uint64_t p : kPrimes)
        for (std::uint64_t n : kNs) {
            const auto& r = report(p, n);
            o.require(r.paper_basis_ok, tag(p, n) + " B does not span T independently");
            o.require(r.dim_T == r.paper_basis_size, tag(p, n) + " dim T " + std::to_string(r.dim_T) + " vs |B| " +
                                                         std::to_string(r.paper_basis_size));
            auto ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(log2n(n)), p);
            const auto cb = corner_paper_basis(*ctx);
            const std::size_t rank = span_algebra(ctx, cb).dim();
            const std::size_t want = expected_corner4(p, n);
            o.require(rank == cb.size() && rank == want,
                      tag(p, n) + " corner basis rank " + std::to_string(rank) + " listed " + std::to_string(cb.size()));
            o.require(r.corners.size() == 5 && r.corners[4].dim == rank,
                      tag(p, n) + " E4*TE4* dim differs from the corner basis rank");
        }
    o.detail = "12 grid points: B spans T with rank |B|, E4*TE4* rank matches (6 / 10 / 11)";
    return o;
}

struct Expected {
    std::uint64_t p, n;
    CaseKind kind;
    std::vector<std::size_t> blocks;
    std::string rad;
};

Outcome ac4() {
    Outcome o;
    const std::vector<Expected> table{
        {5, 16, CaseKind::CaseI, {4, 1, 1}, "V1"},   {3, 8, CaseKind::CaseII, {6, 4, 1}, "V2"},
        {7, 16, CaseKind::CaseII, {6, 4, 1}, "V2"},  {2, 8, CaseKind::CaseP2, {5, 4, 1}, "V2"},
        {2, 16, CaseKind::CaseP2, {5, 4, 1}, "V2"},  {5, 4, CaseKind::CaseIII, {5, 5, 1}, "{O}"},
        {5, 8, CaseKind::CaseIV, {6, 5, 1}, "{O}"},  {3, 16, CaseKind::CaseI, {4, 1, 1}, "V1"},
    };
    for (const auto& e : table) {
        const auto& r = report(e.p, e.n);
        const auto& c = r.certificate;
        o.require(r.label.kind == e.kind, tag(e.p, e.n) + " case " + to_string(r.label.kind));
        o.require(r.blocks == e.blocks, tag(e.p, e.n) + " blocks " + join(r.blocks));
        if (e.rad == "{O}")
            o.require(r.dim_rad == 0, tag(e.p, e.n) + " radical " + c.candidate + " has dim " + std::to_string(r.dim_rad));
        else
            o.require(c.candidate == e.rad && r.dim_rad > 0, tag(e.p, e.n) + " radical " + c.candidate);
        o.require(c.certified(), tag(e.p, e.n) + " not certified (ideal " + std::to_string(c.ideal.pass) +
                                     ", nilpotent " + std::to_string(c.nilpotent.pass) + ", units " +
                                     std::to_string(c.units.pass) + ", dims " + std::to_string(c.dims.pass) + ")");
        o.require(!r.partial, tag(e.p, e.n) + " unexpectedly partial");
    }
    o.detail = "8 decompositions reproduced and certified";
    return o;
}

Outcome ac5() {
    Outcome o;
    std::string ss;
    for (std::uint64_t p : kPrimes)
        for (std::uint64_t n : kNs) {
            const auto& r = report(p, n);
            const bool cf = semisimple_closed_form(p, n);
            o.require(cf == (r.dim_rad == 0), tag(p, n) + " closed form " + std::to_string(cf) + " vs dim Rad " +
                                                  std::to_string(r.dim_rad));
            o.require(r.semisimple == (r.dim_rad == 0), tag(p, n) + " semisimple flag");
            if (p <= 3) o.require(!cf, tag(p, n) + " should not be semisimple");
            if (cf) ss += tag(p, n);
        }
    o.require(semisimple_closed_form(5, 4), "(5,4) should be semisimple");
    o.detail = "closed form = (dim Rad = 0) on 12 grid points; semisimple at " + ss;
    return o;
}

Outcome ac6() {
    Outcome o;
    auto ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(5), 7);
    const auto& k = ctx->scheme().k;
    const std::vector<std::uint64_t> want{1, 31, 31, 31, 930};
    o.require(std::vector<std::uint64_t>(k.begin(), k.end()) == want, "valencies differ");
    for (auto v : k) o.require(std::gcd(v, std::uint64_t{7}) == 1, "valency " + std::to_string(v) + " divisible by 7");
    DecomposeOptions opt;
    opt.corners = false;
    opt.basis_claims = false;
    const auto r = decompose(7, 32, 0, opt);
    o.require(r.label.kind == CaseKind::CaseIII, std::string("case ") + to_string(r.label.kind));
    o.require(r.certificate.candidate == "V3", "candidate " + r.certificate.candidate);
    o.require(r.dim_rad > 0, "V3 is zero");
    o.require(r.certificate.certified(), "V3 not certified");
    o.require(r.partial, "expected partial-certificate mode");
    o.detail = "(7,32) valencies {1,31,31,31,930} prime to 7, V3 dim " + std::to_string(r.dim_rad) +
               " certified (partial), blocks " + join(r.blocks);
    return o;
}

std::vector<std::size_t> expected_corner4_blocks(CaseKind k) {
    switch (k) {
        case CaseKind::CaseI: return {1, 1};
        case CaseKind::CaseII: return {3, 1};
        case CaseKind::CaseP2: return {2, 1};
        case CaseKind::CaseIII: return {2, 1, 1};
        case CaseKind::CaseIV: return {3, 1, 1};
    }
    return {};
}

Outcome ac7() {
    Outcome o;
    for (std::uint64_t p : kPrimes)
        for (std::uint64_t n : kNs) {
            const auto& r = report(p, n);
            const std::string t = tag(p, n);
            if (r.corners.size() != 5) {
                o.require(false, t + " missing corners");
                continue;
            }
            o.require(r.corners[0].dim == 1, t + " E0 rank " + std::to_string(r.corners[0].dim));
            const bool case1 = r.label.kind == CaseKind::CaseI;
            for (int a = 1; a <= 3; ++a) {
                const auto& c = r.corners[a];
                const std::vector<std::size_t> want = case1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{1, 1};
                o.require(c.blocks == want, t + " E" + std::to_string(a) + " blocks " + join(c.blocks));
                o.require((c.radical_dim != 0) == case1, t + " E" + std::to_string(a) + " radical dim " +
                                                             std::to_string(c.radical_dim));
            }
            o.require(r.corners[4].blocks == expected_corner4_blocks(r.label.kind),
                      t + " E4 blocks " + join(r.corners[4].blocks));
            for (const auto& c : r.corners) {
                o.require(c.certified, t + " E" + std::to_string(c.a) + " not certified");
                o.require(c.projection_matches, t + " E" + std::to_string(c.a) + " Rad projection mismatch");
            }
        }
    o.detail = "all 60 corners certified, E4*Rad(T)E4* = Rad(E4*TE4*)";
    return o;
}

Outcome ac8() {
    Outcome o;
    DecomposeOptions opt;
    opt.corners = false;
    opt.basis_claims = false;
    std::size_t runs = 0;
    std::mt19937_64 rng(0x7f0e5eedULL);
    for (std::uint64_t n : kNs) {
        const std::size_t N = n * n;
        std::vector<PointId> points;
        if (n == 4) {
            points.resize(N);
            std::iota(points.begin(), points.end(), PointId{0});
        } else {
            std::set<PointId> s;
            while (s.size() < 5) s.insert(static_cast<PointId>(rng() % N));
            points.assign(s.begin(), s.end());
        }
        for (std::uint64_t p : kPrimes) {
            const auto& base = report(p, n);
            for (PointId x : points) {
                const auto r = decompose(p, n, x, opt);
                ++runs;
                o.require(r.dim_T == base.dim_T && r.dim_rad == base.dim_rad && r.blocks == base.blocks,
                          tag(p, n) + " x=" + std::to_string(x) + ": " + std::to_string(r.dim_T) + "/" +
                              std::to_string(r.dim_rad) + "/" + join(r.blocks));
            }
        }
    }
    o.detail = std::to_string(runs) + " basepoint runs agree (16 at n=4, 5 at n=8,16, every prime)";
    return o;
}

Outcome ac9() {
    Outcome o;
    std::ostringstream os;
    for (std::uint64_t p : kPrimes)
        for (std::uint64_t n : kNs) {
            const auto& r = report(p, n);
            if (r.label.kind != CaseKind::CaseI) continue;
            const BasisClaim* b = nullptr;
            const BasisClaim* l = nullptr;
            for (const auto& c : r.claims) {
                if (c.name == "B") b = &c;
                if (c.name == "L3.8") l = &c;
            }
            o.require(b && l, tag(p, n) + " claims missing from the report");
            if (!b || !l) continue;
            os << " " << tag(p, n) << " B rank " << b->rank << "/" << b->listed
               << (b->list_dependent ? " dependent" : " independent") << ", L3.8 rank " << l->rank << "/" << l->listed
               << " (" << l->distinct << " distinct)" << (l->list_dependent ? " dependent" : " independent")
               << (l->set_dependent ? " as a set" : "") << ";";
        }
    o.detail = "CaseI basis ranks:" + os.str();
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
    };
    std::set<std::string> wanted(argv + 1, argv + argc);
    if (wanted.empty())
        for (const auto& [id, _] : all)
            if (id != "AC6") wanted.insert(id);

    bool ok = true;
    for (const auto& [id, fn] : all) {
        if (!wanted.count(id)) continue;
        const auto t = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.1fs", s);
        std::cout << id << (o.pass ? " PASS " : " FAIL ") << o.detail << " [" << secs << "]\n";
        for (std::size_t i = 0; i < o.problems.size() && i < 10; ++i) std::cout << "    " << o.problems[i] << "\n";
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
