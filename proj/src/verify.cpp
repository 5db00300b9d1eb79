#include "tforge/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "tforge/named_sets.hpp"
#include "tforge/structure.hpp"

namespace tforge::verify {

bool Hypothesis::holds(const TerwilligerContext& ctx) const {
    if (needs_ea2 && !ctx.elementary_abelian()) return false;
    return !when || when(ctx.modulus().value(), ctx.n());
}

const char* to_string(Quantifier q) {
    switch (q) {
        case Quantifier::None: return "-";
        case Quantifier::Perm3: return "{g,h,i}=[1,3]";
        case Quantifier::DistinctPair: return "g!=h in [1,3]";
        case Quantifier::Index5: return "i in [0,4]";
        case Quantifier::Pair5: return "h,i in [0,4]";
        case Quantifier::Triple5: return "g,h,i in [0,4]";
    }
    return "?";
}

std::vector<std::map<char, int>> instantiations(Quantifier q) {
    std::vector<std::map<char, int>> out;
    switch (q) {
        case Quantifier::None: out.push_back({}); break;
        case Quantifier::Perm3: {
            std::array<int, 3> v{1, 2, 3};
            do out.push_back({{'g', v[0]}, {'h', v[1]}, {'i', v[2]}});
            while (std::next_permutation(v.begin(), v.end()));
            break;
        }
        case Quantifier::DistinctPair:
            for (int g = 1; g <= 3; ++g)
                for (int h = 1; h <= 3; ++h)
                    if (g != h) out.push_back({{'g', g}, {'h', h}});
            break;
        case Quantifier::Index5:
            for (int i = 0; i <= 4; ++i) out.push_back({{'i', i}});
            break;
        case Quantifier::Pair5:
            for (int h = 0; h <= 4; ++h)
                for (int i = 0; i <= 4; ++i) out.push_back({{'h', h}, {'i', i}});
            break;
        case Quantifier::Triple5:
            for (int g = 0; g <= 4; ++g)
                for (int h = 0; h <= 4; ++h)
                    for (int i = 0; i <= 4; ++i) out.push_back({{'g', g}, {'h', h}, {'i', i}});
            break;
    }
    return out;
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

// ------------------------------------------------------------------ ids

namespace {

int roman_value(const std::string& s) {
    if (s.empty() || s.find_first_not_of("ivx") != std::string::npos) return -1;
    int total = 0, prev = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        const int v = *it == 'i' ? 1 : *it == 'v' ? 5 : 10;
        total += v < prev ? -v : v;
        prev = std::max(prev, v);
    }
    return total;
}

std::vector<std::string> split_dots(const std::string& s) {
    std::vector<std::string> out(1);
    for (char c : s) {
        if (c == '.')
            out.emplace_back();
        else
            out.back() += c;
    }
    return out;
}

// Segments compare numerically when both are numbers or both roman numerals.
int compare_segment(const std::string& a, const std::string& b) {
    const bool da = !a.empty() && std::all_of(a.begin(), a.end(), ::isdigit);
    const bool db = !b.empty() && std::all_of(b.begin(), b.end(), ::isdigit);
    if (da && db) {
        const auto x = std::stoull(a), y = std::stoull(b);
        return x < y ? -1 : x > y ? 1 : 0;
    }
    const int ra = roman_value(a), rb = roman_value(b);
    if (ra >= 0 && rb >= 0) return ra < rb ? -1 : ra > rb ? 1 : 0;
    return a < b ? -1 : a > b ? 1 : 0;
}

}  // namespace

bool id_less(const std::string& a, const std::string& b) {
    const auto sa = split_dots(a), sb = split_dots(b);
    for (std::size_t k = 0; k < std::min(sa.size(), sb.size()); ++k) {
        const int c = compare_segment(sa[k], sb[k]);
        if (c) return c < 0;
    }
    return sa.size() < sb.size();
}

// ------------------------------------------------------------- registry

namespace {

Hypothesis any_group() { return {false, {}, "any G"}; }
Hypothesis ea2() { return {true, {}, "G elementary abelian 2"}; }
Hypothesis klein() {
    return {true, [](std::uint64_t, std::uint64_t n) { return n == 4; }, "G Klein four"};
}
Hypothesis ea2_n_gt_4() {
    return {true, [](std::uint64_t, std::uint64_t n) { return n > 4; }, "G elementary abelian 2, n>4"};
}

std::vector<IdentityEntry> build_identities() {
    std::vector<IdentityEntry> v;
    auto add = [&](std::string id, std::string anchor, Hypothesis h, Quantifier q, std::string lhs, std::string rhs,
                   Relation rel = Relation::Equal) {
        v.push_back({std::move(id), std::move(anchor), std::move(h), q, rel, std::move(lhs), std::move(rhs), {}});
    };
    using Q = Quantifier;
    const auto P = Q::Perm3;

    add("Eq.1.A", "Eq;1", any_group(), Q::Index5, "Ai", "Ai", Relation::TransposeEqual);
    add("Eq.1.E", "Eq;1", any_group(), Q::Index5, "Ei", "Ei", Relation::TransposeEqual);
    add("Eq.2.A", "Eq;2", any_group(), Q::Pair5, "AhAi",
        "[p(h,i,0)]A0 + [p(h,i,1)]A1 + [p(h,i,2)]A2 + [p(h,i,3)]A3 + [p(h,i,4)]A4");
    add("Eq.2.E", "Eq;2", any_group(), Q::Pair5, "EhEi", "[d(h,i)]Ei");
    add("Eq.3.J", "Eq;3", any_group(), Q::None, "J", "A0 + A1 + A2 + A3 + A4");
    add("Eq.3.A0", "Eq;3", any_group(), Q::None, "A0", "I");
    add("Eq.3.I", "Eq;3", any_group(), Q::None, "I", "E0 + E1 + E2 + E3 + E4");
    add("Eq.4", "Eq;4", any_group(), Q::Pair5, "EhJEi", "", Relation::NonZero);
    add("Eq.4.k", "Eq;4", any_group(), Q::Index5, "JEiJ", "[k(i)]J");

    add("TP.i.a", "Tripleproducts(i)", any_group(), Q::Triple5, "EgAhEiJ", "[p(i,h,g)]EgJ");
    add("TP.i.b", "Tripleproducts(i)", any_group(), Q::Triple5, "JEgAhEi", "[p(g,h,i)]JEi");
    add("TP.ii", "Tripleproducts(ii)", any_group(), Q::Triple5, "EgAhEi", "EgJEi");
    v.back().instance_filter = [](const SchemeDescriptor& sd, const std::map<char, int>& b) {
        const int g = b.at('g'), h = b.at('h'), i = b.at('i');
        return sd.p[i][h][g] != 0 && std::min(sd.k[g], sd.k[i]) == 1;
    };

    add("L1.5.i", "Lemma1.5(i)", klein(), P, "EgAhEiAgE4", "EgA4E4");
    add("L1.5.ii", "Lemma1.5(ii)", klein(), P, "E4AgEiAhEg", "E4A4Eg");
    add("L1.19", "Lemma1.19",
        {true, [](std::uint64_t p, std::uint64_t n) { return p == 2 && n == 8; }, "G elementary abelian 2, p=2, n=8"},
        Q::None, "E4A1E2A3E4 + E4A1E3A2E4 + E4A2E1A3E4 + E4A2E3A1E4 + E4A3E1A2E4 + E4A3E2A1E4", "E4A4E4");
    add("L1.20.i", "Lemma1.20(i)", klein(), Q::None, "E4A1E3A2E4 + E4A1E2A3E4", "E4A2E4 + E4A3E4 + E4A4E4");
    add("L1.20.ii", "Lemma1.20(ii)", klein(), Q::None, "E4A2E1A3E4 + E4A1E2A3E4", "E4A1E4 + E4A2E4 + E4A4E4");
    add("L1.20.iii", "Lemma1.20(iii)", klein(), Q::None, "E4A2E3A1E4 - E4A1E2A3E4", "E4A3E4 - E4A2E4");
    add("L1.20.iv", "Lemma1.20(iv)", klein(), Q::None, "E4A3E1A2E4 - E4A1E2A3E4", "E4A1E4 - E4A2E4");
    add("L1.20.v", "Lemma1.20(v)", klein(), Q::None, "E4A3E2A1E4 + E4A1E2A3E4", "[2]E4A2E4 + E4A4E4");

    add("L2.1", "Lemma2.1", any_group(), P, "EgAhEiAhEg", "Eg");
    add("L2.2", "Lemma2.2", ea2(), P, "EgAhEiAgEh", "EgAiEh");
    add("L2.3.i", "Lemma2.3(i)", any_group(), P, "EgAhEiAhE4", "EgAhE4");
    add("L2.3.ii", "Lemma2.3(ii)", any_group(), P, "E4AhEiAhEg", "E4AhEg");
    add("L2.4.i", "Lemma2.4(i)", ea2(), P, "EgAhEiAgE4", "EgAiEhAgE4");
    add("L2.4.ii", "Lemma2.4(ii)", ea2(), P, "E4AgEiAhEg", "E4AgEhAiEg");

    add("L2.5.i", "Lemma2.5(i)", ea2(), P, "EgAhE4AgEh", "EgJEh - EgAiEh");
    add("L2.5.ii", "Lemma2.5(ii)", ea2(), P, "EgAhE4AgEi", "EgJEi - EgAhEi");
    add("L2.5.iii", "Lemma2.5(iii)", ea2(), P, "EgAhE4AhEg", "[n-2]Eg");
    add("L2.5.iv", "Lemma2.5(iv)", ea2(), P, "EgAhE4AhEi", "[n-2]EgAhEi");
    add("L2.5.v", "Lemma2.5(v)", ea2(), P, "EgAhE4AiEg", "EgJEg - Eg");
    add("L2.5.vi", "Lemma2.5(vi)", ea2(), P, "EgAhE4AiEh", "EgJEh - EgAiEh");

    add("L2.6.i", "Lemma2.6(i)", ea2(), P, "EiAhEgAhEiAgE4", "EiAgE4");
    add("L2.6.ii", "Lemma2.6(ii)", ea2(), P, "E4AgEiAhEgAhEi", "E4AgEi");
    add("L2.6.iii", "Lemma2.6(iii)", ea2(), P, "EhAiEgAhEiAgE4", "EhAgE4");
    add("L2.6.iv", "Lemma2.6(iv)", ea2(), P, "E4AgEiAhEgAiEh", "E4AgEh");

    add("L2.7.i", "Lemma2.7(i)", ea2(), P, "EgAhEiAgE4AgEh", "[n-2]EgAiEh");
    add("L2.7.ii", "Lemma2.7(ii)", ea2(), P, "EhAgE4AgEiAhEg", "[n-2]EhAiEg");
    add("L2.7.iii", "Lemma2.7(iii)", ea2(), P, "EgAhEiAgE4AgEi", "[n-2]EgAhEi");
    add("L2.7.iv", "Lemma2.7(iv)", ea2(), P, "EiAgE4AgEiAhEg", "[n-2]EiAhEg");
    add("L2.7.v", "Lemma2.7(v)", ea2(), P, "EgAhEiAgE4AhEg", "EgJEg - Eg");
    add("L2.7.vi", "Lemma2.7(vi)", ea2(), P, "EgAhE4AgEiAhEg", "EgJEg - Eg");
    add("L2.7.vii", "Lemma2.7(vii)", ea2(), P, "EgAhEiAgE4AhEi", "EgJEi - EgAhEi");
    add("L2.7.viii", "Lemma2.7(viii)", ea2(), P, "EiAhE4AgEiAhEg", "EiJEg - EiAhEg");
    add("L2.7.ix", "Lemma2.7(ix)", ea2(), P, "EgAhEiAgE4AiEg", "EgJEg - Eg");
    add("L2.7.x", "Lemma2.7(x)", ea2(), P, "EgAiE4AgEiAhEg", "EgJEg - Eg");
    add("L2.7.xi", "Lemma2.7(xi)", ea2(), P, "EgAhEiAgE4AiEh", "EgJEh - EgAiEh");
    add("L2.7.xii", "Lemma2.7(xii)", ea2(), P, "EhAiE4AgEiAhEg", "EhJEg - EhAiEg");

    add("L2.8.i", "Lemma2.8(i)", any_group(), P, "EgAhE4AgE4", "EgJE4 - EgAhE4 - EgAhEiAgE4");
    add("L2.8.ii", "Lemma2.8(ii)", any_group(), P, "E4AgE4AhEg", "E4JEg - E4AhEg - E4AgEiAhEg");
    add("L2.8.iii", "Lemma2.8(iii)", any_group(), P, "EgAhE4AhE4", "[n-3]EgAhE4");
    add("L2.8.iv", "Lemma2.8(iv)", any_group(), P, "E4AhE4AhEg", "[n-3]E4AhEg");
    add("L2.8.v", "Lemma2.8(v)", any_group(), P, "EgAhE4AiE4", "EgJE4 - EgAhE4 - EgAiE4");
    add("L2.8.vi", "Lemma2.8(vi)", any_group(), P, "E4AiE4AhEg", "E4JEg - E4AhEg - E4AiEg");

    add("L2.9", "Lemma2.9", any_group(), Q::DistinctPair, "E4AgEhAgE4", "E4 + E4AgE4");

    add("L2.10.i", "Lemma2.10(i)", ea2(), P, "EgAhEiAgE4AgE4", "[n-3]EgAhEiAgE4");
    add("L2.10.ii", "Lemma2.10(ii)", ea2(), P, "E4AgE4AgEiAhEg", "[n-3]E4AgEiAhEg");
    add("L2.10.iii", "Lemma2.10(iii)", ea2(), P, "EgAhEiAgE4AhE4",
        "EgJE4 - EgAhE4 - EgAhEiAgE4");
    add("L2.10.iv", "Lemma2.10(iv)", ea2(), P, "E4AhE4AgEiAhEg",
        "E4JEg - E4AhEg - E4AgEiAhEg");
    add("L2.10.v", "Lemma2.10(v)", ea2(), P, "EgAhEiAgE4AiE4",
        "EgJE4 - EgAiE4 - EgAhEiAgE4");
    add("L2.10.vi", "Lemma2.10(vi)", ea2(), P, "E4AiE4AgEiAhEg",
        "E4JEg - E4AiEg - E4AgEiAhEg");

    add("L2.11.i", "Lemma2.11(i)", ea2(), P, "E4AhEgAhEiAgE4", "E4AhEiAgE4");
    add("L2.11.ii", "Lemma2.11(ii)", ea2(), P, "E4AgEiAhEgAhE4", "E4AgEiAhE4");
    add("L2.11.iii", "Lemma2.11(iii)", ea2(), P, "E4AiEgAhEiAgE4", "E4AiEhAgE4");
    add("L2.11.iv", "Lemma2.11(iv)", ea2(), P, "E4AgEiAhEgAiE4", "E4AgEhAiE4");

    add("L2.12.i", "Lemma2.12(i)", ea2(), P, "EhAgE4AgEhAiE4", "[n-2]EhAiE4");
    add("L2.12.ii", "Lemma2.12(ii)", ea2(), P, "E4AiEhAgE4AgEh", "[n-2]E4AiEh");
    add("L2.12.iii", "Lemma2.12(iii)", ea2(), P, "EiAgE4AgEhAiE4", "[n-2]EiAgEhAiE4");
    add("L2.12.iv", "Lemma2.12(iv)", ea2(), P, "E4AiEhAgE4AgEi", "[n-2]E4AiEhAgEi");
    add("L2.12.v", "Lemma2.12(v)", ea2(), P, "EgAhE4AgEhAiE4", "EgJE4 - EgAiE4");
    add("L2.12.vi", "Lemma2.12(vi)", ea2(), P, "E4AiEhAgE4AhEg", "E4JEg - E4AiEg");
    add("L2.12.vii", "Lemma2.12(vii)", ea2(), P, "EiAhE4AgEhAiE4", "EiJE4 - EiAgEhAiE4");
    add("L2.12.viii", "Lemma2.12(viii)", ea2(), P, "E4AiEhAgE4AhEi", "E4JEi - E4AiEhAgEi");
    add("L2.12.ix", "Lemma2.12(ix)", ea2(), P, "EgAiE4AgEhAiE4", "EgJE4 - EgAiE4");
    add("L2.12.x", "Lemma2.12(x)", ea2(), P, "E4AiEhAgE4AiEg", "E4JEg - E4AiEg");
    add("L2.12.xi", "Lemma2.12(xi)", ea2(), P, "EhAiE4AgEhAiE4", "EhJE4 - EhAiE4");
    add("L2.12.xii", "Lemma2.12(xii)", ea2(), P, "E4AiEhAgE4AiEh", "E4JEh - E4AiEh");

    add("L2.13.i", "Lemma2.13(i)", any_group(), P, "E4AgE4AgE4", "[n-3]E4 + [n-4]E4AgE4");
    add("L2.13.ii", "Lemma2.13(ii)", any_group(), P, "E4AgE4AhE4",
        "E4JE4 - E4 - E4AgE4 - E4AhE4 - E4AgEiAhE4");

    add("L2.14.i", "Lemma2.14(i)", any_group(), P, "E4AgE4AgEhAiE4", "[n-3]E4AgEhAiE4");
    add("L2.14.ii", "Lemma2.14(ii)", any_group(), P, "E4AiEhAgE4AgE4", "[n-3]E4AiEhAgE4");
    // (iii)/(iv) rely on L2.11.iii, which needs ea2; they fail for Z4.
    add("L2.14.iii", "Lemma2.14(iii)", ea2(), P, "E4AhE4AgEhAiE4",
        "E4JE4 - E4AgEhAiE4 - E4AhEgAiE4");
    add("L2.14.iv", "Lemma2.14(iv)", ea2(), P, "E4AiEhAgE4AhE4",
        "E4JE4 - E4AiEhAgE4 - E4AiEgAhE4");
    add("L2.14.v", "Lemma2.14(v)", any_group(), P, "E4AiE4AgEhAiE4",
        "E4JE4 - E4AgEhAiE4 - E4 - E4AiE4");
    add("L2.14.vi", "Lemma2.14(vi)", any_group(), P, "E4AiEhAgE4AiE4",
        "E4JE4 - E4AiEhAgE4 - E4 - E4AiE4");

    add("L2.15.i", "Lemma2.15(i)", ea2(), P, "E4AgEhAiE4AgEhAiE4", "E4JE4 - E4AgEhAiE4");
    add("L2.15.ii", "Lemma2.15(ii)", ea2(), P, "E4AgEhAiE4AgEiAhE4", "E4JE4 - E4AgEiAhE4");
    add("L2.15.iii", "Lemma2.15(iii)", ea2(), P, "E4AgEhAiE4AhEgAiE4", "E4JE4 - E4AgEhAiE4");
    add("L2.15.iv", "Lemma2.15(iv)", ea2(), P, "E4AgEhAiE4AhEiAgE4", "E4JE4 - E4 - E4AgE4");
    add("L2.15.v", "Lemma2.15(v)", ea2(), P, "E4AgEhAiE4AiEgAhE4", "[n-2]E4AgEiAhE4");
    add("L2.15.vi", "Lemma2.15(vi)", ea2(), P, "E4AgEhAiE4AiEhAgE4", "[n-2]E4 + [n-2]E4AgE4");
    return v;
}

}  // namespace

const std::vector<IdentityEntry>& identity_registry() {
    static const std::vector<IdentityEntry> v = build_identities();
    return v;
}

// ----------------------------------------------------------- predicates

struct PredicateContext {
    const TerwilligerContext& ctx;
    const SubspaceBasis& t0;
    WordEvaluator ev;
    std::mt19937_64 rng;
    std::size_t samples;
    EntryResult& out;

    bool exhaustive() const { return ctx.n() == 4; }

    GFMatrix mat(const std::string& text, const std::map<char, int>& vars = {}) {
        return ev.eval(ctx.parse(text, vars));
    }

    void expect(bool ok, const std::function<std::string()>& witness) {
        ++out.checks;
        if (ok) return;
        out.status = Status::Fail;
        if (out.failures.size() < 8) out.failures.push_back(witness());
    }

    std::uint32_t c(PointId y, int d) const { return ctx.space().coord(y, d); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return ctx.space().group().mul(a, b); }
    std::uint32_t xc(int d) const { return c(ctx.basepoint(), d); }
    int rel(PointId y, PointId z) const { return classify_pair(ctx.space(), y, z); }

    PointId pick(const std::vector<PointId>& v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    }

    /// Every y in xR_a at n = 4, otherwise `samples` random draws.
    void each_point(int a, const std::function<void(PointId)>& body) {
        const auto& pts = ctx.block_points(a);
        if (pts.empty()) return;
        if (exhaustive()) {
            for (PointId y : pts) body(y);
        } else {
            for (std::size_t s = 0; s < samples; ++s) body(pick(pts));
        }
    }

    /// Pairs (y, z) in xR_a x xR_b with zfilter(y, z): all of them at n = 4,
    /// otherwise one random admissible z per sampled y.
    void each_pair(int a, int b, const std::function<bool(PointId, PointId)>& zfilter,
                   const std::function<void(PointId, PointId)>& body) {
        std::vector<PointId> zs;
        each_point(a, [&](PointId y) {
            zs.clear();
            for (PointId z : ctx.block_points(b))
                if (!zfilter || zfilter(y, z)) zs.push_back(z);
            if (zs.empty()) return;
            if (exhaustive()) {
                for (PointId z : zs) body(y, z);
            } else {
                body(y, pick(zs));
            }
        });
    }

    std::string at(PointId y, PointId z) const {
        return "(" + std::to_string(y) + "," + std::to_string(z) + ")";
    }

    /// |yR_h ∩ xR_i ∩ zR_r|.
    std::size_t count3(PointId y, int h, int i, PointId z, int r) const {
        std::size_t k = 0;
        for (PointId u : ctx.block_points(i))
            if (rel(y, u) == h && rel(z, u) == r) ++k;
        return k;
    }
};

namespace {

std::string perm_name(const std::map<char, int>& b) {
    std::string s = "{";
    for (const auto& [k, v] : b) {
        if (s.size() > 1) s += ",";
        s += std::string(1, k) + "=" + std::to_string(v);
    }
    return s + "}";
}

SubspaceBasis span_of(PredicateContext& pc, const std::vector<AlgExpr>& v) {
    SubspaceBasis s(pc.ctx.N() * pc.ctx.N(), pc.ctx.modulus());
    for (const auto& e : v) s.extend(pc.ev.eval(e));
    return s;
}

std::size_t sum_rank(const SubspaceBasis& a, const SubspaceBasis& b) {
    SubspaceBasis s = a;
    for (std::size_t i = 0; i < b.rank(); ++i) s.extend(b.row(i));
    return s.rank();
}

std::size_t meet_dim(const SubspaceBasis& a, const SubspaceBasis& b) { return a.rank() + b.rank() - sum_rank(a, b); }

const char* kB6[] = {"E4A1E2A3E4", "E4A1E3A2E4", "E4A2E1A3E4", "E4A2E3A1E4", "E4A3E1A2E4", "E4A3E2A1E4"};

std::vector<AlgExpr> b6_without_special(const TerwilligerContext& ctx) {
    std::vector<AlgExpr> out;
    for (const char* t : kB6)
        if (std::string(t) != "E4A1E2A3E4") out.push_back(ctx.parse(t));
    return out;
}

void for_perms(const std::function<void(int, int, int)>& f) {
    for (const auto& b : instantiations(Quantifier::Perm3)) f(b.at('g'), b.at('h'), b.at('i'));
}

std::string gh(int g, int h, int i) { return perm_name({{'g', g}, {'h', h}, {'i', i}}); }

std::vector<PredicateEntry> build_predicates() {
    std::vector<PredicateEntry> v;
    auto add = [&](std::string id, std::string anchor, Hypothesis h, std::string q, std::function<void(PredicateContext&)> f) {
        v.push_back({std::move(id), std::move(anchor), std::move(h), std::move(q), std::move(f)});
    };

    add("IN", "Insectionnumbers", any_group(), "g,h,i in [0,4]", [](PredicateContext& pc) {
        const auto& sd = pc.ctx.scheme();
        for (int g = 0; g <= 4; ++g)
            for (int h = 0; h <= 4; ++h)
                for (int i = 0; i <= 4; ++i)
                    pc.expect(sd.p[g][h][i] == intersection_closed(g, h, i, pc.ctx.n()), [&] {
                        return "p^" + std::to_string(i) + "_" + std::to_string(g) + std::to_string(h) + " = " +
                               std::to_string(sd.p[g][h][i]);
                    });
    });

    add("TP.iii", "Tripleproducts(iii)", any_group(), "g,h,i in [0,4]", [](PredicateContext& pc) {
        const auto& sd = pc.ctx.scheme();
        for (const auto& b : instantiations(Quantifier::Triple5)) {
            const int g = b.at('g'), h = b.at('h'), i = b.at('i');
            const bool nz = !pc.mat("EgAhEi", b).is_zero();
            pc.expect(nz == (sd.p[i][h][g] != 0), [&] { return "E_g A_h E_i at " + perm_name(b); });
        }
    });

    add("TP.iv", "Tripleproducts(iv)", any_group(), "-", [](PredicateContext& pc) {
        const auto& sd = pc.ctx.scheme();
        std::size_t count = 0;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b)
                for (int c = 0; c <= 4; ++c) count += sd.p[c][b][a] != 0;
        pc.expect(pc.t0.rank() == count, [&] {
            return "rank " + std::to_string(pc.t0.rank()) + " vs " + std::to_string(count) + " nonzero triples";
        });
    });

    add("TP.v", "Tripleproducts(v)", any_group(), "-", [](PredicateContext& pc) {
        const auto& ctx = pc.ctx;
        const auto& k = ctx.scheme().k;
        const std::uint64_t p = ctx.modulus().value();
        std::vector<AlgExpr> gens;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= 4; ++b)
                if ((k[a] % p) * (k[b] % p) % p == 0)
                    gens.push_back(ctx.parse("E" + std::to_string(a) + "JE" + std::to_string(b)));
        const SubspaceBasis V = span_of(pc, gens);
        const std::size_t N = ctx.N();
        const auto words = t0_words(ctx);
        for (std::size_t r = 0; r < V.rank(); ++r) {
            const GFMatrix w = V.row_matrix(r, N, N);
            for (const auto& g : words) {
                pc.expect(V.contains(ctx.right_multiply(w, g)), [&] { return "row * " + g.to_string() + " leaves V"; });
                pc.expect(V.contains(ctx.left_multiply(g, w)), [&] { return g.to_string() + " * row leaves V"; });
            }
        }
        const auto e = nilpotency_exponent(V, N, static_cast<int>(V.rank()) + 1);
        pc.expect(e.has_value(), [] { return std::string("span is not nilpotent"); });
    });

    add("TP.vi", "Tripleproducts(vi)", any_group(), "g,h,i,r,s in [0,4]", [](PredicateContext& pc) {
        std::vector<std::array<int, 5>> tuples;
        if (pc.exhaustive()) {
            for (int t = 0; t < 3125; ++t) tuples.push_back({t / 625, t / 125 % 5, t / 25 % 5, t / 5 % 5, t % 5});
        } else {
            std::uniform_int_distribution<int> d(0, 4);
            for (int t = 0; t < 32; ++t) tuples.push_back({d(pc.rng), d(pc.rng), d(pc.rng), d(pc.rng), d(pc.rng)});
        }
        const std::uint64_t p = pc.ctx.modulus().value();
        const std::size_t N = pc.ctx.N();
        std::uniform_int_distribution<PointId> any(0, static_cast<PointId>(N - 1));
        const std::size_t per = pc.exhaustive() ? 0 : std::max<std::size_t>(8, pc.samples / tuples.size());
        for (const auto& t : tuples) {
            const std::map<char, int> b{{'g', t[0]}, {'h', t[1]}, {'i', t[2]}, {'r', t[3]}, {'s', t[4]}};
            const GFMatrix m = pc.mat("EgAhEiArEs", b);
            auto check = [&](PointId y, PointId z) {
                const bool inside = pc.ctx.block(y) == t[0] && pc.ctx.block(z) == t[4];
                const std::uint64_t want = inside ? pc.count3(y, t[1], t[2], z, t[3]) % p : 0;
                pc.expect(m.at(y, z) == want, [&] { return perm_name(b) + " entry " + pc.at(y, z); });
            };
            if (pc.exhaustive()) {
                for (PointId y = 0; y < N; ++y)
                    for (PointId z = 0; z < N; ++z) check(y, z);
            } else {
                for (std::size_t s = 0; s < per; ++s) {
                    const auto& Y = pc.ctx.block_points(t[0]);
                    const auto& Z = pc.ctx.block_points(t[4]);
                    check(pc.pick(Y), pc.pick(Z));
                    check(any(pc.rng), any(pc.rng));
                }
            }
        }
    });

    add("L1.2", "Lemma1.2", any_group(), "-", [](PredicateContext& pc) {
        const auto c = elementary_abelian_2_criteria(pc.ctx.space().group());
        pc.expect(c.group_criterion == c.triple_criterion, [] { return std::string("criteria disagree"); });
    });

    add("L1.3", "Lemma1.3", ea2(), "{g,h,i}=[1,3]; y in xR_g, z in xR_4 cap (yR_h cup yR_i)", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const GFMatrix m = pc.mat("EgAhEiAgE4", {{'g', g}, {'h', h}, {'i', i}});
            pc.each_pair(
                g, 4,
                [&](PointId y, PointId z) {
                    const int r = pc.rel(y, z);
                    return r == h || r == i;
                },
                [&](PointId y, PointId z) { pc.expect(m.at(y, z) == 0, [&] { return gh(g, h, i) + pc.at(y, z); }); });
        });
    });

    add("L1.4", "Lemma1.4", ea2_n_gt_4(), "{g,h,i}=[1,3]", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const std::map<char, int> b{{'g', g}, {'h', h}, {'i', i}};
            for (const char* t : {"EgAhEiAgE4", "E4AgEiAhEg"})
                pc.expect(!pc.t0.contains(pc.mat(t, b)), [&] { return bind_vars(t, b) + " lies in T0"; });
        });
    });

    add("L1.6", "Lemma1.6", any_group(), "{g,h,i}=[1,3]; y, z in xR_4", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
            pc.each_pair(4, 4, [&](PointId y, PointId z) { return m.at(y, z) != 0; },
                         [&](PointId y, PointId z) {
                             pc.expect(pc.count3(y, g, h, z, i) == 1 && m.at(y, z) == 1,
                                       [&] { return gh(g, h, i) + pc.at(y, z); });
                         });
        });
    });

    add("L1.7", "Lemma1.7", ea2(), "{g,h,i}=[1,3]; y in xR_4, z in xR_4 cap yR_4", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
            pc.each_pair(
                4, 4, [&](PointId y, PointId z) { return pc.rel(y, z) == 4; },
                [&](PointId y, PointId z) {
                    const auto xh = pc.xc(h), yh = pc.c(y, h), w = pc.mul(pc.xc(i), pc.c(y, g));
                    pc.expect(w != xh && w != yh && xh != yh, [&] { return gh(g, h, i) + " y=" + std::to_string(y); });
                    if (m.at(y, z) != 0) {
                        const auto zh = pc.c(z, h);
                        pc.expect(pc.c(z, i) == pc.mul(xh, pc.c(y, g)) && zh != xh && zh != yh && zh != w,
                                  [&] { return gh(g, h, i) + pc.at(y, z); });
                    }
                });
        });
    });

    add("L1.8", "Lemma1.8", ea2(), "{g,h,i}=[1,3]; y in xR_4, z_i = x_h y_g, z_h outside {x_h, y_h, x_i y_g}",
        [](PredicateContext& pc) {
            const std::uint32_t n = pc.ctx.n();
            for_perms([&](int g, int h, int i) {
                const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
                pc.each_point(4, [&](PointId y) {
                    const auto xh = pc.xc(h), yh = pc.c(y, h), w = pc.mul(pc.xc(i), pc.c(y, g));
                    std::vector<std::uint32_t> cs;
                    for (std::uint32_t c = 0; c < n; ++c)
                        if (c != xh && c != yh && c != w) cs.push_back(c);
                    if (!pc.exhaustive() && !cs.empty())
                        cs = {cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(pc.rng)]};
                    for (auto c : cs) {
                        const PointId z = pc.ctx.space().point_with(i, pc.mul(xh, pc.c(y, g)), h, c);
                        pc.expect(pc.ctx.block(z) == 4 && pc.rel(y, z) == 4 && m.at(y, z) == 1,
                                  [&] { return gh(g, h, i) + pc.at(y, z); });
                    }
                });
            });
        });

    add("L1.9", "Lemma1.9", ea2(), "{g,h,i}=[1,3]", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const std::map<char, int> b{{'g', g}, {'h', h}, {'i', i}};
            pc.expect(!pc.t0.contains(pc.mat("E4AgEhAiE4", b)), [&] { return gh(g, h, i) + " lies in T0"; });
        });
    });

    add("L1.10", "Lemma1.10", ea2(), "{g,h,i}=[1,3]; y in xR_4, z in xR_4 cap yR_h", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
            pc.each_pair(
                4, 4, [&](PointId y, PointId z) { return pc.rel(y, z) == h && m.at(y, z) != 0; },
                [&](PointId y, PointId z) {
                    const auto xh = pc.xc(h);
                    pc.expect(pc.c(z, g) == pc.mul(xh, pc.c(y, i)) && pc.c(z, h) == pc.c(y, h) &&
                                  pc.c(z, i) == pc.mul(xh, pc.c(y, g)),
                              [&] { return gh(g, h, i) + pc.at(y, z); });
                });
        });
    });

    add("L1.11", "Lemma1.11", ea2(), "{g,h,i}=[1,3]; y in xR_4, z_g = x_h y_i, z_h = y_h, z_i = x_h y_g",
        [](PredicateContext& pc) {
            for_perms([&](int g, int h, int i) {
                const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
                pc.each_point(4, [&](PointId y) {
                    const auto xh = pc.xc(h);
                    const PointId z = pc.ctx.space().point_with(g, pc.mul(xh, pc.c(y, i)), h, pc.c(y, h));
                    pc.expect(pc.c(z, i) == pc.mul(xh, pc.c(y, g)) && pc.ctx.block(z) == 4 && pc.rel(y, z) == h &&
                                  m.at(y, z) == 1,
                              [&] { return gh(g, h, i) + pc.at(y, z); });
                });
            });
        });

    add("L1.12", "Lemma1.12", ea2(), "{g,h,i}=[1,3]; y, z in xR_4, z in yR_0 cup yR_g cup yR_i", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const GFMatrix m = pc.mat("E4AgEhAiE4", {{'g', g}, {'h', h}, {'i', i}});
            pc.each_pair(
                4, 4,
                [&](PointId y, PointId z) {
                    const int r = pc.rel(y, z);
                    return r == 0 || r == g || r == i;
                },
                [&](PointId y, PointId z) { pc.expect(m.at(y, z) == 0, [&] { return gh(g, h, i) + pc.at(y, z); }); });
        });
    });

    // Both-nonzero iff a coordinate condition; samples random z and the z the condition constructs.
    auto iff_check = [](PredicateContext& pc, const char* other, const std::function<std::array<std::uint32_t, 3>(
                                                                      int, int, int, PointId)>& want) {
        for_perms([&](int g, int h, int i) {
            const std::map<char, int> b{{'g', g}, {'h', h}, {'i', i}};
            const GFMatrix m1 = pc.mat("E4AgEhAiE4", b);
            const GFMatrix m2 = pc.mat(other, b);
            auto check = [&](PointId y, PointId z) {
                const auto w = want(g, h, i, y);
                const bool cond = pc.c(z, g) == w[0] && pc.c(z, h) == w[1] && pc.c(z, i) == w[2];
                const bool both = m1.at(y, z) != 0 && m2.at(y, z) != 0;
                pc.expect(both == cond, [&] { return gh(g, h, i) + pc.at(y, z); });
            };
            pc.each_pair(4, 4, {}, check);
            pc.each_point(4, [&](PointId y) {
                const auto w = want(g, h, i, y);
                const PointId z = pc.ctx.space().point_with(g, w[0], h, w[1]);
                if (pc.ctx.block(z) == 4) check(y, z);
            });
        });
    };

    add("L1.13", "Lemma1.13", ea2(), "{g,h,i}=[1,3]; y, z in xR_4", [iff_check](PredicateContext& pc) {
        iff_check(pc, "E4AiEhAgE4", [&](int g, int h, int i, PointId y) {
            const auto xh = pc.xc(h);
            return std::array<std::uint32_t, 3>{pc.mul(xh, pc.c(y, i)), pc.c(y, h), pc.mul(xh, pc.c(y, g))};
        });
    });

    add("L1.14", "Lemma1.14", ea2(), "{g,h,i}=[1,3]; y, z in xR_4", [](PredicateContext& pc) {
        for_perms([&](int g, int h, int i) {
            const std::map<char, int> b{{'g', g}, {'h', h}, {'i', i}};
            const GFMatrix m = pc.mat("E4AgEhAiE4", b);
            const GFMatrix a = pc.mat("E4AhEgAiE4", b);
            const GFMatrix c = pc.mat("E4AgEiAhE4", b);
            pc.each_pair(4, 4, [&](PointId y, PointId z) { return m.at(y, z) != 0; },
                         [&](PointId y, PointId z) {
                             pc.expect(a.at(y, z) == 0 && c.at(y, z) == 0, [&] { return gh(g, h, i) + pc.at(y, z); });
                         });
        });
    });

    add("L1.15", "Lemma1.15", ea2(), "{g,h,i}=[1,3]; y, z in xR_4", [iff_check](PredicateContext& pc) {
        auto want = [&](int g, int h, int i, PointId y) {
            return std::array<std::uint32_t, 3>{pc.mul(pc.xc(i), pc.c(y, h)), pc.mul(pc.xc(g), pc.c(y, i)),
                                                pc.mul(pc.xc(h), pc.c(y, g))};
        };
        iff_check(pc, "E4AiEgAhE4", want);
        iff_check(pc, "E4AhEiAgE4", want);
    });

    add("L1.16", "Lemma1.16", ea2_n_gt_4(), "-", [](PredicateContext& pc) {
        const SubspaceBasis b6 = span_of(pc, [&] {
            std::vector<AlgExpr> v;
            for (const char* t : kB6) v.push_back(pc.ctx.parse(t));
            return v;
        }());
        const std::size_t d = meet_dim(b6, pc.t0);
        pc.expect(b6.rank() == 6, [] { return std::string("B6 is dependent"); });
        pc.expect(d <= 1 && (d == 0 || b6.contains(pc.mat("E4A4E4"))),
                  [&] { return "span(B6) meets T0 in dimension " + std::to_string(d); });
    });

    add("L1.17", "Lemma1.17", ea2_n_gt_4(), "-", [](PredicateContext& pc) {
        const SubspaceBasis rest = span_of(pc, b6_without_special(pc.ctx));
        pc.expect(rest.rank() == 5 && meet_dim(rest, pc.t0) == 0,
                  [] { return std::string("combination without E4A1E2A3E4 lies in T0"); });
        if (pc.ctx.n() > 8) {
            SubspaceBasis all = rest;
            all.extend(pc.mat("E4A1E2A3E4"));
            pc.expect(all.rank() == 6 && meet_dim(all, pc.t0) == 0,
                      [] { return std::string("combination of B6 lies in T0"); });
        }
    });

    add("L1.18", "Lemma1.18",
        {true, [](std::uint64_t p, std::uint64_t n) { return p != 2 && n > 4; }, "G elementary abelian 2, p!=2, n>4"},
        "-", [](PredicateContext& pc) {
            std::vector<AlgExpr> v;
            for (const char* t : kB6) v.push_back(pc.ctx.parse(t));
            const SubspaceBasis b6 = span_of(pc, v);
            pc.expect(b6.rank() == 6 && meet_dim(b6, pc.t0) == 0,
                      [] { return std::string("combination of B6 lies in T0"); });
        });

    add("C1.22", "Corollary1.22", ea2(), "-", [](PredicateContext& pc) {
        const auto B = paper_basis(pc.ctx);
        const SubspaceBasis sb = span_of(pc, B);
        std::vector<AlgExpr> t1 = sets::B1(pc.ctx);
        for (auto* f : {&sets::B2, &sets::B5, &sets::B6})
            for (auto& e : (*f)(pc.ctx)) t1.push_back(std::move(e));
        pc.expect(sb.rank() == B.size(), [&] { return "rank " + std::to_string(sb.rank()) + " of " + std::to_string(B.size()); });
        pc.expect(sb.same_span(span_of(pc, t1)), [] { return std::string("B does not span T1"); });
    });

    add("C2.16", "Corollary2.16", ea2(), "M in B1 cup B2, N in B1 cup B2 cup B5 cup B6", [](PredicateContext& pc) {
        std::vector<AlgExpr> left = sets::B1(pc.ctx);
        for (auto& e : sets::B2(pc.ctx)) left.push_back(std::move(e));
        std::vector<AlgExpr> right = left;
        for (auto* f : {&sets::B5, &sets::B6})
            for (auto& e : (*f)(pc.ctx)) right.push_back(std::move(e));
        const SubspaceBasis t1 = span_of(pc, right);
        for (const auto& m : left) {
            const GFMatrix mm = pc.ev.eval(m);
            for (const auto& r : right)
                pc.expect(t1.contains(pc.ctx.right_multiply(mm, r)),
                          [&] { return m.to_string() + " * " + r.to_string() + " leaves T1"; });
        }
    });

    add("C2.17", "Corollary2.17", ea2(), "-", [](PredicateContext& pc) {
        const auto corner = corner_paper_basis(pc.ctx);
        const SubspaceBasis cb = span_of(pc, corner);
        SubspaceBasis proj(pc.ctx.N() * pc.ctx.N(), pc.ctx.modulus());
        for (const auto& b : paper_basis(pc.ctx)) proj.extend(sandwich(pc.ctx.E(4), pc.ev.eval(b)));
        pc.expect(cb.rank() == corner.size(), [] { return std::string("corner basis is dependent"); });
        pc.expect(cb.same_span(proj), [] { return std::string("corner basis does not span E4 T E4"); });
    });
    return v;
}

}  // namespace

const std::vector<PredicateEntry>& predicate_registry() {
    static const std::vector<PredicateEntry> v = build_predicates();
    return v;
}

// --------------------------------------------------------------- runner

namespace {

std::string first_difference(const GFMatrix& a, const GFMatrix& b) {
    for (std::size_t y = 0; y < a.rows(); ++y)
        for (std::size_t z = 0; z < a.cols(); ++z)
            if (a.at(y, z) != b.at(y, z))
                return "(" + std::to_string(y) + "," + std::to_string(z) + "): " + std::to_string(a.at(y, z)) +
                       " vs " + std::to_string(b.at(y, z));
    return "equal";
}

EntryResult run_identity(const TerwilligerContext& ctx, const IdentityEntry& e, const RunOptions& opt, WordEvaluator& ev) {
    EntryResult r{e.id, e.anchor, "identity", Status::Skipped, 0, 0, {}};
    if (!e.hyp.holds(ctx)) return r;
    r.status = Status::Pass;
    for (const auto& b : instantiations(e.quant)) {
        if (e.instance_filter && !e.instance_filter(ctx.scheme(), b)) continue;
        ++r.instances;
        ++r.checks;
        AlgExpr lhs = ctx.parse(e.lhs, b);
        if (opt.transposed) lhs = lhs.transposed();
        const GFMatrix L = ev.eval(lhs);
        bool ok;
        std::string why;
        if (e.rel == Relation::NonZero) {
            ok = !L.is_zero();
            why = "is zero";
        } else {
            AlgExpr rhs = ctx.parse(e.rhs, b);
            if (opt.transposed) rhs = rhs.transposed();
            const GFMatrix R = ev.eval(rhs);
            const GFMatrix lhs_m = e.rel == Relation::TransposeEqual ? transpose(L) : L;
            ok = lhs_m == R;
            if (!ok) why = first_difference(lhs_m, R);
        }
        if (!ok) {
            r.status = Status::Fail;
            if (r.failures.size() < 8) r.failures.push_back(perm_name(b) + " " + why);
        }
    }
    if (r.instances == 0) r.status = Status::Skipped;
    return r;
}

bool selected(const std::string& id, const RunOptions& opt) {
    return opt.filter.empty() || id.compare(0, opt.filter.size(), opt.filter) == 0;
}

template <class Job>
void run_parallel(std::size_t count, unsigned threads, Job job) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex m;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, count); ++t) {
        pool.emplace_back([&] {
            try {
                for (std::size_t k; (k = next++) < count;) job(k);
            } catch (...) {
                std::lock_guard lock(m);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

Report make_report(const TerwilligerContext& ctx, std::string suite) {
    Report r;
    r.p = ctx.modulus().value();
    r.n = ctx.n();
    r.basepoint = ctx.basepoint();
    r.suite = std::move(suite);
    return r;
}

void sort_entries(Report& r) {
    std::stable_sort(r.entries.begin(), r.entries.end(),
                     [](const EntryResult& a, const EntryResult& b) { return id_less(a.id, b.id); });
}

constexpr std::size_t kEvaluatorBudget = std::size_t{64} << 20;

}  // namespace

EntryResult run_entry(const TerwilligerContext& ctx, const IdentityEntry& e, const RunOptions& opt) {
    WordEvaluator ev(ctx, kEvaluatorBudget);
    return run_identity(ctx, e, opt, ev);
}

Report run_identities(const TerwilligerContext& ctx, const RunOptions& opt) {
    Report rep = make_report(ctx, "identities");
    const auto& reg = identity_registry();
    std::vector<const IdentityEntry*> todo;
    for (const auto& e : reg)
        if (selected(e.id, opt)) todo.push_back(&e);
    rep.entries.resize(todo.size());
    const unsigned threads = opt.threads ? opt.threads : worker_count();
    // One evaluator per thread would share more prefixes; per entry keeps results independent of scheduling.
    run_parallel(todo.size(), threads, [&](std::size_t k) {
        WordEvaluator ev(ctx, kEvaluatorBudget);
        rep.entries[k] = run_identity(ctx, *todo[k], opt, ev);
    });
    sort_entries(rep);
    return rep;
}

Report run_predicates(const TerwilligerContext& ctx, const RunOptions& opt) {
    Report rep = make_report(ctx, "predicates");
    const auto& reg = predicate_registry();
    std::vector<const PredicateEntry*> todo;
    for (const auto& e : reg)
        if (selected(e.id, opt)) todo.push_back(&e);
    rep.entries.resize(todo.size());
    std::optional<SubspaceBasis> t0;
    try {
        t0 = t0_basis(ctx);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::RankDeficiency) throw;
        // TP.iv reports the deficiency; the others see the partial span.
        t0.emplace(ctx.N() * ctx.N(), ctx.modulus());
        for (const auto& w : t0_words(ctx)) t0->extend(ctx.evaluate(w));
    }
    const unsigned threads = opt.threads ? opt.threads : worker_count();
    run_parallel(todo.size(), threads, [&](std::size_t k) {
        const PredicateEntry& e = *todo[k];
        EntryResult r{e.id, e.anchor, "predicate", Status::Skipped, 0, 0, {}};
        if (e.hyp.holds(ctx)) {
            r.status = Status::Pass;
            r.instances = 1;
            // Seed depends on the entry only, so results do not depend on scheduling.
            std::mt19937_64 rng(opt.seed ^ std::hash<std::string>{}(e.id));
            PredicateContext pc{ctx, *t0, WordEvaluator(ctx, kEvaluatorBudget), std::move(rng), opt.samples, r};
            e.check(pc);
        }
        rep.entries[k] = std::move(r);
    });
    sort_entries(rep);
    return rep;
}

Report run_all(const TerwilligerContext& ctx, const RunOptions& opt) {
    Report a = run_identities(ctx, opt);
    Report b = run_predicates(ctx, opt);
    a.suite = "all";
    for (auto& e : b.entries) a.entries.push_back(std::move(e));
    sort_entries(a);
    return a;
}

std::size_t Report::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const EntryResult& e) { return e.status == s; }));
}

nlohmann::json Report::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json j{{"id", e.id},
                         {"anchor", e.anchor},
                         {"kind", e.kind},
                         {"status", to_string(e.status)},
                         {"instances", e.instances},
                         {"checks", e.checks}};
        if (!e.failures.empty()) j["failures"] = e.failures;
        list.push_back(std::move(j));
    }
    return {{"p", p},
            {"n", n},
            {"basepoint", basepoint},
            {"suite", suite},
            {"entries", list},
            {"passed", count(Status::Pass)},
            {"failed", count(Status::Fail)},
            {"skipped", count(Status::Skipped)},
            {"pass", pass()}};
}

// ------------------------------------------------------------- manifest

std::vector<ManifestEntry> registry_manifest() {
    std::vector<ManifestEntry> out;
    for (const auto& e : identity_registry())
        out.push_back({e.id, "identity", e.hyp.text, to_string(e.quant), e.anchor});
    for (const auto& e : predicate_registry()) out.push_back({e.id, "predicate", e.hyp.text, e.quantifier, e.anchor});
    std::stable_sort(out.begin(), out.end(), [](const ManifestEntry& a, const ManifestEntry& b) { return id_less(a.id, b.id); });
    return out;
}

std::string manifest_text() {
    std::string s;
    for (const auto& m : registry_manifest())
        s += m.id + "\t" + m.kind + "\t" + m.hypothesis + "\t" + m.quantifier + "\t" + m.anchor + "\n";
    return s;
}

}  // namespace tforge::verify
