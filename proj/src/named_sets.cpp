#include "tforge/named_sets.hpp"

#include <algorithm>

namespace tforge {

void require_elementary_abelian(const TerwilligerContext& ctx, const char* stage) {
    if (!ctx.elementary_abelian())
        throw Error(ErrorCode::Unsupported, stage, "needs an elementary abelian 2-group, got order " + std::to_string(ctx.n()));
}

namespace sets {

namespace {

std::vector<AlgExpr> parse_all(const TerwilligerContext& ctx, std::initializer_list<const char*> texts) {
    require_elementary_abelian(ctx, "named_sets");
    std::vector<AlgExpr> out;
    out.reserve(texts.size());
    for (const char* t : texts) out.push_back(ctx.parse(t));
    return out;
}

std::vector<AlgExpr> with_transposes(std::vector<AlgExpr> v) {
    const std::size_t k = v.size();
    for (std::size_t i = 0; i < k; ++i) v.push_back(v[i].transposed());
    return v;
}

AlgExpr word3(const TerwilligerContext& ctx, int a, int b, int c) {
    return AlgExpr::of_word({Atom::E(a), Atom::A(b), Atom::E(c)}, ctx.modulus());
}

AlgExpr ejE(const TerwilligerContext& ctx, int a, int b) {
    return AlgExpr::of_word({Atom::E(a), Atom::Jm(), Atom::E(b)}, ctx.modulus());
}

}  // namespace

std::vector<AlgExpr> B1(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "named_sets");
    std::vector<AlgExpr> out;
    for (int a = 1; a <= 4; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 1; c <= 4; ++c)
                if (b != std::max(a, c) && triple_nonzero(ctx.scheme(), a, b, c)) out.push_back(word3(ctx, a, b, c));
    return out;
}

std::vector<AlgExpr> B2(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "named_sets");
    std::vector<AlgExpr> out;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) out.push_back(ejE(ctx, a, b));
    return out;
}

std::vector<AlgExpr> B3(const TerwilligerContext& ctx) {
    return parse_all(ctx, {"E4A0E4", "E4A1E4", "E4A2E4", "E4A3E4", "E4JE4"});
}

std::vector<AlgExpr> B4(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "named_sets");
    const auto& k = ctx.scheme().k;
    const std::uint64_t p = ctx.modulus().value();
    std::vector<AlgExpr> out;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            if ((k[a] % p) * (k[b] % p) % p == 0) out.push_back(ejE(ctx, a, b));
    return out;
}

std::vector<AlgExpr> B5(const TerwilligerContext& ctx) {
    return parse_all(ctx, {"E1A2E3A1E4", "E2A1E3A2E4", "E3A1E2A3E4", "E4A1E3A2E1", "E4A2E3A1E2", "E4A3E2A1E3"});
}

std::vector<AlgExpr> B6(const TerwilligerContext& ctx) {
    return parse_all(ctx, {"E4A1E2A3E4", "E4A1E3A2E4", "E4A2E1A3E4", "E4A2E3A1E4", "E4A3E1A2E4", "E4A3E2A1E4"});
}

std::vector<AlgExpr> C1(const TerwilligerContext& ctx) {
    return parse_all(ctx, {
                              "E4JE4",
                              "E4A1E4 - E4A2E4",
                              "E4A1E4 - E4A3E4",
                              "E4A1E2A3E4 - E4 - E4A1E4",
                              "E4A1E2A3E4 - E4A1E3A2E4",
                              "E4A1E2A3E4 - E4A2E1A3E4",
                              "E4A1E2A3E4 - E4A2E3A1E4",
                              "E4A1E2A3E4 - E4A3E1A2E4",
                              "E4A1E2A3E4 - E4A3E2A1E4",
                          });
}

std::vector<AlgExpr> D1(const TerwilligerContext& ctx) {
    return with_transposes(parse_all(ctx, {
                                              "E1A2E4 - E1A3E4",
                                              "E2A1E4 - E2A3E4",
                                              "E3A1E4 - E3A2E4",
                                              "E1A2E3A1E4 - E1A3E4",
                                              "E2A1E3A2E4 - E2A3E4",
                                              "E3A1E2A3E4 - E3A2E4",
                                          }));
}

std::vector<AlgExpr> H1(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "named_sets");
    std::vector<AlgExpr> out;
    for (int a = 1; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c)
                if (b != std::max(a, c) && triple_nonzero(ctx.scheme(), a, b, c)) out.push_back(word3(ctx, a, b, c));
    for (auto& e : parse_all(ctx, {"E1A2E4", "E2A1E4", "E3A1E4", "-E4A1E2", "-E4A1E3", "-E4A2E1", "-E4A1E2A3E4"}))
        out.push_back(std::move(e));
    return out;
}

std::vector<AlgExpr> K1(const TerwilligerContext& ctx) {
    auto out = parse_all(ctx, {
                                  "E4A1E2A3E4 - E4 - E4A1E4",
                                  "E1A2E4 - E1A3E4",
                                  "E2A1E4 - E2A3E4",
                                  "E3A1E4 - E3A2E4",
                                  "E4A1E2 - E4A3E2",
                                  "E4A1E3 - E4A2E3",
                                  "E4A1E4 - E4A2E4",
                                  "E4A1E4 - E4A3E4",
                                  "E4A2E1 - E4A3E1",
                              });
    for (auto& e : B4(ctx)) out.push_back(std::move(e));
    return out;
}

std::vector<AlgExpr> C2(const TerwilligerContext& ctx) {
    if (ctx.modulus().value() != 2) return parse_all(ctx, {"E4JE4"});
    return parse_all(ctx, {
                              "E4JE4",
                              "E4 + E4A1E4 + E4A2E3A1E4 + E4A3E2A1E4",
                              "E4 + E4A2E4 + E4A1E3A2E4 + E4A3E1A2E4",
                              "E4 + E4A3E4 + E4A1E2A3E4 + E4A2E1A3E4",
                              "E4A1E2A3E4 + E4A2E1A3E4 + E4A3E1A2E4 + E4A3E2A1E4",
                              "E4A2E3A1E4 + E4A3E2A1E4 + E4A1E2A3E4 + E4A1E3A2E4",
                          });
}

std::vector<AlgExpr> D2(const TerwilligerContext& ctx) {
    return with_transposes(parse_all(ctx, {
                                              "E1A2E4 + E1A3E4 + E1A2E3A1E4",
                                              "E2A1E4 + E2A3E4 + E2A1E3A2E4",
                                              "E3A1E4 + E3A2E4 + E3A1E2A3E4",
                                          }));
}

std::vector<AlgExpr> C3(const TerwilligerContext& ctx) {
    return parse_all(ctx, {
                              "E4JE4 - E4 - E4A1E4 - E4A2E3A1E4 - E4A3E2A1E4",
                              "E4JE4 - E4 - E4A2E4 - E4A1E3A2E4 - E4A3E1A2E4",
                              "E4JE4 - E4 - E4A3E4 - E4A1E2A3E4 - E4A2E1A3E4",
                              "E4A1E2A3E4 + E4A2E1A3E4 - E4A3E1A2E4 - E4A3E2A1E4",
                              "E4A2E3A1E4 + E4A3E2A1E4 - E4A1E2A3E4 - E4A1E3A2E4",
                          });
}

std::vector<AlgExpr> D3(const TerwilligerContext& ctx) {
    return with_transposes(parse_all(ctx, {
                                              "E1JE4 - E1A2E4 - E1A3E4 - E1A2E3A1E4",
                                              "E2JE4 - E2A1E4 - E2A3E4 - E2A1E3A2E4",
                                              "E3JE4 - E3A1E4 - E3A2E4 - E3A1E2A3E4",
                                          }));
}

std::vector<AlgExpr> lemma38_list(const TerwilligerContext& ctx) {
    std::vector<AlgExpr> out;
    for (auto* part : {&B4, &C1, &D1, &H1})
        for (auto& e : (*part)(ctx)) out.push_back(std::move(e));
    out.push_back(ctx.parse("E0"));
    out.push_back(ctx.parse("E4 + E4A1E2A3E4"));
    return out;
}

std::vector<AlgExpr> lemma39_list(const TerwilligerContext& ctx) {
    std::vector<AlgExpr> out = K1(ctx);
    for (auto& e : H1(ctx)) out.push_back(std::move(e));
    out.push_back(ctx.parse("E0"));
    out.push_back(ctx.parse("E4 + E4A1E2A3E4"));
    return out;
}

std::vector<AlgExpr> by_name(const TerwilligerContext& ctx, const std::string& name) {
    using Getter = std::vector<AlgExpr> (*)(const TerwilligerContext&);
    static const std::pair<const char*, Getter> table[] = {
        {"B1", &B1}, {"B2", &B2}, {"B3", &B3}, {"B4", &B4}, {"B5", &B5}, {"B6", &B6}, {"C1", &C1},
        {"D1", &D1}, {"H1", &H1}, {"K1", &K1}, {"C2", &C2}, {"D2", &D2}, {"C3", &C3}, {"D3", &D3},
    };
    for (const auto& [key, fn] : table)
        if (name == key) return fn(ctx);
    throw Error(ErrorCode::Parse, "named_sets", "unknown set '" + name + "'");
}

}  // namespace sets

std::vector<AlgExpr> distinct(const std::vector<AlgExpr>& v) {
    std::vector<AlgExpr> out;
    for (const auto& e : v)
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    return out;
}

std::vector<AlgExpr> paper_basis(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "paper_basis");
    std::vector<AlgExpr> out = sets::B1(ctx);
    for (auto& e : sets::B2(ctx)) out.push_back(std::move(e));
    const AlgExpr special = ctx.parse("E4A1E2A3E4");
    if (ctx.n() == 4) {
        out.push_back(special);
        return out;
    }
    for (auto& e : sets::B5(ctx)) out.push_back(std::move(e));
    for (auto& e : sets::B6(ctx))
        if (!(ctx.n() == 8 && ctx.modulus().value() == 2 && e == special)) out.push_back(std::move(e));
    return out;
}

std::vector<AlgExpr> corner_paper_basis(const TerwilligerContext& ctx) {
    require_elementary_abelian(ctx, "corner_paper_basis");
    std::vector<AlgExpr> out = sets::B3(ctx);
    const AlgExpr special = ctx.parse("E4A1E2A3E4");
    if (ctx.n() == 4) {
        out.push_back(special);
        return out;
    }
    for (auto& e : sets::B6(ctx))
        if (!(ctx.n() == 8 && ctx.modulus().value() == 2 && e == special)) out.push_back(std::move(e));
    return out;
}

}  // namespace tforge
