#include "doctest.h"
#include "tforge/structure.hpp"

using namespace tforge;

namespace {

std::shared_ptr<const TerwilligerContext> ea2(std::uint64_t p, std::uint64_t n) {
    int m = 0;
    while ((1u << m) < n) ++m;
    return TerwilligerContext::build(GroupSpec::elementary_abelian_2(m), p);
}

Candidate span_of(const TerwilligerContext& ctx, const std::string& name, const std::vector<std::string>& texts) {
    Candidate c{name, {}, SubspaceBasis(ctx.N() * ctx.N(), ctx.modulus())};
    for (const auto& t : texts) {
        c.spanning.push_back(ctx.parse(t));
        c.basis.extend(ctx.evaluate(c.spanning.back()));
    }
    return c;
}

}  // namespace

TEST_CASE("case classifier") {
    CHECK(classify_case(5, 16).kind == CaseKind::CaseI);
    CHECK(classify_case(2, 8).kind == CaseKind::CaseP2);
    CHECK(classify_case(2, 64).kind == CaseKind::CaseP2);
    CHECK(classify_case(7, 32).kind == CaseKind::CaseIII);
    CHECK(classify_case(3, 8).kind == CaseKind::CaseII);
    CHECK(classify_case(5, 8).kind == CaseKind::CaseIV);
    for (std::uint64_t n = 4; n <= 1024; n *= 2) {
        const auto k = classify_case(3, n).kind;
        CHECK((k == CaseKind::CaseI || k == CaseKind::CaseII));
    }
    CHECK_THROWS_AS(classify_case(4, 8), Error);
    CHECK_THROWS_AS(classify_case(5, 12), Error);
    CHECK_THROWS_AS(classify_case(5, 2), Error);
}

TEST_CASE("semisimple closed form") {
    CHECK(semisimple_closed_form(5, 4));
    CHECK_FALSE(semisimple_closed_form(2, 8));
    CHECK_FALSE(semisimple_closed_form(7, 32));
    CHECK(semisimple_closed_form(5, 8));
    for (std::uint64_t n = 4; n <= 256; n *= 2) {
        CHECK_FALSE(semisimple_closed_form(2, n));
        CHECK_FALSE(semisimple_closed_form(3, n));
    }
}

TEST_CASE("radical candidates that vanish") {
    auto c54 = ea2(5, 4);
    CHECK(radical_candidate(*c54, classify_case(5, 4)).basis.rank() == 0);
    auto c58 = ea2(5, 8);
    CHECK(radical_candidate(*c58, classify_case(5, 8)).basis.rank() == 0);
}

TEST_CASE("ideal checks") {
    auto ctx = ea2(3, 8);
    auto alg = closure_generate(ctx);
    SubspaceBasis zero(ctx->N() * ctx->N(), ctx->modulus());
    CHECK(is_two_sided_ideal(alg, zero).ok);
    CHECK(is_two_sided_ideal(alg, alg.span).ok);
    auto e4je4 = span_of(*ctx, "E4JE4", {"E4JE4"});
    CHECK(is_two_sided_ideal(alg, e4je4.basis).ok);
    auto not_ideal = span_of(*ctx, "E4A1E4", {"E4A1E4"});
    auto r = is_two_sided_ideal(alg, not_ideal.basis);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.witness.empty());
}

TEST_CASE("nilpotency exponents") {
    auto c28 = ea2(2, 8);
    auto v = span_of(*c28, "E4JE4", {"E4JE4"});
    CHECK(nilpotency_exponent(v.basis, c28->N(), 4) == 2);
    CHECK(nilpotency_exponent(*c28, v, 4) == 2);
    SubspaceBasis zero(c28->N() * c28->N(), c28->modulus());
    CHECK(nilpotency_exponent(zero, c28->N(), 4) == 1);
    auto idem = span_of(*c28, "E4", {"E4"});
    CHECK_FALSE(nilpotency_exponent(idem.basis, c28->N(), 5).has_value());

    // U ideals of the corner algebras: exponent at most 3
    for (auto [p, n] : {std::pair{5u, 16u}, {2u, 8u}, {3u, 8u}, {7u, 16u}}) {
        auto ctx = ea2(p, n);
        auto u = corner_radical_candidate(*ctx, classify_case(p, n), 4);
        auto e = nilpotency_exponent(*ctx, u, 4);
        REQUIRE(e.has_value());
        CHECK(*e <= 3);
    }
}

TEST_CASE("quotient structure") {
    auto ctx = ea2(5, 16);
    auto alg = closure_generate(ctx);
    auto v1 = radical_candidate(*ctx, classify_case(5, 16));
    auto q = quotient_structure(alg, v1.basis);
    CHECK(q.dim == 18);
    SubspaceBasis zero(ctx->N() * ctx->N(), ctx->modulus());
    CHECK(quotient_structure(alg, alg.span).dim == 0);

    auto small = ea2(3, 4);
    auto a4 = closure_generate(small);
    SubspaceBasis none(small->N() * small->N(), small->modulus());
    auto full = quotient_structure(a4, none);
    CHECK(full.dim == 51);
    // associativity of the structure constants
    const auto p = small->modulus();
    auto mul = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
        std::vector<Scalar> out(full.dim, 0);
        for (std::size_t i = 0; i < full.dim; ++i)
            for (std::size_t j = 0; j < full.dim; ++j) {
                const Scalar c = p.mul(x[i], y[j]);
                if (!c) continue;
                for (std::size_t k = 0; k < full.dim; ++k) out[k] = p.add(out[k], p.mul(c, full.c[i][j][k]));
            }
        return out;
    };
    for (std::size_t i = 0; i < 51; i += 10)
        for (std::size_t j = 0; j < 51; j += 9)
            for (std::size_t k = 0; k < 51; k += 13) {
                std::vector<Scalar> a(51, 0), b(51, 0), c(51, 0);
                a[i] = b[j] = c[k] = 1;
                CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            }
    // a single matrix unit x -> y with y in R1(x) is not in T
    GFMatrix unit = small->zero();
    unit.set(small->basepoint(), small->block_points(1).front(), 1);
    SubspaceBasis outside(small->N() * small->N(), small->modulus());
    outside.extend(unit.flat());
    CHECK_THROWS_AS(quotient_structure(a4, outside), Error);
}

TEST_CASE("matrix unit schemes") {
    auto c516 = ea2(5, 16);
    auto s = matrix_unit_scheme(*c516, classify_case(5, 16));
    CHECK(s.block_sizes() == std::vector<std::size_t>{4, 1, 1});
    CHECK(s.blocks[0].unit(0, 1) == c516->parse("E1A3E2"));
    auto c28 = ea2(2, 8);
    auto corner = matrix_unit_scheme(*c28, classify_case(2, 8), 4);
    CHECK(corner.block_sizes() == std::vector<std::size_t>{2, 1});
    CHECK(corner.blocks[0].unit(0, 0) == c28->parse("E4A2E1A3E4"));
    auto c58 = ea2(5, 8);
    CHECK(matrix_unit_scheme(*c58, classify_case(5, 8)).block_sizes() == std::vector<std::size_t>{6, 5, 1});
    CHECK(matrix_unit_scheme(*c58, classify_case(5, 8), 4).block_sizes() == std::vector<std::size_t>{3, 1, 1});
    auto c38 = ea2(3, 8);
    CHECK(matrix_unit_scheme(*c38, classify_case(3, 8), 4).block_sizes() == std::vector<std::size_t>{3, 1});
    auto c54 = ea2(5, 4);
    CHECK(matrix_unit_scheme(*c54, classify_case(5, 4)).block_sizes() == std::vector<std::size_t>{5, 5, 1});
    CHECK(matrix_unit_scheme(*c54, classify_case(5, 4), 4).block_sizes() == std::vector<std::size_t>{2, 1, 1});
}

TEST_CASE("certification accepts the right candidate and rejects a wrong one") {
    auto c28 = ea2(2, 8);
    auto alg = closure_generate(c28);
    const auto label = classify_case(2, 8);
    auto units = matrix_unit_scheme(*c28, label);
    auto good = certify_radical(alg, radical_candidate(*c28, label), units);
    CHECK(good.certified());
    CHECK(good.blocks == std::vector<std::size_t>{5, 4, 1});

    Candidate zero{"{O}", {}, SubspaceBasis(c28->N() * c28->N(), c28->modulus())};
    auto bad = certify_radical(alg, zero, units);
    CHECK_FALSE(bad.certified());
    CHECK(bad.ideal.pass);
    CHECK(bad.nilpotent.pass);
    CHECK_FALSE(bad.units.pass);
    CHECK_FALSE(bad.units.witness.empty());

    // units of the wrong case do not certify either
    auto c516 = ea2(5, 16);
    auto a516 = closure_generate(c516);
    auto wrong = certify_radical(a516, radical_candidate(*c516, classify_case(5, 16)),
                                 matrix_unit_scheme(*c516, CaseLabel{CaseKind::CaseII, 5, 16}));
    CHECK_FALSE(wrong.certified());
}

TEST_CASE("decompose reports") {
    auto r = decompose(3, 8);
    CHECK(r.pass());
    CHECK(r.label.kind == CaseKind::CaseII);
    CHECK(r.blocks == std::vector<std::size_t>{6, 4, 1});
    CHECK(r.certificate.candidate == "V2");
    CHECK(r.dim_T == r.dim_rad + 36 + 16 + 1);
    REQUIRE(r.corners.size() == 5);
    CHECK(r.corners[0].dim == 1);
    for (const auto& c : r.corners) {
        CHECK(c.certified);
        CHECK(c.projection_matches);
    }
    CHECK(r.corners[1].blocks == std::vector<std::size_t>{1, 1});

    auto s = decompose(5, 4);
    CHECK(s.pass());
    CHECK(s.semisimple);
    CHECK(s.dim_rad == 0);
    CHECK(s.blocks == std::vector<std::size_t>{5, 5, 1});

    DecomposeOptions only4;
    only4.corner_filter = {4};
    auto t = decompose(2, 16, 0, only4);
    CHECK(t.pass());
    CHECK(t.blocks == std::vector<std::size_t>{5, 4, 1});
    REQUIRE(t.corners.size() == 1);
    CHECK(t.corners[0].a == 4);

    auto j = s.to_json();
    for (const char* k : {"p", "n", "case", "dim_T", "dim_rad", "blocks", "corner_blocks", "semisimple", "certificate",
                          "partial_certificate"})
        CHECK(j.contains(k));
    CHECK(j["corner_blocks"].size() == 5);
}

TEST_CASE("report is basepoint invariant") {
    DecomposeOptions opt;
    opt.basis_claims = false;
    auto base = decompose(3, 4, 0, opt);
    for (PointId x = 1; x < 16; ++x) {
        auto r = decompose(3, 4, x, opt);
        CHECK(r.dim_T == base.dim_T);
        CHECK(r.dim_rad == base.dim_rad);
        CHECK(r.blocks == base.blocks);
    }
}
