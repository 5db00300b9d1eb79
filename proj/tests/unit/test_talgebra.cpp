#include <random>

#include "doctest.h"
#include "tforge/named_sets.hpp"
#include "tforge/talgebra.hpp"

using namespace tforge;

namespace {

std::shared_ptr<const TerwilligerContext> ea2(std::uint64_t p, std::uint64_t n, PointId x = 0) {
    int m = 0;
    while ((1u << m) < n) ++m;
    return TerwilligerContext::build(GroupSpec::elementary_abelian_2(m), p, x);
}

GFMatrix sum(std::initializer_list<const GFMatrix*> ms) {
    GFMatrix out = **ms.begin();
    for (auto it = ms.begin() + 1; it != ms.end(); ++it) out += **it;
    return out;
}

std::size_t tensor_count(const SchemeDescriptor& sd) {
    std::size_t c = 0;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int d = 0; d <= 4; ++d) c += sd.p[d][b][a] != 0;
    return c;
}

}  // namespace

TEST_CASE("generator matrices satisfy the partition identities") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        for (std::uint64_t n : {4u, 8u}) {
            auto ctx = ea2(p, n);
            const auto& c = *ctx;
            CHECK(c.A(0) == c.I());
            CHECK(sum({&c.A(0), &c.A(1), &c.A(2), &c.A(3), &c.A(4)}) == c.J());
            CHECK(sum({&c.E(0), &c.E(1), &c.E(2), &c.E(3), &c.E(4)}) == c.I());
            for (int i = 0; i <= 4; ++i) {
                CHECK(transpose(c.A(i)) == c.A(i));
                for (int h = 0; h <= 4; ++h) {
                    GFMatrix want = h == i ? c.E(i) : c.zero();
                    CHECK(mat_mul(c.E(h), c.E(i)) == want);
                }
                // row sums of A_i are k_i, trace of E_i* is k_i
                Scalar trace = 0, row0 = 0;
                for (std::size_t y = 0; y < c.N(); ++y) {
                    trace = c.modulus().add(trace, c.E(i).at(y, y));
                    row0 = c.modulus().add(row0, c.A(i).at(0, y));
                }
                CHECK(trace == c.scheme().k[i] % p);
                CHECK(row0 == c.scheme().k[i] % p);
                GFMatrix jej = mat_mul(mat_mul(c.J(), c.E(i)), c.J());
                GFMatrix want = c.J();
                want.scale(c.scheme().k[i] % p);
                CHECK(jej == want);
            }
        }
    }
}

TEST_CASE("A1 A2 expands with the intersection numbers") {
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto ctx = ea2(p, 8);
        GFMatrix want = ctx->A(3);
        want += ctx->A(4);
        CHECK(mat_mul(ctx->A(1), ctx->A(2)) == want);
        GFMatrix from_p = ctx->zero();
        for (int c = 0; c <= 4; ++c) from_p.add_scaled(ctx->A(c), ctx->scheme().p[1][2][c] % p);
        CHECK(from_p == want);
    }
}

TEST_CASE("triple products") {
    auto ctx = ea2(5, 8);
    CHECK(triple_product(*ctx, 1, 0, 1) == ctx->E(1));
    CHECK(triple_product(*ctx, 0, 1, 2).is_zero());
    CHECK_FALSE(triple_product(*ctx, 1, 2, 3).is_zero());
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c)
                CHECK(triple_product(*ctx, a, b, c).is_zero() == !triple_nonzero(ctx->scheme(), a, b, c));
    GFMatrix e1a2e4 = triple_product(*ctx, 1, 2, 4);
    CHECK(transpose(e1a2e4) == triple_product(*ctx, 4, 2, 1));
}

TEST_CASE("t0 rank equals the tensor count") {
    for (std::uint64_t n : {4u, 8u, 16u}) {
        auto ctx = ea2(3, n);
        auto t0 = t0_basis(*ctx);
        CHECK(t0.rank() == tensor_count(ctx->scheme()));
        CHECK(t0.rank() == t0_words(*ctx).size());
        CHECK_FALSE(t0.contains(ctx->evaluate(ctx->parse("E4A1E2A3E4"))));
    }
}

TEST_CASE("expression parsing and printing") {
    auto ctx = ea2(5, 8);
    auto e = ctx->parse("E4A1E2A3E4 - 2E4 + [n-4]E4JE4");
    CHECK(e.terms().size() == 3);
    CHECK(ctx->parse("[n-3]E4JE4").terms().empty());  // 5 = 0 mod 5
    CHECK(ctx->parse(e.to_string()) == e);
    auto t = ctx->parse("E1A2E4").transposed();
    CHECK(t == ctx->parse("E4A2E1"));
    CHECK(ctx->parse("[p(1,2,3)]A0") == ctx->parse("A0"));
    CHECK(ctx->parse("[k(4)]E0") == ctx->parse("[42]E0"));
    CHECK(ctx->parse("EgAhEi", {{'g', 1}, {'h', 2}, {'i', 3}}) == ctx->parse("E1A2E3"));
    CHECK_THROWS_AS(ctx->parse("E5"), Error);
    CHECK_THROWS_AS(ctx->parse("E4 +"), Error);
    CHECK_THROWS_AS(ctx->parse("Eg"), Error);
    CHECK_THROWS_AS(ctx->parse("[1/5]I"), Error);
}

TEST_CASE("structured products agree with dense products") {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2u, 7u}) {
        auto ctx = ea2(p, 8);
        const auto words = t0_words(*ctx);
        std::uniform_int_distribution<std::size_t> w(0, words.size() - 1);
        const char* longer[] = {"E4A1E2A3E4", "E1A2E3A1E4 + 3E4JE4", "JE2A4E4", "E4A4E4A1E2A3E4"};
        for (int s = 0; s < 30; ++s) {
            GFMatrix m = ctx->evaluate(words[w(rng)]);
            m += ctx->evaluate(words[w(rng)]);
            for (const char* t : longer) {
                AlgExpr e = ctx->parse(t);
                GFMatrix dense = ctx->evaluate(e);
                REQUIRE(ctx->right_multiply(m, e) == mat_mul(m, dense));
                REQUIRE(ctx->left_multiply(e, m) == mat_mul(dense, m));
            }
        }
        WordEvaluator ev(*ctx);
        for (const char* t : longer) CHECK(ev.eval(ctx->parse(t)) == ctx->evaluate(ctx->parse(t)));
        CHECK(ev.eval(ctx->parse("E4A1E2A3E4 + E4A1E2A3E4A4")) ==
              ctx->evaluate(ctx->parse("E4A1E2A3E4 + E4A1E2A3E4A4")));
        CHECK(ev.hits() > 0);
    }
}

TEST_CASE("closure dimensions") {
    auto c54 = ea2(5, 4);
    auto t54 = closure_generate(c54);
    CHECK(t54.dim() == 51);
    CHECK(t54.dim() == paper_basis(*c54).size());

    auto c28 = ea2(2, 8);
    auto t28 = closure_generate(c28);
    auto b28 = paper_basis(*c28);
    CHECK(t28.dim() == b28.size());
    CHECK(corner_subalgebra(t28, c28->E(4)).dim() == 10);
    CHECK(corner_subalgebra(t28, c28->E(0)).dim() == 1);

    auto c316 = ea2(3, 16);
    auto t316 = closure_generate(c316);
    std::size_t union_size = 0;
    for (const char* s : {"B1", "B2", "B5", "B6"}) union_size += sets::by_name(*c316, s).size();
    CHECK(t316.dim() == union_size);
    CHECK(corner_subalgebra(t316, c316->E(4)).dim() == 11);
}

TEST_CASE("closure contains T0, I, and is transpose closed") {
    for (std::uint64_t p : {2u, 3u}) {
        auto ctx = ea2(p, 8);
        auto alg = closure_generate(ctx);
        auto t0 = t0_basis(*ctx);
        for (std::size_t i = 0; i < t0.rank(); ++i) CHECK(alg.span.contains(t0.row(i)));
        CHECK(alg.span.contains(ctx->I()));
        for (std::size_t i = 0; i < alg.dim(); ++i) CHECK(alg.span.contains(transpose(alg.element(i))));
        // spot-check multiplicative closure on basis pairs
        for (std::size_t i = 0; i < alg.dim(); i += 7)
            for (std::size_t j = 0; j < alg.dim(); j += 5)
                CHECK(alg.span.contains(mat_mul(alg.element(i), alg.element(j))));
    }
}

TEST_CASE("paper basis cases") {
    auto c16 = ea2(5, 16);
    auto b16 = paper_basis(*c16);
    auto has = [](const std::vector<AlgExpr>& v, const AlgExpr& e) {
        return std::find(v.begin(), v.end(), e) != v.end();
    };
    CHECK(has(b16, c16->parse("E1A2E3A1E4")));
    auto c28 = ea2(2, 8);
    CHECK_FALSE(has(paper_basis(*c28), c28->parse("E4A1E2A3E4")));
    auto c4 = ea2(3, 4);
    CHECK(paper_basis(*c4).size() == sets::B1(*c4).size() + sets::B2(*c4).size() + 1);
    auto z4 = TerwilligerContext::build(GroupSpec::from_table_file(std::string(TFORGE_TEST_DATA) + "/z4.txt"), 3);
    CHECK_THROWS_AS(paper_basis(*z4), Error);
}

TEST_CASE("dim T does not depend on the basepoint") {
    for (PointId x = 0; x < 16; ++x) CHECK(closure_generate(ea2(3, 4, x)).dim() == 51);
    for (PointId x : {PointId{1}, PointId{9}, PointId{37}, PointId{63}}) CHECK(closure_generate(ea2(2, 8, x)).dim() == 61);
}

TEST_CASE("corner subalgebra rejects non-idempotents") {
    auto ctx = ea2(3, 4);
    auto alg = closure_generate(ctx);
    GFMatrix twice = ctx->E(4);
    twice.scale(2);
    CHECK_THROWS_AS(corner_subalgebra(alg, twice), Error);
    CHECK(sandwich(ctx->E(4), ctx->J()) == mat_mul(mat_mul(ctx->E(4), ctx->J()), ctx->E(4)));
}
