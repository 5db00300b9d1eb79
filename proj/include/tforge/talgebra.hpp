#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tforge/algexpr.hpp"
#include "tforge/gfp.hpp"
#include "tforge/scheme.hpp"

namespace tforge {

/// Scheme, modulus and basepoint together with the generator matrices.
class TerwilligerContext {
public:
    TerwilligerContext(std::shared_ptr<const TripleSpace> ts, std::shared_ptr<const SchemeDescriptor> sd, PrimeModulus p,
                       PointId basepoint);

    /// Convenience: builds the triple space and the scheme (axiom check per mode).
    static std::shared_ptr<const TerwilligerContext> build(const GroupSpec& g, std::uint64_t p, PointId basepoint = 0,
                                                           AxiomCheck check = AxiomCheck::None);

    const TripleSpace& space() const noexcept { return *ts_; }
    const SchemeDescriptor& scheme() const noexcept { return *sd_; }
    std::shared_ptr<const TripleSpace> space_ptr() const noexcept { return ts_; }
    std::shared_ptr<const SchemeDescriptor> scheme_ptr() const noexcept { return sd_; }
    const PrimeModulus& modulus() const noexcept { return mod_; }
    PointId basepoint() const noexcept { return x_; }
    std::uint32_t n() const noexcept { return ts_->n(); }
    std::size_t N() const noexcept { return ts_->size(); }
    bool elementary_abelian() const noexcept { return ea2_; }

    /// Relation index of (x, y): which subconstituent y lies in.
    int block(PointId y) const noexcept { return block_[y]; }
    const std::vector<PointId>& block_points(int a) const noexcept { return block_points_[a]; }

    const GFMatrix& A(int i) const { return adj_.at(i); }
    const GFMatrix& E(int i) const { return dual_.at(i); }
    const GFMatrix& I() const noexcept { return ident_; }
    const GFMatrix& J() const noexcept { return ones_; }
    GFMatrix zero() const { return GFMatrix(N(), N(), mod_); }
    const GFMatrix& atom_matrix(const Atom& a) const;

    ExprEnv env(std::map<char, int> vars = {}) const { return ExprEnv{mod_, n(), sd_.get(), std::move(vars)}; }
    AlgExpr parse(std::string_view text, std::map<char, int> vars = {}) const { return parse_expr(text, env(std::move(vars))); }

    /// m := m * atom, in O(N^2) using the coordinate structure of X_G.
    /// keep: if set, only these columns are needed afterwards; the others may be zeroed.
    void right_apply(GFMatrix& m, const Atom& a, const std::vector<PointId>* keep = nullptr) const;
    /// m := atom * m.
    void left_apply(const Atom& a, GFMatrix& m, const std::vector<PointId>* keep = nullptr) const;

    GFMatrix evaluate_word(const Word& w) const;
    GFMatrix evaluate(const AlgExpr& e) const;
    /// m * e and e * m without materializing e.
    GFMatrix right_multiply(const GFMatrix& m, const AlgExpr& e) const;
    GFMatrix left_multiply(const AlgExpr& e, const GFMatrix& m) const;

private:
    /// Points of the dual idempotent at w[k], if that atom is one.
    const std::vector<PointId>* next_mask(const Word& w, std::size_t k) const;

    std::shared_ptr<const TripleSpace> ts_;
    std::shared_ptr<const SchemeDescriptor> sd_;
    PrimeModulus mod_;
    PointId x_;
    bool ea2_;
    std::vector<int> block_;
    std::array<std::vector<PointId>, 5> block_points_;
    std::array<std::vector<std::uint32_t>, 3> coord_;
    std::vector<GFMatrix> adj_;
    std::vector<GFMatrix> dual_;
    GFMatrix ident_;
    GFMatrix ones_;
};

/// Evaluates expressions with a cache of word prefixes, bounded in bytes.
class WordEvaluator {
public:
    explicit WordEvaluator(const TerwilligerContext& ctx, std::size_t budget_bytes = std::size_t{256} << 20)
        : ctx_(ctx), budget_(budget_bytes) {}

    GFMatrix word(const Word& w);
    GFMatrix eval(const AlgExpr& e);
    std::size_t hits() const noexcept { return hits_; }
    void clear() {
        cache_.clear();
        bytes_ = 0;
    }

private:
    const TerwilligerContext& ctx_;
    std::size_t budget_;
    std::size_t bytes_ = 0;
    std::size_t hits_ = 0;
    std::map<Word, GFMatrix> cache_;
};

GFMatrix adjacency_matrix(const TerwilligerContext& ctx, int i);
GFMatrix dual_idempotent(const TerwilligerContext& ctx, int i);
/// E_a^* A_b E_c^*.
GFMatrix triple_product(const TerwilligerContext& ctx, int a, int b, int c);

/// True iff E_a^* A_b E_c^* is nonzero, read off the intersection tensor.
inline bool triple_nonzero(const SchemeDescriptor& sd, int a, int b, int c) { return sd.p[c][b][a] != 0; }

struct ClosureCertificate {
    int passes = 0;
    std::size_t final_rank = 0;
    std::size_t products = 0;
};

/// A subalgebra of M_X(GF(p)) given by a canonical basis of its span plus
/// generators used for closure and ideal tests.
struct AlgebraHandle {
    std::shared_ptr<const TerwilligerContext> ctx;
    SubspaceBasis span;
    /// Generators as expressions (multiplied structurally) ...
    std::vector<AlgExpr> generators;
    /// ... or as dense matrices (corner algebras).
    std::vector<GFMatrix> dense_generators;
    GFMatrix identity;
    ClosureCertificate certificate;
    /// Set when the span is that of a claimed basis rather than a closure.
    bool partial = false;

    std::size_t dim() const noexcept { return span.rank(); }
    std::size_t generator_count() const noexcept { return generators.size() + dense_generators.size(); }
    GFMatrix element(std::size_t i) const { return span.row_matrix(i, ctx->N(), ctx->N()); }
    /// gen_k * m and m * gen_k.
    GFMatrix left_generator(std::size_t k, const GFMatrix& m) const;
    GFMatrix right_generator(const GFMatrix& m, std::size_t k) const;
};

/// The nonzero words E_a^* A_b E_c^*, in (a, b, c) lexicographic order.
std::vector<AlgExpr> t0_words(const TerwilligerContext& ctx);

/// Span of the nonzero E_a^* A_b E_c^*; RankDeficiency if they are dependent.
SubspaceBasis t0_basis(const TerwilligerContext& ctx);

/// Unital closure of the t0 words.
AlgebraHandle closure_generate(std::shared_ptr<const TerwilligerContext> ctx);

/// Span of the given expressions, flagged partial (no closure).
AlgebraHandle span_algebra(std::shared_ptr<const TerwilligerContext> ctx, const std::vector<AlgExpr>& basis);

/// e * alg * e with identity e.
AlgebraHandle corner_subalgebra(const AlgebraHandle& alg, const GFMatrix& e);

/// For 0/1 diagonal e: e * m * e by masking; general e falls back to products.
GFMatrix sandwich(const GFMatrix& e, const GFMatrix& m);

}  // namespace tforge
