#include "tforge/talgebra.hpp"

#include <algorithm>
#include <random>

namespace tforge {

TerwilligerContext::TerwilligerContext(std::shared_ptr<const TripleSpace> ts, std::shared_ptr<const SchemeDescriptor> sd,
                                       PrimeModulus p, PointId basepoint)
    : ts_(std::move(ts)),
      sd_(std::move(sd)),
      mod_(p),
      x_(basepoint),
      ea2_(is_elementary_abelian_2(ts_->group())),
      ident_(GFMatrix::identity(ts_->size(), p)),
      ones_(GFMatrix::ones(ts_->size(), ts_->size(), p)) {
    const std::size_t N = ts_->size();
    if (basepoint >= N) throw Error(ErrorCode::DimensionMismatch, "talgebra", "basepoint out of range");
    block_.resize(N);
    for (PointId y = 0; y < N; ++y) {
        block_[y] = classify_pair(*ts_, x_, y);
        block_points_[block_[y]].push_back(y);
    }
    for (int d = 0; d < 3; ++d) {
        coord_[d].resize(N);
        for (PointId y = 0; y < N; ++y) coord_[d][y] = ts_->coord(y, d + 1);
    }
    for (int i = 0; i < 5; ++i) {
        GFMatrix a(N, N, p);
        for (PointId y = 0; y < N; ++y)
            for (PointId z = 0; z < N; ++z)
                if (classify_pair(*ts_, y, z) == i) a.set(y, z, 1);
        adj_.push_back(std::move(a));
        GFMatrix e(N, N, p);
        for (PointId y : block_points_[i]) e.set(y, y, 1);
        dual_.push_back(std::move(e));
    }
}

std::shared_ptr<const TerwilligerContext> TerwilligerContext::build(const GroupSpec& g, std::uint64_t p, PointId basepoint,
                                                                    AxiomCheck check) {
    auto ts = std::make_shared<const TripleSpace>(g);
    auto sd = std::make_shared<const SchemeDescriptor>(build_scheme(*ts, check));
    return std::make_shared<const TerwilligerContext>(ts, sd, PrimeModulus(p), basepoint);
}

const GFMatrix& TerwilligerContext::atom_matrix(const Atom& a) const {
    switch (a.kind) {
        case Atom::Kind::E: return dual_.at(a.idx);
        case Atom::Kind::A: return adj_.at(a.idx);
        case Atom::Kind::J: return ones_;
        case Atom::Kind::I: return ident_;
    }
    return ident_;
}

void TerwilligerContext::right_apply(GFMatrix& m, const Atom& a, const std::vector<PointId>* keep) const {
    const std::size_t N = this->N();
    const std::uint64_t p = mod_.value();
    switch (a.kind) {
        case Atom::Kind::I: return;
        case Atom::Kind::E:
            for (std::size_t i = 0; i < N; ++i) {
                Scalar* r = m.row(i);
                for (std::size_t j = 0; j < N; ++j)
                    if (block_[j] != a.idx) r[j] = 0;
            }
            return;
        case Atom::Kind::J:
            for (std::size_t i = 0; i < N; ++i) {
                Scalar* r = m.row(i);
                std::uint64_t s = 0;
                for (std::size_t j = 0; j < N; ++j) s += r[j];
                std::fill(r, r + N, static_cast<Scalar>(s % p));
            }
            return;
        case Atom::Kind::A: break;
    }
    if (a.idx == 0) return;
    const std::size_t n = this->n();
    // (M A_b)[i][j] = sum of M[i][k] over k != j sharing coordinate b with j.
    std::array<std::vector<std::uint64_t>, 3> S;
    for (auto& s : S) s.resize(n);
    std::vector<Scalar> scratch;
    for (std::size_t i = 0; i < N; ++i) {
        if (m.row_is_zero(i)) continue;
        Scalar* r = m.row(i);
        for (auto& s : S) std::fill(s.begin(), s.end(), 0);
        std::uint64_t total = 0;
        for (std::size_t k = 0; k < N; ++k) {
            const std::uint64_t v = r[k];
            if (!v) continue;
            S[0][coord_[0][k]] += v;
            S[1][coord_[1][k]] += v;
            S[2][coord_[2][k]] += v;
            total += v;
        }
        for (auto& s : S)
            for (auto& v : s) v %= p;
        total %= p;
        if (keep) {
            scratch.clear();
            for (PointId j : *keep) {
                std::uint64_t v;
                if (a.idx <= 3) {
                    v = S[a.idx - 1][coord_[a.idx - 1][j]] + p - r[j];
                } else {
                    const std::uint64_t sub = S[0][coord_[0][j]] + S[1][coord_[1][j]] + S[2][coord_[2][j]];
                    v = total + 2 * std::uint64_t{r[j]} + 3 * p - sub;
                }
                scratch.push_back(static_cast<Scalar>(v % p));
            }
            std::fill(r, r + N, 0);
            for (std::size_t t = 0; t < keep->size(); ++t) r[(*keep)[t]] = scratch[t];
        } else if (a.idx <= 3) {
            const auto& s = S[a.idx - 1];
            const auto& c = coord_[a.idx - 1];
            for (std::size_t j = 0; j < N; ++j) r[j] = static_cast<Scalar>((s[c[j]] + p - r[j]) % p);
        } else {
            // A_4 = J - I - A_1 - A_2 - A_3
            for (std::size_t j = 0; j < N; ++j) {
                const std::uint64_t sub = S[0][coord_[0][j]] + S[1][coord_[1][j]] + S[2][coord_[2][j]];
                r[j] = static_cast<Scalar>((total + 2 * std::uint64_t{r[j]} + 3 * p - sub) % p);
            }
        }
    }
}

void TerwilligerContext::left_apply(const Atom& a, GFMatrix& m, const std::vector<PointId>* keep) const {
    const std::size_t N = this->N();
    const std::uint64_t p = mod_.value();
    switch (a.kind) {
        case Atom::Kind::I: return;
        case Atom::Kind::E:
            for (std::size_t i = 0; i < N; ++i)
                if (block_[i] != a.idx) std::fill(m.row(i), m.row(i) + N, 0);
            return;
        case Atom::Kind::J: {
            std::vector<std::uint64_t> col(N, 0);
            for (std::size_t k = 0; k < N; ++k) {
                const Scalar* r = m.row(k);
                for (std::size_t j = 0; j < N; ++j) col[j] += r[j];
            }
            for (auto& v : col) v %= p;
            for (std::size_t i = 0; i < N; ++i) {
                Scalar* r = m.row(i);
                for (std::size_t j = 0; j < N; ++j) r[j] = static_cast<Scalar>(col[j]);
            }
            return;
        }
        case Atom::Kind::A: break;
    }
    if (a.idx == 0) return;
    const std::size_t n = this->n();
    // (A_b M)[i] = sum of rows k != i sharing coordinate b with i.
    const int lo = a.idx <= 3 ? a.idx - 1 : 0, hi = a.idx <= 3 ? a.idx - 1 : 2;
    std::array<std::vector<std::uint64_t>, 3> T;
    for (int d = lo; d <= hi; ++d) T[d].assign(n * N, 0);
    std::vector<std::uint64_t> col(a.idx == 4 ? N : 0, 0);
    for (std::size_t k = 0; k < N; ++k) {
        if (m.row_is_zero(k)) continue;
        const Scalar* r = m.row(k);
        for (int d = lo; d <= hi; ++d) {
            std::uint64_t* t = T[d].data() + std::size_t{coord_[d][k]} * N;
            for (std::size_t j = 0; j < N; ++j) t[j] += r[j];
        }
        if (a.idx == 4)
            for (std::size_t j = 0; j < N; ++j) col[j] += r[j];
    }
    for (int d = lo; d <= hi; ++d)
        for (auto& v : T[d]) v %= p;
    for (auto& v : col) v %= p;
    std::vector<char> wanted;
    if (keep) {
        wanted.assign(N, 0);
        for (PointId i : *keep) wanted[i] = 1;
    }
    for (std::size_t i = 0; i < N; ++i) {
        Scalar* r = m.row(i);
        if (keep && !wanted[i]) {
            std::fill(r, r + N, 0);
            continue;
        }
        if (a.idx <= 3) {
            const std::uint64_t* t = T[lo].data() + std::size_t{coord_[lo][i]} * N;
            for (std::size_t j = 0; j < N; ++j) r[j] = static_cast<Scalar>((t[j] + p - r[j]) % p);
        } else {
            const std::uint64_t* t0 = T[0].data() + std::size_t{coord_[0][i]} * N;
            const std::uint64_t* t1 = T[1].data() + std::size_t{coord_[1][i]} * N;
            const std::uint64_t* t2 = T[2].data() + std::size_t{coord_[2][i]} * N;
            for (std::size_t j = 0; j < N; ++j)
                r[j] = static_cast<Scalar>((col[j] + 2 * std::uint64_t{r[j]} + 3 * p - t0[j] - t1[j] - t2[j]) % p);
        }
    }
}

const std::vector<PointId>* TerwilligerContext::next_mask(const Word& w, std::size_t k) const {
    if (k >= w.size() || w[k].kind != Atom::Kind::E) return nullptr;
    return &block_points_[w[k].idx];
}

GFMatrix TerwilligerContext::evaluate_word(const Word& w) const {
    if (w.empty()) return ident_;
    GFMatrix m = atom_matrix(w.front());
    for (std::size_t k = 1; k < w.size(); ++k) {
        right_apply(m, w[k], next_mask(w, k + 1));
        if (m.is_zero()) break;
    }
    return m;
}

GFMatrix TerwilligerContext::evaluate(const AlgExpr& e) const {
    GFMatrix out(N(), N(), mod_);
    for (const auto& t : e.terms()) out.add_scaled(evaluate_word(t.word), t.coef);
    return out;
}

GFMatrix TerwilligerContext::right_multiply(const GFMatrix& m, const AlgExpr& e) const {
    GFMatrix out(N(), N(), mod_);
    for (const auto& t : e.terms()) {
        GFMatrix x = m;
        bool zero = false;
        for (std::size_t k = 0; k < t.word.size(); ++k) {
            right_apply(x, t.word[k], next_mask(t.word, k + 1));
            if (x.is_zero()) {
                zero = true;
                break;
            }
        }
        if (!zero) out.add_scaled(x, t.coef);
    }
    return out;
}

GFMatrix TerwilligerContext::left_multiply(const AlgExpr& e, const GFMatrix& m) const {
    GFMatrix out(N(), N(), mod_);
    for (const auto& t : e.terms()) {
        GFMatrix x = m;
        bool zero = false;
        for (std::size_t k = t.word.size(); k-- > 0;) {
            left_apply(t.word[k], x, k > 0 ? next_mask(t.word, k - 1) : nullptr);
            if (x.is_zero()) {
                zero = true;
                break;
            }
        }
        if (!zero) out.add_scaled(x, t.coef);
    }
    return out;
}

// ------------------------------------------------------------ WordEvaluator

GFMatrix WordEvaluator::word(const Word& w) {
    if (w.empty()) return ctx_.I();
    std::size_t have = 0;
    GFMatrix m(ctx_.N(), ctx_.N(), ctx_.modulus());
    for (std::size_t len = w.size(); len >= 1; --len) {
        auto it = cache_.find(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len)));
        if (it != cache_.end()) {
            m = it->second;
            have = len;
            ++hits_;
            break;
        }
    }
    if (have == 0) {
        m = ctx_.atom_matrix(w.front());
        have = 1;
    }
    const std::size_t bytes = ctx_.N() * ctx_.N() * sizeof(Scalar);
    for (; have < w.size(); ++have) {
        ctx_.right_apply(m, w[have]);
        if (have + 1 < w.size() && bytes_ + bytes <= budget_) {
            cache_.emplace(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(have + 1)), m);
            bytes_ += bytes;
        }
    }
    return m;
}

GFMatrix WordEvaluator::eval(const AlgExpr& e) {
    GFMatrix out(ctx_.N(), ctx_.N(), ctx_.modulus());
    for (const auto& t : e.terms()) out.add_scaled(word(t.word), t.coef);
    return out;
}

GFMatrix adjacency_matrix(const TerwilligerContext& ctx, int i) { return ctx.A(i); }
GFMatrix dual_idempotent(const TerwilligerContext& ctx, int i) { return ctx.E(i); }

GFMatrix triple_product(const TerwilligerContext& ctx, int a, int b, int c) {
    return ctx.evaluate_word({Atom::E(a), Atom::A(b), Atom::E(c)});
}

// ----------------------------------------------------------------- algebras

GFMatrix AlgebraHandle::left_generator(std::size_t k, const GFMatrix& m) const {
    if (k < generators.size()) return ctx->left_multiply(generators[k], m);
    return mat_mul(dense_generators.at(k - generators.size()), m);
}

GFMatrix AlgebraHandle::right_generator(const GFMatrix& m, std::size_t k) const {
    if (k < generators.size()) return ctx->right_multiply(m, generators[k]);
    return mat_mul(m, dense_generators.at(k - generators.size()));
}

std::vector<AlgExpr> t0_words(const TerwilligerContext& ctx) {
    std::vector<AlgExpr> out;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c)
                if (triple_nonzero(ctx.scheme(), a, b, c))
                    out.push_back(AlgExpr::of_word({Atom::E(a), Atom::A(b), Atom::E(c)}, ctx.modulus()));
    return out;
}

SubspaceBasis t0_basis(const TerwilligerContext& ctx) {
    SubspaceBasis basis(ctx.N() * ctx.N(), ctx.modulus());
    for (const auto& w : t0_words(ctx)) {
        if (!basis.extend(ctx.evaluate(w))) {
            throw Error(ErrorCode::RankDeficiency, "talgebra", "t0 word " + w.to_string() + " depends on earlier words");
        }
    }
    return basis;
}

AlgebraHandle closure_generate(std::shared_ptr<const TerwilligerContext> ctx) {
    const std::size_t N = ctx->N();
    AlgebraHandle alg{ctx, SubspaceBasis(N * N, ctx->modulus()), t0_words(*ctx), {}, ctx->I(), {}, false};
    alg.span.extend(ctx->I());
    for (const auto& g : alg.generators) alg.span.extend(ctx->evaluate(g));

    for (;;) {
        ++alg.certificate.passes;
        std::vector<GFMatrix> snapshot;
        snapshot.reserve(alg.span.rank());
        for (std::size_t r = 0; r < alg.span.rank(); ++r) snapshot.push_back(alg.element(r));
        bool grew = false;
        for (const auto& r : snapshot) {
            for (const auto& g : alg.generators) {
                grew |= alg.span.extend(ctx->right_multiply(r, g));
                grew |= alg.span.extend(ctx->left_multiply(g, r));
                alg.certificate.products += 2;
            }
        }
        if (!grew) break;
    }
    alg.certificate.final_rank = alg.span.rank();

    // Spot check: a few products of basis rows stay in the span.
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_int_distribution<std::size_t> pick(0, alg.span.rank() - 1);
    for (int s = 0; s < 3; ++s) {
        auto x = alg.element(pick(rng));
        auto y = alg.element(pick(rng));
        if (!alg.span.contains(mat_mul(x, y))) {
            throw Error(ErrorCode::Internal, "talgebra", "closure is not multiplicatively closed");
        }
    }
    return alg;
}

AlgebraHandle span_algebra(std::shared_ptr<const TerwilligerContext> ctx, const std::vector<AlgExpr>& basis) {
    const std::size_t N = ctx->N();
    AlgebraHandle alg{ctx, SubspaceBasis(N * N, ctx->modulus()), t0_words(*ctx), {}, ctx->I(), {}, true};
    for (const auto& b : basis) alg.span.extend(ctx->evaluate(b));
    alg.certificate.final_rank = alg.span.rank();
    return alg;
}

namespace {

bool diagonal_01(const GFMatrix& e) {
    for (std::size_t i = 0; i < e.rows(); ++i) {
        const Scalar* r = e.row(i);
        for (std::size_t j = 0; j < e.cols(); ++j) {
            if (i == j ? r[j] > 1 : r[j] != 0) return false;
        }
    }
    return true;
}

}  // namespace

GFMatrix sandwich(const GFMatrix& e, const GFMatrix& m) {
    if (!diagonal_01(e)) return mat_mul(mat_mul(e, m), e);
    GFMatrix out = m;
    const std::size_t N = m.rows();
    for (std::size_t i = 0; i < N; ++i) {
        Scalar* r = out.row(i);
        if (!e.at(i, i)) {
            std::fill(r, r + N, 0);
            continue;
        }
        for (std::size_t j = 0; j < N; ++j)
            if (!e.at(j, j)) r[j] = 0;
    }
    return out;
}

AlgebraHandle corner_subalgebra(const AlgebraHandle& alg, const GFMatrix& e) {
    if (!(mat_mul(e, e) == e)) throw Error(ErrorCode::NotIdempotent, "talgebra", "corner: e is not idempotent");
    if (!alg.span.contains(e)) throw Error(ErrorCode::DimensionMismatch, "talgebra", "corner: e is not in the algebra");
    const std::size_t N = alg.ctx->N();
    AlgebraHandle out{alg.ctx, SubspaceBasis(N * N, alg.ctx->modulus()), {}, {}, e, {}, alg.partial};
    for (std::size_t r = 0; r < alg.dim(); ++r) out.span.extend(sandwich(e, alg.element(r)));
    for (std::size_t r = 0; r < out.span.rank(); ++r) out.dense_generators.push_back(out.element(r));
    out.certificate.final_rank = out.span.rank();
    return out;
}

}  // namespace tforge
