#include "tforge/structure.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "unit_tables.hpp"

namespace tforge {

const char* to_string(CaseKind k) {
    switch (k) {
        case CaseKind::CaseI: return "CaseI";
        case CaseKind::CaseII: return "CaseII";
        case CaseKind::CaseP2: return "CaseP2";
        case CaseKind::CaseIII: return "CaseIII";
        case CaseKind::CaseIV: return "CaseIV";
    }
    return "?";
}

std::string CaseLabel::name() const { return to_string(kind); }

namespace {

bool power_of_two_at_least_4(std::uint64_t n) { return n >= 4 && (n & (n - 1)) == 0; }

int log2_exact(std::uint64_t n) {
    int m = 0;
    while ((std::uint64_t{1} << m) < n) ++m;
    return m;
}

}  // namespace

CaseLabel classify_case(std::uint64_t p, std::uint64_t n) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "structure", std::to_string(p) + " is not prime");
    if (!power_of_two_at_least_4(n))
        throw Error(ErrorCode::Unsupported, "structure", "n = " + std::to_string(n) + " is not a power of two >= 4");
    if (p == 2) return {CaseKind::CaseP2, p, n};
    switch (n % p) {
        case 1: return {CaseKind::CaseI, p, n};
        case 2: return {CaseKind::CaseII, p, n};
        case 4: return {CaseKind::CaseIII, p, n};
        default: return {CaseKind::CaseIV, p, n};
    }
}

bool semisimple_closed_form(std::uint64_t p, std::uint64_t n) {
    const std::uint64_t r = n % p;
    return (p != 2 && p != 3 && n == 4) || (r != 1 % p && r != 2 % p && r != 4 % p);
}

// ------------------------------------------------------------- candidates

namespace {

Candidate make_candidate(const TerwilligerContext& ctx, std::string name, std::vector<AlgExpr> spanning) {
    Candidate c{std::move(name), std::move(spanning), SubspaceBasis(ctx.N() * ctx.N(), ctx.modulus())};
    for (const auto& e : c.spanning) c.basis.extend(ctx.evaluate(e));
    return c;
}

std::vector<AlgExpr> concat(std::initializer_list<std::vector<AlgExpr>> parts) {
    std::vector<AlgExpr> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

}  // namespace

Candidate radical_candidate(const TerwilligerContext& ctx, const CaseLabel& c) {
    require_elementary_abelian(ctx, "radical_candidate");
    switch (c.kind) {
        case CaseKind::CaseI:
            return make_candidate(ctx, "V1", concat({sets::B4(ctx), sets::C1(ctx), sets::D1(ctx)}));
        case CaseKind::CaseII: return make_candidate(ctx, "V2", sets::B4(ctx));
        case CaseKind::CaseP2:
            return make_candidate(ctx, "V2", concat({sets::B4(ctx), sets::C2(ctx), sets::D2(ctx)}));
        case CaseKind::CaseIII: return make_candidate(ctx, "V3", concat({sets::C3(ctx), sets::D3(ctx)}));
        case CaseKind::CaseIV: return make_candidate(ctx, "{O}", {});
    }
    throw Error(ErrorCode::Internal, "structure", "unknown case");
}

Candidate corner_radical_candidate(const TerwilligerContext& ctx, const CaseLabel& c, int a) {
    require_elementary_abelian(ctx, "radical_candidate");
    if (a < 0 || a > 4) throw Error(ErrorCode::DimensionMismatch, "structure", "corner index out of [0, 4]");
    if (a == 0) return make_candidate(ctx, "{O}", {});
    if (a <= 3) {
        if (c.kind != CaseKind::CaseI) return make_candidate(ctx, "{O}", {});
        const std::string e = "E" + std::to_string(a) + "JE" + std::to_string(a);
        return make_candidate(ctx, "<" + e + ">", {ctx.parse(e)});
    }
    switch (c.kind) {
        case CaseKind::CaseI: return make_candidate(ctx, "U1", sets::C1(ctx));
        case CaseKind::CaseII:
        case CaseKind::CaseP2: return make_candidate(ctx, "U2", sets::C2(ctx));
        case CaseKind::CaseIII: return make_candidate(ctx, "U3", sets::C3(ctx));
        case CaseKind::CaseIV: return make_candidate(ctx, "{O}", {});
    }
    throw Error(ErrorCode::Internal, "structure", "unknown case");
}

// ------------------------------------------------------------ ideal tests

namespace {

std::string generator_name(const AlgebraHandle& alg, std::size_t k) {
    if (k < alg.generators.size()) return alg.generators[k].to_string();
    return "dense generator " + std::to_string(k - alg.generators.size());
}

}  // namespace

IdealCheck is_two_sided_ideal(const AlgebraHandle& alg, const SubspaceBasis& v) {
    const std::size_t N = alg.ctx->N();
    for (std::size_t i = 0; i < v.rank(); ++i) {
        if (!alg.span.contains(v.row(i)))
            return {false, "basis row " + std::to_string(i) + " of the subspace is not in the algebra"};
    }
    for (std::size_t i = 0; i < v.rank(); ++i) {
        const GFMatrix w = v.row_matrix(i, N, N);
        for (std::size_t k = 0; k < alg.generator_count(); ++k) {
            if (!v.contains(alg.left_generator(k, w)))
                return {false, "(" + generator_name(alg, k) + ") * row " + std::to_string(i) + " leaves the subspace"};
            if (!v.contains(alg.right_generator(w, k)))
                return {false, "row " + std::to_string(i) + " * (" + generator_name(alg, k) + ") leaves the subspace"};
        }
    }
    return {true, {}};
}

std::optional<int> nilpotency_exponent(const SubspaceBasis& v, std::size_t N, int bound) {
    SubspaceBasis cur = v;
    for (int k = 1; k <= bound; ++k) {
        if (cur.rank() == 0) return k;
        SubspaceBasis next(v.ambient_dim(), v.modulus());
        for (std::size_t i = 0; i < cur.rank(); ++i) {
            const GFMatrix a = cur.row_matrix(i, N, N);
            for (std::size_t j = 0; j < v.rank(); ++j) next.extend(mat_mul(a, v.row_matrix(j, N, N)));
        }
        cur = std::move(next);
    }
    return std::nullopt;
}

std::optional<int> nilpotency_exponent(const TerwilligerContext& ctx, const Candidate& v, int bound) {
    const std::size_t N = ctx.N();
    SubspaceBasis cur = v.basis;
    for (int k = 1; k <= bound; ++k) {
        if (cur.rank() == 0) return k;
        SubspaceBasis next(cur.ambient_dim(), cur.modulus());
        for (std::size_t i = 0; i < cur.rank(); ++i) {
            const GFMatrix a = cur.row_matrix(i, N, N);
            for (const auto& e : v.spanning) next.extend(ctx.right_multiply(a, e));
        }
        cur = std::move(next);
    }
    return std::nullopt;
}

StructureConstants quotient_structure(const AlgebraHandle& alg, const SubspaceBasis& ideal) {
    const std::size_t N = alg.ctx->N();
    for (std::size_t i = 0; i < ideal.rank(); ++i)
        if (!alg.span.contains(ideal.row(i)))
            throw Error(ErrorCode::NotIdeal, "structure", "quotient: ideal row " + std::to_string(i) + " is outside the algebra");

    SubspaceBasis complement(ideal.ambient_dim(), ideal.modulus());
    for (std::size_t r = 0; r < alg.dim(); ++r) complement.extend(ideal.residual(alg.span.row(r)));

    StructureConstants out;
    out.dim = complement.rank();
    out.c.assign(out.dim, std::vector<std::vector<Scalar>>(out.dim));
    std::vector<GFMatrix> basis;
    for (std::size_t i = 0; i < out.dim; ++i) basis.push_back(complement.row_matrix(i, N, N));
    for (std::size_t i = 0; i < out.dim; ++i) {
        for (std::size_t j = 0; j < out.dim; ++j) {
            const GFMatrix prod = mat_mul(basis[i], basis[j]);
            auto coords = complement.coordinates(ideal.residual(prod.flat()));
            if (!coords)
                throw Error(ErrorCode::NotIdeal, "structure",
                            "quotient: product of basis " + std::to_string(i) + " and " + std::to_string(j) +
                                " is not in the algebra");
            out.c[i][j] = std::move(*coords);
        }
    }
    return out;
}

// ------------------------------------------------------------ unit schemes

std::vector<std::size_t> MatrixUnitScheme::block_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& b : blocks) out.push_back(b.size);
    return out;
}

MatrixUnitScheme matrix_unit_scheme(const TerwilligerContext& ctx, const CaseLabel& c, int corner) {
    require_elementary_abelian(ctx, "matrix_unit_scheme");
    MatrixUnitScheme s{c, corner, {}, corner < 0 ? ctx.parse("I") : ctx.parse("E" + std::to_string(corner))};
    int residual_at = -1;
    for (const auto& bt : detail::unit_table(c.kind, corner)) {
        UnitBlock b{bt.label, bt.size, {}, bt.units.empty()};
        if (b.residual) {
            if (bt.size != 1 || residual_at >= 0)
                throw Error(ErrorCode::Internal, "structure", "malformed residual block in unit table");
            residual_at = static_cast<int>(s.blocks.size());
        } else {
            if (bt.units.size() != bt.size * bt.size)
                throw Error(ErrorCode::Internal, "structure", "unit table block " + bt.label + " has the wrong size");
            for (const auto& text : bt.units) b.units.push_back(ctx.parse(text));
        }
        s.blocks.push_back(std::move(b));
    }
    if (residual_at >= 0) {
        AlgExpr rest = s.identity;
        for (const auto& b : s.blocks)
            for (std::size_t g = 0; g < b.size && !b.residual; ++g) rest -= b.unit(g, g);
        s.blocks[static_cast<std::size_t>(residual_at)].units.push_back(std::move(rest));
    }
    return s;
}

// ---------------------------------------------------------- certification

namespace {

// Bitmask of the E indices that begin (or end) every word of e, or 0 if some
// word does not begin (end) with a dual idempotent.
unsigned boundary_mask(const AlgExpr& e, bool last) {
    unsigned mask = 0;
    for (const auto& t : e.terms()) {
        if (t.word.empty()) return 0;
        const Atom& a = last ? t.word.back() : t.word.front();
        if (a.kind != Atom::Kind::E) return 0;
        mask |= 1u << a.idx;
    }
    return mask;
}

struct FlatUnit {
    std::size_t block, g, h;
    const AlgExpr* expr;
    GFMatrix value;
    unsigned left, right;
};

std::string unit_name(const MatrixUnitScheme& s, const FlatUnit& u) {
    const auto& b = s.blocks[u.block];
    return b.label + "[" + std::to_string(u.g + 1) + "," + std::to_string(u.h + 1) + "]";
}

}  // namespace

RadicalCertificate certify_radical(const AlgebraHandle& alg, const Candidate& candidate, const MatrixUnitScheme& units) {
    const auto& ctx = *alg.ctx;
    RadicalCertificate cert;
    cert.label = units.label;
    cert.corner = units.corner;
    cert.candidate = candidate.name;
    cert.algebra_dim = alg.dim();
    cert.radical_dim = candidate.basis.rank();
    cert.blocks = units.block_sizes();
    cert.partial = alg.partial;

    // (a) two-sided ideal
    {
        IdealCheck ic = is_two_sided_ideal(alg, candidate.basis);
        cert.ideal = {ic.ok, true, ic.witness};
        cert.products += 2 * candidate.basis.rank() * alg.generator_count();
    }

    // (b) nilpotent
    {
        const int bound = static_cast<int>(candidate.basis.rank()) + 1;
        cert.nilpotency = nilpotency_exponent(ctx, candidate, bound);
        cert.nilpotent.ran = true;
        cert.nilpotent.pass = cert.nilpotency.has_value();
        if (!cert.nilpotent.pass)
            cert.nilpotent.witness = "no power up to " + std::to_string(bound) + " vanishes";
    }

    // (c) unit relations modulo the candidate
    std::vector<FlatUnit> flat;
    for (std::size_t b = 0; b < units.blocks.size(); ++b) {
        const auto& blk = units.blocks[b];
        for (std::size_t g = 0; g < blk.size; ++g)
            for (std::size_t h = 0; h < blk.size; ++h) {
                const AlgExpr& e = blk.unit(g, h);
                flat.push_back({b, g, h, &e, ctx.evaluate(e), boundary_mask(e, false), boundary_mask(e, true)});
            }
    }
    auto index_of = [&](std::size_t b, std::size_t g, std::size_t h) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < b; ++i) k += units.blocks[i].size * units.blocks[i].size;
        return k + g * units.blocks[b].size + h;
    };
    cert.units.ran = true;
    cert.units.pass = true;
    for (std::size_t x = 0; x < flat.size() && cert.units.pass; ++x) {
        const FlatUnit& u = flat[x];
        for (std::size_t y = 0; y < flat.size(); ++y) {
            const FlatUnit& v = flat[y];
            const bool delta = u.block == v.block && u.h == v.g;
            const bool structurally_zero = u.right && v.left && !(u.right & v.left);
            if (structurally_zero && !delta) continue;
            GFMatrix prod = structurally_zero ? ctx.zero() : ctx.right_multiply(u.value, *v.expr);
            ++cert.products;
            if (delta) prod -= flat[index_of(u.block, u.g, v.h)].value;
            if (!candidate.basis.contains(prod)) {
                cert.units.pass = false;
                cert.units.witness = unit_name(units, u) + " * " + unit_name(units, v) +
                                     (delta ? " differs from " + unit_name(units, flat[index_of(u.block, u.g, v.h)])
                                            : " is not zero") +
                                     " modulo " + candidate.name;
                break;
            }
        }
    }
    if (cert.units.pass) {
        GFMatrix sum = ctx.evaluate(units.identity);
        for (const auto& u : flat)
            if (u.g == u.h) sum -= u.value;
        if (!candidate.basis.contains(sum)) {
            cert.units.pass = false;
            cert.units.witness = "diagonal units do not sum to the identity modulo " + candidate.name;
        }
    }

    // (d) dimensions
    {
        cert.dims.ran = true;
        std::size_t squares = 0;
        for (auto s : cert.blocks) squares += s * s;
        SubspaceBasis all = candidate.basis;
        std::string why;
        for (const auto& u : flat) {
            if (!alg.span.contains(u.value)) {
                why = "unit " + unit_name(units, u) + " is not in the algebra";
                break;
            }
            all.extend(u.value);
        }
        if (why.empty() && all.rank() != alg.dim())
            why = "units and candidate span " + std::to_string(all.rank()) + " of " + std::to_string(alg.dim()) + " dimensions";
        if (why.empty() && alg.dim() != candidate.basis.rank() + squares)
            why = "dim " + std::to_string(alg.dim()) + " != " + std::to_string(candidate.basis.rank()) + " + " +
                  std::to_string(squares);
        cert.dims.pass = why.empty();
        cert.dims.witness = why;
    }
    return cert;
}

// ---------------------------------------------------------------- corners

AlgebraHandle corner_algebra(const AlgebraHandle& alg, int a) {
    const auto& ctx = *alg.ctx;
    AlgebraHandle out = corner_subalgebra(alg, ctx.E(a));
    std::vector<AlgExpr> spanning;
    if (a == 0) {
        spanning = {ctx.parse("E0")};
    } else if (a <= 3) {
        const std::string e = "E" + std::to_string(a);
        spanning = {ctx.parse(e), ctx.parse(e + "J" + e)};
    } else {
        spanning = corner_paper_basis(ctx);
    }
    SubspaceBasis s(ctx.N() * ctx.N(), ctx.modulus());
    for (const auto& e : spanning) s.extend(ctx.evaluate(e));
    if (s.same_span(out.span)) {
        out.generators = std::move(spanning);
        out.dense_generators.clear();
    }
    return out;
}

// ------------------------------------------------------------- reporting

BasisClaim basis_claim(const AlgebraHandle& alg, const std::string& name, const std::vector<AlgExpr>& list) {
    const auto& ctx = *alg.ctx;
    BasisClaim c;
    c.name = name;
    c.applicable = true;
    c.listed = list.size();
    c.distinct = distinct(list).size();
    SubspaceBasis s(ctx.N() * ctx.N(), ctx.modulus());
    for (const auto& e : list) s.extend(ctx.evaluate(e));
    c.rank = s.rank();
    c.list_dependent = c.rank < c.listed;
    c.set_dependent = c.rank < c.distinct;
    c.spans_T = s.same_span(alg.span);
    return c;
}

bool DecompositionReport::pass() const {
    if (!certificate.certified() || !paper_basis_ok || semisimple != closed_form) return false;
    for (const auto& c : corners)
        if (!c.certified || !c.projection_matches) return false;
    return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

}  // namespace

DecompositionReport decompose(std::uint64_t p, std::uint64_t n, PointId basepoint, const DecomposeOptions& opt) {
    DecompositionReport r;
    r.p = p;
    r.n = n;
    r.basepoint = basepoint;
    r.label = classify_case(p, n);
    r.closed_form = semisimple_closed_form(p, n);

    auto t = Clock::now();
    auto ctx = TerwilligerContext::build(GroupSpec::elementary_abelian_2(log2_exact(n)), p, basepoint);
    r.dim_T0 = t0_basis(*ctx).rank();
    r.timings_ms["context"] = ms_since(t);

    t = Clock::now();
    const auto basis = paper_basis(*ctx);
    r.paper_basis_size = basis.size();
    const bool large = n >= 32 && !opt.allow_large;
    AlgebraHandle alg = large ? span_algebra(ctx, basis) : closure_generate(ctx);
    r.partial = alg.partial;
    r.dim_T = alg.dim();
    r.timings_ms["algebra"] = ms_since(t);

    t = Clock::now();
    {
        BasisClaim b = basis_claim(alg, "B", basis);
        r.paper_basis_ok = b.spans_T && !b.list_dependent;
        if (opt.basis_claims && r.label.kind == CaseKind::CaseI) {
            r.claims.push_back(b);
            BasisClaim l38 = basis_claim(alg, "L3.8", sets::lemma38_list(*ctx));
            l38.applicable = n > 8 || (p == 7 && n == 8);
            r.claims.push_back(l38);
            BasisClaim l39 = basis_claim(alg, "L3.9", sets::lemma39_list(*ctx));
            l39.applicable = p == 3 && n == 4;
            r.claims.push_back(l39);
        }
    }
    r.timings_ms["basis_claims"] = ms_since(t);

    t = Clock::now();
    const Candidate cand = radical_candidate(*ctx, r.label);
    r.certificate = certify_radical(alg, cand, matrix_unit_scheme(*ctx, r.label));
    r.dim_rad = cand.basis.rank();
    r.quotient_dim = r.dim_T - r.dim_rad;
    r.blocks = r.certificate.blocks;
    r.semisimple = r.certificate.certified() && r.dim_rad == 0;
    r.timings_ms["certify"] = ms_since(t);

    if (opt.corners) {
        t = Clock::now();
        for (int a = 0; a <= 4; ++a) {
            if (!opt.corner_filter.empty() &&
                std::find(opt.corner_filter.begin(), opt.corner_filter.end(), a) == opt.corner_filter.end())
                continue;
            CornerReport c;
            c.a = a;
            const AlgebraHandle calg = corner_algebra(alg, a);
            const Candidate ccand = corner_radical_candidate(*ctx, r.label, a);
            c.certificate = certify_radical(calg, ccand, matrix_unit_scheme(*ctx, r.label, a));
            c.dim = calg.dim();
            c.radical_dim = ccand.basis.rank();
            c.blocks = c.certificate.blocks;
            c.certified = c.certificate.certified();
            SubspaceBasis projected(ctx->N() * ctx->N(), ctx->modulus());
            const std::size_t N = ctx->N();
            for (std::size_t i = 0; i < cand.basis.rank(); ++i)
                projected.extend(sandwich(ctx->E(a), cand.basis.row_matrix(i, N, N)));
            c.projection_matches = projected.same_span(ccand.basis);
            r.corners.push_back(std::move(c));
        }
        r.timings_ms["corners"] = ms_since(t);
    }
    return r;
}

// ------------------------------------------------------------------- json

namespace {

nlohmann::json to_json_witnesses(const RadicalCertificate& c) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [k, s] : {std::pair{"ideal", &c.ideal}, std::pair{"nilpotent", &c.nilpotent},
                               std::pair{"units", &c.units}, std::pair{"dims", &c.dims}})
        if (!s->witness.empty()) w[k] = s->witness;
    return w;
}

}  // namespace

nlohmann::json to_json(const RadicalCertificate& c) {
    auto stage = [](const StageResult& s) { return nlohmann::json(s.pass); };
    nlohmann::json j{
        {"case", c.label.name()},
        {"candidate", c.candidate},
        {"algebra_dim", c.algebra_dim},
        {"radical_dim", c.radical_dim},
        {"blocks", c.blocks},
        {"ideal", stage(c.ideal)},
        {"nilpotent", stage(c.nilpotent)},
        {"units", stage(c.units)},
        {"dims", stage(c.dims)},
        {"certified", c.certified()},
        {"partial", c.partial},
    };
    j["nilpotency_exponent"] = c.nilpotency ? nlohmann::json(*c.nilpotency) : nlohmann::json(nullptr);
    nlohmann::json w = to_json_witnesses(c);
    if (!w.empty()) j["witnesses"] = w;
    return j;
}

nlohmann::json DecompositionReport::to_json() const {
    nlohmann::json corner_blocks = nlohmann::json::array();
    nlohmann::json corner_detail = nlohmann::json::array();
    for (const auto& c : corners) {
        corner_blocks.push_back(c.blocks);
        corner_detail.push_back({{"a", c.a},
                                 {"dim", c.dim},
                                 {"radical_dim", c.radical_dim},
                                 {"radical", c.certificate.candidate},
                                 {"blocks", c.blocks},
                                 {"certified", c.certified},
                                 {"radical_is_projection", c.projection_matches}});
    }
    nlohmann::json j{
        {"p", p},
        {"n", n},
        {"basepoint", basepoint},
        {"case", label.name()},
        {"dim_T", dim_T},
        {"dim_T0", dim_T0},
        {"dim_rad", dim_rad},
        {"radical", certificate.candidate},
        {"blocks", blocks},
        {"corner_blocks", corner_blocks},
        {"corners", corner_detail},
        {"semisimple", semisimple},
        {"semisimple_closed_form", closed_form},
        {"paper_basis_size", paper_basis_size},
        {"paper_basis_ok", paper_basis_ok},
        {"certificate",
         {{"ideal", certificate.ideal.pass},
          {"nilpotent", certificate.nilpotent.pass},
          {"units", certificate.units.pass},
          {"dims", certificate.dims.pass}}},
        {"partial_certificate", partial},
        {"pass", pass()},
    };
    j["nilpotency_exponent"] =
        certificate.nilpotency ? nlohmann::json(*certificate.nilpotency) : nlohmann::json(nullptr);
    nlohmann::json w = to_json_witnesses(certificate);
    if (!w.empty()) j["witnesses"] = w;
    if (!claims.empty()) {
        nlohmann::json cl = nlohmann::json::array();
        for (const auto& c : claims)
            cl.push_back({{"name", c.name},
                          {"applicable", c.applicable},
                          {"listed", c.listed},
                          {"distinct", c.distinct},
                          {"rank", c.rank},
                          {"list_dependent", c.list_dependent},
                          {"set_dependent", c.set_dependent},
                          {"spans_T", c.spans_T}});
        j["basis_claims"] = cl;
    }
    return j;
}

}  // namespace tforge
