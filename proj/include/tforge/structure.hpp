#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tforge/named_sets.hpp"
#include "tforge/talgebra.hpp"

namespace tforge {

enum class CaseKind { CaseI, CaseII, CaseP2, CaseIII, CaseIV };

struct CaseLabel {
    CaseKind kind;
    std::uint64_t p;
    std::uint64_t n;

    std::string name() const;
    bool operator==(const CaseLabel&) const = default;
};

const char* to_string(CaseKind k);

/// Throws Unsupported unless n = 2^m >= 4 and p is prime.
CaseLabel classify_case(std::uint64_t p, std::uint64_t n);

bool semisimple_closed_form(std::uint64_t p, std::uint64_t n);

/// A subspace together with expressions spanning it (used for structured
/// products in the nilpotency check).
struct Candidate {
    std::string name;
    std::vector<AlgExpr> spanning;
    SubspaceBasis basis;
};

/// V1 / V2 / V3 / {O} for the case.
Candidate radical_candidate(const TerwilligerContext& ctx, const CaseLabel& c);

/// U1 / U2 / U3 / {O} for E4*, <E_a* J E_a*> or {O} for a in [1,3], {O} for E0*.
Candidate corner_radical_candidate(const TerwilligerContext& ctx, const CaseLabel& c, int a);

struct IdealCheck {
    bool ok = true;
    std::string witness;
};

/// Checks g*w and w*g in v for every generator g of alg and basis row w of v.
IdealCheck is_two_sided_ideal(const AlgebraHandle& alg, const SubspaceBasis& v);

/// Least k <= bound with V^k = 0, by dense products of basis rows.
std::optional<int> nilpotency_exponent(const SubspaceBasis& v, std::size_t N, int bound);

/// Same, multiplying basis rows of V^j by the spanning expressions of V.
std::optional<int> nilpotency_exponent(const TerwilligerContext& ctx, const Candidate& v, int bound);

struct StructureConstants {
    std::size_t dim = 0;
    /// c[i][j][k]: coefficient of basis k in b_i * b_j.
    std::vector<std::vector<std::vector<Scalar>>> c;
};

/// Constants of span(alg)/ideal in the basis obtained by reducing the RREF rows
/// of alg modulo the ideal. Throws NotIdeal if a product leaves the algebra.
StructureConstants quotient_structure(const AlgebraHandle& alg, const SubspaceBasis& ideal);

struct UnitBlock {
    std::string label;
    std::size_t size = 0;
    /// Row-major size x size table, units[g * size + h] = M_{g+1,h+1}.
    std::vector<AlgExpr> units;
    /// The identity minus the other diagonal units.
    bool residual = false;

    const AlgExpr& unit(std::size_t g, std::size_t h) const { return units.at(g * size + h); }
};

struct MatrixUnitScheme {
    CaseLabel label;
    /// -1 for the full algebra, otherwise the corner index a of E_a* T E_a*.
    int corner = -1;
    std::vector<UnitBlock> blocks;
    AlgExpr identity;

    std::vector<std::size_t> block_sizes() const;
};

/// Unit tables transcribed from the case corollaries. corner = -1 selects T.
MatrixUnitScheme matrix_unit_scheme(const TerwilligerContext& ctx, const CaseLabel& c, int corner = -1);

struct StageResult {
    bool pass = false;
    bool ran = false;
    std::string witness;
};

struct RadicalCertificate {
    CaseLabel label;
    int corner = -1;
    std::string candidate;
    std::size_t algebra_dim = 0;
    std::size_t radical_dim = 0;
    std::optional<int> nilpotency;
    std::vector<std::size_t> blocks;
    StageResult ideal;
    StageResult nilpotent;
    StageResult units;
    StageResult dims;
    bool partial = false;
    std::size_t products = 0;

    bool certified() const noexcept { return ideal.pass && nilpotent.pass && units.pass && dims.pass; }
};

RadicalCertificate certify_radical(const AlgebraHandle& alg, const Candidate& candidate, const MatrixUnitScheme& units);

/// E_a* T E_a* with expression generators spanning it.
AlgebraHandle corner_algebra(const AlgebraHandle& alg, int a);

struct CornerReport {
    int a = 0;
    std::size_t dim = 0;
    std::size_t radical_dim = 0;
    std::vector<std::size_t> blocks;
    bool certified = false;
    /// rad(E_a* T E_a*) = E_a* Rad(T) E_a*, by rank checks.
    bool projection_matches = false;
    RadicalCertificate certificate;
};

struct BasisClaim {
    std::string name;
    bool applicable = false;
    std::size_t listed = 0;
    std::size_t distinct = 0;
    std::size_t rank = 0;
    bool list_dependent = false;
    bool set_dependent = false;
    bool spans_T = false;
};

struct DecomposeOptions {
    bool allow_large = false;
    bool corners = true;
    bool basis_claims = true;
    std::vector<int> corner_filter;  // empty = all five
};

struct DecompositionReport {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    PointId basepoint = 0;
    CaseLabel label{CaseKind::CaseIV, 0, 0};
    std::size_t dim_T = 0;
    std::size_t dim_T0 = 0;
    std::size_t dim_rad = 0;
    std::size_t quotient_dim = 0;
    std::vector<std::size_t> blocks;
    std::vector<CornerReport> corners;
    bool semisimple = false;
    bool closed_form = false;
    bool paper_basis_ok = false;
    std::size_t paper_basis_size = 0;
    RadicalCertificate certificate;
    bool partial = false;
    std::vector<BasisClaim> claims;
    std::map<std::string, double> timings_ms;

    bool pass() const;
    nlohmann::json to_json() const;
};

DecompositionReport decompose(std::uint64_t p, std::uint64_t n, PointId basepoint = 0, const DecomposeOptions& opt = {});

/// Rank report for one claimed basis list.
BasisClaim basis_claim(const AlgebraHandle& alg, const std::string& name, const std::vector<AlgExpr>& list);

nlohmann::json to_json(const RadicalCertificate& c);

}  // namespace tforge
