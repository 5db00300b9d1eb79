#pragma once

#include <string>
#include <vector>

#include "tforge/algexpr.hpp"
#include "tforge/talgebra.hpp"

namespace tforge {

/// The named element sets, kept as expression text and parsed against a
/// context. All of them assume an elementary abelian 2-group; the getters
/// throw Unsupported otherwise.
namespace sets {

std::vector<AlgExpr> B1(const TerwilligerContext& ctx);
std::vector<AlgExpr> B2(const TerwilligerContext& ctx);
std::vector<AlgExpr> B3(const TerwilligerContext& ctx);
/// E_a^* J E_b^* with p | k_a k_b.
std::vector<AlgExpr> B4(const TerwilligerContext& ctx);
std::vector<AlgExpr> B5(const TerwilligerContext& ctx);
std::vector<AlgExpr> B6(const TerwilligerContext& ctx);

std::vector<AlgExpr> C1(const TerwilligerContext& ctx);
std::vector<AlgExpr> D1(const TerwilligerContext& ctx);
std::vector<AlgExpr> H1(const TerwilligerContext& ctx);
std::vector<AlgExpr> K1(const TerwilligerContext& ctx);
/// Depends on p: {E4*JE4*} for odd p, six elements for p = 2.
std::vector<AlgExpr> C2(const TerwilligerContext& ctx);
std::vector<AlgExpr> D2(const TerwilligerContext& ctx);
std::vector<AlgExpr> C3(const TerwilligerContext& ctx);
std::vector<AlgExpr> D3(const TerwilligerContext& ctx);

/// B4, C1, D1, H1, E0*, E4* + E4*A1E2*A3E4* concatenated (repeats kept).
std::vector<AlgExpr> lemma38_list(const TerwilligerContext& ctx);
/// K1, H1, E0*, E4* + E4*A1E2*A3E4*.
std::vector<AlgExpr> lemma39_list(const TerwilligerContext& ctx);

/// Lookup by name ("B1" ... "D3", "H1", "K1"); Parse error on unknown names.
std::vector<AlgExpr> by_name(const TerwilligerContext& ctx, const std::string& name);

}  // namespace sets

/// The basis B of T for the (p, n) case.
std::vector<AlgExpr> paper_basis(const TerwilligerContext& ctx);

/// The basis of E4* T E4* for the (p, n) case.
std::vector<AlgExpr> corner_paper_basis(const TerwilligerContext& ctx);

/// Removes repeated expressions, keeping first occurrences.
std::vector<AlgExpr> distinct(const std::vector<AlgExpr>& v);

/// Throws Unsupported unless the context's group is elementary abelian 2.
void require_elementary_abelian(const TerwilligerContext& ctx, const char* stage);

}  // namespace tforge
