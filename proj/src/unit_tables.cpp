// Matrix-unit tables per case, as expression text. "~" marks a residual
// block (identity minus the other diagonal units).
#include "unit_tables.hpp"

#include "tforge/error.hpp"

namespace tforge::detail {

namespace {

// The 3 x 3 block on E1*, E2*, E3* shared by the full tables: M_gi =
// E_g*A_hE_i* op k E_g*JE_i*, M_jj = E_j* op k E_j*JE_j*, {g, h, i} = [1, 3].
std::vector<std::string> top3(const std::string& op, const std::string& k) {
    auto t = [&](const std::string& word, const std::string& j) { return word + op + k + j; };
    return {
        t("E1", "E1JE1"),     t("E1A3E2", "E1JE2"), t("E1A2E3", "E1JE3"),
        t("E2A3E1", "E2JE1"), t("E2", "E2JE2"),     t("E2A1E3", "E2JE3"),
        t("E3A2E1", "E3JE1"), t("E3A1E2", "E3JE2"), t("E3", "E3JE3"),
    };
}

// Assembles a size x size table from three rows of the E1..E3 part and the
// remaining rows given whole.
std::vector<std::string> rows(const std::vector<std::string>& head3, const std::vector<std::vector<std::string>>& right,
                              const std::vector<std::vector<std::string>>& tail) {
    std::vector<std::string> out;
    for (int g = 0; g < 3; ++g) {
        for (int h = 0; h < 3; ++h) out.push_back(head3[g * 3 + h]);
        for (const auto& s : right[g]) out.push_back(s);
    }
    for (const auto& r : tail)
        for (const auto& s : r) out.push_back(s);
    return out;
}

std::vector<std::string> ejE_block(const std::string& k) {
    std::vector<std::string> out;
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h)
            out.push_back(k + "E" + std::to_string(g) + "JE" + std::to_string(h));
    return out;
}

const std::string H = "[1/2]";
const std::string T3 = "[1/3]";
const std::string D5 = "[1/((n-1)*(n-4))]";
const std::string C3 = "[n-3]";

// Rows 4..6 of the 6 x 6 block for n = 2 (mod p), p odd.
const std::vector<std::vector<std::string>> case2_tail = {
    {H + "(E4A1E3A2E1 - E4A2E1 - E4A3E1)", H + "(E4A1E2 - E4A3E2 - E4A2E3A1E2)", H + "(E4A1E3 - E4A2E3 - E4A3E2A1E3)",
     H + "(E4 + E4A1E4 - E4A2E3A1E4 - E4A3E2A1E4)", H + "(E4A1E3A2E4 - E4A3E1A2E4 - E4 - E4A2E4)",
     H + "(E4A1E2A3E4 - E4A2E1A3E4 - E4 - E4A3E4)"},
    {H + "(E4A2E1 - E4A3E1 - E4A1E3A2E1)", H + "(E4A2E3A1E2 - E4A1E2 - E4A3E2)", H + "(E4A2E3 - E4A1E3 - E4A3E2A1E3)",
     H + "(E4A2E3A1E4 - E4A3E2A1E4 - E4 - E4A1E4)", H + "(E4 + E4A2E4 - E4A1E3A2E4 - E4A3E1A2E4)",
     H + "(E4A2E1A3E4 - E4A1E2A3E4 - E4 - E4A3E4)"},
    {H + "(E4A3E1 - E4A2E1 - E4A1E3A2E1)", H + "(E4A3E2 - E4A1E2 - E4A2E3A1E2)", H + "(E4A3E2A1E3 - E4A1E3 - E4A2E3)",
     H + "(E4A3E2A1E4 - E4A2E3A1E4 - E4 - E4A1E4)", H + "(E4A3E1A2E4 - E4A1E3A2E4 - E4 - E4A2E4)",
     H + "(E4 + E4A3E4 - E4A1E2A3E4 - E4A2E1A3E4)"},
};

// Rows 4..6 of the 6 x 6 block for n not 1, 2, 4 (mod p).
const std::vector<std::vector<std::string>> case4_tail = {
    {D5 + "(E4A2E1 + E4A3E1 + " + C3 + "E4A1E3A2E1 - E4JE1)", D5 + "(E4A3E2 + E4A2E3A1E2 + " + C3 + "E4A1E2 - E4JE2)",
     D5 + "(E4A2E3 + E4A3E2A1E3 + " + C3 + "E4A1E3 - E4JE3)",
     D5 + "(E4A2E3A1E4 + E4A3E2A1E4 + " + C3 + "(E4 + E4A1E4) - E4JE4)",
     D5 + "(E4 + E4A2E4 + E4A3E1A2E4 + " + C3 + "E4A1E3A2E4 - E4JE4)",
     D5 + "(E4 + E4A3E4 + E4A2E1A3E4 + " + C3 + "E4A1E2A3E4 - E4JE4)"},
    {D5 + "(E4A3E1 + E4A1E3A2E1 + " + C3 + "E4A2E1 - E4JE1)", D5 + "(E4A1E2 + E4A3E2 + " + C3 + "E4A2E3A1E2 - E4JE2)",
     D5 + "(E4A1E3 + E4A3E2A1E3 + " + C3 + "E4A2E3 - E4JE3)",
     D5 + "(E4 + E4A1E4 + E4A3E2A1E4 + " + C3 + "E4A2E3A1E4 - E4JE4)",
     D5 + "(E4A1E3A2E4 + E4A3E1A2E4 + " + C3 + "(E4 + E4A2E4) - E4JE4)",
     D5 + "(E4 + E4A3E4 + E4A1E2A3E4 + " + C3 + "E4A2E1A3E4 - E4JE4)"},
    {D5 + "(E4A2E1 + E4A1E3A2E1 + " + C3 + "E4A3E1 - E4JE1)", D5 + "(E4A1E2 + E4A2E3A1E2 + " + C3 + "E4A3E2 - E4JE2)",
     D5 + "(E4A1E3 + E4A2E3 + " + C3 + "E4A3E2A1E3 - E4JE3)",
     D5 + "(E4 + E4A1E4 + E4A2E3A1E4 + " + C3 + "E4A3E2A1E4 - E4JE4)",
     D5 + "(E4 + E4A2E4 + E4A1E3A2E4 + " + C3 + "E4A3E1A2E4 - E4JE4)",
     D5 + "(E4A1E2A3E4 + E4A2E1A3E4 + " + C3 + "(E4 + E4A3E4) - E4JE4)"},
};

std::vector<std::string> lower_right3(const std::vector<std::vector<std::string>>& tail) {
    std::vector<std::string> out;
    for (const auto& r : tail)
        for (int h = 3; h < 6; ++h) out.push_back(r[h]);
    return out;
}

std::vector<BlockText> full_table(CaseKind k) {
    switch (k) {
        case CaseKind::CaseI:
            return {
                {"M", 4,
                 {"E1", "E1A3E2", "E1A2E3", "E1A2E4",          //
                  "E2A3E1", "E2", "E2A1E3", "E2A1E4",          //
                  "E3A2E1", "E3A1E2", "E3", "E3A1E4",          //
                  "-E4A2E1", "-E4A1E2", "-E4A1E3", "-E4A1E2A3E4"}},
                {"E0", 1, {"E0"}},
                {"E4+E4A1E2A3E4", 1, {"E4 + E4A1E2A3E4"}},
            };
        case CaseKind::CaseII:
            return {
                {"M", 6,
                 rows(top3(" - ", ""),
                      {{"E1A2E3A1E4", "E1A2E4", "E1A3E4"},
                       {"E2A1E4", "E2A1E3A2E4", "E2A3E4"},
                       {"E3A1E4", "E3A2E4", "E3A1E2A3E4"}},
                      case2_tail)},
                {"N", 4, ejE_block("")},
                {"~", 1, {}},
            };
        case CaseKind::CaseP2:
            return {
                {"M", 5,
                 rows(top3(" + ", ""),
                      {{"E1A3E4", "E1A2E4"}, {"E2A3E4", "E2A1E3A2E4"}, {"E3A1E2A3E4", "E3A2E4"}},
                      {{"E4A2E1", "E4A2E3A1E2", "E4A2E3", "E4A2E1A3E4", "E4A1E3A2E4 + E4A3E1A2E4"},
                       {"E4A3E1", "E4A3E2", "E4A3E2A1E3", "E4A1E2A3E4 + E4A2E1A3E4", "E4A3E1A2E4"}})},
                {"N", 4, ejE_block("")},
                {"E4+E4A2E1A3E4+E4A3E1A2E4", 1, {"E4 + E4A2E1A3E4 + E4A3E1A2E4"}},
            };
        case CaseKind::CaseIII: {
            std::vector<std::string> n5;
            for (int g = 0; g < 5; ++g) {
                const std::string k = g == 0 ? "" : (g == 4 ? "[1/6]" : T3);
                for (int h = 0; h < 5; ++h) n5.push_back(k + "E" + std::to_string(g) + "JE" + std::to_string(h));
            }
            return {
                {"M", 5,
                 rows(top3(" - ", T3),
                      {{T3 + "(2E1A3E4 + E1A2E4 - E1JE4)", T3 + "(2E1A3E4 + E1A2E3A1E4 - E1JE4)"},
                       {T3 + "(2E2A3E4 + E2A1E3A2E4 - E2JE4)", T3 + "(2E2A3E4 + E2A1E4 - E2JE4)"},
                       {T3 + "(2E3A1E2A3E4 + E3A2E4 - E3JE4)", T3 + "(2E3A1E2A3E4 + E3A1E4 - E3JE4)"}},
                      {{T3 + "E4JE1 - E4A1E3A2E1", T3 + "E4JE2 - E4A1E2", T3 + "E4JE3 - E4A1E3",
                        T3 + "(E4JE4 - 2E4A1E2A3E4 - E4A1E3A2E4)", T3 + "(E4A1E3A2E4 - E4A1E2A3E4)"},
                       {T3 + "E4JE1 - E4A2E1", T3 + "E4JE2 - E4A2E3A1E2", T3 + "E4JE3 - E4A2E3",
                        T3 + "(E4A2E3A1E4 - E4A2E1A3E4)", T3 + "(E4JE4 - 2E4A2E1A3E4 - E4A2E3A1E4)"}})},
                {"N", 5, n5},
                {"~", 1, {}},
            };
        }
        case CaseKind::CaseIV: {
            const std::string c1 = "[1/(n-1)]";
            std::vector<std::string> n5;
            for (int g = 0; g < 5; ++g) {
                for (int h = 0; h < 5; ++h) {
                    std::string k;
                    if (g == 0) k = h == 4 ? "[1/(n-2)]" : "";
                    else k = h == 4 ? "[1/((n-1)*(n-2))]" : c1;
                    n5.push_back(k + "E" + std::to_string(g) + "JE" + std::to_string(h));
                }
            }
            return {
                {"M", 6,
                 rows(top3(" - ", c1),
                      {{"E1A2E3A1E4 - " + c1 + "E1JE4", "E1A2E4 - " + c1 + "E1JE4", "E1A3E4 - " + c1 + "E1JE4"},
                       {"E2A1E4 - " + c1 + "E2JE4", "E2A1E3A2E4 - " + c1 + "E2JE4", "E2A3E4 - " + c1 + "E2JE4"},
                       {"E3A1E4 - " + c1 + "E3JE4", "E3A2E4 - " + c1 + "E3JE4", "E3A1E2A3E4 - " + c1 + "E3JE4"}},
                      case4_tail)},
                {"N", 5, n5},
                {"~", 1, {}},
            };
        }
    }
    throw Error(ErrorCode::Internal, "structure", "unknown case");
}

std::vector<BlockText> e4_corner_table(CaseKind k) {
    switch (k) {
        case CaseKind::CaseI:
            return {{"2E4+E4A1E4", 1, {"2E4 + E4A1E4"}}, {"-E4A1E2A3E4", 1, {"-E4A1E2A3E4"}}};
        case CaseKind::CaseII:
            return {{"M", 3, lower_right3(case2_tail)}, {"~", 1, {}}};
        case CaseKind::CaseP2:
            return {
                {"M", 2,
                 {"E4A2E1A3E4", "E4A1E3A2E4 + E4A3E1A2E4", "E4A1E2A3E4 + E4A2E1A3E4", "E4A3E1A2E4"}},
                {"E4+M11+M22", 1, {"E4 + E4A2E1A3E4 + E4A3E1A2E4"}},
            };
        case CaseKind::CaseIII:
            return {
                {"M", 2,
                 {T3 + "(E4JE4 - 2E4A1E2A3E4 - E4A1E3A2E4)", T3 + "(E4A1E2A3E4 - E4A1E3A2E4)",
                  T3 + "(E4A2E1A3E4 - E4A2E3A1E4)", T3 + "(E4JE4 - 2E4A2E1A3E4 - E4A2E3A1E4)"}},
                {"[1/6]E4JE4", 1, {"[1/6]E4JE4"}},
                {"~", 1, {}},
            };
        case CaseKind::CaseIV:
            return {
                {"M", 3, lower_right3(case4_tail)},
                {"[1/c4]E4JE4", 1, {"[1/((n-1)*(n-2))]E4JE4"}},
                {"~", 1, {}},
            };
    }
    throw Error(ErrorCode::Internal, "structure", "unknown case");
}

}  // namespace

std::vector<BlockText> unit_table(CaseKind k, int corner) {
    if (corner < 0) return full_table(k);
    if (corner == 0) return {{"E0", 1, {"E0"}}};
    if (corner <= 3) {
        const std::string a = std::to_string(corner);
        if (k == CaseKind::CaseI) return {{"E" + a, 1, {"E" + a}}};
        return {{"[1/(n-1)]E" + a + "JE" + a, 1, {"[1/(n-1)]E" + a + "JE" + a}}, {"~", 1, {}}};
    }
    if (corner == 4) return e4_corner_table(k);
    throw Error(ErrorCode::DimensionMismatch, "structure", "corner index out of [0, 4]");
}

}  // namespace tforge::detail
