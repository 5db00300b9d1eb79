#include "tforge/scheme.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace tforge {

// ---------------------------------------------------------------- GroupSpec

GroupSpec GroupSpec::elementary_abelian_2(int m) {
    if (m < 1 || m > 15) throw Error(ErrorCode::MalformedGroup, "scheme", "ea2 exponent must be in [1, 15]");
    GroupSpec g;
    g.n_ = 1u << m;
    g.ea2_ = true;
    g.m_ = m;
    return g;
}

GroupSpec GroupSpec::cayley_table(std::vector<std::vector<std::uint32_t>> table) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorCode::MalformedGroup, "scheme", "empty Cayley table");
    for (const auto& row : table) {
        if (row.size() != n) throw Error(ErrorCode::MalformedGroup, "scheme", "Cayley table is not square");
        for (auto v : row) {
            if (v >= n) throw Error(ErrorCode::MalformedGroup, "scheme", "entry out of range");
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<char> seen_row(n, 0), seen_col(n, 0);
        for (std::size_t c = 0; c < n; ++c) {
            if (seen_row[table[r][c]]++) {
                throw Error(ErrorCode::MalformedGroup, "scheme", "row " + std::to_string(r) + " is not a permutation");
            }
            if (seen_col[table[c][r]]++) {
                throw Error(ErrorCode::MalformedGroup, "scheme", "column " + std::to_string(r) + " is not a permutation");
            }
        }
    }
    std::size_t e = n;
    for (std::size_t a = 0; a < n && e == n; ++a) {
        bool ok = true;
        for (std::size_t b = 0; b < n && ok; ++b) ok = table[a][b] == b && table[b][a] == b;
        if (ok) e = a;
    }
    if (e == n) throw Error(ErrorCode::MalformedGroup, "scheme", "no identity element");

    // Swap labels e <-> 0 so the identity is element 0.
    auto relabel = [e](std::uint32_t v) -> std::uint32_t {
        if (v == e) return 0;
        if (v == 0) return static_cast<std::uint32_t>(e);
        return v;
    };
    GroupSpec g;
    g.n_ = static_cast<std::uint32_t>(n);
    g.table_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) g.table_[relabel(r) * n + relabel(c)] = relabel(table[r][c]);
    return g;
}

GroupSpec GroupSpec::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "scheme", "cannot open " + path);
    std::size_t n = 0;
    if (!(in >> n) || n == 0) throw Error(ErrorCode::Parse, "scheme", "first line must hold the group order");
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
    for (auto& row : t) {
        for (auto& v : row) {
            long long x;
            if (!(in >> x)) throw Error(ErrorCode::Parse, "scheme", "truncated Cayley table in " + path);
            if (x < 0) throw Error(ErrorCode::MalformedGroup, "scheme", "negative element index");
            v = static_cast<std::uint32_t>(x);
        }
    }
    return cayley_table(std::move(t));
}

GroupSpec GroupSpec::parse(const std::string& spec) {
    if (spec.rfind("ea2:", 0) == 0) {
        int m = 0;
        try {
            m = std::stoi(spec.substr(4));
        } catch (...) {
            throw Error(ErrorCode::Parse, "scheme", "bad group spec " + spec);
        }
        return elementary_abelian_2(m);
    }
    if (spec.rfind("table:", 0) == 0) return from_table_file(spec.substr(6));
    throw Error(ErrorCode::Parse, "scheme", "group spec must be ea2:<m> or table:<path>");
}

bool GroupSpec::is_associative() const {
    for (std::uint32_t a = 0; a < n_; ++a)
        for (std::uint32_t b = 0; b < n_; ++b)
            for (std::uint32_t c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
}

std::string GroupSpec::describe() const {
    return ea2_ ? "ea2:" + std::to_string(m_) : "table(n=" + std::to_string(n_) + ")";
}

// -------------------------------------------------------------- TripleSpace

TripleSpace::TripleSpace(GroupSpec g) : group_(std::move(g)) {
    const std::uint32_t n = group_.order();
    if (n < 3) throw Error(ErrorCode::MalformedGroup, "scheme", "the scheme needs |G| >= 3");
    coords_.resize(std::size_t{n} * n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) coords_[id_of(a, b)] = {a, b, group_.mul(a, b)};
    inverse_.resize(n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if (group_.mul(a, b) == 0) inverse_[a] = b;
}

PointId TripleSpace::point_with(int d1, std::uint32_t a, int d2, std::uint32_t b) const {
    if (d1 > d2) {
        std::swap(d1, d2);
        std::swap(a, b);
    }
    if (d1 == 1 && d2 == 2) return id_of(a, b);
    if (d1 == 1 && d2 == 3) return id_of(a, group_.mul(inverse_[a], b));
    if (d1 == 2 && d2 == 3) return id_of(group_.mul(b, inverse_[a]), a);
    throw Error(ErrorCode::Internal, "scheme", "point_with needs two distinct slots in [1, 3]");
}

TripleSpace build_triple_space(const GroupSpec& g) { return TripleSpace(g); }

int classify_pair(const TripleSpace& ts, PointId x, PointId y) {
    if (x == y) return 0;
    const auto& a = ts.triple(x);
    const auto& b = ts.triple(y);
    for (int d = 0; d < 3; ++d)
        if (a[d] == b[d]) return d + 1;
    return 4;
}

Ea2Check elementary_abelian_2_criteria(const GroupSpec& g) {
    Ea2Check c{true, true};
    const std::uint32_t n = g.order();
    for (std::uint32_t a = 0; a < n && c.group_criterion; ++a) {
        if (g.mul(a, a) != 0) c.group_criterion = false;
        for (std::uint32_t b = 0; b < n && c.group_criterion; ++b)
            if (g.mul(a, b) != g.mul(b, a)) c.group_criterion = false;
    }
    for (std::uint32_t a = 0; a < n && c.triple_criterion; ++a) {
        for (std::uint32_t b = 0; b < n && c.triple_criterion; ++b) {
            const std::uint32_t t[3] = {a, b, g.mul(a, b)};
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v)
                    if (u != v && g.mul(t[u], t[v]) != t[3 - u - v]) c.triple_criterion = false;
        }
    }
    return c;
}

bool is_elementary_abelian_2(const GroupSpec& g) {
    const auto c = elementary_abelian_2_criteria(g);
    if (c.group_criterion != c.triple_criterion) {
        throw Error(ErrorCode::Internal, "scheme", "group and triple criteria for elementary abelian 2 disagree");
    }
    return c.group_criterion;
}

AxiomCheck parse_axiom_check(const std::string& s) {
    if (s == "full") return AxiomCheck::Full;
    if (s == "sampled") return AxiomCheck::Sampled;
    if (s == "none") return AxiomCheck::None;
    throw Error(ErrorCode::Parse, "scheme", "axiom check must be full|sampled|none");
}

const char* to_string(AxiomCheck a) {
    switch (a) {
        case AxiomCheck::Full: return "full";
        case AxiomCheck::Sampled: return "sampled";
        case AxiomCheck::None: return "none";
    }
    return "none";
}

// ------------------------------------------------------ intersection numbers

namespace {

constexpr std::size_t kSamplesPerRelation = 24;

using Counts = std::array<std::array<std::uint64_t, 5>, 5>;

Counts count_pair(const TripleSpace& ts, PointId x, PointId y) {
    Counts c{};
    for (PointId z = 0; z < ts.size(); ++z) ++c[classify_pair(ts, x, z)][classify_pair(ts, z, y)];
    return c;
}

std::vector<PointId> ring(const TripleSpace& ts, PointId x, int i) {
    std::vector<PointId> out;
    for (PointId y = 0; y < ts.size(); ++y)
        if (classify_pair(ts, x, y) == i) out.push_back(y);
    return out;
}

/// Pairs of R_i to compare against the witness; the witness comes first.
std::vector<std::pair<PointId, PointId>> pairs_for(const TripleSpace& ts, int i, AxiomCheck mode, std::uint64_t seed) {
    std::vector<std::pair<PointId, PointId>> out;
    auto base = ring(ts, 0, i);
    if (base.empty()) throw Error(ErrorCode::AxiomViolation, "scheme", "relation R_" + std::to_string(i) + " is empty");
    out.emplace_back(0, base.front());
    if (mode == AxiomCheck::Full) {
        for (PointId x = 0; x < ts.size(); ++x)
            for (PointId y : ring(ts, x, i)) out.emplace_back(x, y);
    } else if (mode == AxiomCheck::Sampled) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(ts.size() - 1));
        for (std::size_t s = 0; s < kSamplesPerRelation; ++s) {
            PointId x = pick(rng);
            auto r = ring(ts, x, i);
            std::uniform_int_distribution<std::size_t> which(0, r.size() - 1);
            out.emplace_back(x, r[which(rng)]);
        }
    }
    return out;
}

std::string pair_text(const TripleSpace& ts, PointId x, PointId y) {
    std::ostringstream os;
    const auto& a = ts.triple(x);
    const auto& b = ts.triple(y);
    os << "x=" << x << "(" << a[0] << "," << a[1] << "," << a[2] << ") y=" << y << "(" << b[0] << "," << b[1] << ","
       << b[2] << ")";
    return os.str();
}

}  // namespace

std::uint64_t intersection_brute(const TripleSpace& ts, int g, int h, int i, AxiomCheck constancy, std::uint64_t seed) {
    if (g < 0 || g > 4 || h < 0 || h > 4 || i < 0 || i > 4) {
        throw Error(ErrorCode::DimensionMismatch, "scheme", "relation index out of [0, 4]");
    }
    auto pairs = pairs_for(ts, i, constancy, seed);
    const std::uint64_t value = count_pair(ts, pairs.front().first, pairs.front().second)[g][h];
    for (std::size_t s = 1; s < pairs.size(); ++s) {
        auto [x, y] = pairs[s];
        const std::uint64_t v = count_pair(ts, x, y)[g][h];
        if (v != value) {
            throw Error(ErrorCode::AxiomViolation, "scheme",
                        "p^" + std::to_string(i) + "_" + std::to_string(g) + std::to_string(h) + " not constant: " +
                            std::to_string(value) + " at witness vs " + std::to_string(v) + " at " + pair_text(ts, x, y));
        }
    }
    return value;
}

std::uint64_t intersection_closed(int g, int h, int i, std::uint64_t n) {
    const int lo = std::min(g, h), hi = std::max(g, h);
    const bool mid_g = g >= 1 && g <= 3, mid_h = h >= 1 && h <= 3;
    if (i == 0) {
        if (g != h) return 0;
        if (g == 0) return 1;
        if (g <= 3) return n - 1;
        return n * n - 3 * n + 2;
    }
    if (i >= 1 && i <= 3) {
        if ((lo == 0 && hi == i) || (mid_g && mid_h && g != h && g != i && h != i)) return 1;
        if ((g == i && h == i) || (hi == 4 && lo >= 1 && lo <= 3 && lo != i)) return n - 2;
        if (g == 4 && h == 4) return n * n - 5 * n + 6;
        return 0;
    }
    // i == 4
    if ((lo == 0 && hi == 4) || (mid_g && mid_h && g != h)) return 1;
    if (hi == 4 && lo >= 1 && lo <= 3) return n - 3;
    if (g == 4 && h == 4) return n * n - 6 * n + 10;
    return 0;
}

SchemeDescriptor build_scheme(const TripleSpace& ts, AxiomCheck mode, std::uint64_t seed) {
    if (mode != AxiomCheck::None && !ts.group().is_associative())
        throw Error(ErrorCode::MalformedGroup, "scheme", "Cayley table is not associative");
    SchemeDescriptor sd;
    sd.n = ts.n();
    sd.checked = mode;
    const std::size_t N = ts.size();

    // Partition, symmetry and constant valencies over every pair.
    for (PointId x = 0; x < N; ++x) {
        std::array<std::uint64_t, 5> row{};
        for (PointId y = 0; y < N; ++y) {
            const int r = classify_pair(ts, x, y);
            if (r != classify_pair(ts, y, x)) {
                throw Error(ErrorCode::AxiomViolation, "scheme", "asymmetric pair " + pair_text(ts, x, y));
            }
            ++row[r];
        }
        if (x == 0) {
            sd.k = row;
        } else if (row != sd.k) {
            throw Error(ErrorCode::AxiomViolation, "scheme", "valencies differ at point " + std::to_string(x));
        }
    }

    for (int i = 0; i < 5; ++i) {
        auto pairs = pairs_for(ts, i, mode, seed);
        const Counts base = count_pair(ts, pairs.front().first, pairs.front().second);
        for (int g = 0; g < 5; ++g)
            for (int h = 0; h < 5; ++h) sd.p[g][h][i] = base[g][h];
        for (std::size_t s = 1; s < pairs.size(); ++s) {
            auto [x, y] = pairs[s];
            if (count_pair(ts, x, y) != base) {
                throw Error(ErrorCode::AxiomViolation, "scheme",
                            "intersection numbers for R_" + std::to_string(i) + " not constant at " + pair_text(ts, x, y));
            }
        }
        sd.pairs_checked += pairs.size();
    }

    std::uint64_t total = 0;
    for (int i = 0; i < 5; ++i) {
        total += sd.k[i];
        if (sd.p[i][i][0] != sd.k[i]) throw Error(ErrorCode::AxiomViolation, "scheme", "k_i != p_ii^0");
    }
    if (total != std::uint64_t{N}) throw Error(ErrorCode::AxiomViolation, "scheme", "valencies do not sum to |X|");
    for (int g = 0; g < 5; ++g) {
        for (int i = 0; i < 5; ++i) {
            std::uint64_t s = 0;
            for (int h = 0; h < 5; ++h) s += sd.p[g][h][i];
            if (s != sd.k[g]) throw Error(ErrorCode::AxiomViolation, "scheme", "row sum of p_g*^i differs from k_g");
        }
    }
    return sd;
}

std::uint64_t valency(const SchemeDescriptor& sd, int i) {
    if (i < 0 || i > 4) throw Error(ErrorCode::DimensionMismatch, "scheme", "valency index out of [0, 4]");
    return sd.k[i];
}

}  // namespace tforge
