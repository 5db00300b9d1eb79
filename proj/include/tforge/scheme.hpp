#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tforge/error.hpp"

namespace tforge {

using PointId = std::uint32_t;

/// A finite group given either as Z_2^m (elements are bitvectors, product is
/// XOR) or by an explicit Cayley table. Element 0 is always the identity.
class GroupSpec {
public:
    static GroupSpec elementary_abelian_2(int m);
    /// Validates that rows and columns are permutations and that an identity
    /// exists; relabels so the identity has index 0.
    static GroupSpec cayley_table(std::vector<std::vector<std::uint32_t>> table);
    static GroupSpec from_table_file(const std::string& path);
    /// "ea2:<m>" or "table:<path>".
    static GroupSpec parse(const std::string& spec);

    std::uint32_t order() const noexcept { return n_; }
    bool is_ea2_form() const noexcept { return ea2_; }
    int ea2_exponent() const noexcept { return m_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return ea2_ ? (a ^ b) : table_[std::size_t{a} * n_ + b];
    }
    std::uint32_t identity() const noexcept { return 0; }
    bool is_associative() const;
    std::string describe() const;

private:
    std::uint32_t n_ = 0;
    bool ea2_ = false;
    int m_ = 0;
    std::vector<std::uint32_t> table_;
};

/// X_G = {(x1, x2, x3) : x1 x2 = x3}; the point (x1, x2, x1 x2) has id x1 * n + x2.
class TripleSpace {
public:
    explicit TripleSpace(GroupSpec g);

    const GroupSpec& group() const noexcept { return group_; }
    std::uint32_t n() const noexcept { return group_.order(); }
    std::size_t size() const noexcept { return coords_.size(); }
    const std::array<std::uint32_t, 3>& triple(PointId x) const noexcept { return coords_[x]; }
    /// Coordinate d in [1, 3].
    std::uint32_t coord(PointId x, int d) const noexcept { return coords_[x][d - 1]; }
    PointId id_of(std::uint32_t x1, std::uint32_t x2) const noexcept { return x1 * n() + x2; }
    /// Point with coordinates (a at slot d1, b at slot d2), d1 != d2; the third
    /// coordinate is forced.
    PointId point_with(int d1, std::uint32_t a, int d2, std::uint32_t b) const;

private:
    GroupSpec group_;
    std::vector<std::array<std::uint32_t, 3>> coords_;
    std::vector<std::uint32_t> inverse_;
};

TripleSpace build_triple_space(const GroupSpec& g);

/// 0 iff x = y; d in {1,2,3} iff x != y share coordinate d; 4 otherwise.
int classify_pair(const TripleSpace& ts, PointId x, PointId y);

struct Ea2Check {
    bool group_criterion;   // every element squares to e and G is abelian
    bool triple_criterion;  // any two components of every triple multiply to the third
};
Ea2Check elementary_abelian_2_criteria(const GroupSpec& g);
/// Throws Internal if the two criteria disagree.
bool is_elementary_abelian_2(const GroupSpec& g);

enum class AxiomCheck { None, Sampled, Full };
AxiomCheck parse_axiom_check(const std::string& s);
const char* to_string(AxiomCheck a);

using Tensor = std::array<std::array<std::array<std::uint64_t, 5>, 5>, 5>;  // [g][h][i]

/// p_{gh}^i at a fixed witness. With a constancy mode, the count is compared
/// over all (Full) or seeded random (Sampled) pairs of R_i.
std::uint64_t intersection_brute(const TripleSpace& ts, int g, int h, int i, AxiomCheck constancy = AxiomCheck::None,
                                 std::uint64_t seed = 0x7f0e5eedULL);

/// Closed-form intersection numbers of the Cayley-table scheme.
std::uint64_t intersection_closed(int g, int h, int i, std::uint64_t n);

struct SchemeDescriptor {
    std::uint32_t n = 0;
    static constexpr int d = 4;
    std::array<std::uint64_t, 5> k{};
    Tensor p{};
    std::array<int, 5> converse{0, 1, 2, 3, 4};
    AxiomCheck checked = AxiomCheck::None;
    std::size_t pairs_checked = 0;

    std::uint64_t intersection(int g, int h, int i) const noexcept { return p[g][h][i]; }
};

/// Counts the tensor by brute force, checks the scheme axioms (partition,
/// symmetry, constant valencies, condition (iii) per mode) and the row-sum
/// identities. Violations throw AxiomViolation.
SchemeDescriptor build_scheme(const TripleSpace& ts, AxiomCheck mode, std::uint64_t seed = 0x7f0e5eedULL);

std::uint64_t valency(const SchemeDescriptor& sd, int i);

}  // namespace tforge
