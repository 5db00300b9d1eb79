#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tforge/talgebra.hpp"

namespace tforge::verify {

/// When an entry applies.
struct Hypothesis {
    bool needs_ea2 = false;
    /// Extra condition on (p, n); empty = always.
    std::function<bool(std::uint64_t p, std::uint64_t n)> when;
    std::string text;

    bool holds(const TerwilligerContext& ctx) const;
};

/// Index ranges an entry is quantified over.
enum class Quantifier {
    None,
    Perm3,         // {g,h,i} = [1,3]
    DistinctPair,  // g, h in [1,3], g != h
    Index5,        // i in [0,4]
    Pair5,         // h, i in [0,4]
    Triple5,       // g, h, i in [0,4]
};

const char* to_string(Quantifier q);
std::vector<std::map<char, int>> instantiations(Quantifier q);

enum class Relation { Equal, NonZero, TransposeEqual };

struct IdentityEntry {
    std::string id;
    std::string anchor;
    Hypothesis hyp;
    Quantifier quant = Quantifier::None;
    Relation rel = Relation::Equal;
    std::string lhs;
    std::string rhs;
    /// Optional per-instantiation condition (e.g. p^g_{ih} != 0).
    std::function<bool(const SchemeDescriptor&, const std::map<char, int>&)> instance_filter;
};

struct PredicateContext;

struct PredicateEntry {
    std::string id;
    std::string anchor;
    Hypothesis hyp;
    std::string quantifier;
    std::function<void(PredicateContext&)> check;
};

const std::vector<IdentityEntry>& identity_registry();
const std::vector<PredicateEntry>& predicate_registry();

enum class Status { Pass, Fail, Skipped };
const char* to_string(Status s);

struct EntryResult {
    std::string id;
    std::string anchor;
    std::string kind;  // "identity" | "predicate"
    Status status = Status::Skipped;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::vector<std::string> failures;
};

struct RunOptions {
    std::string filter;  // id prefix
    std::uint64_t seed = 0x7f0e5eedULL;
    /// Sampled (y, z) pairs per predicate at n > 4; n = 4 is exhaustive.
    std::size_t samples = 200;
    /// Evaluate the transposed identity instead (lhs^T = rhs^T).
    bool transposed = false;
    unsigned threads = 0;  // 0 = worker_count()
};

struct Report {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    PointId basepoint = 0;
    std::string suite;
    std::vector<EntryResult> entries;

    std::size_t count(Status s) const;
    bool pass() const { return count(Status::Fail) == 0; }
    nlohmann::json to_json() const;
};

Report run_identities(const TerwilligerContext& ctx, const RunOptions& opt = {});
Report run_predicates(const TerwilligerContext& ctx, const RunOptions& opt = {});
/// One identity, regardless of registry membership.
EntryResult run_entry(const TerwilligerContext& ctx, const IdentityEntry& e, const RunOptions& opt = {});
/// Both suites merged by id.
Report run_all(const TerwilligerContext& ctx, const RunOptions& opt = {});

struct ManifestEntry {
    std::string id;
    std::string kind;
    std::string hypothesis;
    std::string quantifier;
    std::string anchor;
};

/// Every registry entry, ordered by id.
std::vector<ManifestEntry> registry_manifest();
/// Tab-separated manifest, one entry per line.
std::string manifest_text();

/// Natural order on ids ("L2.9" < "L2.10").
bool id_less(const std::string& a, const std::string& b);

}  // namespace tforge::verify
