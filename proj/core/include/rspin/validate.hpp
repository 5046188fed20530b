#pragma once

#include "rspin/recursion.hpp"

namespace rspin {

struct CrossBounds {
    int max_insertions = 4;
    int max_desc = 2;
};

struct Mismatch {
    CorrelatorKey key;
    std::string what;
};

struct CrossReport {
    long checked = 0;
    std::vector<Mismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string note;
};

// All insertion multisets with at most max_l insertions and total descendent
// level at most max_desc (twists 0..r-1), in deterministic order.
std::vector<std::vector<Insertion>> enumerate_insertions(int r, int max_l, int max_desc);

// Engine configuration sized so that every open key within the bounds, and
// every extraction its TRR reduction can generate, stays inside the
// truncation.
EngineConfig plan_config(int r, const CrossBounds& bounds);

// Configuration for extended primary keys with up to n insertions.
EngineConfig plan_ext_config(int r, int n);

// Configuration for the primary open sweep with k + 2l <= bound; nmax/budget
// can be forced upward to match a prescribed configuration.
EngineConfig plan_primary_config(int r, int max_kplus2l, int nmax_min = 0, int budget_min = 0);

// Configuration covering a single key, including everything its recursive
// reduction can touch.
EngineConfig plan_key_config(const CorrelatorKey& key);

// Every admissible open key within bounds: gd path = recursion path
// (= closed forms on primaries), exactly.
CrossReport cross_validate(const GDState& st, const CrossBounds& bounds, MemoStore* memo);

// Primary open sweep: gated keys match the closed form on every path,
// non-gated keys evaluate to zero on every path.
CrossReport primary_sweep(const GDState& st, int max_kplus2l, MemoStore* memo);

// Extended primaries with at most max_n insertions: closed form = recursion
// = wave-phase extraction.
CrossReport ext_primary_sweep(const GDState& st, int max_n);

// The bipartition product identity behind both primary recursions, checked on
// the full integer grid {0..l-1}^(l-1).
bool identity_check(int r, int l, int k);

// Hierarchy self-checks: flow commutativity, root round trip, the two-point
// row against the residue route, the z^-r residual, truncation stability.
std::vector<CheckResult> hierarchy_checks(const EngineConfig& cfg);

// Substitutes engine values into both TRRs over the given key range.
std::vector<CheckResult> trr_identity_checks(const GDState& st, const CrossBounds& bounds);

// Substitutes engine values into the string and dilaton reductions (open and
// extended sectors).
std::vector<CheckResult> string_dilaton_checks(const GDState& st, const CrossBounds& bounds);

}  // namespace rspin
