#pragma once

#include "rspin/correlator.hpp"
#include "rspin/memo.hpp"

namespace rspin {

// Closed-form primary values.
Rational open_primary_formula(const CorrelatorKey& key);
Rational ext_primary_formula(const CorrelatorKey& key);

// Literal implementations of the bipartition recursions for primary keys;
// they reproduce the closed forms from the one-point seeds.
Rational ext_primary_recursion(const CorrelatorKey& key);
Rational open_primary_recursion_check(const CorrelatorKey& key);

// A finite signed sum of products of correlators, plus an optional constant.
struct ExpansionTerm {
    Rational coeff;
    std::vector<CorrelatorKey> factors;  // empty: constant term
};
using Expansion = std::vector<ExpansionTerm>;

// Index of the insertion the deterministic reduction picks: largest (d, a),
// requiring d >= 1.  Returns -1 when the key is primary.
int pick_descendent(const CorrelatorKey& key);

// Topological recursion relations.  `chosen` is the insertion whose
// descendent level is reduced (its d must be >= 1); trr_internal
// distinguishes a second insertion.
Expansion trr_boundary(const CorrelatorKey& key, int chosen);
Expansion trr_internal(const CorrelatorKey& key, int chosen, int second);

// String/dilaton reductions: the key must contain a (0,0) resp. (0,1) insertion.
Expansion open_string_reduce(const CorrelatorKey& key);
Expansion open_dilaton_reduce(const CorrelatorKey& key);

// Extended-sector companions.
Expansion ext_string_reduce(const CorrelatorKey& key);
Expansion ext_trr_reduce(const CorrelatorKey& key, int chosen, int second);

// Correlator evaluation that routes open keys through the TRR recursion and
// closed/extended inputs through the hierarchy state.
class Evaluator {
public:
    enum class OpenPath { Recursion, Gd };

    Evaluator(const GDState& st, MemoStore* memo, OpenPath open_path = OpenPath::Recursion)
        : st_(st), memo_(memo), open_path_(open_path) {}

    const GDState& state() const { return st_; }

    // Open-sector value by descendent reduction; primaries via the closed form.
    Rational recursion_engine(const CorrelatorKey& key);

    // Extended-sector value by string/TRR reduction down to the primary recursion.
    Rational ext_recursion_value(const CorrelatorKey& key);

    // Value of a single factor inside an expansion.
    Rational factor_value(const CorrelatorKey& key);

    Rational expansion_value(const Expansion& exp);

private:
    const GDState& st_;
    MemoStore* memo_;
    OpenPath open_path_;
};

}  // namespace rspin
