#pragma once

#include <vector>

#include "rspin/gd.hpp"

namespace rspin {

enum class Sector { Open, Closed, Extended };

std::string sector_name(Sector s);
Sector parse_sector(const std::string& s);

// An internal marked-point insertion: twist a with descendent level d.
struct Insertion {
    int a = 0;
    int d = 0;
    friend bool operator==(const Insertion& x, const Insertion& y) {
        return x.a == y.a && x.d == y.d;
    }
    friend bool operator<(const Insertion& x, const Insertion& y) {
        return x.a != y.a ? x.a < y.a : x.d < y.d;
    }
};

// Correlator key: sector, r, boundary-point count k (open sector only) and a
// multiset of insertions.  In the extended sector the single twist -1
// insertion is implicit and not listed.
struct CorrelatorKey {
    Sector sector = Sector::Open;
    int r = 2;
    int k = 0;
    std::vector<Insertion> ins;  // kept sorted

    CorrelatorKey() = default;
    CorrelatorKey(Sector s, int r_, std::vector<Insertion> insertions, int k_ = 0);

    int l() const { return static_cast<int>(ins.size()); }
    int sum_twist() const;
    int sum_desc() const;

    std::string canonical() const;  // "sector:r:k:[a.d,a.d,...]"
    static CorrelatorKey parse(const std::string& s);

    friend bool operator==(const CorrelatorKey& a, const CorrelatorKey& b) {
        return a.sector == b.sector && a.r == b.r && a.k == b.k && a.ins == b.ins;
    }
    friend bool operator<(const CorrelatorKey& a, const CorrelatorKey& b);
};

// Change of variables between the descendent variables t^a_d and the
// hierarchy times: T_index = factor * t^a_d.
struct TScale {
    int index;
    MuScalar factor;
};
TScale t_to_T_scale(int r, int a, int d);

// Dimension gate for open keys: the insertions and boundary count must match
// the moduli dimension exactly, with integral divisibilities.
bool dim_gate_open(const CorrelatorKey& key);

// Nonemptiness of the open moduli space for given boundary count and twists.
bool moduli_nonempty(int r, int k, const std::vector<int>& twists);

// The unique boundary count satisfying the open dimension gate for the given
// insertions, or -1 if none exists.
int gate_boundary_count(int r, const std::vector<Insertion>& ins);

// The T-frame monomial a key's GD extraction reads (open keys: the associated
// extended key's monomial). Throws TruncationError when out of reach.
Monomial extraction_monomial(const GDState& st, const CorrelatorKey& key);

// Extended correlator from the wave phase.
Rational ext_from_phi0(const GDState& st, const CorrelatorKey& key);

// Closed correlator from the two-point functions.  Requires a primary
// insertion of twist <= r-2; the value is asserted independent of the choice
// of extraction pair.
Rational closed_extract(const GDState& st, const CorrelatorKey& key);

// Open correlator through the open/closed-extended correspondence.
Rational open_from_ext(const GDState& st, const CorrelatorKey& key);

// Generic GD-path evaluation for any sector (degenerate keys evaluate to 0).
Rational gd_value(const GDState& st, const CorrelatorKey& key);

// The closed-extended generating series in the descendent variables, read off
// the wave phase through the change of variables; truncated at total degree
// `order`.
Series fext_series(const GDState& st, int order);

}  // namespace rspin
