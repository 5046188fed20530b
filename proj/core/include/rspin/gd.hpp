#pragma once

#include <memory>
#include <vector>

#include "rspin/lax.hpp"

namespace rspin {

// Truncation parameters of a hierarchy solve.
struct EngineConfig {
    int r = 2;
    int nmax = 0;         // largest T index carried; >= r+1
    int budget = 2;       // max total degree in T_2..T_nmax (x is exempt)
    int zfloor = 0;       // most negative z exponent; <= -(r+1); 0 selects the default -(2r+2)
    int desc_budget = -1;  // optional bound on the descendent weight of monomials
    std::vector<std::pair<int, int>> caps;  // optional per-T-index degree caps

    void validate() const;
    std::string fingerprint() const;

    int effective_zfloor() const { return zfloor == 0 ? -(2 * r + 2) : zfloor; }
    // Positive powers of the root climb at most one z exponent per factor, so
    // intermediates are carried this much deeper to keep the reported window exact.
    int work_floor() const { return effective_zfloor() - (nmax - 1); }

    Support make_support(const Frame& f) const;
    // The Lax coefficients do not depend on the T_{mr} directions (those flows
    // vanish on L); their support drops the r-divisible variables.
    Support make_lax_support(const Frame& f) const;
};

// Frozen result of a hierarchy solve: the Lax symbol solved to budget, its
// cached fractional powers, the wave phase phi0 and the closed two-point
// functions.  Immutable after construction; safe for concurrent readers.
class GDState {
public:
    static GDState solve(const EngineConfig& cfg);

    GDState(GDState&&) = default;
    GDState& operator=(GDState&&) = default;
    GDState(const GDState&) = delete;
    GDState& operator=(const GDState&) = delete;

    const EngineConfig& config() const { return cfg_; }
    const Frame& frame() const { return *frame_; }
    const Support& support() const { return sup_; }
    const Support& lax_support() const { return lax_sup_; }

    // L0 = z^r + sum f_i z^i.
    const LaxSymbol& lax() const { return l0_; }
    const Series& f(int i) const { return f_[i]; }

    // K^a with K the monic r-th root of L0; cached for 1 <= a <= nmax and
    // -(r-1) <= a <= -1.
    const LaxSymbol& frac_power(int a) const;

    const Series& phi0() const { return phi0_; }

    // Two-point function of the closed hierarchy, 1 <= a <= nmax, 1 <= b <= r-1.
    const Series& omega(int a, int b) const;

private:
    GDState() = default;

    LaxSymbol assemble_lax(int degcap) const;
    void solve_lax();
    void cache_powers();
    void solve_omega();
    void solve_phi0();

    EngineConfig cfg_;
    std::unique_ptr<Frame> frame_;
    Support sup_, lax_sup_;
    std::vector<Series> f_;
    LaxSymbol l0_;
    std::map<int, LaxSymbol> kpow_;
    Series phi0_;
    std::vector<std::vector<Series>> omega_;  // [a-1][b-1]
};

}  // namespace rspin
