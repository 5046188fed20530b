#pragma once

#include <map>

#include "rspin/series.hpp"

namespace rspin {

// Laurent polynomial in z over Series, truncated below a fixed floor.
// Houses the dispersionless Lax symbol L0, its fractional powers and the
// Poisson bracket that drives the hierarchy flows.
class LaxSymbol {
public:
    LaxSymbol() : frame_(nullptr), zfloor_(0) {}
    LaxSymbol(const Frame* frame, Support sup, int zfloor)
        : frame_(frame), sup_(sup), zfloor_(zfloor) {}

    static LaxSymbol z_power(const Frame* f, Support sup, int zfloor, int e, const MuScalar& c);

    const Frame* frame_ptr() const { return frame_; }
    const Support& support() const { return sup_; }
    int zfloor() const { return zfloor_; }
    bool is_zero() const { return terms_.empty(); }
    int top() const { return terms_.empty() ? zfloor_ - 1 : terms_.rbegin()->first; }
    const std::map<int, Series>& terms() const { return terms_; }

    Series coeff(int zexp) const {
        auto it = terms_.find(zexp);
        if (it != terms_.end()) return it->second;
        return Series::zero(frame_, sup_);
    }

    void set_coeff(int zexp, const Series& s);

    LaxSymbol operator-() const;
    friend LaxSymbol operator+(const LaxSymbol& a, const LaxSymbol& b);
    friend LaxSymbol operator-(const LaxSymbol& a, const LaxSymbol& b) { return a + (-b); }
    friend LaxSymbol operator*(const LaxSymbol& a, const LaxSymbol& b);
    LaxSymbol& operator+=(const LaxSymbol& o) { return *this = *this + o; }

    LaxSymbol scaled(const MuScalar& c) const;
    LaxSymbol mul_series(const Series& s) const;

    LaxSymbol dz() const;
    LaxSymbol dx() const;

    // Exponents >= 0.
    LaxSymbol positive_part() const;
    LaxSymbol negative_part() const;

    // Coefficient of z^(-1); requires the floor to reach it.
    Series residue() const;

    LaxSymbol pow(int n) const;

    // Unique monic r-th root: K with top term z and K^r = *this down to the
    // floor, for *this monic of top degree r.  Binomial series in
    // (*this - z^r) / z^r.
    LaxSymbol monic_root(int r) const;

    // Inverse of a symbol with top term exactly z (geometric series).
    LaxSymbol monic_inverse() const;

    // Poisson bracket {A, B} = dz(A) dx(B) - dx(A) dz(B).
    static LaxSymbol poisson(const LaxSymbol& a, const LaxSymbol& b);

    // T-degree-d part of the Poisson bracket (exact; used by the degree lift).
    static LaxSymbol poisson_part(const LaxSymbol& a, const LaxSymbol& b, int deg);

    // T-degree-d part of the product.
    static LaxSymbol mul_part(const LaxSymbol& a, const LaxSymbol& b, int deg);

    // Coefficients restricted to T-degree <= d.
    LaxSymbol degree_leq(int d) const;
    // Drop z exponents below a higher floor (for comparisons at the reported floor).
    LaxSymbol truncate_floor(int floor) const;

    friend bool operator==(const LaxSymbol& a, const LaxSymbol& b);
    friend bool operator!=(const LaxSymbol& a, const LaxSymbol& b) { return !(a == b); }

    std::string str() const;

private:
    void check_compat(const LaxSymbol& o) const {
        if (frame_ == nullptr || o.frame_ == nullptr) throw UsageError("symbol without a frame");
        if (*frame_ != *o.frame_ || !(sup_ == o.sup_) || zfloor_ != o.zfloor_)
            throw UsageError("symbol frame/budget mismatch");
    }
    void prune();

    const Frame* frame_;
    Support sup_;
    int zfloor_;
    std::map<int, Series> terms_;
};

}  // namespace rspin
