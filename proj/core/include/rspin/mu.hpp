#pragma once

#include <utility>
#include <vector>

#include "rspin/rational.hpp"

namespace rspin {

// Exact scalar in Q[mu] / (mu^(2(r+1)) + r), where mu is a fixed formal
// 2(r+1)-th root of -r.  mu^(r+1) plays the role of sqrt(-r); every fractional
// power of (-r) that appears in the correlator bookkeeping is an integer power
// of mu.  Stored exponents are normalized to 0 <= q < 2(r+1) with the
// reduction mu^(2(r+1)) = -r applied eagerly; zero coefficients are never
// stored.
class MuScalar {
public:
    MuScalar() : r_(0) {}
    explicit MuScalar(int r) : r_(r) {}
    MuScalar(int r, const Rational& c) : r_(r) {
        if (!c.is_zero()) terms_.emplace_back(0, c);
    }

    // c * mu^q for any integer q (reduced into the canonical window).
    static MuScalar mu_power(int r, long q, const Rational& c = Rational(1));

    int r() const { return r_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    bool is_monomial() const { return terms_.size() == 1; }

    // Extract the value as a rational; the support must be contained in {0}.
    Rational as_rational() const {
        if (terms_.empty()) return Rational(0);
        if (!is_rational()) throw ConsistencyError("mu-scalar is not rational: " + str());
        return terms_[0].second;
    }

    Rational coeff(int q) const {
        for (const auto& [e, c] : terms_)
            if (e == q) return c;
        return Rational(0);
    }

    MuScalar& operator+=(const MuScalar& o);
    MuScalar& operator-=(const MuScalar& o) { return *this += -o; }
    friend MuScalar operator+(MuScalar a, const MuScalar& b) { a += b; return a; }
    friend MuScalar operator-(MuScalar a, const MuScalar& b) { a -= b; return a; }
    friend MuScalar operator-(const MuScalar& a) {
        MuScalar n(a.r_);
        n.terms_.reserve(a.terms_.size());
        for (const auto& [e, c] : a.terms_) n.terms_.emplace_back(e, -c);
        return n;
    }

    friend MuScalar operator*(const MuScalar& a, const MuScalar& b);
    MuScalar& operator*=(const MuScalar& o) { return *this = *this * o; }

    MuScalar scaled(const Rational& c) const {
        MuScalar n(r_);
        if (c.is_zero()) return n;
        n.terms_.reserve(terms_.size());
        for (const auto& [e, k] : terms_) n.terms_.emplace_back(e, k * c);
        return n;
    }

    // Inverse of a single-term scalar: 1 / (c mu^q) = (1/c) mu^(-q).
    MuScalar inverse() const {
        if (terms_.size() != 1) throw UsageError("mu-scalar inverse requires a monomial");
        return mu_power(r_, -static_cast<long>(terms_[0].first), terms_[0].second.inverse());
    }

    friend bool operator==(const MuScalar& a, const MuScalar& b) {
        return a.r_ == b.r_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MuScalar& a, const MuScalar& b) { return !(a == b); }

    const std::vector<std::pair<int, Rational>>& terms() const { return terms_; }

    std::string str() const;

private:
    void check_r(const MuScalar& o) const {
        if (r_ != o.r_) throw UsageError("mu-scalar arithmetic with mismatched r");
    }

    int r_;
    std::vector<std::pair<int, Rational>> terms_;  // (exponent, coeff), sorted by exponent
};

}  // namespace rspin
