#include "rspin/lax.hpp"

#include <sstream>

namespace rspin {

LaxSymbol LaxSymbol::z_power(const Frame* f, Support sup, int zfloor, int e, const MuScalar& c) {
    LaxSymbol s(f, sup, zfloor);
    if (e >= zfloor && !c.is_zero()) s.terms_.emplace(e, Series::constant(f, sup, c));
    return s;
}

void LaxSymbol::set_coeff(int zexp, const Series& s) {
    if (zexp < zfloor_ || s.is_zero()) {
        terms_.erase(zexp);
        return;
    }
    terms_[zexp] = s;
}

void LaxSymbol::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first < zfloor_ || it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
}

LaxSymbol LaxSymbol::operator-() const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_) out.terms_.emplace(e, -s);
    return out;
}

LaxSymbol operator+(const LaxSymbol& a, const LaxSymbol& b) {
    if (a.frame_ == nullptr) return b;
    if (b.frame_ == nullptr) return a;
    a.check_compat(b);
    LaxSymbol out = a;
    for (const auto& [e, s] : b.terms_) {
        auto it = out.terms_.find(e);
        if (it == out.terms_.end()) {
            out.terms_.emplace(e, s);
        } else {
            it->second += s;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

LaxSymbol operator*(const LaxSymbol& a, const LaxSymbol& b) {
    a.check_compat(b);
    LaxSymbol out(a.frame_, a.sup_, a.zfloor_);
    for (const auto& [ea, sa] : a.terms_) {
        for (const auto& [eb, sb] : b.terms_) {
            int e = ea + eb;
            if (e < a.zfloor_) continue;
            Series p = sa * sb;
            if (p.is_zero()) continue;
            auto it = out.terms_.find(e);
            if (it == out.terms_.end())
                out.terms_.emplace(e, std::move(p));
            else
                it->second += p;
        }
    }
    out.prune();
    return out;
}

LaxSymbol LaxSymbol::mul_part(const LaxSymbol& a, const LaxSymbol& b, int deg) {
    a.check_compat(b);
    LaxSymbol out(a.frame_, a.sup_, a.zfloor_);
    for (const auto& [ea, sa] : a.terms_) {
        for (const auto& [eb, sb] : b.terms_) {
            int e = ea + eb;
            if (e < a.zfloor_) continue;
            Series p = Series::mul_part(sa, sb, deg);
            if (p.is_zero()) continue;
            auto it = out.terms_.find(e);
            if (it == out.terms_.end())
                out.terms_.emplace(e, std::move(p));
            else
                it->second += p;
        }
    }
    out.prune();
    return out;
}

LaxSymbol LaxSymbol::scaled(const MuScalar& c) const {
    LaxSymbol out(frame_, sup_, zfloor_);
    if (c.is_zero()) return out;
    for (const auto& [e, s] : terms_) {
        Series p = s.scaled(c);
        if (!p.is_zero()) out.terms_.emplace(e, std::move(p));
    }
    return out;
}

LaxSymbol LaxSymbol::mul_series(const Series& s) const {
    LaxSymbol out(frame_, sup_, zfloor_);
    if (s.is_zero()) return out;
    for (const auto& [e, c] : terms_) {
        Series p = c * s;
        if (!p.is_zero()) out.terms_.emplace(e, std::move(p));
    }
    return out;
}

LaxSymbol LaxSymbol::dz() const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_) {
        if (e == 0) continue;
        int en = e - 1;
        if (en < zfloor_) continue;
        out.terms_.emplace(en, s.scaled(MuScalar(frame_->r, Rational(e))));
    }
    return out;
}

LaxSymbol LaxSymbol::dx() const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_) {
        Series d = s.diff(0);
        if (!d.is_zero()) out.terms_.emplace(e, std::move(d));
    }
    return out;
}

LaxSymbol LaxSymbol::positive_part() const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_)
        if (e >= 0) out.terms_.emplace(e, s);
    return out;
}

LaxSymbol LaxSymbol::negative_part() const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_)
        if (e < 0) out.terms_.emplace(e, s);
    return out;
}

Series LaxSymbol::residue() const {
    if (zfloor_ > -1) throw TruncationError("residue requires the z floor to reach -1");
    return coeff(-1);
}

LaxSymbol LaxSymbol::pow(int n) const {
    if (n < 1) throw UsageError("symbol power requires n >= 1");
    LaxSymbol acc = *this;
    for (int i = 1; i < n; ++i) acc = acc * *this;
    return acc;
}

LaxSymbol LaxSymbol::monic_root(int r) const {
    if (top() != r) throw UsageError("monic root requires top degree r");
    Series lead = coeff(r);
    if (!(lead == Series::constant(frame_, sup_, MuScalar(frame_->r, 1))))
        throw UsageError("monic root requires unit leading coefficient");
    // u = (L - z^r) z^-r, top exponent <= -2 for a Lax-shaped symbol.  The
    // expansion runs one exponent deeper so the final shift by z stays exact.
    const int inner = zfloor_ - 1;
    LaxSymbol u(frame_, sup_, inner);
    for (const auto& [e, s] : terms_) {
        if (e == r) continue;
        int en = e - r;
        if (en >= inner) u.terms_.emplace(en, s);
    }
    // (1+u)^(1/r) = sum_m binom(1/r, m) u^m, truncated once z u^m drops below the floor
    LaxSymbol sum = z_power(frame_, sup_, inner, 0, MuScalar(frame_->r, 1));
    if (!u.is_zero()) {
        int utop = u.top();  // <= -1
        LaxSymbol upow = u;
        Rational coeff(1);
        for (int m = 1; 1 + m * utop >= zfloor_; ++m) {
            coeff *= Rational(1 - (m - 1) * r, m * r);  // binom(1/r, m) incrementally
            sum += upow.scaled(MuScalar(frame_->r, coeff));
            if (1 + (m + 1) * utop < zfloor_) break;
            upow = upow * u;
        }
    }
    // K = z * sum
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : sum.terms_)
        if (e + 1 >= zfloor_) out.terms_.emplace(e + 1, s);
    return out;
}

LaxSymbol LaxSymbol::monic_inverse() const {
    if (top() != 1) throw UsageError("monic inverse requires top term z");
    Series lead = coeff(1);
    if (!(lead == Series::constant(frame_, sup_, MuScalar(frame_->r, 1))))
        throw UsageError("monic inverse requires unit leading coefficient");
    // K = z (1 + v), v = K z^-1 - 1 with top exponent <= -1
    LaxSymbol v(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_) {
        if (e == 1) continue;
        int en = e - 1;
        if (en >= zfloor_) v.terms_.emplace(en, s);
    }
    LaxSymbol sum = z_power(frame_, sup_, zfloor_, 0, MuScalar(frame_->r, 1));
    if (!v.is_zero()) {
        int vtop = v.top();  // <= -1
        LaxSymbol vpow = v;
        int sign = -1;
        for (int m = 1; -1 + m * vtop >= zfloor_; ++m) {
            sum += vpow.scaled(MuScalar(frame_->r, Rational(sign)));
            sign = -sign;
            if (-1 + (m + 1) * vtop < zfloor_) break;
            vpow = vpow * v;
        }
    }
    // K^-1 = z^-1 * sum
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : sum.terms_)
        if (e - 1 >= zfloor_) out.terms_.emplace(e - 1, s);
    return out;
}

LaxSymbol LaxSymbol::degree_leq(int d) const {
    LaxSymbol out(frame_, sup_, zfloor_);
    for (const auto& [e, s] : terms_) {
        Series t = s.degree_leq(d);
        if (!t.is_zero()) out.terms_.emplace(e, std::move(t));
    }
    return out;
}

LaxSymbol LaxSymbol::truncate_floor(int floor) const {
    LaxSymbol out(frame_, sup_, floor);
    for (const auto& [e, s] : terms_)
        if (e >= floor) out.terms_.emplace(e, s);
    return out;
}

LaxSymbol LaxSymbol::poisson(const LaxSymbol& a, const LaxSymbol& b) {
    return a.dz() * b.dx() - a.dx() * b.dz();
}

LaxSymbol LaxSymbol::poisson_part(const LaxSymbol& a, const LaxSymbol& b, int deg) {
    return mul_part(a.dz(), b.dx(), deg) - mul_part(a.dx(), b.dz(), deg);
}

bool operator==(const LaxSymbol& a, const LaxSymbol& b) {
    if (a.frame_ == nullptr || b.frame_ == nullptr) return a.terms_.empty() && b.terms_.empty();
    if (*a.frame_ != *b.frame_ || a.zfloor_ != b.zfloor_) return false;
    return a.terms_ == b.terms_;
}

std::string LaxSymbol::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "[" << it->second.str() << "]*z^" << it->first;
    }
    return os.str();
}

}  // namespace rspin
