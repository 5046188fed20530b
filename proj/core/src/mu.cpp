#include "rspin/mu.hpp"

#include <algorithm>
#include <sstream>

namespace rspin {

MuScalar MuScalar::mu_power(int r, long q, const Rational& c) {
    MuScalar m(r);
    if (c.is_zero()) return m;
    const long mod = 2L * (r + 1);
    long e = q % mod;
    if (e < 0) e += mod;
    // mu^(q) = (-r)^t mu^e with t = (q - e) / mod
    long t = (q - e) / mod;
    Rational factor = Rational(-r).pow(t);
    m.terms_.emplace_back(static_cast<int>(e), c * factor);
    return m;
}

MuScalar& MuScalar::operator+=(const MuScalar& o) {
    if (terms_.empty()) {
        if (r_ == 0) r_ = o.r_;
        else check_r(o);
        terms_ = o.terms_;
        return *this;
    }
    if (o.terms_.empty()) return *this;
    check_r(o);
    std::vector<std::pair<int, Rational>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->first < b->first) {
            merged.push_back(*a++);
        } else if (b->first < a->first) {
            merged.push_back(*b++);
        } else {
            Rational s = a->second + b->second;
            if (!s.is_zero()) merged.emplace_back(a->first, s);
            ++a;
            ++b;
        }
    }
    merged.insert(merged.end(), a, terms_.cend());
    merged.insert(merged.end(), b, o.terms_.cend());
    terms_ = std::move(merged);
    return *this;
}

MuScalar operator*(const MuScalar& a, const MuScalar& b) {
    if (a.terms_.empty()) return MuScalar(a.r_ ? a.r_ : b.r_);
    if (b.terms_.empty()) return MuScalar(b.r_ ? b.r_ : a.r_);
    a.check_r(b);
    MuScalar acc(a.r_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            acc += MuScalar::mu_power(a.r_, static_cast<long>(ea) + eb, ca * cb);
    return acc;
}

std::string MuScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << c.str();
        } else {
            os << "(" << c.str() << ")*mu^" << e;
        }
    }
    return os.str();
}

}  // namespace rspin
