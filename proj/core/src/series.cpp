#include "rspin/series.hpp"

#include <algorithm>
#include <sstream>

namespace rspin {

std::string Monomial::str(const Frame& f) const {
    std::ostringstream os;
    bool first = true;
    for (int v = 0; v < f.nvars; ++v) {
        if (!e[v]) continue;
        if (!first) os << "*";
        first = false;
        os << f.var_name(v);
        if (e[v] > 1) os << "^" << e[v];
    }
    if (first) os << "1";
    return os.str();
}

namespace {
struct TermLess {
    bool operator()(const Series::Term& a, const Series::Term& b) const {
        if (a.deg != b.deg) return a.deg < b.deg;
        return a.m < b.m;
    }
};
}  // namespace

Series Series::constant(const Frame* f, Support sup, const MuScalar& c) {
    return monomial(f, sup, Monomial::one(), c);
}

Series Series::monomial(const Frame* f, Support sup, const Monomial& m, const MuScalar& c) {
    Series s(f, sup);
    if (!c.is_zero() && sup.allows(*f, m)) s.terms_.push_back({m, m.degree(*f), c});
    return s;
}

MuScalar Series::coeff(const Monomial& m) const {
    if (!sup_.allows(*frame_, m))
        throw TruncationError("coefficient of " + m.str(*frame_) + " is outside the configured budget");
    return coeff_raw(m);
}

MuScalar Series::coeff_raw(const Monomial& m) const {
    Term probe{m, m.degree(*frame_), MuScalar()};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, TermLess{});
    if (it != terms_.end() && it->m == m) return it->c;
    return MuScalar(frame_ ? frame_->r : 0);
}

Series Series::operator-() const {
    Series n(frame_, sup_);
    n.terms_.reserve(terms_.size());
    for (const auto& t : terms_) n.terms_.push_back({t.m, t.deg, -t.c});
    return n;
}

Series operator+(const Series& a, const Series& b) {
    if (a.frame_ == nullptr) return b;
    if (b.frame_ == nullptr) return a;
    a.check_compat(b);
    Series out(a.frame_, a.sup_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    TermLess less;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        if (less(*ia, *ib)) {
            out.terms_.push_back(*ia++);
        } else if (less(*ib, *ia)) {
            out.terms_.push_back(*ib++);
        } else {
            MuScalar c = ia->c + ib->c;
            if (!c.is_zero()) out.terms_.push_back({ia->m, ia->deg, c});
            ++ia;
            ++ib;
        }
    }
    out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
    out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
    return out;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    if (a.frame_ == nullptr || b.frame_ == nullptr) return Series();
    a.check_compat(b);
    Series::Builder acc(a.frame_, a.sup_);
    const int budget = a.sup_.budget;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            if (ta.deg + tb.deg > budget) break;  // terms sorted by degree
            Monomial m = ta.m * tb.m;
            if (!a.sup_.allows(*a.frame_, m)) continue;
            acc.add(m, ta.c * tb.c);
        }
    }
    return acc.build();
}

Series Series::mul_part(const Series& a, const Series& b, int deg) {
    a.check_compat(b);
    Series::Builder acc(a.frame_, a.sup_);
    for (const auto& ta : a.terms_) {
        if (ta.deg > deg) break;
        int want = deg - ta.deg;
        // b's terms with degree == want form a contiguous sorted range
        Series::Term lo{Monomial::one(), want, MuScalar()};
        auto it = std::lower_bound(b.terms_.begin(), b.terms_.end(), lo, TermLess{});
        for (; it != b.terms_.end() && it->deg == want; ++it) {
            Monomial m = ta.m * it->m;
            if (!a.sup_.allows(*a.frame_, m)) continue;
            acc.add(m, ta.c * it->c);
        }
    }
    return acc.build();
}

Series Series::degree_part(int d) const {
    Series out(frame_, sup_);
    Term lo{Monomial::one(), d, MuScalar()};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), lo, TermLess{});
    for (; it != terms_.end() && it->deg == d; ++it) out.terms_.push_back(*it);
    return out;
}

Series Series::degree_leq(int d) const {
    Series out(frame_, sup_);
    Term lo{Monomial::one(), d + 1, MuScalar()};
    auto end = std::lower_bound(terms_.begin(), terms_.end(), lo, TermLess{});
    out.terms_.assign(terms_.begin(), end);
    return out;
}

Series Series::scaled(const MuScalar& c) const {
    Series out(frame_, sup_);
    if (c.is_zero()) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        MuScalar k = t.c * c;
        if (!k.is_zero()) out.terms_.push_back({t.m, t.deg, k});
    }
    return out;
}

Series Series::diff(int v) const {
    if (v < 0 || v >= frame_->nvars) throw UsageError("differentiation in unknown variable");
    Builder acc(frame_, sup_);
    for (const auto& t : terms_) {
        int e = t.m.exp(v);
        if (!e) continue;
        Monomial m = t.m;
        m.e[v] = static_cast<uint16_t>(e - 1);
        acc.add(m, t.c.scaled(Rational(e)));
    }
    return acc.build();
}

Series Series::subst(const Frame* target, Support target_sup,
                     const std::function<const Series*(int)>& image) const {
    Series acc = Series::zero(target, target_sup);
    // power cache per source variable
    std::map<std::pair<int, int>, Series> powers;
    auto power = [&](int v, int e) -> const Series& {
        auto it = powers.find({v, e});
        if (it != powers.end()) return it->second;
        const Series* img = image(v);
        Series base;
        if (img == nullptr) {
            if (*frame_ != *target)
                throw UsageError("substitution image missing for " + frame_->var_name(v));
            base = Series::monomial(target, target_sup, Monomial::var(v), MuScalar(frame_->r, 1));
        } else {
            if (*img->frame_ptr() != *target || !(img->support() == target_sup))
                throw UsageError("substitution image frame/budget mismatch");
            base = *img;
        }
        Series p = base;
        for (int k = 2; k <= e; ++k) p = p * base;
        return powers.emplace(std::make_pair(v, e), std::move(p)).first->second;
    };
    for (const auto& t : terms_) {
        Series prod = Series::constant(target, target_sup, t.c);
        for (int v = 0; v < frame_->nvars && !prod.is_zero(); ++v)
            if (t.m.exp(v)) prod = prod * power(v, t.m.exp(v));
        acc += prod;
    }
    return acc;
}

Series Series::truncated(const Support& sup) const {
    Series out(frame_, sup);
    for (const auto& t : terms_)
        if (sup.allows(*frame_, t.m)) out.terms_.push_back(t);
    return out;
}

bool operator==(const Series& a, const Series& b) {
    if (a.frame_ == nullptr && b.frame_ == nullptr) return true;
    if (a.frame_ == nullptr) return b.terms_.empty();
    if (b.frame_ == nullptr) return a.terms_.empty();
    if (*a.frame_ != *b.frame_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c.str() << ")*" << t.m.str(*frame_);
    }
    return os.str();
}

void Series::Builder::add(const Monomial& m, const MuScalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = acc_.emplace(m, c);
    if (!fresh) it->second += c;
}

Series Series::Builder::build() {
    Series out(frame_, sup_);
    out.terms_.reserve(acc_.size());
    for (auto& [m, c] : acc_) {
        if (c.is_zero()) continue;
        out.terms_.push_back({m, m.degree(*frame_), std::move(c)});
    }
    std::sort(out.terms_.begin(), out.terms_.end(), TermLess{});
    acc_.clear();
    return out;
}

}  // namespace rspin
