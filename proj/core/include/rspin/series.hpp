#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rspin/frames.hpp"
#include "rspin/mu.hpp"

namespace rspin {

// Truncation limits for a series ring.  `budget` caps the total degree over
// budgeted variables; `caps` optionally caps individual variables and
// `desc_budget` the descendent weight.  Every limit cuts a downward-closed
// set of monomials, so truncated arithmetic stays exact on the kept support.
struct Support {
    int budget = 0;
    int desc_budget = -1;  // -1: unlimited
    std::array<uint16_t, kMaxVars> caps{};
    bool has_caps = false;

    static Support plain(int budget) {
        Support s;
        s.budget = budget;
        return s;
    }

    bool allows(const Frame& f, const Monomial& m) const {
        if (m.degree(f) > budget) return false;
        if (desc_budget >= 0 && m.desc_weight(f) > desc_budget) return false;
        if (has_caps) {
            for (int v = 0; v < f.nvars; ++v)
                if (f.budgeted(v) && m.e[v] > caps[v]) return false;
        }
        return true;
    }

    bool operator==(const Support& o) const {
        return budget == o.budget && desc_budget == o.desc_budget && has_caps == o.has_caps &&
               (!has_caps || caps == o.caps);
    }
};

// Sparse truncated multivariate series over MuScalar.  Immutable value type;
// terms are kept sorted in graded-lex order (total budgeted degree first) and
// never store zero coefficients.
class Series {
public:
    struct Term {
        Monomial m;
        int deg;  // budgeted degree, cached
        MuScalar c;
    };

    Series() : frame_(nullptr) {}
    Series(const Frame* frame, Support sup) : frame_(frame), sup_(sup) {}

    static Series zero(const Frame* f, Support sup) { return Series(f, sup); }
    static Series constant(const Frame* f, Support sup, const MuScalar& c);
    static Series monomial(const Frame* f, Support sup, const Monomial& m, const MuScalar& c);

    const Frame& frame() const { return *frame_; }
    const Frame* frame_ptr() const { return frame_; }
    const Support& support() const { return sup_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    const std::vector<Term>& terms() const { return terms_; }

    // Exact coefficient; zero only when the monomial is inside the truncation.
    MuScalar coeff(const Monomial& m) const;
    // Coefficient without the reach check (internal use on known-good support).
    MuScalar coeff_raw(const Monomial& m) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }

    Series scaled(const MuScalar& c) const;
    Series diff(int v) const;

    // Product keeping only terms of exact budgeted degree `deg`.
    static Series mul_part(const Series& a, const Series& b, int deg);

    // Terms of exact budgeted degree d, as a series.
    Series degree_part(int d) const;
    // Terms of budgeted degree <= d, same support tag.
    Series degree_leq(int d) const;
    int max_degree() const { return terms_.empty() ? -1 : terms_.back().deg; }

    // Composition: replaces every variable by its image (same image frame for
    // all variables).  Unmapped variables map to themselves when the frames
    // agree and are an error otherwise.
    Series subst(const Frame* target, Support target_sup,
                 const std::function<const Series*(int)>& image) const;

    Series truncated(const Support& sup) const;

    friend bool operator==(const Series& a, const Series& b);
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    std::string str() const;

    // Builder: accumulate terms, then normalize once.
    class Builder {
    public:
        Builder(const Frame* f, Support sup) : frame_(f), sup_(sup) {}
        void add(const Monomial& m, const MuScalar& c);
        Series build();

    private:
        const Frame* frame_;
        Support sup_;
        std::map<Monomial, MuScalar> acc_;
    };

private:
    void check_compat(const Series& o) const {
        if (frame_ == nullptr || o.frame_ == nullptr) throw UsageError("series without a frame");
        if (*frame_ != *o.frame_) throw UsageError("series frame mismatch");
        if (!(sup_ == o.sup_)) throw UsageError("series budget mismatch");
    }

    const Frame* frame_;
    Support sup_;
    std::vector<Term> terms_;
};

}  // namespace rspin
