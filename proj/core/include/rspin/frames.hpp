#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>

#include "rspin/errors.hpp"

namespace rspin {

inline constexpr int kMaxVars = 32;

// Variable frame for multivariate series.
//
//   T frame: slot 0 = x (= T1, exempt from the degree budget),
//            slot v = T_{v+1} for 1 <= v < nvars.
//   t frame: slot 0 = s, slot 1 + a + d*r = t^a_d for 0 <= a < r, 0 <= d <= dmax.
struct Frame {
    enum class Kind { T, t };

    Kind kind;
    int r;
    int nmax;  // T frame: largest T index carried
    int dmax;  // t frame: largest descendent level carried
    int nvars;

    static Frame make_T(int r, int nmax) {
        if (nmax < 2 || nmax > kMaxVars) throw UsageError("T frame size out of range");
        return Frame{Kind::T, r, nmax, 0, nmax};
    }
    static Frame make_t(int r, int dmax) {
        int nv = 1 + r * (dmax + 1);
        if (nv > kMaxVars) throw UsageError("t frame size out of range");
        return Frame{Kind::t, r, 0, dmax, nv};
    }

    bool operator==(const Frame& o) const {
        return kind == o.kind && r == o.r && nmax == o.nmax && dmax == o.dmax;
    }
    bool operator!=(const Frame& o) const { return !(*this == o); }

    // Slot of T_j in a T frame.
    int t_index_slot(int j) const {
        if (kind != Kind::T || j < 1 || j > nmax) throw UsageError("T index out of frame");
        return j - 1;
    }
    int slot_t_index(int v) const { return v + 1; }  // T frame: slot -> T index

    int tvar_slot(int a, int d) const {
        if (kind != Kind::t || a < 0 || a >= r || d < 0 || d > dmax)
            throw UsageError("t variable out of frame");
        return 1 + a + d * r;
    }

    // True if the slot counts toward the degree budget (everything except x).
    bool budgeted(int v) const { return kind == Kind::t || v != 0; }

    // Descendent level of the variable, used for the optional descendent budget.
    // T_j carries t^a_d with j = a+1+rd (a <= r-2) or j = (d+1)r (a = r-1).
    int dlevel(int v) const {
        if (kind == Kind::t) return v == 0 ? 0 : (v - 1) / r;
        int j = v + 1;
        return (j % r == 0) ? (j / r - 1) : ((j - 1) / r);
    }

    std::string var_name(int v) const {
        if (kind == Kind::T) return v == 0 ? "x" : ("T" + std::to_string(v + 1));
        if (v == 0) return "s";
        int a = (v - 1) % r, d = (v - 1) / r;
        return "t^" + std::to_string(a) + "_" + std::to_string(d);
    }
};

// Exponent vector over a frame.  Fixed-size storage keeps monomials
// allocation-free in the hot multiplication loops.
struct Monomial {
    std::array<uint16_t, kMaxVars> e{};

    static Monomial one() { return Monomial{}; }
    static Monomial var(int v, int exp = 1) {
        Monomial m;
        m.e[v] = static_cast<uint16_t>(exp);
        return m;
    }

    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    int exp(int v) const { return e[v]; }

    int degree(const Frame& f) const {
        int d = 0;
        for (int v = 0; v < f.nvars; ++v)
            if (f.budgeted(v)) d += e[v];
        return d;
    }

    int desc_weight(const Frame& f) const {
        int w = 0;
        for (int v = 0; v < f.nvars; ++v)
            if (e[v]) w += e[v] * f.dlevel(v);
        return w;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (int v = 0; v < kMaxVars; ++v)
            m.e[v] = static_cast<uint16_t>(a.e[v] + b.e[v]);
        return m;
    }

    bool divides(const Monomial& o) const {
        for (int v = 0; v < kMaxVars; ++v)
            if (e[v] > o.e[v]) return false;
        return true;
    }

    Monomial quotient(const Monomial& o) const {  // *this / o, caller checks divisibility
        Monomial m;
        for (int v = 0; v < kMaxVars; ++v)
            m.e[v] = static_cast<uint16_t>(e[v] - o.e[v]);
        return m;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

    // Plain lexicographic tie-break; the graded part lives in Series ordering.
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }

    std::string str(const Frame& f) const;
};

}  // namespace rspin
