#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "rspin/errors.hpp"

namespace rspin {

// Arbitrary-precision rational in canonical form: gcd(num, den) = 1, den > 0.
// Thin wrapper over GMP's mpq_class; every operation is exact.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design
    Rational(long num, long den) {
        if (den == 0) throw UsageError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw UsageError("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    static Rational parse(const std::string& s);

    static Rational factorial(long n) {
        if (n < 0) throw UsageError("factorial of negative integer");
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
        return Rational(f);
    }

    // binomial(n, k) for integer n >= 0; zero outside 0 <= k <= n.
    static Rational binomial(long n, long k) {
        if (k < 0 || k > n || n < 0) return Rational(0);
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return Rational(b);
    }

    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw UsageError("zero to a negative power");
            return Rational(0);
        }
        Rational base = e > 0 ? *this : inverse();
        unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
        Rational acc(1);
        while (n) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    Rational inverse() const {
        if (is_zero()) throw UsageError("division by zero");
        Rational r;
        r.q_ = 1 / q_;
        return r;
    }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw UsageError("division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

    // "p" for integers, "p/q" otherwise.
    std::string str() const { return q_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_;
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw UsageError("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw UsageError("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw UsageError("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    Rational r;
    r.q_ = q;
    return r;
}

}  // namespace rspin
