#include <doctest.h>

#include <random>

#include "rspin/mu.hpp"
#include "rspin/series.hpp"

using namespace rspin;

TEST_CASE("rational canonical form and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(9, 4)).str() == "3/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::parse("-22/33") == Rational(-2, 3));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK_THROWS_AS(Rational(1, 0), UsageError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), UsageError);
    CHECK_THROWS_AS(Rational::parse("abc"), UsageError);
    CHECK(Rational(-2).pow(-3) == Rational(-1, 8));
    CHECK(Rational::factorial(6) == Rational(720));
    CHECK(Rational::binomial(7, 3) == Rational(35));
    CHECK(Rational::binomial(7, -1) == Rational(0));
    CHECK(Rational::binomial(7, 8) == Rational(0));
}

TEST_CASE("mu reduction rule") {
    // mu^(r+1) * mu^(r+1) = mu^(2(r+1)) = -r
    for (int r = 2; r <= 5; ++r) {
        MuScalar sq = MuScalar::mu_power(r, r + 1) * MuScalar::mu_power(r, r + 1);
        CHECK(sq == MuScalar(r, Rational(-r)));
    }
    // identity
    MuScalar x = MuScalar::mu_power(3, 5, Rational(7, 2));
    CHECK(MuScalar(3, 1) * x == x);
    // r=2: mu^3 * mu^4 = mu^7 = (-2) mu  (2(r+1) = 6)
    MuScalar m7 = MuScalar::mu_power(2, 3) * MuScalar::mu_power(2, 4);
    CHECK(m7 == MuScalar::mu_power(2, 1, Rational(-2)));
    CHECK_THROWS_AS(MuScalar::mu_power(2, 1) * MuScalar::mu_power(3, 1), UsageError);
}

TEST_CASE("mu normalization and rationality") {
    // mu^(2(r+1)k) = (-r)^k as a rational scalar
    for (int r = 2; r <= 5; ++r)
        for (int k = 0; k <= 5; ++k) {
            MuScalar m = MuScalar::mu_power(r, 2L * (r + 1) * k);
            CHECK(m.is_rational());
            CHECK(m.as_rational() == Rational(-r).pow(k));
        }
    // normalizing twice changes nothing: mu_power already reduces eagerly
    MuScalar a = MuScalar::mu_power(4, 37, Rational(3, 5));
    MuScalar b = MuScalar::mu_power(4, 37 % (2 * 5), Rational(3, 5) * Rational(-4).pow(37 / 10));
    CHECK(a == b);
    CHECK_FALSE(MuScalar::mu_power(3, 2).is_rational());
    CHECK_THROWS_AS(MuScalar::mu_power(3, 2).as_rational(), ConsistencyError);
    // monomial inverse
    MuScalar c = MuScalar::mu_power(3, 5, Rational(7, 3));
    CHECK(c * c.inverse() == MuScalar(3, 1));
    CHECK_THROWS_AS((MuScalar(3, 1) + MuScalar::mu_power(3, 2)).inverse(), UsageError);
}

TEST_CASE("mu ring axioms on random elements") {
    std::mt19937 rng(12345);
    auto random_mu = [&](int r) {
        MuScalar m(r);
        int nterms = static_cast<int>(rng() % 4);
        for (int t = 0; t < nterms; ++t) {
            long q = static_cast<long>(rng() % (2 * (r + 1)));
            long num = static_cast<long>(rng() % 11) - 5;
            long den = 1 + static_cast<long>(rng() % 6);
            m += MuScalar::mu_power(r, q, Rational(num, den));
        }
        return m;
    };
    for (int r : {2, 3, 5}) {
        for (int trial = 0; trial < 40; ++trial) {
            MuScalar a = random_mu(r), b = random_mu(r), c = random_mu(r);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (b + c) == (a + b) + c);
            CHECK(a - a == MuScalar(r));
        }
    }
}

namespace {

Series make(const Frame* f, Support sup, std::initializer_list<std::pair<Monomial, MuScalar>> ts) {
    Series::Builder b(f, sup);
    for (const auto& [m, c] : ts) b.add(m, c);
    return b.build();
}

}  // namespace

TEST_CASE("series arithmetic with budget truncation") {
    Frame fr = Frame::make_T(3, 5);
    Support sup = Support::plain(2);
    const int r = 3;
    auto one = MuScalar(r, 1);
    int T2 = fr.t_index_slot(2);

    // (1 + T2)(1 - T2) with D=2 -> 1 - T2^2
    Series a = make(&fr, sup, {{Monomial::one(), one}, {Monomial::var(T2), one}});
    Series b = make(&fr, sup, {{Monomial::one(), one}, {Monomial::var(T2), -one}});
    Series expect = make(&fr, sup, {{Monomial::one(), one}, {Monomial::var(T2, 2), -one}});
    CHECK(a * b == expect);

    // multiplication by zero absorbs
    Series z = Series::zero(&fr, sup);
    Series xt2 = Series::monomial(&fr, sup, Monomial::var(0) * Monomial::var(T2), one);
    CHECK((xt2 * z).is_zero());

    // (x + T2)^2 with D=1 -> x^2 + 2 x T2 (T2^2 dropped, x unbudgeted)
    Support sup1 = Support::plain(1);
    Series c = make(&fr, sup1, {{Monomial::var(0), one}, {Monomial::var(T2), one}});
    Series sq = c * c;
    Series expect2 = make(&fr, sup1, {{Monomial::var(0, 2), one},
                                      {Monomial::var(0) * Monomial::var(T2), one.scaled(Rational(2))}});
    CHECK(sq == expect2);
}

TEST_CASE("series differentiation") {
    Frame fr = Frame::make_T(2, 4);
    Support sup = Support::plain(3);
    auto one = MuScalar(2, 1);
    int T3 = fr.t_index_slot(3);
    Series x2t3 = Series::monomial(&fr, sup, Monomial::var(0, 2) * Monomial::var(T3), one);

    Series dx = x2t3.diff(0);
    CHECK(dx == Series::monomial(&fr, sup, Monomial::var(0) * Monomial::var(T3),
                                 one.scaled(Rational(2))));
    Series dt3 = x2t3.diff(T3);
    CHECK(dt3 == Series::monomial(&fr, sup, Monomial::var(0, 2), one));
    Series xonly = Series::monomial(&fr, sup, Monomial::var(0), one);
    CHECK(xonly.diff(fr.t_index_slot(2)).is_zero());
    CHECK_THROWS_AS(xonly.diff(99), UsageError);

    // mixed partials commute on random series
    std::mt19937 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        Series::Builder sb(&fr, sup);
        for (int t = 0; t < 5; ++t) {
            Monomial m;
            m.e[0] = static_cast<uint16_t>(rng() % 3);
            m.e[1] = static_cast<uint16_t>(rng() % 2);
            m.e[2] = static_cast<uint16_t>(rng() % 2);
            m.e[3] = static_cast<uint16_t>(rng() % 2);
            sb.add(m, MuScalar::mu_power(2, static_cast<long>(rng() % 6),
                                         Rational(static_cast<long>(rng() % 9) - 4)));
        }
        Series s = sb.build();
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 4; ++v) CHECK(s.diff(u).diff(v) == s.diff(v).diff(u));
    }
}

TEST_CASE("series coefficient extraction and reach") {
    Frame fr = Frame::make_T(2, 4);
    Support sup = Support::plain(3);
    auto one = MuScalar(2, 1);
    int T2 = fr.t_index_slot(2);

    // coefficient of T2 in (1+T2)^3 -> 3
    Series a = make(&fr, sup, {{Monomial::one(), one}, {Monomial::var(T2), one}});
    Series cube = a * a * a;
    CHECK(cube.coeff(Monomial::var(T2)) == one.scaled(Rational(3)));
    CHECK(Series::zero(&fr, sup).coeff(Monomial::var(T2)).is_zero());
    // beyond the budget: an error, not zero
    CHECK_THROWS_AS(cube.coeff(Monomial::var(T2, 4)), TruncationError);
}

TEST_CASE("series substitution") {
    Frame fr = Frame::make_T(3, 5);
    Support sup = Support::plain(4);
    auto one = MuScalar(3, 1);
    int T2 = fr.t_index_slot(2);

    // T2 -> 2 T2 into T2^2 gives 4 T2^2
    Series t2sq = Series::monomial(&fr, sup, Monomial::var(T2, 2), one);
    Series img = Series::monomial(&fr, sup, Monomial::var(T2), one.scaled(Rational(2)));
    Series got = t2sq.subst(&fr, sup, [&](int v) { return v == T2 ? &img : nullptr; });
    CHECK(got == Series::monomial(&fr, sup, Monomial::var(T2, 2), one.scaled(Rational(4))));

    // identity substitution
    Series same = t2sq.subst(&fr, sup, [](int) { return nullptr; });
    CHECK(same == t2sq);

    // t-frame shift: t^{r-1}_0 -> t^{r-1}_0 - r s into (t^{r-1}_0)^2
    Frame tf = Frame::make_t(3, 1);
    Support tsup = Support::plain(4);
    int v = tf.tvar_slot(2, 0), s = 0;
    Series lhs = Series::monomial(&tf, tsup, Monomial::var(v, 2), one);
    Series shift = make(&tf, tsup, {{Monomial::var(v), one}, {Monomial::var(s), one.scaled(Rational(-3))}});
    Series shifted = lhs.subst(&tf, tsup, [&](int q) { return q == v ? &shift : nullptr; });
    Series expect = make(&tf, tsup,
                         {{Monomial::var(v, 2), one},
                          {Monomial::var(v) * Monomial::var(s), one.scaled(Rational(-6))},
                          {Monomial::var(s, 2), one.scaled(Rational(9))}});
    CHECK(shifted == expect);
}

TEST_CASE("series substitution respects multiplication") {
    Frame fr = Frame::make_T(2, 4);
    Support sup = Support::plain(4);
    std::mt19937 rng(4242);
    auto random_series = [&]() {
        Series::Builder sb(&fr, sup);
        for (int t = 0; t < 4; ++t) {
            Monomial m;
            m.e[0] = static_cast<uint16_t>(rng() % 2);
            m.e[1] = static_cast<uint16_t>(rng() % 3);
            m.e[2] = static_cast<uint16_t>(rng() % 2);
            sb.add(m, MuScalar(2, Rational(static_cast<long>(rng() % 7) - 3)));
        }
        return sb.build();
    };
    int T2 = fr.t_index_slot(2);
    for (int trial = 0; trial < 20; ++trial) {
        Series a = random_series(), b = random_series();
        Series img = make(&fr, sup, {{Monomial::var(T2), MuScalar(2, Rational(2))},
                                     {Monomial::var(fr.t_index_slot(3)), MuScalar(2, Rational(-1))}});
        auto map = [&](int v) { return v == T2 ? &img : nullptr; };
        // images are degree >= 1 monomial sums, so budgets compose exactly
        CHECK((a * b).subst(&fr, sup, map) == a.subst(&fr, sup, map) * b.subst(&fr, sup, map));
    }
}

TEST_CASE("series frame and budget mismatches are rejected") {
    Frame f1 = Frame::make_T(2, 4), f2 = Frame::make_T(2, 5);
    Series a = Series::constant(&f1, Support::plain(2), MuScalar(2, 1));
    Series b = Series::constant(&f2, Support::plain(2), MuScalar(2, 1));
    Series c = Series::constant(&f1, Support::plain(3), MuScalar(2, 1));
    CHECK_THROWS_AS(a * b, UsageError);
    CHECK_THROWS_AS(a + c, UsageError);
}
