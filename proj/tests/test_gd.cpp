#include <doctest.h>

#include "rspin/gd.hpp"
#include "rspin/validate.hpp"

using namespace rspin;

namespace {

MuScalar q(int r, long num, long den = 1) { return MuScalar(r, Rational(num, den)); }

Monomial mono(std::initializer_list<std::pair<int, int>> slots) {
    Monomial m;
    for (const auto& [v, e] : slots) m.e[v] = static_cast<uint16_t>(e);
    return m;
}

}  // namespace

TEST_CASE("config validation") {
    EngineConfig bad;
    bad.r = 1;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = EngineConfig{};
    bad.r = 3;
    bad.nmax = 3;  // < r+1
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.nmax = 4;
    bad.budget = 1;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.budget = 2;
    bad.zfloor = -2;  // > -(r+1)
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.zfloor = 0;
    CHECK_NOTHROW(bad.validate());
    CHECK(bad.effective_zfloor() == -8);
}

TEST_CASE("base point of the Lax solve") {
    for (int r = 2; r <= 5; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = r + 1;
        cfg.budget = 2;
        GDState st = GDState::solve(cfg);
        // L0 at T_{>=2} = 0 is z^r + r x
        CHECK(st.f(0).degree_leq(0) ==
              Series::monomial(&st.frame(), st.lax_support(), Monomial::var(0), q(r, r)));
        for (int i = 1; i <= r - 2; ++i) CHECK(st.f(i).degree_leq(0).is_zero());
    }
}

TEST_CASE("dispersionless KdV Taylor coefficients (r=2)") {
    EngineConfig cfg;
    cfg.r = 2;
    cfg.nmax = 5;
    cfg.budget = 3;
    GDState st = GDState::solve(cfg);
    const Frame& fr = st.frame();
    int T3 = fr.t_index_slot(3), T5 = fr.t_index_slot(5);

    // hand-lifted flow values: f0 = 2x + 6x T3 + 18x T3^2 + 15 x^2 T5 + ...
    CHECK(st.f(0).coeff(mono({{0, 1}, {T3, 1}})) == q(2, 6));
    CHECK(st.f(0).coeff(mono({{0, 1}, {T3, 2}})) == q(2, 18));
    CHECK(st.f(0).coeff(mono({{0, 2}, {T5, 1}})) == q(2, 15));
    // the r-divisible flows leave L unchanged
    CHECK(st.f(0).coeff(mono({{0, 1}, {fr.t_index_slot(2), 1}})).is_zero());
    CHECK(st.f(0).coeff(mono({{0, 1}, {fr.t_index_slot(4), 1}})).is_zero());
}

TEST_CASE("wave phase low-order coefficients") {
    for (int r = 2; r <= 4; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = 2 * r;
        cfg.budget = 3;
        GDState st = GDState::solve(cfg);
        const Frame& fr = st.frame();

        // phi0 vanishes at the base point (no pure-x terms)
        for (const auto& t : st.phi0().terms()) CHECK(t.deg > 0);

        // coefficient of x T_r is r; coefficient of x^2 T_{2r} is r^2
        CHECK(st.phi0().coeff(mono({{0, 1}, {fr.t_index_slot(r), 1}})) == q(r, r));
        CHECK(st.phi0().coeff(mono({{0, 2}, {fr.t_index_slot(2 * r), 1}})) == q(r, r * r));
        // no linear terms in the non-divisible directions
        for (int n = 2; n <= cfg.nmax; ++n) {
            if (n % r == 0) continue;
            for (int e = 0; e <= 3; ++e)
                CHECK(st.phi0().coeff(mono({{0, e}, {fr.t_index_slot(n), 1}})).is_zero());
        }
    }
}

TEST_CASE("wave phase cubic coefficient (r=2)") {
    EngineConfig cfg;
    cfg.r = 2;
    cfg.nmax = 3;
    cfg.budget = 3;
    GDState st = GDState::solve(cfg);
    // d^3phi0/dT2^3 at 0 = 8, so the T2^3 coefficient is 8/3! = 4/3
    CHECK(st.phi0().coeff(mono({{st.frame().t_index_slot(2), 3}})) == q(2, 4, 3));
}

TEST_CASE("cached fractional powers") {
    for (int r = 2; r <= 4; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = r + 2;
        cfg.budget = 2;
        GDState st = GDState::solve(cfg);

        // a = r reproduces L0
        int zf = cfg.effective_zfloor();
        CHECK(st.frac_power(r).truncate_floor(zf) == st.lax().truncate_floor(zf));

        // a = r+1 at the base point: z^{r+1} + (r+1) x z + terms below z^0
        LaxSymbol p = st.frac_power(r + 1);
        CHECK(p.coeff(r + 1).degree_leq(0) ==
              Series::constant(&st.frame(), st.lax_support(), q(r, 1)));
        CHECK(p.coeff(1).degree_leq(0) ==
              Series::monomial(&st.frame(), st.lax_support(), Monomial::var(0), q(r, r + 1)));
        for (int e = 2; e <= r; ++e) CHECK(p.coeff(e).degree_leq(0).is_zero());
        CHECK(p.coeff(0).degree_leq(0).is_zero());

        // negative powers: leading term z^-1
        CHECK(st.frac_power(-1).top() == -1);
        CHECK_THROWS_AS(st.frac_power(0), UsageError);
        CHECK_THROWS_AS(st.frac_power(cfg.nmax + 1), UsageError);
        CHECK_THROWS_AS(st.frac_power(-r), UsageError);
    }
}

TEST_CASE("two-point functions") {
    for (int r = 2; r <= 5; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = r + 2;
        cfg.budget = 3;
        GDState st = GDState::solve(cfg);

        // Omega(r-1, 1) at the base point is (r-1) x
        if (r >= 2) {
            Series om = st.omega(r - 1 >= 1 ? r - 1 : 1, 1);
            CHECK(om.degree_leq(0) ==
                  Series::monomial(&st.frame(), st.support(), Monomial::var(0), q(r, r - 1)));
        }
        // symmetry within the eliminated block
        for (int a = 1; a <= r - 1; ++a)
            for (int b = 1; b <= r - 1; ++b) CHECK(st.omega(a, b) == st.omega(b, a));
        // residue route agrees on every carried row
        for (int n = 1; n <= cfg.nmax; ++n) {
            Series res = st.frac_power(n).residue().truncated(st.support());
            if (n % r == 0) {
                CHECK(res.is_zero());
                CHECK(st.omega(n, 1).is_zero());
            } else {
                CHECK(st.omega(n, 1) == res);
            }
        }
        CHECK_THROWS_AS(st.omega(1, r), UsageError);
    }
}

TEST_CASE("hierarchy verification suite") {
    for (int r = 2; r <= 4; ++r) {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = r + 2;
        cfg.budget = 3;
        for (const auto& res : hierarchy_checks(cfg)) {
            INFO(res.name, ": ", res.note);
            CHECK(res.pass);
        }
    }
}

TEST_CASE("truncation stability under refinement") {
    EngineConfig cfg;
    cfg.r = 3;
    cfg.nmax = 5;
    cfg.budget = 3;
    GDState coarse = GDState::solve(cfg);
    EngineConfig fine = cfg;
    fine.budget += 1;
    fine.zfloor = cfg.effective_zfloor() - cfg.r;
    GDState refined = GDState::solve(fine);
    CHECK(refined.phi0().truncated(coarse.support()) == coarse.phi0());
    for (int i = 0; i <= cfg.r - 2; ++i)
        CHECK(refined.f(i).truncated(coarse.lax_support()) == coarse.f(i));
}

TEST_CASE("per-variable caps preserve the kept coefficients") {
    EngineConfig full;
    full.r = 2;
    full.nmax = 5;
    full.budget = 4;
    GDState big = GDState::solve(full);

    EngineConfig capped = full;
    capped.caps = {{2, 4}, {3, 1}, {4, 0}, {5, 1}};
    capped.desc_budget = 2;
    GDState small = GDState::solve(capped);
    CHECK(big.phi0().truncated(small.support()) == small.phi0());
    CHECK(big.f(0).truncated(small.lax_support()) == small.f(0));
}
