#include "rspin/gd.hpp"

#include <set>
#include <sstream>

namespace rspin {

void EngineConfig::validate() const {
    if (r < 2) throw UsageError("r must be at least 2");
    if (nmax < r + 1) throw UsageError("nmax must be at least r+1");
    if (nmax > kMaxVars) throw UsageError("nmax exceeds the variable limit");
    if (budget < 2) throw UsageError("degree budget must be at least 2");
    if (zfloor != 0 && zfloor > -(r + 1)) throw UsageError("zfloor must be at most -(r+1)");
    for (const auto& [j, c] : caps)
        if (j < 2 || j > nmax || c < 0) throw UsageError("cap on T index outside 2..nmax");
}

std::string EngineConfig::fingerprint() const {
    std::ostringstream os;
    os << "r=" << r << ";nmax=" << nmax << ";D=" << budget << ";zfloor=" << effective_zfloor();
    if (desc_budget >= 0) os << ";descD=" << desc_budget;
    if (!caps.empty()) {
        os << ";caps=";
        std::map<int, int> sorted(caps.begin(), caps.end());
        for (const auto& [j, c] : sorted) os << j << ":" << c << ",";
    }
    return os.str();
}

Support EngineConfig::make_support(const Frame& f) const {
    Support s = Support::plain(budget);
    s.desc_budget = desc_budget;
    if (!caps.empty()) {
        s.has_caps = true;
        for (int v = 0; v < kMaxVars; ++v) s.caps[v] = static_cast<uint16_t>(budget);
        for (const auto& [j, c] : caps) s.caps[f.t_index_slot(j)] = static_cast<uint16_t>(c);
    }
    return s;
}

Support EngineConfig::make_lax_support(const Frame& f) const {
    Support s = make_support(f);
    if (!s.has_caps) {
        s.has_caps = true;
        for (int v = 0; v < kMaxVars; ++v) s.caps[v] = static_cast<uint16_t>(budget);
    }
    // the T_{mr} flows vanish on L, so its coefficients carry no such variable
    for (int j = r; j <= nmax; j += r) s.caps[f.t_index_slot(j)] = 0;
    return s;
}

GDState GDState::solve(const EngineConfig& cfg) {
    cfg.validate();
    GDState st;
    st.cfg_ = cfg;
    st.frame_ = std::make_unique<Frame>(Frame::make_T(cfg.r, cfg.nmax));
    st.sup_ = cfg.make_support(*st.frame_);
    st.lax_sup_ = cfg.make_lax_support(*st.frame_);
    st.solve_lax();
    st.cache_powers();
    st.solve_omega();
    st.solve_phi0();
    // the T_{mr} coefficients of L vanish identically, so the exposed
    // coefficients can answer for the full support
    for (auto& fi : st.f_) fi = fi.truncated(st.sup_);
    return st;
}

namespace {

const Series* find_coeff(const std::map<int, Series>& terms, int e) {
    auto it = terms.find(e);
    return it == terms.end() ? nullptr : &it->second;
}

}  // namespace

LaxSymbol GDState::assemble_lax(int degcap) const {
    LaxSymbol L(frame_.get(), lax_sup_, cfg_.work_floor());
    L.set_coeff(cfg_.r, Series::constant(frame_.get(), lax_sup_, MuScalar(cfg_.r, 1)));
    for (int i = 0; i <= cfg_.r - 2; ++i) L.set_coeff(i, f_[i].degree_leq(degcap));
    return L;
}

void GDState::solve_lax() {
    const Frame* fr = frame_.get();
    const int r = cfg_.r, D = cfg_.budget, N = cfg_.nmax;

    f_.assign(r - 1, Series::zero(fr, lax_sup_));
    f_[0] = Series::monomial(fr, lax_sup_, Monomial::var(0), MuScalar(r, Rational(r)));

    for (int d = 0; d < D; ++d) {
        LaxSymbol L = assemble_lax(d);
        LaxSymbol K = L.monic_root(r).degree_leq(d);

        // T-degree-d part of the bracket of every non-trivial flow
        std::map<int, LaxSymbol> bpart;
        LaxSymbol kp = K;
        for (int n = 2; n <= N; ++n) {
            kp = (kp * K).degree_leq(d);
            if (n % r == 0) continue;
            LaxSymbol bn = LaxSymbol::poisson_part(kp.positive_part(), L, d);
            for (const auto& [e, s] : bn.terms())
                if (e < 0 || e > r - 2)
                    throw ConsistencyError("flow " + std::to_string(n) +
                                           " bracket escapes the Lax z window");
            bpart.emplace(n, std::move(bn));
        }

        // lift: the degree-(d+1) coefficient in direction T_n is the bracket
        // coefficient divided by the monomial's T_n multiplicity; every
        // eligible direction must produce the same value
        std::set<Monomial> targets;
        for (const auto& [n, bn] : bpart) {
            Monomial step = Monomial::var(fr->t_index_slot(n));
            for (const auto& [e, s] : bn.terms())
                for (const auto& t : s.terms()) {
                    Monomial m = t.m * step;
                    if (lax_sup_.allows(*fr, m)) targets.insert(m);
                }
        }
        std::vector<Series::Builder> add;
        for (int i = 0; i <= r - 2; ++i) add.emplace_back(fr, lax_sup_);
        for (const Monomial& m : targets) {
            bool have = false;
            std::vector<MuScalar> val(r - 1, MuScalar(r));
            for (const auto& [n, bn] : bpart) {
                int slot = fr->t_index_slot(n);
                int mult = m.exp(slot);
                if (!mult) continue;
                Monomial mq = m;
                mq.e[slot] = static_cast<uint16_t>(mult - 1);
                std::vector<MuScalar> cand(r - 1, MuScalar(r));
                for (int i = 0; i <= r - 2; ++i) {
                    const Series* s = find_coeff(bn.terms(), i);
                    if (s) cand[i] = s->coeff_raw(mq).scaled(Rational(1, mult));
                }
                if (!have) {
                    val = std::move(cand);
                    have = true;
                } else if (!(val == cand)) {
                    throw ConsistencyError("Lax flows disagree while lifting " + m.str(*fr));
                }
            }
            for (int i = 0; i <= r - 2; ++i) add[i].add(m, val[i]);
        }
        for (int i = 0; i <= r - 2; ++i) f_[i] += add[i].build();
    }
}

void GDState::cache_powers() {
    const int r = cfg_.r;
    l0_ = assemble_lax(cfg_.budget);
    LaxSymbol K = l0_.monic_root(r);

    // the positive part of the root is exactly z: this is the trivial T_1 flow
    LaxSymbol z = LaxSymbol::z_power(frame_.get(), lax_sup_, cfg_.work_floor(), 1, MuScalar(r, 1));
    if (!(K.positive_part() == z))
        throw ConsistencyError("root of the Lax symbol has a non-negative tail");

    kpow_.emplace(1, K);
    LaxSymbol kp = K;
    for (int a = 2; a <= cfg_.nmax; ++a) {
        kp = kp * K;
        kpow_.emplace(a, kp);
    }
    LaxSymbol kinv = K.monic_inverse();
    kpow_.emplace(-1, kinv);
    kp = kinv;
    for (int b = 2; b <= r - 1; ++b) {
        kp = kp * kinv;
        kpow_.emplace(-b, kp);
    }

    // root round trip, exact down to the reported floor
    int zf = cfg_.effective_zfloor();
    if (!(kpow_.at(r).truncate_floor(zf) == l0_.truncate_floor(zf)))
        throw ConsistencyError("r-th root round trip failed");
}

const LaxSymbol& GDState::frac_power(int a) const {
    if (a == 0 || a > cfg_.nmax || a < -(cfg_.r - 1))
        throw UsageError("fractional power outside the cached range");
    return kpow_.at(a);
}

void GDState::solve_omega() {
    const int r = cfg_.r;
    omega_.assign(cfg_.nmax, std::vector<Series>(r - 1, Series::zero(frame_.get(), sup_)));
    for (int a = 1; a <= cfg_.nmax; ++a) {
        const LaxSymbol& ka = kpow_.at(a);
        // triangular match of z^-1..z^-(r-1) against the K^-b basis
        std::vector<Series> om(r, Series::zero(frame_.get(), lax_sup_));
        for (int b = 1; b <= r - 1; ++b) {
            Series acc = ka.coeff(-b);
            for (int bp = 1; bp < b; ++bp)
                acc -= om[bp].scaled(MuScalar(r, Rational(1, bp))) * kpow_.at(-bp).coeff(-b);
            om[b] = acc.scaled(MuScalar(r, Rational(b)));
        }
        // z^-r must then match with no further freedom
        Series resid = ka.coeff(-r);
        for (int bp = 1; bp <= r - 1; ++bp)
            resid -= om[bp].scaled(MuScalar(r, Rational(1, bp))) * kpow_.at(-bp).coeff(-r);
        if (!resid.is_zero())
            throw ConsistencyError("two-point elimination leaves a z^-r residual at row " +
                                   std::to_string(a));
        for (int b = 1; b <= r - 1; ++b) omega_[a - 1][b - 1] = om[b].truncated(sup_);
    }
}

const Series& GDState::omega(int a, int b) const {
    if (a < 1 || a > cfg_.nmax || b < 1 || b > cfg_.r - 1)
        throw UsageError("two-point function outside the cached range");
    return omega_[a - 1][b - 1];
}

void GDState::solve_phi0() {
    const Frame* fr = frame_.get();
    const int r = cfg_.r, D = cfg_.budget, N = cfg_.nmax;

    // z-coefficients of the positive parts, re-tagged into the wave support
    std::vector<std::vector<Series>> P(N + 1);
    for (int n = 2; n <= N; ++n) {
        P[n].assign(n + 1, Series::zero(fr, sup_));
        LaxSymbol pos = kpow_.at(n).positive_part();
        for (const auto& [e, s] : pos.terms()) P[n][e] = s.truncated(sup_);
    }

    phi0_ = Series::zero(fr, sup_);
    std::vector<Series> wpow(N + 1, Series::zero(fr, sup_));
    wpow[0] = Series::constant(fr, sup_, MuScalar(r, 1));

    for (int d = 0; d < D; ++d) {
        // degree-d part of each flow's right-hand side (L^{n/r})_+ at z = (phi0)_x
        std::vector<Series> G(N + 1, Series::zero(fr, sup_));
        for (int n = 2; n <= N; ++n) {
            Series acc = Series::zero(fr, sup_);
            for (int j = 0; j <= n; ++j) {
                if (P[n][j].is_zero() || wpow[j].is_zero()) continue;
                acc += Series::mul_part(P[n][j], wpow[j], d);
            }
            G[n] = std::move(acc);
        }

        std::set<Monomial> targets;
        for (int n = 2; n <= N; ++n) {
            Monomial step = Monomial::var(fr->t_index_slot(n));
            for (const auto& t : G[n].terms()) {
                Monomial m = t.m * step;
                if (sup_.allows(*fr, m)) targets.insert(m);
            }
        }
        Series::Builder nb(fr, sup_);
        for (const Monomial& m : targets) {
            bool have = false;
            MuScalar val(r);
            for (int n = 2; n <= N; ++n) {
                int slot = fr->t_index_slot(n);
                int mult = m.exp(slot);
                if (!mult) continue;
                Monomial mq = m;
                mq.e[slot] = static_cast<uint16_t>(mult - 1);
                MuScalar cand = G[n].coeff_raw(mq).scaled(Rational(1, mult));
                if (!have) {
                    val = std::move(cand);
                    have = true;
                } else if (!(val == cand)) {
                    throw ConsistencyError("wave-phase flows disagree while lifting " + m.str(*fr));
                }
            }
            nb.add(m, val);
        }
        Series fresh = nb.build();
        phi0_ += fresh;

        // keep the powers of w = (phi0)_x complete through degree d+1
        Series wnew = fresh.diff(0);
        wpow[1] += wnew;
        for (int j = 2; j <= N; ++j) {
            Series part = Series::mul_part(wpow[j - 1], wpow[1], d + 1);
            if (!part.is_zero()) wpow[j] += part;
        }
    }
}

}  // namespace rspin
