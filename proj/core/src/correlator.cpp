#include "rspin/correlator.hpp"

#include <algorithm>
#include <sstream>

namespace rspin {

std::string sector_name(Sector s) {
    switch (s) {
        case Sector::Open: return "open";
        case Sector::Closed: return "closed";
        case Sector::Extended: return "extended";
    }
    throw UsageError("unknown sector");
}

Sector parse_sector(const std::string& s) {
    if (s == "open") return Sector::Open;
    if (s == "closed") return Sector::Closed;
    if (s == "extended" || s == "ext") return Sector::Extended;
    throw UsageError("unknown sector '" + s + "'");
}

CorrelatorKey::CorrelatorKey(Sector s, int r_, std::vector<Insertion> insertions, int k_)
    : sector(s), r(r_), k(k_), ins(std::move(insertions)) {
    if (r < 2) throw UsageError("correlator key with r < 2");
    if (k < 0) throw UsageError("correlator key with negative boundary count");
    if (sector != Sector::Open && k != 0)
        throw UsageError("boundary points only exist in the open sector");
    for (const auto& i : ins) {
        if (i.a < 0 || i.a > r - 1) throw UsageError("twist outside 0..r-1");
        if (i.d < 0) throw UsageError("negative descendent level");
    }
    std::sort(ins.begin(), ins.end());
}

int CorrelatorKey::sum_twist() const {
    int s = 0;
    for (const auto& i : ins) s += i.a;
    return s;
}

int CorrelatorKey::sum_desc() const {
    int s = 0;
    for (const auto& i : ins) s += i.d;
    return s;
}

std::string CorrelatorKey::canonical() const {
    std::ostringstream os;
    os << sector_name(sector) << ":" << r << ":" << k << ":[";
    for (size_t i = 0; i < ins.size(); ++i) {
        if (i) os << ",";
        os << ins[i].a << "." << ins[i].d;
    }
    os << "]";
    return os.str();
}

CorrelatorKey CorrelatorKey::parse(const std::string& s) {
    auto fail = [&]() -> void { throw UsageError("malformed correlator key '" + s + "'"); };
    size_t p1 = s.find(':');
    size_t p2 = p1 == std::string::npos ? std::string::npos : s.find(':', p1 + 1);
    size_t p3 = p2 == std::string::npos ? std::string::npos : s.find(':', p2 + 1);
    if (p3 == std::string::npos) fail();
    Sector sec = parse_sector(s.substr(0, p1));
    int r = 0, k = 0;
    try {
        r = std::stoi(s.substr(p1 + 1, p2 - p1 - 1));
        k = std::stoi(s.substr(p2 + 1, p3 - p2 - 1));
    } catch (const std::exception&) {
        fail();
    }
    std::string rest = s.substr(p3 + 1);
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') fail();
    rest = rest.substr(1, rest.size() - 2);
    std::vector<Insertion> ins;
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t dot = tok.find('.');
        if (dot == std::string::npos) fail();
        try {
            ins.push_back({std::stoi(tok.substr(0, dot)), std::stoi(tok.substr(dot + 1))});
        } catch (const std::exception&) {
            fail();
        }
        pos = comma == std::string::npos ? rest.size() : comma + 1;
    }
    return CorrelatorKey(sec, r, std::move(ins), k);
}

bool operator<(const CorrelatorKey& a, const CorrelatorKey& b) {
    if (a.sector != b.sector) return static_cast<int>(a.sector) < static_cast<int>(b.sector);
    if (a.r != b.r) return a.r < b.r;
    if (a.k != b.k) return a.k < b.k;
    return a.ins < b.ins;
}

TScale t_to_T_scale(int r, int a, int d) {
    if (a < 0 || a > r - 1) throw UsageError("twist outside 0..r-1");
    if (d < 0) throw UsageError("negative descendent level");
    if (a == r - 1) {
        // T_{mr} = t^{r-1}_{m-1} / ((-r)^{m(r-2)/(2(r+1))} m! r^m), m = d+1
        int m = d + 1;
        Rational den = Rational::factorial(m) * Rational(r).pow(m);
        return {m * r, MuScalar::mu_power(r, -static_cast<long>(m) * (r - 2), den.inverse())};
    }
    // T_k = t^a_d / ((-r)^{3k/(2(r+1)) - 1/2 - d} k!_r), k = a+1+rd
    int k = a + 1 + r * d;
    Rational kfac(1);
    for (int i = 0; i <= d; ++i) kfac *= Rational(a + 1 + r * i);
    long mu_exp = (r + 1) + 2L * (r + 1) * d - 3L * k;
    return {k, MuScalar::mu_power(r, mu_exp, kfac.inverse())};
}

bool dim_gate_open(const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("dimension gate expects an open key");
    const int r = key.r;
    long num = static_cast<long>(key.k - 1) * (r - 2) + 2L * key.sum_twist();
    if (num % r != 0) return false;
    return num / r + 2L * key.sum_desc() == key.k + 2L * key.l() - 3;
}

bool moduli_nonempty(int r, int k, const std::vector<int>& twists) {
    long sum = 0;
    for (int a : twists) {
        if (a < 0 || a > r - 1) throw UsageError("twist outside 0..r-1");
        sum += a;
    }
    long num = 2 * sum + static_cast<long>(k - 1) * (r - 2);
    if (num % r != 0) return false;
    long q = num / r;
    return ((q - (k + 1)) % 2) == 0;
}

int gate_boundary_count(int r, const std::vector<Insertion>& ins) {
    // solve (k-1)(r-2) + 2*sum a = r(k + 2l - 3 - 2*sum d) for k
    long sa = 0, sd = 0;
    for (const auto& i : ins) {
        sa += i.a;
        sd += i.d;
    }
    long l = static_cast<long>(ins.size());
    long num = 2 * sa - (r - 2) - r * (2 * l - 3 - 2 * sd);
    if (num % 2 != 0) return -1;
    long k = num / 2;
    if (k < 0) return -1;
    CorrelatorKey key(Sector::Open, r, ins, static_cast<int>(k));
    return dim_gate_open(key) ? static_cast<int>(k) : -1;
}

namespace {

// The extended key an open key maps to: the same insertions plus k copies of
// the boundary-type insertion (r-1, 0).
CorrelatorKey open_to_extended(const CorrelatorKey& key) {
    std::vector<Insertion> ins = key.ins;
    for (int i = 0; i < key.k; ++i) ins.push_back({key.r - 1, 0});
    return CorrelatorKey(Sector::Extended, key.r, std::move(ins));
}

Monomial insertion_monomial(const GDState& st, const std::vector<Insertion>& ins) {
    const Frame& fr = st.frame();
    Monomial m;
    for (const auto& i : ins) {
        TScale sc = t_to_T_scale(st.config().r, i.a, i.d);
        if (sc.index > st.config().nmax)
            throw TruncationError("insertion needs T index " + std::to_string(sc.index) +
                                  " beyond nmax " + std::to_string(st.config().nmax));
        int slot = sc.index == 1 ? 0 : fr.t_index_slot(sc.index);
        m.e[slot] = static_cast<uint16_t>(m.e[slot] + 1);
    }
    return m;
}

Rational monomial_symmetry(const Frame& fr, const Monomial& m) {
    Rational f(1);
    for (int v = 0; v < fr.nvars; ++v)
        if (m.e[v] > 1) f *= Rational::factorial(m.e[v]);
    return f;
}

}  // namespace

Monomial extraction_monomial(const GDState& st, const CorrelatorKey& key) {
    if (key.sector == Sector::Open) return extraction_monomial(st, open_to_extended(key));
    return insertion_monomial(st, key.ins);
}

Rational ext_from_phi0(const GDState& st, const CorrelatorKey& key) {
    if (key.sector != Sector::Extended) throw UsageError("extended extraction expects an extended key");
    if (key.r != st.config().r) throw UsageError("key r does not match the engine");
    if (key.l() < 2) return Rational(0);  // fewer than three marked points: unstable

    const int r = key.r;
    Monomial m = insertion_monomial(st, key.ins);
    MuScalar scale = MuScalar::mu_power(r, r + 1);  // sqrt(-r) in front of the wave phase
    for (const auto& i : key.ins) {
        TScale sc = t_to_T_scale(r, i.a, i.d);
        scale = scale * sc.factor;
        if (i.a == r - 1) scale = scale * MuScalar::mu_power(r, -(r + 1));  // t^{r-1} rescaling
    }
    MuScalar val = st.phi0().coeff(m) * scale.scaled(monomial_symmetry(st.frame(), m));
    return val.as_rational();
}

Rational closed_extract(const GDState& st, const CorrelatorKey& key) {
    if (key.sector != Sector::Closed) throw UsageError("closed extraction expects a closed key");
    if (key.r != st.config().r) throw UsageError("key r does not match the engine");
    if (key.l() < 3) return Rational(0);

    const int r = key.r;
    // closed correlators do not depend on the t^{r-1} directions
    for (const auto& i : key.ins)
        if (i.a == r - 1) return Rational(0);
    bool has_primary = false;
    for (const auto& i : key.ins)
        if (i.a <= r - 2 && i.d == 0) has_primary = true;
    if (!has_primary)
        throw TruncationError("unsupported closed key (no primary insertion of twist <= r-2): " +
                              key.canonical());
    for (const auto& i : key.ins)
        if (t_to_T_scale(r, i.a, i.d).index > st.config().nmax)
            throw TruncationError("closed key needs T index beyond nmax: " + key.canonical());

    MuScalar scale(r, 1);
    for (const auto& i : key.ins) scale = scale * t_to_T_scale(r, i.a, i.d).factor;

    bool have = false;
    Rational value(0);
    const Frame& fr = st.frame();
    for (size_t b_i = 0; b_i < key.ins.size(); ++b_i) {
        const Insertion& B = key.ins[b_i];
        if (B.a > r - 2 || B.d != 0) continue;
        int b = B.a + 1;
        for (size_t a_i = 0; a_i < key.ins.size(); ++a_i) {
            if (a_i == b_i) continue;
            const Insertion& A = key.ins[a_i];
            TScale sa = t_to_T_scale(r, A.a, A.d);
            std::vector<Insertion> rest;
            for (size_t j = 0; j < key.ins.size(); ++j)
                if (j != a_i && j != b_i) rest.push_back(key.ins[j]);
            Monomial m = insertion_monomial(st, rest);
            MuScalar v = st.omega(sa.index, b).coeff(m) *
                         scale.scaled(monomial_symmetry(fr, m));
            Rational rv = v.as_rational();
            if (!have) {
                value = rv;
                have = true;
            } else if (rv != value) {
                throw ConsistencyError("closed extraction depends on the insertion choice: " +
                                       key.canonical());
            }
        }
    }
    return value;
}

Rational open_from_ext(const GDState& st, const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("open extraction expects an open key");
    if (key.r != st.config().r) throw UsageError("key r does not match the engine");
    if (key.k == 0) return Rational(0);
    if (!dim_gate_open(key)) return Rational(0);
    const int r = key.r;
    // d/ds of the correspondence: <...sigma^k> = -(1/r)(-r)^k <tau^{-1}...(tau^{r-1})^k>
    Rational pref = Rational(-1, r) * Rational(-r).pow(key.k);
    return pref * ext_from_phi0(st, open_to_extended(key));
}

Rational gd_value(const GDState& st, const CorrelatorKey& key) {
    switch (key.sector) {
        case Sector::Open: return open_from_ext(st, key);
        case Sector::Extended: return ext_from_phi0(st, key);
        case Sector::Closed: {
            if (key.l() < 3) return Rational(0);
            // vanishing in the t^{r-1} directions
            for (const auto& i : key.ins)
                if (i.a == key.r - 1) return Rational(0);
            return closed_extract(st, key);
        }
    }
    throw UsageError("unknown sector");
}

Series fext_series(const GDState& st, int order) {
    const int r = st.config().r;
    const Frame& Tf = st.frame();
    // deep enough for every carried T index
    static thread_local std::map<std::pair<int, int>, Frame> frames;
    int dmax = st.config().nmax / r;
    Frame& tf = frames.emplace(std::make_pair(r, dmax), Frame::make_t(r, dmax)).first->second;
    Support tsup = Support::plain(order);

    Series::Builder acc(&tf, tsup);
    MuScalar front = MuScalar::mu_power(r, r + 1);  // sqrt(-r)
    for (const auto& term : st.phi0().terms()) {
        Monomial m;
        MuScalar c = term.c * front;
        int deg = 0;
        bool keep = true;
        for (int v = 0; v < Tf.nvars && keep; ++v) {
            int e = term.m.exp(v);
            if (!e) continue;
            int j = Tf.slot_t_index(v);
            int a, d;
            if (j % r == 0) {
                a = r - 1;
                d = j / r - 1;
            } else {
                a = (j - 1) % r;
                d = (j - 1) / r;
            }
            if (d > tf.dmax) {
                keep = false;
                break;
            }
            m.e[tf.tvar_slot(a, d)] = static_cast<uint16_t>(e);
            deg += e;
            MuScalar f = t_to_T_scale(r, a, d).factor;
            if (a == r - 1) f = f * MuScalar::mu_power(r, -(r + 1));
            for (int p = 0; p < e; ++p) c = c * f;
        }
        if (keep && deg <= order) acc.add(m, c);
    }
    return acc.build();
}

}  // namespace rspin
