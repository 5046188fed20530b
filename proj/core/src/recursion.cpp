#include "rspin/recursion.hpp"

#include <algorithm>
#include <map>

namespace rspin {

namespace {

void require_primary(const CorrelatorKey& key, const char* what) {
    for (const auto& i : key.ins)
        if (i.d != 0) throw UsageError(std::string(what) + " expects a primary key");
}

long twist_deficit(int r, const std::vector<int>& alphas) {
    long s = 0;
    for (int a : alphas) s += r - a;
    return s;
}

}  // namespace

Rational open_primary_formula(const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("open primary formula expects an open key");
    require_primary(key, "open primary formula");
    if (key.k < 1 || !dim_gate_open(key)) return Rational(0);
    // (k+l-2)! / (-r)^(l-1)
    return Rational::factorial(key.k + key.l() - 2) * Rational(-key.r).pow(1 - key.l());
}

Rational ext_primary_formula(const CorrelatorKey& key) {
    if (key.sector != Sector::Extended)
        throw UsageError("extended primary formula expects an extended key");
    require_primary(key, "extended primary formula");
    const int n = key.l();
    if (n < 2) return Rational(0);
    if (key.sum_twist() - (key.r - 1) != static_cast<long>(key.r) * (n - 2)) return Rational(0);
    return Rational::factorial(n - 2) * Rational(-key.r).pow(2 - n);
}

namespace {

// Shared skeleton of the two bipartition recursions.  `value(alphas)` is
// computed from the values on proper sub-multisets; the two recursions only
// differ in seeds and in the k = 0 boundary term.
struct BipartitionRecursion {
    int r;
    bool open_sector;  // seeds and boundary term switch
    std::map<std::vector<int>, Rational> memo;

    long k_of(const std::vector<int>& alphas) const {
        return r + 1 - twist_deficit(r, alphas);
    }

    Rational solve(const std::vector<int>& alphas, bool top) {
        const long k = k_of(alphas);
        const int l = static_cast<int>(alphas.size());
        if (k < 0) return Rational(0);
        if (l == 0)
            return open_sector ? -Rational::factorial(r)
                               : Rational::factorial(r - 1) * Rational(-r).pow(-(r - 1));
        if (l == 1) {
            int a = alphas[0];  // k = a+1
            return open_sector ? Rational::factorial(a)
                               : Rational::factorial(a) * Rational(-r).pow(-a);
        }
        if (!top) {
            if (k == 0 && open_sector) return Rational(0);  // no boundary points
            auto it = memo.find(alphas);
            if (it != memo.end()) return it->second;
        }

        // sum over bipartitions I | J of the index set, element 0 always in I,
        // element l-1 separating the two sums
        Rational sum1(0), sum2(0);
        const unsigned last = 1u << (l - 1);  // element 0 pinned to I; mask over 1..l-1
        for (unsigned mask = 0; mask < last; ++mask) {
            std::vector<int> in_I{alphas[0]}, in_J;
            for (int i = 1; i < l; ++i)
                ((mask >> (i - 1)) & 1u ? in_I : in_J).push_back(alphas[i]);
            const long kI = k_of(in_I);
            bool lastInI = ((mask >> (l - 2)) & 1u) != 0;
            if (!lastInI) {
                // 1 in I, l in J
                Rational b = Rational::binomial(r + k - 1, kI - 1);
                if (!b.is_zero()) sum1 += b * solve(in_I, false) * solve(in_J, false);
            } else if (!in_J.empty()) {
                // 1, l in I and J nonempty
                Rational b = Rational::binomial(r + k - 1, kI);
                if (!b.is_zero()) sum2 += b * solve(in_I, false) * solve(in_J, false);
            }
        }
        Rational rhs = sum1 - sum2;

        Rational val;
        if (open_sector) {
            if (k == 0) {
                // boundary term: the extended correlator against <tau^{r-1} sigma^r>
                CorrelatorKey ext(Sector::Extended, r, [&] {
                    std::vector<Insertion> ins;
                    for (int a : alphas) ins.push_back({a, 0});
                    return ins;
                }());
                rhs -= ext_primary_formula(ext) * Rational::factorial(r - 1);
            }
            val = rhs / (Rational::binomial(r + k - 1, k) * -Rational::factorial(r));
        } else {
            // ((r+k-1)!/(k!(-r)^{r-1})) A = rhs
            val = rhs * Rational::factorial(k) * Rational(-r).pow(r - 1) /
                  Rational::factorial(r + k - 1);
        }
        if (!top) memo.emplace(alphas, val);
        return val;
    }
};

}  // namespace

Rational ext_primary_recursion(const CorrelatorKey& key) {
    if (key.sector != Sector::Extended)
        throw UsageError("extended primary recursion expects an extended key");
    require_primary(key, "extended primary recursion");
    if (key.l() < 2) return Rational(0);
    // split the listed twists: the r-1 insertions play the boundary role
    std::vector<int> alphas;
    int k_listed = 0;
    for (const auto& i : key.ins) {
        if (i.a == key.r - 1)
            ++k_listed;
        else
            alphas.push_back(i.a);
    }
    BipartitionRecursion rec{key.r, /*open_sector=*/false, {}};
    if (rec.k_of(alphas) != k_listed) return Rational(0);  // dimension constraint fails
    std::sort(alphas.begin(), alphas.end());
    return rec.solve(alphas, true);
}

Rational open_primary_recursion_check(const CorrelatorKey& key) {
    if (key.sector != Sector::Open)
        throw UsageError("open primary recursion expects an open key");
    require_primary(key, "open primary recursion");
    std::vector<int> alphas;
    for (const auto& i : key.ins) alphas.push_back(i.a);
    std::sort(alphas.begin(), alphas.end());
    BipartitionRecursion rec{key.r, /*open_sector=*/true, {}};
    if (rec.k_of(alphas) != key.k) return Rational(0);
    return rec.solve(alphas, true);
}

int pick_descendent(const CorrelatorKey& key) {
    int best = -1;
    for (int i = 0; i < key.l(); ++i) {
        if (key.ins[i].d < 1) continue;
        if (best < 0 || std::make_pair(key.ins[i].d, key.ins[i].a) >
                            std::make_pair(key.ins[best].d, key.ins[best].a))
            best = i;
    }
    return best;
}

namespace {

// Sub-multiset enumeration with binomial weights: the relations are stated
// over labeled index sets, so a sub-multiset S of M is counted
// prod_v binom(mult_M(v), mult_S(v)) times.
struct SubMultisets {
    std::vector<std::pair<Insertion, int>> groups;  // distinct insertion, multiplicity

    explicit SubMultisets(const std::vector<Insertion>& ins) {
        for (const auto& i : ins) {
            if (!groups.empty() && groups.back().first == i)
                ++groups.back().second;
            else
                groups.emplace_back(i, 1);
        }
    }

    template <typename F>
    void for_each(F&& fn) const {
        std::vector<int> take(groups.size(), 0);
        while (true) {
            Rational weight(1);
            std::vector<Insertion> S, R;
            for (size_t g = 0; g < groups.size(); ++g) {
                weight *= Rational::binomial(groups[g].second, take[g]);
                for (int c = 0; c < take[g]; ++c) S.push_back(groups[g].first);
                for (int c = take[g]; c < groups[g].second; ++c) R.push_back(groups[g].first);
            }
            fn(S, R, weight);
            size_t g = 0;
            for (; g < groups.size(); ++g) {
                if (take[g] < groups[g].second) {
                    ++take[g];
                    break;
                }
                take[g] = 0;
            }
            if (g == groups.size()) break;
        }
    }
};

std::vector<Insertion> erase_at(const std::vector<Insertion>& ins, int i, int j = -1) {
    std::vector<Insertion> out;
    for (int p = 0; p < static_cast<int>(ins.size()); ++p)
        if (p != i && p != j) out.push_back(ins[p]);
    return out;
}

std::vector<Insertion> with(std::vector<Insertion> base, std::initializer_list<Insertion> extra) {
    for (const auto& e : extra) base.push_back(e);
    return base;
}

}  // namespace

Expansion trr_boundary(const CorrelatorKey& key, int chosen) {
    if (key.sector != Sector::Open) throw UsageError("boundary TRR expects an open key");
    if (key.k < 1 || key.l() < 1) throw UsageError("boundary TRR requires k >= 1 and l >= 1");
    if (chosen < 0 || chosen >= key.l() || key.ins[chosen].d < 1)
        throw UsageError("boundary TRR requires a descendent insertion");
    const int r = key.r;
    const Insertion red{key.ins[chosen].a, key.ins[chosen].d - 1};
    SubMultisets parts(erase_at(key.ins, chosen));

    Expansion exp;
    parts.for_each([&](const std::vector<Insertion>& S, const std::vector<Insertion>& R,
                       const Rational& w) {
        if (w.is_zero()) return;
        for (int a = -1; a <= r - 2; ++a) {
            CorrelatorKey first =
                a == -1 ? CorrelatorKey(Sector::Extended, r, with(S, {red}))
                        : CorrelatorKey(Sector::Closed, r, with(S, {red, Insertion{a, 0}}));
            CorrelatorKey second(Sector::Open, r, with(R, {Insertion{r - 2 - a, 0}}), key.k);
            exp.push_back({w, {first, second}});
        }
        for (int k1 = 0; k1 + 1 <= key.k; ++k1) {
            int k2 = key.k - 1 - k1;
            Rational c = w * Rational::binomial(key.k - 1, k1);
            CorrelatorKey first(Sector::Open, r, with(S, {red}), k1);
            CorrelatorKey second(Sector::Open, r, R, k2 + 2);
            exp.push_back({c, {first, second}});
        }
    });
    return exp;
}

Expansion trr_internal(const CorrelatorKey& key, int chosen, int second) {
    if (key.sector != Sector::Open) throw UsageError("internal TRR expects an open key");
    if (key.l() < 2) throw UsageError("internal TRR requires l >= 2");
    if (chosen < 0 || chosen >= key.l() || key.ins[chosen].d < 1)
        throw UsageError("internal TRR requires a descendent insertion");
    if (second < 0 || second >= key.l() || second == chosen)
        throw UsageError("internal TRR requires a distinct second insertion");
    const int r = key.r;
    const Insertion red{key.ins[chosen].a, key.ins[chosen].d - 1};
    const Insertion snd = key.ins[second];
    SubMultisets parts(erase_at(key.ins, chosen, second));

    Expansion exp;
    parts.for_each([&](const std::vector<Insertion>& S, const std::vector<Insertion>& R,
                       const Rational& w) {
        if (w.is_zero()) return;
        for (int a = -1; a <= r - 2; ++a) {
            CorrelatorKey first =
                a == -1 ? CorrelatorKey(Sector::Extended, r, with(S, {red}))
                        : CorrelatorKey(Sector::Closed, r, with(S, {red, Insertion{a, 0}}));
            CorrelatorKey open_f(Sector::Open, r, with(R, {Insertion{r - 2 - a, 0}, snd}), key.k);
            exp.push_back({w, {first, open_f}});
        }
        for (int k1 = 0; k1 <= key.k; ++k1) {
            int k2 = key.k - k1;
            Rational c = w * Rational::binomial(key.k, k1);
            CorrelatorKey first(Sector::Open, r, with(S, {red}), k1);
            CorrelatorKey open_s(Sector::Open, r, with(R, {snd}), k2 + 1);
            exp.push_back({c, {first, open_s}});
        }
    });
    return exp;
}

Expansion open_string_reduce(const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("open string expects an open key");
    auto it = std::find(key.ins.begin(), key.ins.end(), Insertion{0, 0});
    if (it == key.ins.end()) throw UsageError("open string requires a (0,0) insertion");
    std::vector<Insertion> rest = erase_at(key.ins, static_cast<int>(it - key.ins.begin()));

    Expansion exp;
    if (rest.empty()) {
        exp.push_back({Rational(key.k == 1 ? 1 : 0), {}});
        return exp;
    }
    SubMultisets groups(rest);
    for (const auto& [ins, count] : groups.groups) {
        if (ins.d < 1) continue;
        std::vector<Insertion> reduced = rest;
        auto pos = std::find(reduced.begin(), reduced.end(), ins);
        pos->d -= 1;
        exp.push_back({Rational(count), {CorrelatorKey(Sector::Open, key.r, reduced, key.k)}});
    }
    return exp;
}

Expansion open_dilaton_reduce(const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("open dilaton expects an open key");
    auto it = std::find(key.ins.begin(), key.ins.end(), Insertion{0, 1});
    if (it == key.ins.end()) throw UsageError("open dilaton requires a (0,1) insertion");
    std::vector<Insertion> rest = erase_at(key.ins, static_cast<int>(it - key.ins.begin()));
    Expansion exp;
    exp.push_back({Rational(key.k + static_cast<int>(rest.size()) - 1),
                   {CorrelatorKey(Sector::Open, key.r, rest, key.k)}});
    return exp;
}

Expansion ext_string_reduce(const CorrelatorKey& key) {
    if (key.sector != Sector::Extended) throw UsageError("extended string expects an extended key");
    auto it = std::find(key.ins.begin(), key.ins.end(), Insertion{0, 0});
    if (it == key.ins.end()) throw UsageError("extended string requires a (0,0) insertion");
    std::vector<Insertion> rest = erase_at(key.ins, static_cast<int>(it - key.ins.begin()));

    Expansion exp;
    if (rest.size() == 1 && rest[0] == Insertion{key.r - 1, 0}) {
        exp.push_back({Rational(1), {}});
        return exp;
    }
    SubMultisets groups(rest);
    for (const auto& [ins, count] : groups.groups) {
        if (ins.d < 1) continue;
        std::vector<Insertion> reduced = rest;
        auto pos = std::find(reduced.begin(), reduced.end(), ins);
        pos->d -= 1;
        exp.push_back({Rational(count), {CorrelatorKey(Sector::Extended, key.r, reduced)}});
    }
    return exp;
}

Expansion ext_trr_reduce(const CorrelatorKey& key, int chosen, int second) {
    if (key.sector != Sector::Extended) throw UsageError("extended TRR expects an extended key");
    if (key.l() < 2) throw UsageError("extended TRR requires two listed insertions");
    if (chosen < 0 || chosen >= key.l() || key.ins[chosen].d < 1)
        throw UsageError("extended TRR requires a descendent insertion");
    if (second < 0 || second >= key.l() || second == chosen)
        throw UsageError("extended TRR requires a distinct second insertion");
    const int r = key.r;
    const Insertion red{key.ins[chosen].a, key.ins[chosen].d - 1};
    const Insertion snd = key.ins[second];
    SubMultisets parts(erase_at(key.ins, chosen, second));

    Expansion exp;
    parts.for_each([&](const std::vector<Insertion>& S, const std::vector<Insertion>& R,
                       const Rational& w) {
        if (w.is_zero()) return;
        for (int mu = 0; mu <= r - 2; ++mu) {
            CorrelatorKey closed(Sector::Closed, r, with(S, {red, Insertion{mu, 0}}));
            CorrelatorKey ext(Sector::Extended, r, with(R, {Insertion{r - 2 - mu, 0}, snd}));
            exp.push_back({w, {closed, ext}});
        }
        CorrelatorKey e1(Sector::Extended, r, with(S, {red}));
        CorrelatorKey e2(Sector::Extended, r, with(R, {Insertion{r - 1, 0}, snd}));
        exp.push_back({w, {e1, e2}});
    });
    return exp;
}

Rational Evaluator::factor_value(const CorrelatorKey& key) {
    if (key.sector == Sector::Open)
        return open_path_ == OpenPath::Recursion ? recursion_engine(key) : open_from_ext(st_, key);
    return gd_value(st_, key);
}

Rational Evaluator::expansion_value(const Expansion& exp) {
    Rational total(0);
    for (const auto& term : exp) {
        if (term.coeff.is_zero()) continue;
        Rational prod = term.coeff;
        for (const auto& f : term.factors) {
            if (prod.is_zero()) break;
            prod *= factor_value(f);
        }
        total += prod;
    }
    return total;
}

Rational Evaluator::recursion_engine(const CorrelatorKey& key) {
    if (key.sector != Sector::Open) throw UsageError("recursion engine expects an open key");
    if (key.k == 0) return Rational(0);
    if (!dim_gate_open(key)) return Rational(0);

    std::string ck = key.canonical();
    if (memo_) {
        if (const auto* e = memo_->find(ck)) return e->value;
    }
    int chosen = pick_descendent(key);
    Rational value;
    ValuePath path;
    if (chosen < 0) {
        value = open_primary_formula(key);
        path = ValuePath::ClosedForm;
    } else {
        value = expansion_value(trr_boundary(key, chosen));
        path = ValuePath::Recursion;
    }
    if (memo_) memo_->insert(ck, value, path);
    return value;
}

Rational Evaluator::ext_recursion_value(const CorrelatorKey& key) {
    if (key.sector != Sector::Extended) throw UsageError("extended recursion expects an extended key");
    if (key.l() < 2) return Rational(0);
    int chosen = pick_descendent(key);
    if (chosen < 0) return ext_primary_recursion(key);

    // reduce against the largest remaining insertion
    int second = -1;
    for (int i = 0; i < key.l(); ++i) {
        if (i == chosen) continue;
        if (second < 0 || std::make_pair(key.ins[i].d, key.ins[i].a) >
                              std::make_pair(key.ins[second].d, key.ins[second].a))
            second = i;
    }
    Expansion exp = ext_trr_reduce(key, chosen, second);
    Rational total(0);
    for (const auto& term : exp) {
        if (term.coeff.is_zero()) continue;
        Rational prod = term.coeff;
        for (const auto& f : term.factors) {
            if (prod.is_zero()) break;
            prod *= f.sector == Sector::Extended ? ext_recursion_value(f) : gd_value(st_, f);
        }
        total += prod;
    }
    return total;
}

}  // namespace rspin
