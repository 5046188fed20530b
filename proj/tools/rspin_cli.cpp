// Command-line front end: correlator queries, table generation, series dumps
// and the verification suites, with an optional persistent value cache.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "rspin/io.hpp"
#include "rspin/validate.hpp"

using namespace rspin;
using nlohmann::json;

namespace {

struct EngineFlags {
    int r = 0;
    int nmax = 0;
    int degree = 0;
    int zfloor = 0;
    int desc_budget = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--r", r, "spin parameter r (>= 2)")->required();
        cmd->add_option("--nmax", nmax, "largest hierarchy time T index (default: sized per query)");
        cmd->add_option("--degree", degree, "degree budget in T_2.. (default: sized per query)");
        cmd->add_option("--zfloor", zfloor, "most negative z exponent (default: -(2r+2))");
        cmd->add_option("--desc-budget", desc_budget, "optional descendent-weight budget");
    }

    // Merge explicit flags over an auto-planned configuration.
    EngineConfig resolve(EngineConfig planned) const {
        if (nmax) {
            if (nmax < planned.nmax)
                throw TruncationError("requested nmax " + std::to_string(nmax) + " is below the " +
                                      std::to_string(planned.nmax) + " this query needs");
            planned.nmax = nmax;
        }
        if (degree) {
            if (degree < planned.budget)
                throw TruncationError("requested degree budget " + std::to_string(degree) +
                                      " is below the " + std::to_string(planned.budget) +
                                      " this query needs");
            planned.budget = degree;
        }
        if (zfloor) planned.zfloor = zfloor;
        if (desc_budget >= 0) planned.desc_budget = desc_budget;
        planned.validate();
        return planned;
    }
};

std::vector<Insertion> parse_insertions(const std::string& arg) {
    std::vector<Insertion> out;
    size_t pos = 0;
    while (pos < arg.size()) {
        size_t comma = arg.find(',', pos);
        std::string tok =
            arg.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) {
            size_t colon = tok.find(':');
            if (colon == std::string::npos)
                throw UsageError("insertion '" + tok + "' is not of the form a:d");
            try {
                out.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))});
            } catch (const std::exception&) {
                throw UsageError("insertion '" + tok + "' is not of the form a:d");
            }
        }
        pos = comma == std::string::npos ? arg.size() : comma + 1;
    }
    return out;
}

std::string cache_path_from(const std::string& flag) {
    if (!flag.empty()) return flag;
    const char* env = std::getenv("RSPIN_CACHE");
    return env ? env : "";
}

std::string fingerprint_of(const EngineConfig& cfg) {
    return cfg.fingerprint() + ";engine=" + kEngineVersion;
}

// Loads the cache if present and compatible; a missing file starts empty.
MemoStore load_memo(const std::string& path, const EngineConfig& cfg) {
    MemoStore memo(fingerprint_of(cfg));
    if (path.empty()) return memo;
    std::ifstream probe(path);
    if (!probe.good()) return memo;
    try {
        CacheFile file = CacheFile::load(path);
        if (file.fingerprint != memo.fingerprint()) {
            std::cerr << "warning: cache " << path << " has fingerprint '" << file.fingerprint
                      << "', expected '" << memo.fingerprint() << "'; refusing to reuse it\n";
            return memo;
        }
        file.fill(memo);
    } catch (const Error& e) {
        std::cerr << "warning: " << e.what() << "; refusing to reuse the cache\n";
    }
    return memo;
}

void save_memo(const std::string& path, const MemoStore& memo) {
    if (path.empty()) return;
    CacheFile::from_memo(memo).save(path);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    out << text;
}

// ---- correlator ------------------------------------------------------------

int cmd_correlator(const EngineFlags& eng, const std::string& sector, const std::string& ins_arg,
                   int k, const std::string& path_mode, const std::string& format,
                   const std::string& cache_flag) {
    Sector sec = parse_sector(sector);
    CorrelatorKey key(sec, eng.r, parse_insertions(ins_arg), sec == Sector::Open ? k : 0);
    EngineConfig cfg = eng.resolve(plan_key_config(key));
    std::string cache_path = cache_path_from(cache_flag);
    MemoStore memo = load_memo(cache_path, cfg);

    std::optional<GDState> st;
    auto state = [&]() -> const GDState& {
        if (!st) st = GDState::solve(cfg);
        return *st;
    };

    auto value_on = [&](ValuePath path) -> Rational {
        std::string ck = key.canonical();
        if (const auto* e = memo.find(ck); e && e->path == path) return e->value;
        Rational v;
        if (path == ValuePath::Gd) {
            v = gd_value(state(), key);
        } else if (key.sector == Sector::Open) {
            Evaluator ev(state(), &memo);
            v = ev.recursion_engine(key);
        } else if (key.sector == Sector::Extended) {
            Evaluator ev(state(), &memo);
            v = ev.ext_recursion_value(key);
        } else {
            throw UsageError("the recursion path covers open and extended keys only");
        }
        memo.insert(ck, v, path);
        return v;
    };

    std::string text;
    if (path_mode == "both") {
        Rational gd = value_on(ValuePath::Gd);
        Rational rec = value_on(ValuePath::Recursion);
        bool match = gd == rec;
        if (format == "json") {
            json out = {{"key", key.canonical()},
                        {"gd", gd.str()},
                        {"recursion", rec.str()},
                        {"match", match}};
            text = out.dump(2) + "\n";
        } else {
            text = "gd: " + gd.str() + "\nrecursion: " + rec.str() +
                   "\nmatch: " + (match ? "true" : "false") + "\n";
        }
        emit("", text);
        save_memo(cache_path, memo);
        if (!match) throw ConsistencyError("paths disagree for " + key.canonical());
        return 0;
    }

    if (path_mode != "gd" && path_mode != "recursion")
        throw UsageError("--path must be gd, recursion or both");
    ValuePath path = path_mode == "recursion" ? ValuePath::Recursion : ValuePath::Gd;
    Rational v = value_on(path);
    if (format == "json") {
        json out = {{"key", key.canonical()}, {"value", v.str()}, {"path", path_name(path)}};
        text = out.dump(2) + "\n";
    } else {
        text = v.str() + "\n";
    }
    emit("", text);
    save_memo(cache_path, memo);
    return 0;
}

// ---- table -----------------------------------------------------------------

std::vector<CorrelatorKey> admissible_keys(int r, Sector sector, int max_l, int max_desc) {
    std::vector<CorrelatorKey> keys;
    for (const auto& ins : enumerate_insertions(r, max_l, max_desc)) {
        switch (sector) {
            case Sector::Open: {
                int k = gate_boundary_count(r, ins);
                if (k < 0) continue;
                CorrelatorKey key(Sector::Open, r, ins, k);
                if (key.k + 2 * key.l() > 2) keys.push_back(key);
                break;
            }
            case Sector::Extended: {
                if (ins.size() < 2) continue;
                CorrelatorKey key(Sector::Extended, r, ins);
                if (key.sum_twist() - (r - 1) + static_cast<long>(r) * key.sum_desc() ==
                    static_cast<long>(r) * (key.l() - 2))
                    keys.push_back(key);
                break;
            }
            case Sector::Closed: {
                if (ins.size() < 3) continue;
                CorrelatorKey key(Sector::Closed, r, ins);
                long num = key.sum_twist() - (r - 2);
                if (num % r != 0 || num / r < 0) continue;
                if (num / r + key.sum_desc() != key.l() - 3) continue;
                keys.push_back(key);
                break;
            }
        }
    }
    std::sort(keys.begin(), keys.end(), [](const CorrelatorKey& a, const CorrelatorKey& b) {
        return a.canonical() < b.canonical();
    });
    return keys;
}

int cmd_table(const EngineFlags& eng, const std::string& sector_flag, int max_l, int max_desc,
              const std::string& format, const std::string& out_path,
              const std::string& cache_flag) {
    Sector sector = parse_sector(sector_flag);
    std::vector<CorrelatorKey> keys = admissible_keys(eng.r, sector, max_l, max_desc);

    CrossBounds bounds{max_l, max_desc};
    EngineConfig cfg = eng.resolve(plan_config(eng.r, bounds));
    std::string cache_path = cache_path_from(cache_flag);
    MemoStore memo = load_memo(cache_path, cfg);

    std::optional<GDState> st;
    std::string text;
    json rows = json::array();
    for (const auto& key : keys) {
        Rational v;
        std::string ck = key.canonical();
        if (const auto* e = memo.find(ck)) {
            v = e->value;
        } else {
            if (!st) st = GDState::solve(cfg);
            v = gd_value(*st, key);
            memo.insert(ck, v, ValuePath::Gd);
        }
        if (format == "csv")
            text += ck + "," + v.str() + ",gd\n";
        else
            rows.push_back({{"key", ck}, {"value", v.str()}, {"path", "gd"}});
    }
    if (format == "csv")
        text = "key,value,path\n" + text;
    else
        text = rows.dump(2) + "\n";
    emit(out_path, text);
    save_memo(cache_path, memo);
    return 0;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const EngineFlags& eng, const std::string& suite, int depth, int max_l,
               const std::string& format) {
    const int r = eng.r;
    std::vector<CheckResult> results;
    CrossBounds bounds{max_l, depth};

    if (suite == "hierarchy") {
        EngineConfig cfg;
        cfg.r = r;
        cfg.nmax = std::max(r + 2, 2 * r);
        cfg.budget = 4;
        cfg = eng.resolve(cfg);
        results = hierarchy_checks(cfg);
    } else if (suite == "cross") {
        EngineConfig cfg = eng.resolve(plan_config(r, bounds));
        GDState st = GDState::solve(cfg);
        MemoStore memo;
        CrossReport rep = cross_validate(st, bounds, &memo);
        std::string note = rep.mismatches.empty() ? ""
                                                  : rep.mismatches.front().key.canonical() + " " +
                                                        rep.mismatches.front().what;
        results.push_back(
            {"cross validation (" + std::to_string(rep.checked) + " keys)", rep.ok(), note});
    } else if (suite == "trr") {
        EngineConfig cfg = eng.resolve(plan_config(r, bounds));
        GDState st = GDState::solve(cfg);
        results = trr_identity_checks(st, bounds);
    } else if (suite == "string-dilaton") {
        EngineConfig cfg = eng.resolve(plan_config(r, bounds));
        GDState st = GDState::solve(cfg);
        results = string_dilaton_checks(st, bounds);
    } else if (suite == "identities") {
        for (int l = 2; l <= 5; ++l) {
            bool ok = true;
            for (int k = 0; k <= r + 1; ++k) ok = ok && identity_check(r, l, k);
            results.push_back({"bipartition identity grid l=" + std::to_string(l), ok, ""});
        }
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }

    bool all = true;
    if (format == "json") {
        json rows = json::array();
        for (const auto& res : results) {
            all = all && res.pass;
            rows.push_back({{"check", res.name}, {"pass", res.pass}, {"witness", res.note}});
        }
        std::cout << rows.dump(2) << "\n";
    } else {
        for (const auto& res : results) {
            all = all && res.pass;
            std::cout << (res.pass ? "[ok]   " : "[FAIL] ") << res.name;
            if (!res.note.empty()) std::cout << " -- " << res.note;
            std::cout << "\n";
        }
    }
    return all ? 0 : 1;
}

// ---- series ----------------------------------------------------------------

int cmd_series(const EngineFlags& eng, const std::string& target, int order,
               const std::string& out_path) {
    const int r = eng.r;
    EngineConfig cfg;
    cfg.r = r;
    cfg.nmax = std::max(r + 1, 2 * r);
    cfg.budget = std::max(order, 2);
    cfg = eng.resolve(cfg);
    GDState st = GDState::solve(cfg);

    json out;
    out["r"] = r;
    out["order"] = order;
    out["target"] = target;
    if (target == "l0") {
        out["symbol"] = symbol_to_json(st.lax().degree_leq(order));
    } else if (target == "phi0") {
        out["series"] = series_to_json(st.phi0().degree_leq(order));
    } else if (target.rfind("omega:", 0) == 0) {
        std::string args = target.substr(6);
        size_t comma = args.find(',');
        if (comma == std::string::npos) throw UsageError("omega target needs omega:a,b");
        int a = 0, b = 0;
        try {
            a = std::stoi(args.substr(0, comma));
            b = std::stoi(args.substr(comma + 1));
        } catch (const std::exception&) {
            throw UsageError("omega target needs omega:a,b");
        }
        out["series"] = series_to_json(st.omega(a, b).degree_leq(order));
    } else if (target == "fext") {
        out["series"] = series_to_json(fext_series(st, order));
    } else {
        throw UsageError("unknown series target '" + target + "'");
    }
    emit(out_path, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact genus-zero r-spin intersection numbers from the dispersionless "
                 "Gelfand-Dickey hierarchy, cross-checked against topological recursions"};
    app.require_subcommand(1);

    auto* corr = app.add_subcommand("correlator", "evaluate a single correlator");
    EngineFlags ceng;
    ceng.attach(corr);
    std::string c_sector, c_ins, c_path = "gd", c_format = "text", c_cache;
    int c_k = 0;
    corr->add_option("--sector", c_sector, "open | closed | extended")->required();
    corr->add_option("--insertions", c_ins, "comma-separated a:d pairs (twist:descendent)");
    corr->add_option("--k", c_k, "boundary marked points (open sector)");
    corr->add_option("--path", c_path, "gd | recursion | both");
    corr->add_option("--format", c_format, "text | json");
    corr->add_option("--cache", c_cache, "value cache file (or RSPIN_CACHE)");

    auto* table = app.add_subcommand("table", "tabulate all admissible keys within bounds");
    EngineFlags teng;
    teng.attach(table);
    std::string t_sector = "open", t_format = "json", t_out, t_cache;
    int t_maxl = 3, t_maxd = 0;
    table->add_option("--sector", t_sector, "open | closed | extended");
    table->add_option("--max-insertions", t_maxl, "largest insertion count");
    table->add_option("--max-desc", t_maxd, "largest total descendent level");
    table->add_option("--format", t_format, "json | csv");
    table->add_option("--out", t_out, "output file (default stdout)");
    table->add_option("--cache", t_cache, "value cache file (or RSPIN_CACHE)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    EngineFlags veng;
    veng.attach(verify);
    std::string v_suite, v_format = "text";
    int v_depth = 2, v_maxl = 4;
    verify->add_option("--suite", v_suite, "cross | trr | string-dilaton | identities | hierarchy")
        ->required();
    verify->add_option("--depth", v_depth, "largest total descendent level");
    verify->add_option("--max-insertions", v_maxl, "largest insertion count");
    verify->add_option("--format", v_format, "text | json");

    auto* series = app.add_subcommand("series", "dump an engine series as canonical JSON");
    EngineFlags seng;
    seng.attach(series);
    std::string s_target, s_out;
    int s_order = 3;
    series->add_option("--target", s_target, "l0 | phi0 | omega:a,b | fext")->required();
    series->add_option("--order", s_order, "truncation order of the dump");
    series->add_option("--out", s_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (corr->parsed())
            return cmd_correlator(ceng, c_sector, c_ins, c_k, c_path, c_format, c_cache);
        if (table->parsed())
            return cmd_table(teng, t_sector, t_maxl, t_maxd, t_format, t_out, t_cache);
        if (verify->parsed()) return cmd_verify(veng, v_suite, v_depth, v_maxl, v_format);
        if (series->parsed()) return cmd_series(seng, s_target, s_order, s_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
