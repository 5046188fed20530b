#include "rspin/io.hpp"

#include <cstdio>
#include <fstream>

namespace rspin {

using nlohmann::json;

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw UsageError("rational must be serialized as a string");
    return Rational::parse(j.get<std::string>());
}

json mu_to_json(const MuScalar& m) {
    json out = json::array();
    for (const auto& [q, c] : m.terms()) out.push_back(json::array({q, 1, c.str()}));
    return out;
}

json monomial_to_json(const Frame& f, const Monomial& m) {
    json out = json::array();
    for (int v = 0; v < f.nvars; ++v)
        if (m.exp(v)) out.push_back(json::array({f.var_name(v), m.exp(v)}));
    return out;
}

json series_to_json(const Series& s) {
    json terms = json::array();
    for (const auto& t : s.terms())
        terms.push_back(json::array({monomial_to_json(s.frame(), t.m), mu_to_json(t.c)}));
    json out;
    out["frame"] = s.frame().kind == Frame::Kind::T ? "T" : "t";
    out["terms"] = std::move(terms);
    return out;
}

json symbol_to_json(const LaxSymbol& s) {
    json out = json::array();
    for (const auto& [e, c] : s.terms()) out.push_back(json::array({e, series_to_json(c)}));
    return out;
}

CacheFile CacheFile::from_memo(const MemoStore& memo) {
    CacheFile f;
    f.fingerprint = memo.fingerprint();
    f.entries = memo.entries();
    return f;
}

CacheFile CacheFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open cache file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("corrupt cache file " + path + ": " + e.what());
    }
    CacheFile f;
    try {
        if (j.at("format").get<int>() != kCacheFormatVersion)
            throw UsageError("unsupported cache format in " + path);
        f.fingerprint = j.at("fingerprint").get<std::string>();
        for (const auto& [key, entry] : j.at("entries").items()) {
            MemoStore::Entry e{rational_from_json(entry.at("value")),
                               parse_path(entry.at("path").get<std::string>())};
            f.entries.emplace(key, std::move(e));
        }
    } catch (const json::exception& e) {
        throw UsageError("corrupt cache file " + path + ": " + e.what());
    }
    return f;
}

void CacheFile::save(const std::string& path) const {
    json entries = json::object();
    for (const auto& [key, e] : this->entries) {
        entries[key] = {{"value", e.value.str()}, {"path", path_name(e.path)}};
    }
    json j;
    j["format"] = kCacheFormatVersion;
    j["fingerprint"] = fingerprint;
    j["entries"] = std::move(entries);

    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw UsageError("cannot write cache file " + tmp);
        out << j.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw UsageError("cannot move cache file into place at " + path);
}

void CacheFile::fill(MemoStore& memo) const {
    for (const auto& [key, e] : entries) memo.insert(key, e.value, e.path);
}

}  // namespace rspin
