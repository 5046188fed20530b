#pragma once

#include <json.hpp>

#include "rspin/lax.hpp"
#include "rspin/memo.hpp"

namespace rspin {

// Canonical text serialization shared by the cache file, the series dumps and
// the CLI output.  Rationals print as "p/q", mu-scalars as sorted
// [q_num, q_den, "p/q"] triples, series as sorted term lists.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json mu_to_json(const MuScalar& m);
nlohmann::json monomial_to_json(const Frame& f, const Monomial& m);
nlohmann::json series_to_json(const Series& s);
nlohmann::json symbol_to_json(const LaxSymbol& s);

inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kEngineVersion = "1.0.0";

// Persistent correlator cache.  A cache whose fingerprint does not match the
// engine configuration is refused; writes are atomic (temp file + rename).
struct CacheFile {
    std::string fingerprint;
    std::map<std::string, MemoStore::Entry> entries;

    static CacheFile from_memo(const MemoStore& memo);

    // Throws UsageError on malformed content.
    static CacheFile load(const std::string& path);
    void save(const std::string& path) const;

    // Merge entries into a memo store; fingerprints must already match.
    void fill(MemoStore& memo) const;
};

}  // namespace rspin
