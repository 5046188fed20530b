#pragma once

#include <map>
#include <string>

#include "rspin/rational.hpp"

namespace rspin {

enum class ValuePath { Gd, Recursion, ClosedForm };

inline std::string path_name(ValuePath p) {
    switch (p) {
        case ValuePath::Gd: return "gd";
        case ValuePath::Recursion: return "recursion";
        case ValuePath::ClosedForm: return "closed-form";
    }
    throw UsageError("unknown value path");
}

inline ValuePath parse_path(const std::string& s) {
    if (s == "gd") return ValuePath::Gd;
    if (s == "recursion") return ValuePath::Recursion;
    if (s == "closed-form") return ValuePath::ClosedForm;
    throw UsageError("unknown value path '" + s + "'");
}

// Canonically keyed store of computed correlator values.  A key is never
// rebound to a different value: a conflicting insert is a hard error.
class MemoStore {
public:
    struct Entry {
        Rational value;
        ValuePath path;
    };

    MemoStore() = default;
    explicit MemoStore(std::string fingerprint) : fingerprint_(std::move(fingerprint)) {}

    const std::string& fingerprint() const { return fingerprint_; }

    const Entry* find(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const Entry& insert(const std::string& key, const Rational& value, ValuePath path) {
        auto [it, fresh] = entries_.emplace(key, Entry{value, path});
        if (!fresh && it->second.value != value)
            throw ConsistencyError("memo rebind for key " + key + ": had " +
                                   it->second.value.str() + ", got " + value.str());
        return it->second;
    }

    const std::map<std::string, Entry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

private:
    std::string fingerprint_;
    std::map<std::string, Entry> entries_;
};

}  // namespace rspin
