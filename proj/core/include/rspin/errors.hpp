#pragma once

#include <stdexcept>
#include <string>

namespace rspin {

// Exit codes shared between the library error types and the CLI.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,      // verification mismatch
    kExitUsage = 2,        // bad arguments / malformed input
    kExitTruncation = 3,   // query outside the configured truncation reach
    kExitInternal = 4,     // internal consistency violation
};

struct Error : std::runtime_error {
    int exit_code;
    Error(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

// Malformed input, mismatched frames/budgets, preconditions violated by the caller.
struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(kExitUsage, what) {}
};

// The requested value lies outside the configured truncation. The value is not
// zero; the configuration has to be enlarged.
struct TruncationError : Error {
    explicit TruncationError(const std::string& what) : Error(kExitTruncation, "truncation exceeded: " + what) {}
};

// An invariant the engine guarantees by construction failed to hold.
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& what) : Error(kExitInternal, "internal consistency error: " + what) {}
};

}  // namespace rspin
