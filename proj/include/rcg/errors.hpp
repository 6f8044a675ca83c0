#pragma once

#include <stdexcept>
#include <string>

namespace rcg {

/// Integer arithmetic left the supported range (64-bit entries, 128-bit
/// intermediates). Raised instead of ever wrapping silently.
struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularSigma : std::runtime_error {
    explicit SingularSigma(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadDimensions : std::invalid_argument {
    explicit BadDimensions(const std::string& msg) : std::invalid_argument(msg) {}
};

struct RejectionBudgetExceeded : std::runtime_error {
    explicit RejectionBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& msg) : std::runtime_error(msg) {}
};

struct MemoryBudgetExceeded : std::runtime_error {
    explicit MemoryBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct EnumerationBudgetExceeded : std::runtime_error {
    explicit EnumerationBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPrime : std::invalid_argument {
    explicit NotPrime(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace rcg
