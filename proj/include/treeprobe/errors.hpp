#pragma once

#include <stdexcept>
#include <string>

namespace treeprobe {

// Bad caller input: out-of-range vertex, malformed edge set, x == y, ...
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A resource guard refused the request (enumeration or solver cap).
class CapExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A query session ran out of budget. Distinguishable from DomainError.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called in the wrong game phase (e.g. asking after the
// adversary declared the game over, or reading a certificate mid-game).
class ProtocolError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Non-adaptive decoding failed; `rule` names the first violated check.
class DecodeError : public std::runtime_error {
public:
    DecodeError(const std::string& rule, const std::string& detail)
        : std::runtime_error(rule + ": " + detail), rule_(rule) {}
    const std::string& rule() const { return rule_; }

private:
    std::string rule_;
};

// A guarantee that should hold for every valid input was observed to fail.
// Test rigs treat this as fatal.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace treeprobe
