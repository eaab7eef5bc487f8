#pragma once

#include <stdexcept>
#include <string>

namespace folim {

/// Input that does not parse (formula text, files, malformed JSON).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally valid input violating an operation's precondition
/// (empty structure in a pairing, FMTP violation, arity mismatch, ...).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace folim
