#pragma once

#include <stdexcept>
#include <string>

namespace sensetag {

// Input that does not conform to a file format. `where` is a human-readable
// location (file:line or a record description).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Well-formed input that violates a domain invariant (bad hierarchy,
// unresolvable sense id, frame arity, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sensetag
