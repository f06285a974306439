#pragma once

#include <stdexcept>
#include <string>

namespace reprometry {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated mathematical precondition (sample too small, zero mean, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Syntax error in a bundle document; line is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(int line_no, const std::string& msg)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

// Well-formed document that violates the bundle schema; path names the
// offending element ("experiment run-3: ...").
class SchemaError : public Error {
public:
    SchemaError(std::string element_path, const std::string& msg)
        : Error(element_path.empty() ? msg : element_path + ": " + msg),
          path(std::move(element_path)) {}
    std::string path;
};

}  // namespace reprometry
