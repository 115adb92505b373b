#pragma once

#include <stdexcept>
#include <string>

namespace nonarch {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical precondition was violated (non-unit inversion, mismatched
// base fields, out-of-range radius, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// The input is mathematically legal but outside the class this implementation
// supports (non-simple residual roots, wild-like actions, ...).
class unsupported_error : public error {
public:
    explicit unsupported_error(const std::string& msg) : error(msg) {}
};

// Not enough precision is carried to certify the requested result.
class precision_error : public error {
public:
    explicit precision_error(const std::string& msg) : error(msg) {}
};

// Malformed input data (files, JSON payloads, CLI arguments).
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

} // namespace nonarch
