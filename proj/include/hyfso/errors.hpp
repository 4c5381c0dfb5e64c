#pragma once

#include <stdexcept>
#include <string>

namespace hyfso {

// Invalid parameter values (negative shapes, out-of-range arguments, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A result cannot be represented (binomial overflow, exp overflow, ...).
class overflow_error : public std::range_error {
public:
    explicit overflow_error(const std::string& what) : std::range_error(what) {}
};

// A numerical routine converged but cannot certify its accuracy contract.
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration input (unknown keys, bad values, missing file).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// I/O failures while writing results.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hyfso
