#pragma once

#include <stdexcept>
#include <string>

namespace aniso {

// Base error carrying a short machine-readable category slug. The CLI prints
// errors as "ERROR:<category>:<message>" and maps ValidationError to exit
// code 1 and NumericError to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

// Bad arguments, malformed configs, unsupported combinations.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error("validation", message) {}
};

// A numerical failure in an otherwise well-posed call: singular denominators,
// divergence of a time integration, missing real roots, and the like. The
// category slug narrows the failure reason.
class NumericError : public Error {
public:
    NumericError(std::string category, const std::string& message)
        : Error(std::move(category), message) {}
};

} // namespace aniso
