#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

namespace floer {

// Raised when the input is well-formed but violates a mathematical precondition.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message, nlohmann::json detail = nullptr)
        : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}

    const std::string& code() const { return code_; }
    const nlohmann::json& detail() const { return detail_; }

private:
    std::string code_;
    nlohmann::json detail_;
};

// Raised when an input file or argument cannot be parsed at all.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace floer
