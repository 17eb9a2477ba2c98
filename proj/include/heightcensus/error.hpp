#pragma once

#include <stdexcept>
#include <string>

namespace hc {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input or violated precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// Enumeration would scan more candidates than the configured budget.
class BudgetExceeded : public Error {
public:
    // needed and budget are decimal integer strings.
    BudgetExceeded(const std::string& what, std::string needed, std::string budget)
        : Error(what + ": needs " + needed + ", budget " + budget), needed_(std::move(needed)), budget_(std::move(budget)) {}
    const std::string& needed() const noexcept { return needed_; }
    const std::string& budget() const noexcept { return budget_; }

private:
    std::string needed_;
    std::string budget_;
};

// A certified comparison or enclosure could not be settled under the precision cap.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

// A checked mathematical claim failed; carries a human-readable certificate.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace hc
