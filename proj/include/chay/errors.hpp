#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chay {

// Input outside the mathematical domain of an operation (non-finite state,
// n outside [0,1], negative calcium fed to a memductance, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Bad run configuration: step sizes, sample counts, durations.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation called outside its contract (state rate of a stateless element,
// off-locus identity check, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Closed-form inversion hit a zero denominator.
class SingularError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Integration produced a non-finite or runaway state.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time_(last_valid_time) {}
    double last_valid_time() const noexcept { return last_valid_time_; }

private:
    double last_valid_time_;
};

// Not enough post-transient evidence to name an attractor.
class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A root search found a different number of sign changes than expected.
// Carries the scanned (x, f(x)) profile for diagnosis.
class BracketError : public std::domain_error {
public:
    BracketError(const std::string& what, std::vector<std::pair<double, double>> profile)
        : std::domain_error(what), profile_(std::move(profile)) {}
    const std::vector<std::pair<double, double>>& profile() const noexcept { return profile_; }

private:
    std::vector<std::pair<double, double>> profile_;
};

} // namespace chay
