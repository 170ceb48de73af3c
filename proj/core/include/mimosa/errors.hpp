#pragma once

#include <stdexcept>
#include <string>

namespace mimosa {

/// A radial-function magnitude fell below the configured floor, so the
/// requested operation would amplify noise beyond the valid band.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double freq_hz, int order)
        : std::runtime_error(what), freq_hz_(freq_hz), order_(order) {}

    double freq_hz() const { return freq_hz_; }
    int order() const { return order_; }

private:
    double freq_hz_;
    int order_;
};

/// Fewer separable spectrum maxima were found than sources requested.
class PeakDeficitError : public std::runtime_error {
public:
    PeakDeficitError(const std::string& what, std::size_t found, std::size_t requested)
        : std::runtime_error(what), found_(found), requested_(requested) {}

    std::size_t found() const { return found_; }
    std::size_t requested() const { return requested_; }

private:
    std::size_t found_;
    std::size_t requested_;
};

/// Configuration file failed to parse or validate.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mimosa
