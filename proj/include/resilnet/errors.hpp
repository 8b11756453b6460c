#pragma once

#include <stdexcept>
#include <string>

namespace resilnet {

// Invalid configuration values, malformed specs, or violated preconditions.
// CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input documents (scenario files, edge lists). Carries the line
// number where parsing stopped. CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Threshold bisection was asked to search a bracket whose endpoint survival
// probabilities do not straddle the 50% crossing in the axis's monotone
// orientation. Carries both endpoint measurements so the caller can see why.
// CLI maps this to exit code 3.
class BracketError : public std::runtime_error {
public:
    BracketError(const std::string& what, double survival_lo, double survival_hi)
        : std::runtime_error(what), survival_lo_(survival_lo), survival_hi_(survival_hi) {}
    double survival_lo() const { return survival_lo_; }
    double survival_hi() const { return survival_hi_; }

private:
    double survival_lo_;
    double survival_hi_;
};

// Filesystem failures while reading inputs or writing results.
// CLI maps this to exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace resilnet
