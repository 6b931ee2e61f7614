#pragma once

#include <stdexcept>
#include <string>

namespace revival {

// Error taxonomy. The CLI maps ParseError/ValidationError to exit code 2
// and the numerical errors (Grid/Nyquist/Convergence/Truncation) to exit 3.
struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error("parse: line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg)
        : std::runtime_error("validation: " + msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg)
        : std::runtime_error("domain: " + msg) {}
};

struct GridError : std::runtime_error {
    explicit GridError(const std::string& msg)
        : std::runtime_error("grid: " + msg) {}
};

struct NyquistError : std::runtime_error {
    explicit NyquistError(const std::string& msg)
        : std::runtime_error("nyquist: " + msg) {}
};

struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg)
        : std::runtime_error("truncation: " + msg) {}
};

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& msg)
        : std::runtime_error("window: " + msg) {}
};

struct AssignmentError : std::runtime_error {
    explicit AssignmentError(const std::string& msg)
        : std::runtime_error("assignment: " + msg) {}
};

// Quadrature or optimizer failed to reach tolerance within its budget.
// Carries the best point found so callers can inspect it.
struct ConvergenceError : std::runtime_error {
    double best_a = 0.0;
    double best_b = 0.0;
    double best_value = 0.0;
    explicit ConvergenceError(const std::string& msg)
        : std::runtime_error("convergence: " + msg) {}
    ConvergenceError(const std::string& msg, double a, double b, double value)
        : std::runtime_error("convergence: " + msg),
          best_a(a), best_b(b), best_value(value) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg)
        : std::runtime_error("io: " + msg) {}
};

}  // namespace revival
