#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace speclab {

enum class ErrorKind {
    domain,
    degeneracy,
    tensor,
    evaluation,
    parameter,
    mesh,
    not_spd,
    shift,
    convergence,
    shift_positivity,
    config,
};

const char* to_string(ErrorKind kind);

/// Base for every error raised by the library. The kind tags which contract
/// was violated so callers (CLI, Python) can map it without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the sparse eigensolver when the iteration cap is hit; carries the
/// best residual norms seen for the wanted pairs.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, std::vector<double> best_residuals);

    const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

private:
    std::vector<double> best_residuals_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace speclab
