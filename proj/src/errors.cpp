#include "speclab/errors.hpp"

#include <utility>

namespace speclab {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::domain: return "domain error";
    case ErrorKind::degeneracy: return "degeneracy error";
    case ErrorKind::tensor: return "tensor error";
    case ErrorKind::evaluation: return "evaluation error";
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::mesh: return "mesh error";
    case ErrorKind::not_spd: return "B-not-SPD error";
    case ErrorKind::shift: return "shift error";
    case ErrorKind::convergence: return "convergence error";
    case ErrorKind::shift_positivity: return "shift-positivity error";
    case ErrorKind::config: return "config error";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

ConvergenceError::ConvergenceError(const std::string& message, std::vector<double> best_residuals)
    : Error(ErrorKind::convergence, message), best_residuals_(std::move(best_residuals))
{
}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace speclab
