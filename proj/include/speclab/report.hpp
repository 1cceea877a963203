#pragma once

#include "speclab/assembly.hpp"
#include "speclab/bounds.hpp"
#include "speclab/eigensolve.hpp"
#include "speclab/mesh.hpp"
#include "speclab/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclab {

/// `%.17g`.
std::string format_double(double v);

struct ResolutionRun {
    int resolution = 0;
    Mesh mesh;
    DiscreteProblem problem;
    SpectralResult result;
};

/// Solves the scenario's problem at one mesh resolution.
ResolutionRun solve_resolution(const Chart& chart, int resolution, int k);

struct ConvergenceRow {
    int k = 0;
    int resolution = 0;
    double value = 0.0;
    double limit = 0.0;  // Richardson extrapolation from the finest meshes
    double order = 0.0;  // observed order, NaN when undetermined
};

/// Richardson extrapolation of each eigenvalue across ascending resolutions.
/// With three or more meshes the order is estimated from the finest three
/// (assuming the last refinement ratio); with two it is taken as 2.
std::vector<ConvergenceRow> richardson(const std::vector<int>& resolutions, const std::vector<std::vector<double>>& values);

/// Every requested check at k = 1..k_max−1 on the finest run. Checks whose
/// hypotheses do not apply go to `skipped` with the reason in `note`.
std::vector<BoundReport> evaluate_checks(const Scenario& scenario, const Chart& chart, const GeometricConstants& consts,
                                         const ResolutionRun& finest, std::vector<BoundReport>& skipped);

struct RunOptions {
    bool parallel = false;
    bool evaluate_bounds = true;
    bool write_files = true;
    std::string output_dir;  // overrides SPECTRA_OUT and the scenario
};

struct RunOutcome {
    int exit_code = 0;  // 0 all hold, 1 some inequality fails, 2 error
    bool complete = false;
    std::string error;
    std::string output_dir;
    std::vector<std::string> files;
    GeometricConstants constants;
    std::vector<ResolutionRun> runs;
    std::vector<ConvergenceRow> convergence;
    std::vector<BoundReport> bounds;
    std::vector<BoundReport> skipped;
    std::optional<WeylFit> weyl;
    std::string weyl_note;
};

/// chart → mesh → assemble → solve → constants → bounds, writing
/// eigenvalues.csv, constants.json, bounds.csv, skipped.csv,
/// convergence.csv, weyl_fit.json and a MANIFEST. Errors are captured in the
/// outcome; files already written are kept and the MANIFEST says so.
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Sorted listing of charts, weights, tensors and checks.
std::string list_catalog();

}  // namespace speclab
