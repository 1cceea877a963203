#include "speclab/errors.hpp"
#include "speclab/report.hpp"
#include "speclab/scenario.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

namespace {

int report(const speclab::RunOutcome& outcome, bool verbose)
{
    if (!outcome.complete) {
        std::cerr << "error: " << outcome.error << '\n';
        return outcome.exit_code;
    }
    int failed = 0;
    for (const auto& r : outcome.bounds) {
        if (r.holds) continue;
        ++failed;
        if (verbose) std::cerr << "FAILED " << speclab::to_csv_row(r) << (r.note.empty() ? "" : "  # " + r.note) << '\n';
    }
    std::cout << outcome.bounds.size() << " checks, " << failed << " failed, " << outcome.skipped.size()
              << " not applicable; outputs in " << outcome.output_dir << '\n';
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite element eigenvalues of the (eta,T)-divergence operator and universal inequality checks"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    bool parallel = false;

    auto* run = app.add_subcommand("run", "run a scenario and write all artifacts");
    auto* verify = app.add_subcommand("verify", "run a scenario; exit 0 iff every evaluated inequality holds");
    auto* conv = app.add_subcommand("convergence", "eigenvalues across resolutions with Richardson extrapolation");
    auto* list = app.add_subcommand("list", "list charts, weights, tensors and checks");
    for (auto* sub : {run, verify, conv}) {
        sub->add_option("config", config, "scenario file")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out, "output directory (overrides SPECTRA_OUT and output.dir)");
        sub->add_flag("--parallel", parallel, "solve resolutions concurrently");
    }

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        std::cout << speclab::list_catalog();
        return 0;
    }

    speclab::Scenario scenario;
    try {
        scenario = speclab::load_scenario(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    speclab::RunOptions options;
    options.parallel = parallel;
    options.output_dir = out;

    if (conv->parsed()) {
        options.evaluate_bounds = false;
        const auto outcome = speclab::run_scenario(scenario, options);
        if (!outcome.complete) {
            std::cerr << "error: " << outcome.error << '\n';
            return outcome.exit_code;
        }
        std::cout << "k,resolution,value,limit,order\n";
        for (const auto& row : outcome.convergence)
            std::cout << row.k << ',' << row.resolution << ',' << speclab::format_double(row.value) << ','
                      << speclab::format_double(row.limit) << ',' << speclab::format_double(row.order) << '\n';
        return 0;
    }
    return report(speclab::run_scenario(scenario, options), run->parsed() || verify->parsed());
}
