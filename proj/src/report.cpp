#include "speclab/report.hpp"

#include "speclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

namespace speclab {

namespace fs = std::filesystem;

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

using Json = nlohmann::ordered_json;

// non-finite values become null
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void skip(std::vector<BoundReport>& skipped, const std::string& name, int k, const std::string& reason)
{
    BoundReport r;
    r.name = name;
    r.k = k;
    r.applicable = false;
    r.note = reason;
    skipped.push_back(std::move(r));
}

void route(BoundReport r, std::vector<BoundReport>& out, std::vector<BoundReport>& skipped)
{
    if (r.applicable)
        out.push_back(std::move(r));
    else
        skipped.push_back(std::move(r));
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

}  // namespace

ResolutionRun solve_resolution(const Chart& chart, int resolution, int k)
{
    ResolutionRun run;
    run.resolution = resolution;
    run.mesh = build_structured(chart.domain, resolution);
    run.problem = assemble(chart, run.mesh);
    if (static_cast<std::size_t>(k) > run.problem.dofs.size())
        raise(ErrorKind::parameter, "resolution " + std::to_string(resolution) + " has only " +
                                        std::to_string(run.problem.dofs.size()) + " unknowns for " + std::to_string(k) + " eigenpairs");
    SparseOptions opts;
    opts.tolerance = 1e-10;
    run.result = solve_sparse(run.problem.stiffness, run.problem.mass, k, opts);
    return run;
}

std::vector<ConvergenceRow> richardson(const std::vector<int>& resolutions, const std::vector<std::vector<double>>& values)
{
    std::vector<ConvergenceRow> rows;
    const std::size_t m = resolutions.size();
    if (values.size() != m) raise(ErrorKind::parameter, "one value list per resolution expected");
    if (m == 0) return rows;
    std::size_t count = values.front().size();
    for (const auto& v : values) count = std::min(count, v.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t k = 0; k < count; ++k) {
        double limit = values[m - 1][k];
        double order = nan;
        if (m >= 2) {
            const double q = static_cast<double>(resolutions[m - 1]) / resolutions[m - 2];
            const double c = values[m - 1][k];
            const double b = values[m - 2][k];
            double p = 2.0;
            if (m >= 3) {
                const double a = values[m - 3][k];
                const double ratio = (a - b) / (b - c);
                p = ratio > 0.0 && std::isfinite(ratio) ? std::log(ratio) / std::log(q) : nan;
                order = p;
            }
            if (std::isfinite(p) && p > 0.0) limit = c + (c - b) / (std::pow(q, p) - 1.0);
        }
        for (std::size_t r = 0; r < m; ++r)
            rows.push_back({static_cast<int>(k + 1), resolutions[r], values[r][k], limit, order});
    }
    return rows;
}

std::vector<BoundReport> evaluate_checks(const Scenario& scenario, const Chart& chart, const GeometricConstants& consts,
                                         const ResolutionRun& finest, std::vector<BoundReport>& skipped)
{
    std::vector<BoundReport> out;
    const auto checks = resolved_checks(scenario);
    auto wanted = [&](const char* name) { return std::find(checks.begin(), checks.end(), name) != checks.end(); };
    const int k_max = static_cast<int>(finest.result.size());
    const Spectrum lambda(finest.result.eigenvalues, chart.dim_n, SpectrumSource::computed);
    const bool metric = consts.tensor_is_metric;
    const std::string not_drift = "operator is not a drifting Laplacian (T is not the metric)";

    std::optional<Spectrum> shifted;
    std::string shift_error;
    if (metric) {
        try {
            shifted = upsilon_shift(lambda, consts);
        } catch (const Error& e) {
            shift_error = e.what();
        }
    } else {
        shift_error = not_drift;
    }
    // the appendix lemmas act on the shifted sequence when there is one
    const Spectrum& sequence = shifted ? *shifted : lambda;

    for (int k = 1; k < k_max; ++k) {
        if (wanted("thm_drift")) {
            if (metric)
                out.push_back(check_thm_drift(lambda, consts, k));
            else
                skip(skipped, "thm_drift", k, not_drift);
        }
        if (wanted("thm_tensor")) {
            out.push_back(check_thm_tensor(lambda, consts, k));
            out.push_back(check_thm_tensor_integrated(finest.result, chart, finest.mesh, finest.problem.dofs, k));
        }
        if (wanted("corollary_trio")) {
            if (shifted)
                for (auto& r : check_corollary_trio(*shifted, k)) out.push_back(std::move(r));
            else
                skip(skipped, "corollary_trio", k, shift_error);
        }
        if (wanted("polya_type")) {
            if (shifted)
                out.push_back(check_polya_type(*shifted, consts.vol_omega, k));
            else
                skip(skipped, "polya_type", k, shift_error);
        }
        if (wanted("cheng_yang_type")) {
            if (shifted)
                out.push_back(check_cheng_yang_type(*shifted, k));
            else
                skip(skipped, "cheng_yang_type", k, shift_error);
        }
        if (wanted("recursion_lemma")) route(recursion_lemma(sequence, 1.0, k).report, out, skipped);
        if (wanted("lemma_c_bound"))
            for (double c : scenario.lemma_c) {
                BoundReport r = lemma_c_bound(sequence, c, k);
                r.name += "_c" + format_double(c);
                route(std::move(r), out, skipped);
            }
        if (wanted("proposition_testfunction"))
            for (int l = 0; l < chart.dim_m; ++l)
                out.push_back(check_proposition_testfunction(finest.result, chart, finest.mesh, finest.problem.dofs,
                                                             ambient_coordinate(chart, l), k, "x" + std::to_string(l + 1)));
        if (wanted("intro_comparators"))
            for (auto& r : intro_comparators(lambda, k, &consts, consts.vol_omega)) route(std::move(r), out, skipped);
    }
    return out;
}

namespace {

Json constants_json(const Scenario& s, const Chart& chart, const GeometricConstants& c)
{
    Json consts;
    consts["dim_n"] = c.dim_n;
    consts["dim_m"] = c.dim_m;
    consts["eta_0"] = number(c.eta_0);
    consts["eta_bar_0"] = number(c.eta_bar_0);
    consts["H_0"] = number(c.H_0);
    consts["A_0"] = number(c.A_0);
    consts["T_star"] = number(c.T_star);
    consts["T_0"] = number(c.T_0);
    consts["trT_inf"] = number(c.trT_inf);
    consts["trT_sup"] = number(c.trT_sup);
    consts["vol_omega"] = number(c.vol_omega);
    consts["weighted_vol"] = number(c.weighted_vol);
    consts["tensor_is_metric"] = c.tensor_is_metric;
    consts["upsilon_offset"] = number(upsilon_offset(c));
    Json prov;
    prov["scenario"] = s.name;
    prov["chart"] = chart.id;
    prov["chart_params"] = chart.params;
    prov["domain"] = chart.domain.describe();
    prov["eta"] = chart.eta_id;
    prov["tensor"] = chart.tensor_id;
    prov["derivatives"] = "forward-mode automatic differentiation, exact to rounding";
    prov["suprema"] = "maximum over a sample grid";
    prov["sample_resolution"] = c.sample_resolution;
    prov["sample_count"] = c.sample_count;
    prov["volumes"] = "composite 4-point Gauss-Legendre over the exact domain";
    prov["eta_bar_0_definition"] = "sup of the drifting Laplacian of eta, Delta eta - |grad eta|^2";
    return Json{{"constants", consts}, {"provenance", prov}};
}

class Writer {
public:
    Writer(fs::path dir, RunOutcome& outcome) : dir_(std::move(dir)), outcome_(outcome) {}

    void write(const std::string& name, const std::string& content)
    {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) raise(ErrorKind::config, "cannot write " + (dir_ / name).string());
        f << content;
        outcome_.files.push_back(name);
    }

private:
    fs::path dir_;
    RunOutcome& outcome_;
};

}  // namespace

RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options)
{
    RunOutcome outcome;
    std::string dir = scenario.output_dir;
    if (const char* env = std::getenv("SPECTRA_OUT"); env && *env) dir = env;
    if (!options.output_dir.empty()) dir = options.output_dir;
    outcome.output_dir = dir;

    std::optional<Writer> writer;
    auto write = [&](const std::string& name, const std::string& content) {
        if (writer) writer->write(name, content);
    };

    try {
        if (options.write_files) {
            fs::create_directories(dir);
            writer.emplace(dir, outcome);
        }
        const Chart chart = build_chart(scenario);

        if (options.parallel && scenario.resolutions.size() > 1) {
            std::vector<std::future<ResolutionRun>> jobs;
            for (int r : scenario.resolutions)
                jobs.push_back(std::async(std::launch::async, [&chart, r, k = scenario.k_max] { return solve_resolution(chart, r, k); }));
            // collect every job before rethrowing so no thread outlives the chart
            std::exception_ptr first;
            for (auto& j : jobs) {
                try {
                    outcome.runs.push_back(j.get());
                } catch (...) {
                    if (!first) first = std::current_exception();
                }
            }
            if (first) std::rethrow_exception(first);
        } else {
            for (int r : scenario.resolutions) outcome.runs.push_back(solve_resolution(chart, r, scenario.k_max));
        }

        std::ostringstream eig;
        eig << "resolution,k,lambda,residual\n";
        std::vector<std::vector<double>> values;
        for (const auto& run : outcome.runs) {
            for (std::size_t i = 0; i < run.result.size(); ++i)
                eig << run.resolution << ',' << i + 1 << ',' << format_double(run.result.eigenvalues[i]) << ','
                    << format_double(run.result.residuals[i]) << '\n';
            values.push_back(run.result.eigenvalues);
        }
        write("eigenvalues.csv", eig.str());

        outcome.convergence = richardson(scenario.resolutions, values);
        std::ostringstream conv;
        conv << "k,resolution,value,limit,order\n";
        for (const auto& row : outcome.convergence)
            conv << row.k << ',' << row.resolution << ',' << format_double(row.value) << ',' << format_double(row.limit) << ','
                 << format_double(row.order) << '\n';
        write("convergence.csv", conv.str());

        if (options.evaluate_bounds) {
            outcome.constants = compute_constants(chart, scenario.constants_resolution);
            write("constants.json", constants_json(scenario, chart, outcome.constants).dump(2) + "\n");

            outcome.bounds = evaluate_checks(scenario, chart, outcome.constants, outcome.runs.back(), outcome.skipped);
            std::ostringstream b;
            b << bounds_csv_header() << '\n';
            for (const auto& r : outcome.bounds) b << to_csv_row(r) << '\n';
            write("bounds.csv", b.str());
            std::ostringstream sk;
            sk << "name,k,reason\n";
            for (const auto& r : outcome.skipped) sk << r.name << ',' << r.k << ',' << csv_field(r.note) << '\n';
            write("skipped.csv", sk.str());

            const auto& finest = outcome.runs.back().result.eigenvalues;
            Json wj;
            if (finest.size() >= 10) {
                const Spectrum spec(finest, chart.dim_n, SpectrumSource::computed);
                outcome.weyl = weyl_fit(spec, outcome.constants.vol_omega, 1, static_cast<int>(finest.size()));
                const WeylFit& f = *outcome.weyl;
                wj["status"] = "fitted";
                wj["resolution"] = outcome.runs.back().resolution;
                wj["k_lo"] = f.k_lo;
                wj["k_hi"] = f.k_hi;
                wj["exponent"] = number(f.exponent);
                wj["expected_exponent"] = number(f.expected_exponent);
                wj["constant"] = number(f.constant);
                wj["level_constant"] = number(f.level_constant);
                wj["target"] = number(f.target);
                wj["mean_ratio"] = number(f.mean_ratio);
                wj["mean_target"] = number(f.mean_target);
                wj["square_mean_ratio"] = number(f.square_mean_ratio);
                wj["square_mean_target"] = number(f.square_mean_target);
                wj["vol"] = number(outcome.constants.vol_omega);
            } else {
                outcome.weyl_note = "needs at least 10 eigenvalues";
                wj["status"] = "skipped";
                wj["reason"] = outcome.weyl_note;
            }
            write("weyl_fit.json", wj.dump(2) + "\n");
        }
        outcome.complete = true;
        outcome.exit_code = 0;
        for (const auto& r : outcome.bounds)
            if (!r.holds) outcome.exit_code = 1;
    } catch (const std::exception& e) {
        outcome.error = e.what();
        outcome.exit_code = 2;
    }

    if (writer) {
        std::ostringstream m;
        m << "scenario: " << scenario.name << '\n';
        m << "status: " << (outcome.complete ? "complete" : "incomplete") << '\n';
        if (!outcome.complete) m << "error: " << outcome.error << '\n';
        for (const auto& f : outcome.files) m << "file: " << f << '\n';
        try {
            writer->write("MANIFEST", m.str());
        } catch (const std::exception& e) {
            if (outcome.error.empty()) outcome.error = e.what();
            outcome.exit_code = 2;
        }
    }
    return outcome;
}

std::string list_catalog()
{
    std::ostringstream os;
    auto section = [&](const char* title, const std::vector<std::string>& names) {
        os << title << ":\n";
        for (const auto& n : names) os << "  " << n << '\n';
    };
    section("charts", chart_catalog());
    section("checks", check_catalog());
    section("eta", eta_catalog());
    section("tensor", tensor_catalog());
    return os.str();
}

}  // namespace speclab
