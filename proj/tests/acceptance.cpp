// Acceptance suite: one PASS/FAIL line per criterion.
#include "sequences.hpp"

#include "speclab/bounds.hpp"
#include "speclab/errors.hpp"
#include "speclab/report.hpp"
#include "speclab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

using namespace speclab;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::string& detail)
{
    std::printf("criterion %d: %s  %s | %s\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v, int digits = 4)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

const std::vector<std::string> suite{"square_baseline", "interval",      "drift_interval", "hemisphere",
                                     "hemisphere_eta",  "square_diag_tensor", "associate_0", "associate_pi4",
                                     "associate_pi2"};

struct SuiteRun {
    Scenario scenario;
    RunOutcome outcome;
    double seconds = 0.0;
};

}  // namespace

int main(int argc, char** argv)
{
    const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("scenarios");
    RunOptions quiet;
    quiet.write_files = false;

    // The shipped suite is run once; criteria 1-5 and 8 read from it.
    std::map<std::string, SuiteRun> runs;
    double suite_seconds = 0.0;
    for (const auto& name : suite) {
        SuiteRun s;
        try {
            s.scenario = load_scenario((dir / (name + ".cfg")).string());
        } catch (const std::exception& e) {
            std::printf("cannot load %s: %s\n", name.c_str(), e.what());
            return 2;
        }
        const auto t0 = Clock::now();
        s.outcome = run_scenario(s.scenario, quiet);
        s.seconds = seconds_since(t0);
        suite_seconds += s.seconds;
        runs[name] = std::move(s);
    }

    // 1. closed-form spectra
    {
        const auto& iv = runs["interval"];
        const auto& sq = runs["square_baseline"];
        bool ok = iv.outcome.complete && sq.outcome.complete;
        std::ostringstream d;
        if (ok) {
            const auto* iv2000 = &iv.outcome.runs.back();
            const double e_iv = rel(iv2000->result.eigenvalues[0], pi * pi);
            double e32 = NAN, e64 = NAN, order = NAN;
            for (const auto& r : sq.outcome.runs) {
                if (r.resolution == 32) e32 = rel(r.result.eigenvalues[0], 2 * pi * pi);
                if (r.resolution == 64) e64 = rel(r.result.eigenvalues[0], 2 * pi * pi);
            }
            for (const auto& row : sq.outcome.convergence)
                if (row.k == 1) order = row.order;
            ok = iv2000->resolution == 2000 && e_iv <= 1e-4 && e32 <= 5e-3 && e64 <= 2e-3 && std::abs(order - 2.0) <= 0.3 &&
                 iv.seconds <= 60.0 && sq.seconds <= 60.0;
            d << "interval rel err " << fmt(e_iv) << " (<=1e-4), square 32: " << fmt(e32) << " (<=5e-3), 64: " << fmt(e64)
              << " (<=2e-3), order " << fmt(order) << ", runtimes " << fmt(iv.seconds, 3) << "s/" << fmt(sq.seconds, 3) << "s";
        } else {
            d << "pipeline error: " << iv.outcome.error << sq.outcome.error;
        }
        verdict(1, ok, "closed-form spectra", d.str());
    }

    // 2. drifting interval and the shift
    {
        const auto& dr = runs["drift_interval"];
        bool ok = dr.outcome.complete;
        std::ostringstream d;
        if (ok) {
            const auto& lam = dr.outcome.runs.back().result.eigenvalues;
            const double offset = upsilon_offset(dr.outcome.constants);
            double worst = 0.0, worst_shift = 0.0;
            for (int k = 1; k <= 5; ++k) {
                const double kk = k * k * pi * pi;
                worst = std::max(worst, rel(lam[static_cast<std::size_t>(k - 1)], 1.0 + kk));
                worst_shift = std::max(worst_shift, rel(lam[static_cast<std::size_t>(k - 1)] + offset, kk));
            }
            ok = dr.outcome.runs.back().resolution == 2000 && worst <= 1e-3 && worst_shift <= 1e-3;
            d << "max rel err vs 1+k^2 pi^2: " << fmt(worst) << ", shift " << fmt(offset, 10) << ", shifted max rel err "
              << fmt(worst_shift);
        } else {
            d << "pipeline error: " << dr.outcome.error;
        }
        verdict(2, ok, "drifting interval", d.str());
    }

    // 3. hemisphere
    {
        const auto& hs = runs["hemisphere"];
        bool ok = hs.outcome.complete;
        std::ostringstream d;
        if (ok) {
            const double l1 = hs.outcome.runs.back().result.eigenvalues[0];
            const auto& c = hs.outcome.constants;
            ok = rel(l1, 2.0) <= 1e-2 && std::abs(c.H_0 - 1.0) <= 1e-6 && std::abs(c.vol_omega - 2 * pi) <= 1e-3;
            d << "lambda_1 " << fmt(l1, 8) << " at " << hs.outcome.runs.back().resolution << " rings, H_0 " << fmt(c.H_0, 12)
              << ", vol " << fmt(c.vol_omega, 12);
        } else {
            d << "pipeline error: " << hs.outcome.error;
        }
        verdict(3, ok, "hemisphere", d.str());
    }

    // 4. inequality suite
    {
        bool ok = suite_seconds <= 600.0;
        std::size_t total = 0, failed = 0;
        std::map<std::string, int> failing;
        std::ostringstream d;
        for (const auto& name : suite) {
            const auto& o = runs[name].outcome;
            if (!o.complete) {
                ok = false;
                d << name << " error: " << o.error << "; ";
                continue;
            }
            total += o.bounds.size();
            for (const auto& r : o.bounds)
                if (!r.holds) {
                    ++failed;
                    ++failing[name + ":" + r.name];
                }
            if (o.exit_code != 0) ok = false;
        }
        d << total << " checks, " << failed << " failed, runtime " << fmt(suite_seconds, 3) << "s";
        for (const auto& [key, count] : failing) d << "; " << key << " x" << count;
        verdict(4, ok, "inequality suite", d.str());
    }

    // 5. sparse against dense
    {
        bool ok = true;
        int problems = 0;
        double worst = 0.0;
        std::string worst_at;
        for (const auto& name : suite) {
            for (const auto& r : runs[name].outcome.runs) {
                if (r.problem.dofs.size() > 4000) continue;
                ++problems;
                const int k = static_cast<int>(std::min<std::size_t>(10, r.result.size()));
                try {
                    const SpectralResult dense = solve_dense(r.problem.stiffness, r.problem.mass, k);
                    for (int i = 0; i < k; ++i) {
                        const double e = rel(r.result.eigenvalues[static_cast<std::size_t>(i)],
                                             dense.eigenvalues[static_cast<std::size_t>(i)]);
                        if (e > worst) {
                            worst = e;
                            worst_at = name + "@" + std::to_string(r.resolution);
                        }
                    }
                } catch (const std::exception& e) {
                    ok = false;
                    worst_at = name + ": " + e.what();
                }
            }
        }
        ok = ok && problems > 0 && worst <= 1e-8;
        verdict(5, ok, "sparse/dense agreement",
                std::to_string(problems) + " problems, max rel diff " + fmt(worst) + " (" + worst_at + ")");
    }

    // 6. Weyl fit on the enumerated square spectrum
    {
        const WeylFit f = weyl_fit(closed_form_rectangle(500), 1.0, 1, 500);
        const double e_c = rel(f.constant, f.target);
        const double e_p = rel(f.exponent, f.expected_exponent);
        const double e_m = rel(f.mean_ratio, f.mean_target);
        const double e_s = rel(f.square_mean_ratio, f.square_mean_target);
        const bool ok = e_c <= 0.05 && e_p <= 0.02 && e_m <= 0.05 && e_s <= 0.08;
        std::ostringstream d;
        d << "constant " << fmt(f.constant) << " vs 4pi (rel " << fmt(e_c) << ", <=0.05), exponent " << fmt(f.exponent)
          << " (rel " << fmt(e_p) << ", <=0.02), mean " << fmt(f.mean_ratio) << " vs 2pi (rel " << fmt(e_m)
          << ", <=0.05), square mean " << fmt(f.square_mean_ratio) << " (rel " << fmt(e_s) << ", <=0.08), level constant "
          << fmt(f.level_constant);
        verdict(6, ok, "Weyl fit", d.str());
    }

    // 7. appendix arithmetic
    {
        bool ok = recursion_constant(2, 1, 1) == 0.96875;
        int bad_c = 0;
        for (int n = 1; n <= 3; ++n)
            for (int k = 1; k <= 50; ++k)
                for (double c : {1.0, 2.0}) {
                    const double C = recursion_constant(n, k, c);
                    if (!(C > 0.0 && C < 1.0)) ++bad_c;
                }
        const Spectrum sq = closed_form_rectangle(21);
        int bad_rec = 0;
        for (int k = 1; k <= 20; ++k) {
            const RecursionOutcome r = recursion_lemma(sq, 1.0, k);
            if (!r.applicable || !r.report.holds) ++bad_rec;
        }
        ok = ok && bad_c == 0 && bad_rec == 0;
        verdict(7, ok, "appendix arithmetic",
                "C(2,1,1) = " + fmt(recursion_constant(2, 1, 1), 17) + ", C out of (0,1): " + std::to_string(bad_c) +
                    ", recursion failures k<=20: " + std::to_string(bad_rec));
    }

    // 8. associate family isometry
    {
        const auto& a = runs["associate_0"];
        const auto& b = runs["associate_pi2"];
        bool ok = a.outcome.complete && b.outcome.complete;
        std::ostringstream d;
        if (ok) {
            double worst = 0.0;
            for (std::size_t i = 0; i < 5; ++i)
                worst = std::max(worst, rel(b.outcome.runs.back().result.eigenvalues[i], a.outcome.runs.back().result.eigenvalues[i]));
            const Chart ca = build_chart(a.scenario);
            const Chart cb = build_chart(b.scenario);
            double worst_alpha = 0.0;
            const auto points = sample_points(ca.domain, 32);
            for (const auto& p : points)
                worst_alpha = std::max(worst_alpha, std::abs(second_fundamental_form(ca, p).alpha_norm -
                                                             second_fundamental_form(cb, p).alpha_norm));
            ok = worst <= 1e-10 && worst_alpha <= 1e-8;
            d << "max rel eigenvalue diff " << fmt(worst) << ", max ||alpha| diff| " << fmt(worst_alpha) << " over "
              << points.size() << " points";
        } else {
            d << "pipeline error: " << a.outcome.error << b.outcome.error;
        }
        verdict(8, ok, "associate family isometry", d.str());
    }

    // 9. property sweep
    {
        std::mt19937_64 rng(20261019);
        int counterexamples = 0, evaluated = 0, negative_disc = 0;
        for (int t = 0; t < 1000; ++t) {
            const int n = 1 + t % 3;
            const Spectrum s(testing::yang_sequence(rng, 12, n), n, SpectrumSource::synthetic);
            for (int k = 1; k < 12; ++k) {
                if (!yang_hypothesis_through(s.values(), n, k)) {
                    ++counterexamples;
                    continue;
                }
                const auto trio = check_corollary_trio(s, k);
                ++evaluated;
                if (!trio[0].holds) ++counterexamples;
                if (!trio[1].note.empty()) {
                    ++negative_disc;
                    continue;
                }
                if (!trio[1].holds || !trio[2].holds) ++counterexamples;
            }
        }
        verdict(9, counterexamples == 0, "property sweep",
                "1000 sequences, " + std::to_string(evaluated) + " (sequence, k) pairs, " + std::to_string(negative_disc) +
                    " with negative discriminant, " + std::to_string(counterexamples) + " counterexamples");
    }

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
