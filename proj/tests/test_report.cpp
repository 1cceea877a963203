#include "speclab/errors.hpp"
#include "speclab/report.hpp"
#include "speclab/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace speclab;
namespace fs = std::filesystem;

namespace {

const char* small_square = R"(# small square
name = small
chart.id = flat_rectangle
domain.kind = rectangle
domain.lower = 0 0
domain.upper = 1 1
mesh.resolutions = 6 8 10
eigen.k_max = 10
checks = all
)";

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("speclab_test_" + name);
    fs::remove_all(p);
    return p;
}

void expect_config_error(const std::string& text)
{
    try {
        parse_scenario(text);
        FAIL("accepted: " << text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config);
    }
}

}  // namespace

TEST_CASE("scenario parsing")
{
    const Scenario s = parse_scenario(small_square);
    CHECK(s.name == "small");
    CHECK(s.resolutions == std::vector<int>{6, 8, 10});
    CHECK(s.k_max == 10);
    CHECK(resolved_checks(s) == check_catalog());

    const Scenario e = parse_scenario("chart.id = flat_interval\neta.params = pi/4, 2*2\n");
    REQUIRE(e.eta_params.size() == 2);
    CHECK(e.eta_params[0] == doctest::Approx(std::numbers::pi / 4));
    CHECK(e.eta_params[1] == 4.0);

    expect_config_error("name = a\nname = b\n");
    expect_config_error("colour = red\n");
    expect_config_error("mesh.resolutions = 16 8\n");
    expect_config_error("eigen.k_max = 1\n");
    expect_config_error("chart.id = torus\n");
    expect_config_error("checks = thm_nonsense\n");
    expect_config_error("no equals sign\n");
    CHECK_THROWS_AS(load_scenario("/nonexistent/speclab.cfg"), Error);
}

TEST_CASE("check catalog is sorted")
{
    const auto c = check_catalog();
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(c.size() == 9);
    const std::string a = list_catalog();
    CHECK(a == list_catalog());
    CHECK(a.find("charts:") < a.find("checks:"));
    CHECK(a.find("stereographic_sphere") != std::string::npos);
}

TEST_CASE("Richardson extrapolation recovers the order")
{
    // λ(h) = 3 + 2h², h = 1/r
    const std::vector<int> res{4, 8, 16};
    std::vector<std::vector<double>> vals;
    for (int r : res) vals.push_back({3.0 + 2.0 / (r * r), 5.0 - 1.0 / (r * r)});
    const auto rows = richardson(res, vals);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row.order == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(row.limit == doctest::Approx(row.k == 1 ? 3.0 : 5.0).epsilon(1e-12));
    }
    const auto two = richardson({4, 8}, {{3.0 + 2.0 / 16}, {3.0 + 2.0 / 64}});
    CHECK(two.back().limit == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("small run writes every artifact")
{
    const fs::path dir = scratch("run");
    RunOptions o;
    o.output_dir = dir.string();
    const RunOutcome r = run_scenario(parse_scenario(small_square), o);
    CHECK(r.error == "");
    CHECK(r.complete);
    CHECK(r.exit_code == 0);
    CHECK(r.bounds.size() > 0);
    for (const char* f : {"eigenvalues.csv", "convergence.csv", "constants.json", "bounds.csv", "skipped.csv", "weyl_fit.json",
                          "MANIFEST"})
        CHECK(fs::exists(dir / f));
    const std::string manifest = slurp(dir / "MANIFEST");
    CHECK(manifest.find("status: complete") != std::string::npos);
    CHECK(manifest.find("file: bounds.csv") != std::string::npos);
    CHECK(slurp(dir / "bounds.csv").rfind("name,k,lhs,rhs,ratio,holds,slack\n", 0) == 0);
    CHECK(slurp(dir / "eigenvalues.csv").rfind("resolution,k,lambda,residual\n", 0) == 0);
    REQUIRE(r.runs.size() == 3);
    CHECK(r.runs.back().result.eigenvalues[0] == doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(0.1));
}

TEST_CASE("reruns are byte-identical and parallel matches sequential")
{
    const Scenario s = parse_scenario(small_square);
    const fs::path a = scratch("a"), b = scratch("b"), p = scratch("p");
    RunOptions o;
    o.output_dir = a.string();
    run_scenario(s, o);
    o.output_dir = b.string();
    run_scenario(s, o);
    o.output_dir = p.string();
    o.parallel = true;
    run_scenario(s, o);
    for (const char* f : {"eigenvalues.csv", "convergence.csv", "constants.json", "bounds.csv", "skipped.csv", "weyl_fit.json"}) {
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK(slurp(a / f) == slurp(p / f));
    }
}

TEST_CASE("output directory precedence")
{
    const fs::path env = scratch("env"), cli = scratch("cli");
    Scenario s = parse_scenario(small_square);
    s.checks = {"thm_drift"};
    s.resolutions = {6};
    s.output_dir = scratch("cfg").string();
    ::setenv("SPECTRA_OUT", env.c_str(), 1);
    const RunOutcome e = run_scenario(s);
    CHECK(e.output_dir == env.string());
    CHECK(fs::exists(env / "MANIFEST"));
    RunOptions o;
    o.output_dir = cli.string();
    CHECK(run_scenario(s, o).output_dir == cli.string());
    ::unsetenv("SPECTRA_OUT");
    CHECK(run_scenario(s).output_dir == s.output_dir);
}

TEST_CASE("an indefinite tensor aborts with an incomplete manifest")
{
    Scenario s = parse_scenario(small_square);
    s.tensor_id = "diagonal";
    s.tensor_params = {1.0, -1.0};
    const fs::path dir = scratch("bad");
    RunOptions o;
    o.output_dir = dir.string();
    const RunOutcome r = run_scenario(s, o);
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.error.empty());
    const std::string manifest = slurp(dir / "MANIFEST");
    CHECK(manifest.find("status: incomplete") != std::string::npos);
    CHECK(manifest.find("error: ") != std::string::npos);
}

TEST_CASE("a failing inequality gives exit code 1")
{
    // T = 3I triples the spectrum; the infimum-trace tensor bound then fails
    Scenario s = parse_scenario(small_square);
    s.tensor_id = "diagonal";
    s.tensor_params = {3.0, 3.0};
    s.checks = {"thm_tensor"};
    s.resolutions = {10};
    RunOptions o;
    o.write_files = false;
    const RunOutcome r = run_scenario(s, o);
    CHECK(r.complete);
    CHECK(r.exit_code == 1);
}
