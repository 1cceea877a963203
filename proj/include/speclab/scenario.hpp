#pragma once

#include "speclab/geometry.hpp"

#include <map>
#include <string>
#include <vector>

namespace speclab {

/// One pipeline configuration, read from `key = value` lines.
struct Scenario {
    std::string name = "scenario";
    std::string chart_id = "flat_rectangle";
    std::vector<double> chart_params;
    bool domain_given = false;
    Domain domain;
    std::string eta_id = "zero";
    std::vector<double> eta_params;
    std::string eta_expr;
    std::string tensor_id = "metric";
    std::vector<double> tensor_params;
    std::string t11, t12, t22;
    std::vector<int> resolutions{16};
    int k_max = 10;
    std::vector<std::string> checks{"all"};
    std::vector<double> lemma_c{1.0, 2.0};
    int constants_resolution = 64;
    std::string output_dir = "out";
};

/// Parses the flat config format. Blank lines and `#` comments are ignored;
/// unknown keys are an error.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Chart with domain, weight and tensor applied.
Chart build_chart(const Scenario& scenario);

/// Check names accepted in `checks`, alphabetized.
std::vector<std::string> check_catalog();
/// `checks` with "all" expanded, in catalog order.
std::vector<std::string> resolved_checks(const Scenario& scenario);

}  // namespace speclab
