#include "speclab/scenario.hpp"

#include "speclab/errors.hpp"
#include "speclab/expression.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace speclab {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += ch;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

double to_number(const std::string& key, const std::string& s)
{
    // numbers may be written as expressions of constants, e.g. "pi/4"
    try {
        const Expression e = Expression::parse(s);
        if (e.arity() == 0) return e.evaluate(0.0, 0.0);
    } catch (const Error&) {
    }
    raise(ErrorKind::config, "value of " + key + " is not a number: '" + s + "'");
}

std::vector<double> numbers(const std::string& key, const std::string& s)
{
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(to_number(key, item));
    return out;
}

ChartPoint point(const std::string& key, const std::string& s)
{
    const auto v = numbers(key, s);
    if (v.empty() || v.size() > 2) raise(ErrorKind::config, key + " needs one or two numbers");
    return ChartPoint(v[0], v.size() > 1 ? v[1] : 0.0);
}

}  // namespace

Scenario parse_scenario(const std::string& text)
{
    Scenario s;
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) raise(ErrorKind::config, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (kv.count(key)) raise(ErrorKind::config, "line " + std::to_string(lineno) + ": duplicate key " + key);
        kv[key] = trim(line.substr(eq + 1));
    }

    std::string domain_kind;
    ChartPoint lower = ChartPoint::Zero(), upper = ChartPoint::Ones(), center = ChartPoint::Zero();
    double radius = 1.0;
    for (const auto& [key, value] : kv) {
        if (key == "name") s.name = value;
        else if (key == "chart.id") s.chart_id = value;
        else if (key == "chart.params") s.chart_params = numbers(key, value);
        else if (key == "domain.kind") domain_kind = value;
        else if (key == "domain.lower") lower = point(key, value);
        else if (key == "domain.upper") upper = point(key, value);
        else if (key == "domain.center") center = point(key, value);
        else if (key == "domain.radius") radius = to_number(key, value);
        else if (key == "eta.id") s.eta_id = value;
        else if (key == "eta.params") s.eta_params = numbers(key, value);
        else if (key == "eta.expr") s.eta_expr = value;
        else if (key == "tensor.id") s.tensor_id = value;
        else if (key == "tensor.params") s.tensor_params = numbers(key, value);
        else if (key == "tensor.t11") s.t11 = value;
        else if (key == "tensor.t12") s.t12 = value;
        else if (key == "tensor.t22") s.t22 = value;
        else if (key == "mesh.resolutions") {
            s.resolutions.clear();
            for (double r : numbers(key, value)) s.resolutions.push_back(static_cast<int>(r));
        } else if (key == "eigen.k_max") s.k_max = static_cast<int>(to_number(key, value));
        else if (key == "checks") s.checks = split_list(value);
        else if (key == "lemma.c") s.lemma_c = numbers(key, value);
        else if (key == "constants.resolution") s.constants_resolution = static_cast<int>(to_number(key, value));
        else if (key == "output.dir") s.output_dir = value;
        else raise(ErrorKind::config, "unknown key " + key);
    }

    if (!domain_kind.empty()) {
        s.domain_given = true;
        if (domain_kind == "interval") s.domain = Domain::interval(lower[0], upper[0]);
        else if (domain_kind == "rectangle") s.domain = Domain::rectangle(lower, upper);
        else if (domain_kind == "disk") s.domain = Domain::disk(center, radius);
        else raise(ErrorKind::config, "unknown domain.kind " + domain_kind);
    }

    if (s.resolutions.empty()) raise(ErrorKind::config, "mesh.resolutions is empty");
    if (!std::is_sorted(s.resolutions.begin(), s.resolutions.end()) ||
        std::adjacent_find(s.resolutions.begin(), s.resolutions.end()) != s.resolutions.end())
        raise(ErrorKind::config, "mesh.resolutions must be strictly ascending");
    if (s.k_max < 2) raise(ErrorKind::config, "eigen.k_max must be at least 2");
    const auto catalog = check_catalog();
    for (const auto& c : s.checks)
        if (c != "all" && std::find(catalog.begin(), catalog.end(), c) == catalog.end())
            raise(ErrorKind::config, "unknown check " + c);
    const auto charts = chart_catalog();
    if (std::find(charts.begin(), charts.end(), s.chart_id) == charts.end())
        raise(ErrorKind::config, "unknown chart " + s.chart_id);
    for (double c : s.lemma_c)
        if (!(c > 0.0)) raise(ErrorKind::config, "lemma.c values must be positive");
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) raise(ErrorKind::config, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

Chart build_chart(const Scenario& s)
{
    Domain domain = s.domain;
    if (!s.domain_given && s.chart_id == "flat_interval") domain = Domain::interval(0.0, 1.0);
    Chart chart = make_chart(s.chart_id, s.chart_params, domain);

    if (s.eta_id == "zero") set_eta_zero(chart);
    else if (s.eta_id == "linear") set_eta_linear(chart, s.eta_params);
    else if (s.eta_id == "radial_quadratic") {
        if (s.eta_params.empty()) raise(ErrorKind::config, "radial_quadratic needs eta.params = a [cx cy]");
        const ChartPoint c(s.eta_params.size() > 1 ? s.eta_params[1] : 0.0, s.eta_params.size() > 2 ? s.eta_params[2] : 0.0);
        set_eta_radial_quadratic(chart, s.eta_params[0], c);
    } else if (s.eta_id == "expression") set_eta_expression(chart, s.eta_expr);
    else raise(ErrorKind::config, "unknown eta.id " + s.eta_id);

    if (s.tensor_id == "metric") set_tensor_metric(chart);
    else if (s.tensor_id == "diagonal") set_tensor_diagonal(chart, s.tensor_params);
    else if (s.tensor_id == "expression") set_tensor_expression(chart, s.t11, s.t12.empty() ? "0" : s.t12, s.t22);
    else raise(ErrorKind::config, "unknown tensor.id " + s.tensor_id);
    return chart;
}

std::vector<std::string> check_catalog()
{
    return {"cheng_yang_type", "corollary_trio", "intro_comparators", "lemma_c_bound", "polya_type",
            "proposition_testfunction", "recursion_lemma", "thm_drift", "thm_tensor"};
}

std::vector<std::string> resolved_checks(const Scenario& s)
{
    const auto catalog = check_catalog();
    if (std::find(s.checks.begin(), s.checks.end(), "all") != s.checks.end()) return catalog;
    std::vector<std::string> out;
    for (const auto& c : catalog)
        if (std::find(s.checks.begin(), s.checks.end(), c) != s.checks.end()) out.push_back(c);
    return out;
}

}  // namespace speclab
