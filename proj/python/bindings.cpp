#include "speclab/bounds.hpp"
#include "speclab/errors.hpp"
#include "speclab/report.hpp"
#include "speclab/scenario.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace speclab;

namespace {

py::dict constants_dict(const GeometricConstants& c)
{
    py::dict d;
    d["dim_n"] = c.dim_n;
    d["dim_m"] = c.dim_m;
    d["eta_0"] = c.eta_0;
    d["eta_bar_0"] = c.eta_bar_0;
    d["H_0"] = c.H_0;
    d["A_0"] = c.A_0;
    d["T_star"] = c.T_star;
    d["T_0"] = c.T_0;
    d["trT_inf"] = c.trT_inf;
    d["trT_sup"] = c.trT_sup;
    d["vol_omega"] = c.vol_omega;
    d["weighted_vol"] = c.weighted_vol;
    d["tensor_is_metric"] = c.tensor_is_metric;
    d["upsilon_offset"] = upsilon_offset(c);
    return d;
}

Spectrum to_spectrum(const std::vector<double>& values, int dim) { return Spectrum(values, dim, SpectrumSource::synthetic); }

}  // namespace

PYBIND11_MODULE(_speclab, m)
{
    m.doc() = "Dirichlet spectra of (eta, T)-divergence operators and universal eigenvalue inequalities";

    py::register_exception<Error>(m, "SpeclabError", PyExc_RuntimeError);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("name", &BoundReport::name)
        .def_readonly("k", &BoundReport::k)
        .def_readonly("lhs", &BoundReport::lhs)
        .def_readonly("rhs", &BoundReport::rhs)
        .def_readonly("ratio", &BoundReport::ratio)
        .def_readonly("holds", &BoundReport::holds)
        .def_readonly("slack", &BoundReport::slack)
        .def_readonly("applicable", &BoundReport::applicable)
        .def_readonly("note", &BoundReport::note)
        .def("__repr__", [](const BoundReport& r) { return "<BoundReport " + to_csv_row(r) + ">"; });

    py::class_<WeylFit>(m, "WeylFit")
        .def_readonly("exponent", &WeylFit::exponent)
        .def_readonly("constant", &WeylFit::constant)
        .def_readonly("level_constant", &WeylFit::level_constant)
        .def_readonly("target", &WeylFit::target)
        .def_readonly("expected_exponent", &WeylFit::expected_exponent)
        .def_readonly("mean_ratio", &WeylFit::mean_ratio)
        .def_readonly("mean_target", &WeylFit::mean_target)
        .def_readonly("square_mean_ratio", &WeylFit::square_mean_ratio)
        .def_readonly("square_mean_target", &WeylFit::square_mean_target);

    m.def("interval_spectrum", [](int count, double length) { return closed_form_interval(count, length).values(); },
          py::arg("count"), py::arg("length") = 1.0);
    m.def("rectangle_spectrum", [](int count, double a, double b) { return closed_form_rectangle(count, a, b).values(); },
          py::arg("count"), py::arg("a") = 1.0, py::arg("b") = 1.0);

    m.def("yang_form", [](const std::vector<double>& v, int n, int k, double c) {
        const YangForm y = yang_form(v, n, k, c);
        return py::make_tuple(y.lhs, y.rhs, y.holds);
    }, py::arg("values"), py::arg("n"), py::arg("k"), py::arg("c") = 1.0);
    m.def("corollary_trio", [](const std::vector<double>& v, int n, int k) {
        const auto t = check_corollary_trio(to_spectrum(v, n), k);
        return std::vector<BoundReport>(t.begin(), t.end());
    }, py::arg("values"), py::arg("n"), py::arg("k"));
    m.def("cheng_yang_type", [](const std::vector<double>& v, int n, int k) { return check_cheng_yang_type(to_spectrum(v, n), k); },
          py::arg("values"), py::arg("n"), py::arg("k"));
    m.def("polya_type", [](const std::vector<double>& v, int n, double vol, int k) {
        return check_polya_type(to_spectrum(v, n), vol, k);
    }, py::arg("values"), py::arg("n"), py::arg("vol"), py::arg("k"));
    m.def("lemma_c_bound", [](const std::vector<double>& v, int n, double c, int k) {
        return lemma_c_bound(to_spectrum(v, n), c, k);
    }, py::arg("values"), py::arg("n"), py::arg("c"), py::arg("k"));
    m.def("recursion_lemma", [](const std::vector<double>& v, int n, double c, int k) {
        return recursion_lemma(to_spectrum(v, n), c, k).report;
    }, py::arg("values"), py::arg("n"), py::arg("c"), py::arg("k"));
    m.def("recursion_constant", &recursion_constant, py::arg("n"), py::arg("k"), py::arg("c"));
    m.def("intro_comparators", [](const std::vector<double>& v, int n, int k) { return intro_comparators(to_spectrum(v, n), k); },
          py::arg("values"), py::arg("n"), py::arg("k"));
    m.def("weyl_fit", [](const std::vector<double>& v, int n, double vol, int k_lo, int k_hi) {
        return weyl_fit(to_spectrum(v, n), vol, k_lo, k_hi);
    }, py::arg("values"), py::arg("n"), py::arg("vol"), py::arg("k_lo"), py::arg("k_hi"));

    m.def("list_catalog", &list_catalog);
    m.def("check_catalog", &check_catalog);

    // Runs a scenario config (text or path) and returns plain Python data.
    m.def("run", [](const std::string& config, bool is_path, const std::string& out, bool write_files, bool parallel) {
        const Scenario s = is_path ? load_scenario(config) : parse_scenario(config);
        RunOptions o;
        o.output_dir = out;
        o.write_files = write_files;
        o.parallel = parallel;
        RunOutcome r;
        {
            py::gil_scoped_release release;
            r = run_scenario(s, o);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["complete"] = r.complete;
        d["error"] = r.error;
        d["output_dir"] = r.output_dir;
        d["files"] = r.files;
        py::dict eig;
        for (const auto& run : r.runs) eig[py::int_(run.resolution)] = run.result.eigenvalues;
        d["eigenvalues"] = eig;
        d["constants"] = constants_dict(r.constants);
        d["bounds"] = r.bounds;
        d["skipped"] = r.skipped;
        return d;
    }, py::arg("config"), py::arg("is_path") = true, py::arg("out") = "", py::arg("write_files") = false,
       py::arg("parallel") = false);
}
