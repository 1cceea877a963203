#include "speclab/bounds.hpp"

#include "speclab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace speclab {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_k(std::size_t size, int k)
{
    if (k < 1 || static_cast<std::size_t>(k) + 1 > size)
        raise(ErrorKind::parameter, "k = " + std::to_string(k) + " needs k + 1 <= " + std::to_string(size) + " eigenvalues");
}

BoundReport not_applicable(std::string name, int k, std::string note)
{
    BoundReport r;
    r.name = std::move(name);
    r.k = k;
    r.applicable = false;
    r.note = std::move(note);
    return r;
}

// The k-th Cheng–Yang-type growth bound (1 + 4c/n) k^{2c/n} η₁, shared by the
// corollary and the c-lemma so both produce bit-identical values at c = 1.
double growth_bound(double n, int k, double c, double first)
{
    return (1.0 + 4.0 * c / n) * std::pow(static_cast<double>(k), 2.0 * c / n) * first;
}

struct Moments {
    double sum = 0.0;
    double mean = 0.0;
    double variance_sum = 0.0;  // Σ (ηⱼ − mean)²
};

Moments moments(const std::vector<double>& v, int k)
{
    Moments m;
    for (int i = 0; i < k; ++i) m.sum += v[static_cast<std::size_t>(i)];
    m.mean = m.sum / k;
    for (int i = 0; i < k; ++i) {
        const double d = v[static_cast<std::size_t>(i)] - m.mean;
        m.variance_sum += d * d;
    }
    return m;
}

bool near_zero(double v) { return std::abs(v) <= 1e-9; }

}  // namespace

const char* to_string(SpectrumSource source)
{
    switch (source) {
    case SpectrumSource::computed: return "computed";
    case SpectrumSource::closed_form: return "closed_form";
    case SpectrumSource::synthetic: return "synthetic";
    }
    return "unknown";
}

Spectrum::Spectrum(std::vector<double> values, int dim, SpectrumSource source)
    : values_(std::move(values)), dim_(dim), source_(source)
{
    if (dim_ < 1) raise(ErrorKind::parameter, "spectrum dimension must be positive");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
            raise(ErrorKind::parameter, "spectrum entry " + std::to_string(i + 1) + " is not a positive finite number");
        if (i > 0 && values_[i] < values_[i - 1])
            raise(ErrorKind::parameter, "spectrum is not ascending at entry " + std::to_string(i + 1));
    }
}

double Spectrum::slack() const noexcept { return source_ == SpectrumSource::computed ? 1e-6 : 1e-9; }

Spectrum closed_form_interval(int count, double length)
{
    std::vector<double> v;
    for (int k = 1; k <= count; ++k) v.push_back(k * k * pi * pi / (length * length));
    return Spectrum(std::move(v), 1, SpectrumSource::closed_form);
}

Spectrum closed_form_rectangle(int count, double a, double b)
{
    // enough modes in each direction to contain the lowest `count`
    const int reach = static_cast<int>(std::ceil(std::sqrt(4.0 * count * std::max(a / b, b / a)))) + 2;
    std::vector<double> v;
    for (int p = 1; p <= reach; ++p)
        for (int q = 1; q <= reach; ++q) v.push_back(pi * pi * (p * p / (a * a) + q * q / (b * b)));
    std::sort(v.begin(), v.end());
    v.resize(static_cast<std::size_t>(count));
    return Spectrum(std::move(v), 2, SpectrumSource::closed_form);
}

BoundReport make_report(std::string name, int k, double lhs, double rhs, double slack)
{
    BoundReport r;
    r.name = std::move(name);
    r.k = k;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = slack;
    if (rhs != 0.0)
        r.ratio = lhs / rhs;
    else
        r.ratio = lhs == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), lhs);
    r.holds = lhs <= rhs + slack * std::abs(rhs);
    return r;
}

std::string bounds_csv_header() { return "name,k,lhs,rhs,ratio,holds,slack"; }

std::string to_csv_row(const BoundReport& r)
{
    return r.name + "," + std::to_string(r.k) + "," + fmt(r.lhs) + "," + fmt(r.rhs) + "," + fmt(r.ratio) + "," +
           (r.holds ? "true" : "false") + "," + fmt(r.slack);
}

// ---------------------------------------------------------------- shift

double upsilon_offset(const GeometricConstants& c)
{
    const double n = c.dim_n;
    return (n * n * c.H_0 * c.H_0 + c.eta_0 * c.eta_0 + 2.0 * c.eta_bar_0) / 4.0;
}

Spectrum upsilon_shift(const Spectrum& spectrum, const GeometricConstants& consts)
{
    const double s = upsilon_offset(consts);
    std::vector<double> v = spectrum.values();
    for (double& x : v) x += s;
    if (!v.empty() && !(v.front() > 0.0))
        raise(ErrorKind::shift_positivity, "shifted first eigenvalue " + fmt(v.front()) + " is not positive");
    return Spectrum(std::move(v), spectrum.dim(), spectrum.source());
}

YangForm yang_form(const std::vector<double>& v, int n, int k, double c, double slack)
{
    require_k(v.size(), k);
    YangForm y;
    const double next = v[static_cast<std::size_t>(k)];
    for (int i = 0; i < k; ++i) {
        const double gap = next - v[static_cast<std::size_t>(i)];
        y.lhs += gap * gap;
        y.rhs += gap * v[static_cast<std::size_t>(i)];
    }
    y.rhs *= 4.0 * c / n;
    y.holds = y.lhs <= y.rhs + slack * std::abs(y.rhs);
    return y;
}

bool yang_hypothesis_through(const std::vector<double>& v, int n, int k, double c, double slack)
{
    for (int j = 1; j <= k; ++j)
        if (!yang_form(v, n, j, c, slack).holds) return false;
    return true;
}

// ---------------------------------------------------------------- theorems

BoundReport check_thm_drift(const Spectrum& spectrum, const GeometricConstants& consts, int k)
{
    require_k(spectrum.size(), k);
    const double n = spectrum.dim();
    const double s = upsilon_offset(consts);
    double lhs = 0.0;
    double rhs = 0.0;
    const double next = spectrum(k + 1);
    for (int i = 1; i <= k; ++i) {
        const double gap = next - spectrum(i);
        lhs += gap * gap;
        rhs += gap * (spectrum(i) + s);
    }
    rhs *= 4.0 / n;
    BoundReport r = make_report("thm_drift", k, lhs, rhs, spectrum.slack());
    r.inputs = "n=" + fmt(n) + ";H0=" + fmt(consts.H_0) + ";eta0=" + fmt(consts.eta_0) + ";etabar0=" + fmt(consts.eta_bar_0);
    return r;
}

BoundReport check_thm_tensor(const Spectrum& spectrum, const GeometricConstants& c, int k)
{
    require_k(spectrum.size(), k);
    const double codim = c.dim_m - c.dim_n;
    const double drift = c.T_0 + c.T_star * c.eta_0;
    const double curvature = codim * codim * c.A_0 * c.A_0 * c.T_star * c.T_star;
    double lhs = 0.0;
    double rhs = 0.0;
    const double next = spectrum(k + 1);
    for (int i = 1; i <= k; ++i) {
        const double gap = next - spectrum(i);
        lhs += gap * gap;
        rhs += gap * (curvature + drift * drift + 4.0 * drift * std::sqrt(spectrum(i)) + 4.0 * spectrum(i));
    }
    lhs *= c.trT_inf;
    BoundReport r = make_report("thm_tensor_inf_trace", k, lhs, rhs, spectrum.slack());
    r.inputs = "m=" + std::to_string(c.dim_m) + ";n=" + std::to_string(c.dim_n) + ";A0=" + fmt(c.A_0) +
               ";Tstar=" + fmt(c.T_star) + ";T0=" + fmt(c.T_0) + ";eta0=" + fmt(c.eta_0) + ";trT_inf=" + fmt(c.trT_inf);
    return r;
}

BoundReport check_thm_tensor_integrated(const SpectralResult& result, const Chart& chart, const Mesh& mesh,
                                        const DofMap& dofs, int k)
{
    require_k(result.size(), k);
    if (dofs.size() != static_cast<std::size_t>(result.eigenvectors.rows()))
        raise(ErrorKind::parameter, "eigenvectors do not match the dof map");
    const int n = chart.dim_n;
    const auto count = static_cast<Eigen::Index>(k);

    Eigen::MatrixXd U(static_cast<Eigen::Index>(mesh.vertices.size()), count);
    for (Eigen::Index i = 0; i < count; ++i) U.col(i) = dofs.expand(result.eigenvectors.col(i));

    // per eigenfunction: ∫u² trT, ∫u²(‖tr αT‖² + |V − T∇η|²), ∫u⟨V − T∇η, T∇u⟩
    Eigen::VectorXd mass_tr = Eigen::VectorXd::Zero(count);
    Eigen::VectorXd potential = Eigen::VectorXd::Zero(count);
    Eigen::VectorXd cross = Eigen::VectorXd::Zero(count);
    const int nodes = mesh.nodes_per_cell();

    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const CellQuadrature cq = cell_quadrature(mesh, c);
        Eigen::MatrixXd du = Eigen::MatrixXd::Zero(n, count);
        for (int a = 0; a < nodes; ++a) {
            const auto v = static_cast<Eigen::Index>(mesh.cells[c][static_cast<std::size_t>(a)]);
            du += cq.grads[static_cast<std::size_t>(a)].head(n) * U.row(v);
        }
        for (const auto& qp : cq.points) {
            const LocalGeometry lg = evaluate_local(chart, qp.xi, false);
            const SecondFundamentalForm sff = second_fundamental_form(lg);
            const double w = qp.weight * lg.weight();
            const Eigen::VectorXd X = trace_nabla_T(lg) - lg.K * lg.grad_eta;
            const double pot = trace_alpha_T(lg, sff).squaredNorm() + X.dot(lg.g * X);
            const double tr = tensor_trace(lg);
            const Eigen::RowVectorXd XgK = X.transpose() * lg.g * lg.K;
            Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(count);
            for (int a = 0; a < nodes; ++a)
                u += qp.shape[static_cast<std::size_t>(a)] * U.row(mesh.cells[c][static_cast<std::size_t>(a)]);
            const Eigen::RowVectorXd flux = XgK * du;
            for (Eigen::Index i = 0; i < count; ++i) {
                mass_tr[i] += w * u[i] * u[i] * tr;
                potential[i] += w * u[i] * u[i] * pot;
                cross[i] += w * u[i] * flux[i];
            }
        }
    }

    const double next = result.eigenvalues[static_cast<std::size_t>(k)];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double lambda = result.eigenvalues[static_cast<std::size_t>(i)];
        const double gap = next - lambda;
        lhs += gap * gap * mass_tr[i];
        rhs += gap * (potential[i] + 4.0 * cross[i] + 4.0 * lambda);
    }
    BoundReport r = make_report("thm_tensor_integrated", k, lhs, rhs, 1e-6);
    r.inputs = "chart=" + chart.id + ";eta=" + chart.eta_id + ";tensor=" + chart.tensor_id;
    return r;
}

// ---------------------------------------------------------------- corollaries

std::array<BoundReport, 3> check_corollary_trio(const Spectrum& shifted, int k)
{
    require_k(shifted.size(), k);
    if (!(shifted(1) > 0.0)) raise(ErrorKind::shift_positivity, "corollary needs a positive sequence");
    const double n = shifted.dim();
    const Moments m = moments(shifted.values(), k);
    const double next = shifted(k + 1);
    const double slack = shifted.slack();
    const double lead = 2.0 * m.sum / (k * n);
    const double D = lead * lead - (1.0 + 4.0 / n) * m.variance_sum / k;

    std::array<BoundReport, 3> out;
    out[0] = make_report("corollary_second_yang", k, next, (1.0 + 4.0 / n) * m.sum / k, slack);
    if (D >= 0.0) {
        const double root = std::sqrt(D);
        out[1] = make_report("corollary_quadratic_root", k, next, (1.0 + 2.0 / n) * m.sum / k + root, slack);
        out[2] = make_report("corollary_gap", k, next - shifted(k), 2.0 * root, slack);
    } else {
        const bool yang = yang_form(shifted.values(), shifted.dim(), k, 1.0, slack).holds;
        const std::string note = yang ? "negative discriminant although the Yang-form hypothesis holds: internal inconsistency"
                                      : "negative discriminant: Yang-form hypothesis violated";
        out[1] = make_report("corollary_quadratic_root", k, next, (1.0 + 2.0 / n) * m.sum / k, slack);
        out[2] = make_report("corollary_gap", k, next - shifted(k), 0.0, slack);
        for (std::size_t j = 1; j < 3; ++j) {
            out[j].holds = false;
            out[j].note = note;
        }
    }
    for (auto& r : out) r.inputs = "discriminant=" + fmt(D);
    return out;
}

BoundReport check_polya_type(const Spectrum& shifted, double vol, int k)
{
    if (!(vol > 0.0)) raise(ErrorKind::parameter, "volume must be positive");
    if (k < 1 || static_cast<std::size_t>(k) > shifted.size()) raise(ErrorKind::parameter, "k out of range");
    const int n = shifted.dim();
    const double bound = n / std::sqrt((n + 2.0) * (n + 4.0)) * weyl_constant(n, vol) * std::pow(k, 2.0 / n);
    BoundReport r = make_report("polya_type", k, bound, moments(shifted.values(), k).mean, shifted.slack());
    r.inputs = "vol=" + fmt(vol);
    return r;
}

BoundReport check_cheng_yang_type(const Spectrum& shifted, int k)
{
    require_k(shifted.size(), k);
    return make_report("cheng_yang_type", k, shifted(k + 1), growth_bound(shifted.dim(), k, 1.0, shifted(1)), shifted.slack());
}

// ---------------------------------------------------------------- appendix

RecursionState recursion_state(const std::vector<double>& v, int n, int k, double c)
{
    if (k < 1 || static_cast<std::size_t>(k) > v.size()) raise(ErrorKind::parameter, "k out of range");
    RecursionState s;
    s.k = k;
    for (int i = 0; i < k; ++i) {
        s.mean += v[static_cast<std::size_t>(i)];
        s.mean_square += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    s.mean /= k;
    s.mean_square /= k;
    s.F = (1.0 + 2.0 * c / n) * s.mean * s.mean - s.mean_square;
    return s;
}

double recursion_constant(double n, int k, double c)
{
    const double kk = k;
    return 1.0 - c / (3.0 * n) * std::pow(kk / (kk + 1.0), 4.0 * c / n) * (1.0 + 2.0 * c / n) * (1.0 + 4.0 * c / n) /
                     ((kk + 1.0) * (kk + 1.0) * (kk + 1.0));
}

RecursionOutcome recursion_lemma(const Spectrum& spectrum, double c, int k)
{
    require_k(spectrum.size(), k);
    if (!(c > 0.0)) raise(ErrorKind::parameter, "c must be positive");
    const int n = spectrum.dim();
    const std::string name = "recursion_lemma";
    RecursionOutcome out;
    out.C = recursion_constant(n, k, c);
    out.at_k = recursion_state(spectrum.values(), n, k, c);
    out.at_next = recursion_state(spectrum.values(), n, k + 1, c);
    if (!yang_form(spectrum.values(), n, k, c, spectrum.slack()).holds) {
        out.report = not_applicable(name, k, "hypothesis fails for c = " + fmt(c));
        return out;
    }
    out.applicable = true;
    const double rhs = out.C * std::pow((k + 1.0) / k, 4.0 * c / n) * out.at_k.F;
    out.report = make_report(name, k, out.at_next.F, rhs, spectrum.slack());
    if (!(out.C > 0.0 && out.C < 1.0)) {
        out.report.holds = false;
        out.report.note = "C(n,k,c) outside (0,1)";
    }
    out.report.inputs = "c=" + fmt(c) + ";C=" + fmt(out.C);
    return out;
}

BoundReport lemma_c_bound(const Spectrum& spectrum, double c, int k)
{
    require_k(spectrum.size(), k);
    if (!(c > 0.0)) raise(ErrorKind::parameter, "c must be positive");
    const std::string name = "lemma_c_bound";
    if (!yang_hypothesis_through(spectrum.values(), spectrum.dim(), k, c, spectrum.slack()))
        return not_applicable(name, k, "hypothesis fails for some k' <= k at c = " + fmt(c));
    BoundReport r = make_report(name, k, spectrum(k + 1), growth_bound(spectrum.dim(), k, c, spectrum(1)), spectrum.slack());
    r.inputs = "c=" + fmt(c);
    return r;
}

// ---------------------------------------------------------------- test functions

BoundReport check_proposition_testfunction(const SpectralResult& result, const Chart& chart, const Mesh& mesh,
                                           const DofMap& dofs, const ScalarField& h, int k, const std::string& label)
{
    require_k(result.size(), k);
    if (!h) raise(ErrorKind::evaluation, "test function is not evaluable");
    if (dofs.size() != static_cast<std::size_t>(result.eigenvectors.rows()))
        raise(ErrorKind::parameter, "eigenvectors do not match the dof map");
    const int n = chart.dim_n;
    const auto count = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd U(static_cast<Eigen::Index>(mesh.vertices.size()), count);
    for (Eigen::Index i = 0; i < count; ++i) U.col(i) = dofs.expand(result.eigenvectors.col(i));

    Eigen::VectorXd grad_part = Eigen::VectorXd::Zero(count);  // ∫u² T(∇h,∇h)
    Eigen::VectorXd square = Eigen::VectorXd::Zero(count);     // ∫(u𝓛h + 2T(∇h,∇u))²
    double max_energy = 0.0;
    const int nodes = mesh.nodes_per_cell();

    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const CellQuadrature cq = cell_quadrature(mesh, c);
        Eigen::MatrixXd du = Eigen::MatrixXd::Zero(n, count);
        for (int a = 0; a < nodes; ++a)
            du += cq.grads[static_cast<std::size_t>(a)].head(n) * U.row(mesh.cells[c][static_cast<std::size_t>(a)]);
        for (const auto& qp : cq.points) {
            const LocalGeometry lg = evaluate_local(chart, qp.xi, false);
            const Jet hj = h(seed(qp.xi));
            const Eigen::VectorXd dh = hj.d.head(n);
            const double Lh = apply_L(lg, hj);
            if (!std::isfinite(Lh) || !std::isfinite(hj.v)) raise(ErrorKind::evaluation, "non-finite test function value");
            const double energy = dh.dot(lg.K * dh);
            max_energy = std::max(max_energy, std::abs(energy));
            const double w = qp.weight * lg.weight();
            const Eigen::RowVectorXd cross = dh.transpose() * lg.K * du;
            Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(count);
            for (int a = 0; a < nodes; ++a)
                u += qp.shape[static_cast<std::size_t>(a)] * U.row(mesh.cells[c][static_cast<std::size_t>(a)]);
            for (Eigen::Index i = 0; i < count; ++i) {
                grad_part[i] += w * u[i] * u[i] * energy;
                const double t = u[i] * Lh + 2.0 * cross[i];
                square[i] += w * t * t;
            }
        }
    }

    const double next = result.eigenvalues[static_cast<std::size_t>(k)];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double gap = next - result.eigenvalues[static_cast<std::size_t>(i)];
        lhs += gap * gap * grad_part[i];
        rhs += gap * square[i];
    }
    BoundReport r = make_report("proposition_testfunction_" + label, k, lhs, rhs, 1e-6);
    if (max_energy == 0.0) r.note = "degenerate test function: T(grad h, grad h) vanishes";
    r.inputs = "h=" + label;
    return r;
}

// ---------------------------------------------------------------- comparators

std::vector<BoundReport> intro_comparators(const Spectrum& spectrum, int k, const GeometricConstants* consts,
                                           std::optional<double> vol)
{
    require_k(spectrum.size(), k);
    const double n = spectrum.dim();
    const double slack = spectrum.slack();
    const auto& v = spectrum.values();
    const double next = spectrum(k + 1);
    const Moments m = moments(v, k);
    std::vector<BoundReport> out;

    std::string euclid_reason;
    std::string li_yau_reason;
    std::string chen_reason;
    std::string xia_reason;
    double H0 = 0.0;
    double eta0 = 0.0;
    if (consts) {
        H0 = consts->H_0;
        eta0 = consts->eta_0;
        if (!consts->tensor_is_metric) {
            euclid_reason = chen_reason = xia_reason = li_yau_reason = "operator is not a drifting Laplacian (T is not the metric)";
        } else {
            if (!near_zero(consts->eta_0) || !near_zero(consts->H_0))
                euclid_reason = "needs constant weight and vanishing mean curvature";
            if (!near_zero(consts->eta_0)) chen_reason = "needs constant weight";
            if (!near_zero(consts->eta_0) || !near_zero(consts->H_0) || !near_zero(consts->A_0))
                li_yau_reason = "needs a flat Euclidean domain with constant weight";
        }
        if (!vol) vol = consts->vol_omega;
    }
    if (!vol && li_yau_reason.empty()) li_yau_reason = "volume not supplied";

    auto add = [&](BoundReport r, const std::string& reason) {
        if (!reason.empty()) r = not_applicable(r.name, k, reason);
        out.push_back(std::move(r));
    };

    add(make_report("ppw", k, next - spectrum(k), 4.0 / (n * k) * m.sum, slack), euclid_reason);

    if (next == spectrum(k)) {
        add(not_applicable("hile_protter", k, "eigenvalue tie in denominator"), "");
    } else {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += spectrum(i) / (next - spectrum(i));
        add(make_report("hile_protter", k, n * k / 4.0, s, slack), euclid_reason);
    }

    double y1l = 0.0;
    double y1r = 0.0;
    double cc1r = 0.0;
    double xxr = 0.0;
    const double mean_shift = n * n * H0 * H0 / 4.0;
    for (int i = 1; i <= k; ++i) {
        const double gap = next - spectrum(i);
        y1l += gap * gap;
        y1r += gap * spectrum(i);
        cc1r += gap * (spectrum(i) + mean_shift);
        xxr += gap * (4.0 * spectrum(i) + 4.0 * eta0 * std::sqrt(spectrum(i)) + n * n * H0 * H0 + eta0 * eta0);
    }
    add(make_report("yang1", k, y1l, 4.0 / n * y1r, slack), euclid_reason);
    add(make_report("yang2", k, next, (1.0 + 4.0 / n) * m.mean, slack), euclid_reason);

    const double lead = 2.0 * m.mean / n;
    const double D = lead * lead - (1.0 + 4.0 / n) * m.variance_sum / k;
    {
        BoundReport r = make_report("yang_gap", k, next - spectrum(k), 2.0 * std::sqrt(std::max(D, 0.0)), slack);
        if (D < 0.0) {
            r.holds = false;
            r.note = "negative discriminant";
        }
        add(std::move(r), euclid_reason);
    }

    if (vol) {
        const double bound = n / (n + 2.0) * weyl_constant(static_cast<int>(n), *vol) * std::pow(k, 2.0 / n);
        BoundReport r = make_report("li_yau", k, bound, m.mean, slack);
        r.inputs = "vol=" + fmt(*vol);
        add(std::move(r), li_yau_reason);
    } else {
        add(not_applicable("li_yau", k, li_yau_reason), "");
    }

    add(make_report("chen_cheng_yang1", k, y1l, 4.0 / n * cc1r, slack), chen_reason);
    add(make_report("chen_cheng_yang2", k, next + mean_shift, (1.0 + 4.0 / n) * (m.mean + mean_shift), slack), chen_reason);
    add(make_report("xia_xu", k, y1l, xxr / n, slack), xia_reason);
    for (auto& r : out)
        if (r.inputs.empty()) r.inputs = "n=" + fmt(n) + ";H0=" + fmt(H0) + ";eta0=" + fmt(eta0);
    return out;
}

// ---------------------------------------------------------------- Weyl

double weyl_constant(int n, double vol)
{
    if (!(vol > 0.0)) raise(ErrorKind::parameter, "volume must be positive");
    return 4.0 * pi * pi / std::pow(unit_ball_volume(n) * vol, 2.0 / n);
}

WeylFit weyl_fit(const Spectrum& spectrum, double vol, int k_lo, int k_hi)
{
    if (k_lo < 1 || k_hi > static_cast<int>(spectrum.size()) || k_hi - k_lo + 1 < 10)
        raise(ErrorKind::parameter, "Weyl fit needs at least 10 eigenvalues inside the spectrum");
    const int n = spectrum.dim();
    WeylFit f;
    f.k_lo = k_lo;
    f.k_hi = k_hi;
    f.target = weyl_constant(n, vol);
    f.expected_exponent = 2.0 / n;

    const int count = k_hi - k_lo + 1;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, level = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(spectrum(k));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        level += y - f.expected_exponent * x;
    }
    f.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    f.constant = std::exp((sy - f.exponent * sx) / count);
    f.level_constant = std::exp(level / count);

    double sum = 0.0, sum_sq = 0.0;
    for (int k = 1; k <= k_hi; ++k) {
        sum += spectrum(k);
        sum_sq += spectrum(k) * spectrum(k);
    }
    f.mean_ratio = sum / k_hi / std::pow(k_hi, 2.0 / n);
    f.square_mean_ratio = sum_sq / k_hi / std::pow(k_hi, 4.0 / n);
    f.mean_target = n / (n + 2.0) * f.target;
    f.square_mean_target = n / (n + 4.0) * f.target * f.target;
    return f;
}

}  // namespace speclab
