#include "speclab/geometry.hpp"

#include "speclab/errors.hpp"
#include "speclab/quadrature.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace speclab {

namespace {

std::string point_string(const ChartPoint& p, int n)
{
    std::ostringstream os;
    os.precision(17);
    os << "(" << p[0];
    if (n == 2) os << ", " << p[1];
    os << ")";
    return os.str();
}

bool finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

// ---------------------------------------------------------------- Domain

Domain Domain::interval(double a, double b)
{
    if (!(a < b)) raise(ErrorKind::parameter, "interval needs a < b");
    Domain d;
    d.kind = Kind::interval;
    d.lower = ChartPoint(a, 0.0);
    d.upper = ChartPoint(b, 0.0);
    return d;
}

Domain Domain::rectangle(const ChartPoint& lower, const ChartPoint& upper)
{
    if (!(lower[0] < upper[0] && lower[1] < upper[1])) raise(ErrorKind::parameter, "rectangle needs lower < upper");
    Domain d;
    d.kind = Kind::rectangle;
    d.lower = lower;
    d.upper = upper;
    return d;
}

Domain Domain::disk(const ChartPoint& center, double radius)
{
    if (!(radius > 0.0)) raise(ErrorKind::parameter, "disk radius must be positive");
    Domain d;
    d.kind = Kind::disk;
    d.center = center;
    d.radius = radius;
    return d;
}

bool Domain::contains(const ChartPoint& p, double tol) const
{
    const double t = tol * std::max(1.0, extent());
    switch (kind) {
    case Kind::interval: return p[0] >= lower[0] - t && p[0] <= upper[0] + t;
    case Kind::rectangle:
        return p[0] >= lower[0] - t && p[0] <= upper[0] + t && p[1] >= lower[1] - t && p[1] <= upper[1] + t;
    case Kind::disk: return (p - center).norm() <= radius + t;
    }
    return false;
}

bool Domain::on_boundary(const ChartPoint& p, double tol) const
{
    switch (kind) {
    case Kind::interval: return std::abs(p[0] - lower[0]) <= tol || std::abs(p[0] - upper[0]) <= tol;
    case Kind::rectangle:
        return contains(p, tol) && (std::abs(p[0] - lower[0]) <= tol || std::abs(p[0] - upper[0]) <= tol ||
                                    std::abs(p[1] - lower[1]) <= tol || std::abs(p[1] - upper[1]) <= tol);
    case Kind::disk: return std::abs((p - center).norm() - radius) <= tol;
    }
    return false;
}

double Domain::area() const
{
    switch (kind) {
    case Kind::interval: return upper[0] - lower[0];
    case Kind::rectangle: return (upper[0] - lower[0]) * (upper[1] - lower[1]);
    case Kind::disk: return std::numbers::pi * radius * radius;
    }
    return 0.0;
}

double Domain::extent() const
{
    switch (kind) {
    case Kind::interval: return upper[0] - lower[0];
    case Kind::rectangle: return std::max(upper[0] - lower[0], upper[1] - lower[1]);
    case Kind::disk: return 2.0 * radius;
    }
    return 0.0;
}

std::string Domain::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
    case Kind::interval: os << "interval [" << lower[0] << ", " << upper[0] << "]"; break;
    case Kind::rectangle:
        os << "rectangle [" << lower[0] << ", " << upper[0] << "] x [" << lower[1] << ", " << upper[1] << "]";
        break;
    case Kind::disk: os << "disk center (" << center[0] << ", " << center[1] << ") radius " << radius; break;
    }
    return os.str();
}

// ---------------------------------------------------------------- catalog

namespace {

void require_dim(const Domain& domain, int n, const std::string& id)
{
    if (domain.dim() != n) raise(ErrorKind::parameter, id + " needs a " + std::to_string(n) + "-dimensional domain");
}

}  // namespace

Chart flat_interval(double a, double b)
{
    Chart c;
    c.id = "flat_interval";
    c.dim_n = 1;
    c.dim_m = 1;
    c.domain = Domain::interval(a, b);
    c.immersion = [](const JetPoint& p) { return std::vector<Jet>{p[0]}; };
    return c;
}

Chart flat_rectangle(const ChartPoint& lower, const ChartPoint& upper)
{
    Chart c;
    c.id = "flat_rectangle";
    c.dim_n = 2;
    c.dim_m = 2;
    c.domain = Domain::rectangle(lower, upper);
    c.immersion = [](const JetPoint& p) { return std::vector<Jet>{p[0], p[1]}; };
    return c;
}

Chart stereographic_sphere(double r, const Domain& domain)
{
    require_dim(domain, 2, "stereographic_sphere");
    if (!(r > 0.0)) raise(ErrorKind::parameter, "sphere radius must be positive");
    Chart c;
    c.id = "stereographic_sphere";
    c.params = {r};
    c.dim_n = 2;
    c.dim_m = 3;
    c.domain = domain;
    c.immersion = [r](const JetPoint& p) {
        const Jet q = p[0] * p[0] + p[1] * p[1];
        const Jet s = reciprocal(1.0 + q);
        return std::vector<Jet>{2.0 * r * p[0] * s, 2.0 * r * p[1] * s, r * (1.0 - q) * s};
    };
    return c;
}

Chart cylinder(double r, const Domain& domain)
{
    require_dim(domain, 2, "cylinder");
    if (!(r > 0.0)) raise(ErrorKind::parameter, "cylinder radius must be positive");
    Chart c;
    c.id = "cylinder";
    c.params = {r};
    c.dim_n = 2;
    c.dim_m = 3;
    c.domain = domain;
    c.immersion = [r](const JetPoint& p) {
        const Jet angle = p[0] / r;
        return std::vector<Jet>{r * cos(angle), r * sin(angle), p[1]};
    };
    return c;
}

Chart associate_family(double theta, const Domain& domain)
{
    require_dim(domain, 2, "associate_family");
    Chart c;
    c.id = "associate_family";
    c.params = {theta};
    c.dim_n = 2;
    c.dim_m = 3;
    c.domain = domain;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    c.immersion = [ct, st](const JetPoint& p) {
        const Jet& u = p[0];
        const Jet& v = p[1];
        const Jet cu = cos(u);
        const Jet su = sin(u);
        const Jet chv = cosh(v);
        const Jet shv = sinh(v);
        // catenoid (cosh v cos u, cosh v sin u, v), helicoid (sinh v sin u, -sinh v cos u, u)
        return std::vector<Jet>{ct * (chv * cu) + st * (shv * su), ct * (chv * su) - st * (shv * cu), ct * v + st * u};
    };
    return c;
}

Chart make_chart(const std::string& id, const std::vector<double>& params, const Domain& domain)
{
    auto param = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
    if (id == "flat_interval") {
        require_dim(domain, 1, id);
        return flat_interval(domain.lower[0], domain.upper[0]);
    }
    if (id == "flat_rectangle") {
        require_dim(domain, 2, id);
        Chart c = flat_rectangle();
        c.domain = domain;
        return c;
    }
    if (id == "stereographic_sphere") return stereographic_sphere(param(0, 1.0), domain);
    if (id == "cylinder") return cylinder(param(0, 1.0), domain);
    if (id == "associate_family") return associate_family(param(0, 0.0), domain);
    raise(ErrorKind::config, "unknown chart '" + id + "'");
}

std::vector<std::string> chart_catalog()
{
    return {"associate_family", "cylinder", "flat_interval", "flat_rectangle", "stereographic_sphere"};
}

void set_eta_zero(Chart& chart)
{
    chart.eta_id = "zero";
    chart.eta = nullptr;
}

void set_eta_linear(Chart& chart, const std::vector<double>& coefficients)
{
    if (coefficients.empty() || static_cast<int>(coefficients.size()) > chart.dim_n)
        raise(ErrorKind::parameter, "linear weight needs 1.." + std::to_string(chart.dim_n) + " coefficients");
    std::array<double, 2> a{0.0, 0.0};
    std::copy(coefficients.begin(), coefficients.end(), a.begin());
    chart.eta_id = "linear";
    chart.eta = [a](const JetPoint& p) { return a[0] * p[0] + a[1] * p[1]; };
}

void set_eta_radial_quadratic(Chart& chart, double a, const ChartPoint& center)
{
    chart.eta_id = "radial_quadratic";
    const int n = chart.dim_n;
    chart.eta = [a, center, n](const JetPoint& p) {
        const Jet dx = p[0] - center[0];
        Jet r2 = dx * dx;
        if (n == 2) {
            const Jet dy = p[1] - center[1];
            r2 += dy * dy;
        }
        return a * r2;
    };
}

void set_eta_expression(Chart& chart, const std::string& text)
{
    const Expression e = Expression::parse(text);
    if (e.arity() > chart.dim_n) raise(ErrorKind::config, "weight expression uses x2 on a 1-dimensional chart");
    chart.eta_id = "expression";
    chart.eta = [e](const JetPoint& p) { return e.evaluate(p); };
}

std::vector<std::string> eta_catalog() { return {"expression", "linear", "radial_quadratic", "zero"}; }

void set_tensor_metric(Chart& chart)
{
    chart.tensor_id = "metric";
    chart.tensor = nullptr;
}

void set_tensor_diagonal(Chart& chart, const std::vector<double>& values)
{
    if (static_cast<int>(values.size()) != chart.dim_n)
        raise(ErrorKind::parameter, "diagonal tensor needs " + std::to_string(chart.dim_n) + " entries");
    const double t11 = values[0];
    const double t22 = values.size() > 1 ? values[1] : 0.0;
    chart.tensor_id = "diagonal";
    chart.tensor = [t11, t22](const JetPoint&) { return std::array<Jet, 3>{Jet(t11), Jet(0.0), Jet(t22)}; };
}

void set_tensor_expression(Chart& chart, const std::string& t11, const std::string& t12, const std::string& t22)
{
    const Expression e11 = Expression::parse(t11);
    const Expression e12 = Expression::parse(t12.empty() ? "0" : t12);
    const Expression e22 = Expression::parse(t22.empty() ? "0" : t22);
    chart.tensor_id = "expression";
    chart.tensor = [e11, e12, e22](const JetPoint& p) {
        return std::array<Jet, 3>{e11.evaluate(p), e12.evaluate(p), e22.evaluate(p)};
    };
}

std::vector<std::string> tensor_catalog() { return {"diagonal", "expression", "metric"}; }

Chart reparameterize(const Chart& chart, const Eigen::Matrix2d& S, const ChartPoint& offset, const Domain& domain)
{
    if (domain.dim() != chart.dim_n) raise(ErrorKind::parameter, "reparameterized domain has the wrong dimension");
    Chart c = chart;
    c.domain = domain;
    const int n = chart.dim_n;
    auto map = [S, offset, n](const JetPoint& p) {
        JetPoint q;
        for (int a = 0; a < 2; ++a) {
            Jet s(offset[a]);
            for (int b = 0; b < n; ++b) s += S(a, b) * p[static_cast<std::size_t>(b)];
            q[static_cast<std::size_t>(a)] = s;
        }
        return q;
    };
    c.immersion = [base = chart.immersion, map](const JetPoint& p) { return base(map(p)); };
    if (chart.eta) c.eta = [base = chart.eta, map](const JetPoint& p) { return base(map(p)); };
    if (chart.tensor) {
        c.tensor = [base = chart.tensor, map, S](const JetPoint& p) {
            const auto t = base(map(p));
            const Jet T[2][2] = {{t[0], t[1]}, {t[1], t[2]}};
            auto pulled = [&](int a, int b) {
                Jet s;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) s += (S(i, a) * S(j, b)) * T[i][j];
                return s;
            };
            return std::array<Jet, 3>{pulled(0, 0), pulled(0, 1), pulled(1, 1)};
        };
    }
    return c;
}

// ---------------------------------------------------------------- local geometry

double LocalGeometry::weight() const { return std::exp(-eta) * sqrt_det_g; }

LocalGeometry evaluate_local(const Chart& chart, const ChartPoint& xi, bool check_domain)
{
    const int n = chart.dim_n;
    const int m = chart.dim_m;
    if (check_domain && !chart.domain.contains(xi))
        raise(ErrorKind::domain, "point " + point_string(xi, n) + " outside " + chart.domain.describe());

    LocalGeometry lg;
    lg.n = n;
    lg.m = m;
    lg.xi = xi;

    const JetPoint p = seed(xi);
    const std::vector<Jet> x = chart.immersion(p);
    if (static_cast<int>(x.size()) != m) raise(ErrorKind::evaluation, "immersion returned the wrong dimension");

    lg.position.resize(m);
    lg.tangent.resize(m, n);
    for (auto& row : lg.second)
        for (auto& v : row) v = Eigen::VectorXd::Zero(m);
    for (int a = 0; a < m; ++a) {
        lg.position[a] = x[static_cast<std::size_t>(a)].v;
        for (int i = 0; i < n; ++i) {
            lg.tangent(a, i) = x[static_cast<std::size_t>(a)].d[i];
            for (int j = 0; j < n; ++j) lg.second[i][j][a] = x[static_cast<std::size_t>(a)].dd(i, j);
        }
    }
    if (!finite(lg.position) || !finite(lg.tangent))
        raise(ErrorKind::evaluation, "non-finite immersion at " + point_string(xi, n));

    lg.g = lg.tangent.transpose() * lg.tangent;
    const double det = lg.g.determinant();
    const double scale = std::pow(std::max(lg.g.diagonal().maxCoeff(), 1e-300), n);
    if (!(det > 1e-12 * scale))
        raise(ErrorKind::degeneracy, "induced metric is degenerate at " + point_string(xi, n));
    lg.g_inv = lg.g.inverse();
    lg.sqrt_det_g = std::sqrt(det);

    for (int k = 0; k < 2; ++k) lg.dg[k] = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                lg.dg[k](i, j) = lg.second[k][i].dot(lg.tangent.col(j)) + lg.tangent.col(i).dot(lg.second[k][j]);

    lg.grad_eta = Eigen::VectorXd::Zero(n);
    lg.hess_eta = Eigen::MatrixXd::Zero(n, n);
    if (chart.eta) {
        const Jet e = chart.eta(p);
        lg.eta = e.v;
        for (int i = 0; i < n; ++i) {
            lg.grad_eta[i] = e.d[i];
            for (int j = 0; j < n; ++j) lg.hess_eta(i, j) = e.dd(i, j);
        }
        if (!std::isfinite(lg.eta) || !finite(lg.grad_eta) || !finite(lg.hess_eta))
            raise(ErrorKind::evaluation, "non-finite weight at " + point_string(xi, n));
    }

    if (chart.tensor) {
        const auto t = chart.tensor(p);
        const Jet* comp[2][2] = {{&t[0], &t[1]}, {&t[1], &t[2]}};
        lg.T.resize(n, n);
        for (int k = 0; k < 2; ++k) lg.dT[k] = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                lg.T(i, j) = comp[i][j]->v;
                for (int k = 0; k < n; ++k) lg.dT[k](i, j) = comp[i][j]->d[k];
            }
        if (!finite(lg.T) || !finite(lg.dT[0]) || !finite(lg.dT[1]))
            raise(ErrorKind::evaluation, "non-finite tensor at " + point_string(xi, n));
    } else {
        lg.T = lg.g;
        lg.dT = lg.dg;
    }
    lg.K = lg.g_inv * lg.T * lg.g_inv;
    return lg;
}

Eigen::MatrixXd metric(const Chart& chart, const ChartPoint& xi) { return evaluate_local(chart, xi).g; }

SecondFundamentalForm second_fundamental_form(const LocalGeometry& lg)
{
    const int n = lg.n;
    const int m = lg.m;
    SecondFundamentalForm sff;
    sff.mean_curvature = Eigen::VectorXd::Zero(m);
    sff.normals.resize(m, m - n);
    if (m == n) return sff;

    // Orthonormal tangent basis, then Gram–Schmidt over the ambient basis in order.
    Eigen::MatrixXd basis(m, m);
    int count = 0;
    auto absorb = [&](Eigen::VectorXd v) {
        for (int pass = 0; pass < 2; ++pass)
            for (int c = 0; c < count; ++c) v -= basis.col(c).dot(v) * basis.col(c);
        const double norm = v.norm();
        if (norm <= 1e-8) return false;
        basis.col(count++) = v / norm;
        return true;
    };
    for (int i = 0; i < n; ++i) {
        const double scale = lg.tangent.col(i).norm();
        if (!absorb(lg.tangent.col(i) / scale))
            raise(ErrorKind::degeneracy, "rank-deficient tangent space at " + point_string(lg.xi, n));
    }
    for (int a = 0; a < m && count < m; ++a) absorb(Eigen::VectorXd::Unit(m, a));
    sff.normals = basis.rightCols(m - n);

    sff.alpha.assign(static_cast<std::size_t>(m - n), Eigen::MatrixXd::Zero(n, n));
    double alpha_sq = 0.0;
    for (int k = 0; k < m - n; ++k) {
        auto& a = sff.alpha[static_cast<std::size_t>(k)];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = lg.second[i][j].dot(sff.normals.col(k));
        const double trace = (lg.g_inv * a).trace();
        sff.mean_curvature += (trace / n) * sff.normals.col(k);
        const Eigen::MatrixXd shape = lg.g_inv * a;  // Weingarten operator, mixed indices
        const double hs = (shape * shape).trace();
        sff.weingarten_norms.push_back(std::sqrt(std::max(hs, 0.0)));
        alpha_sq += hs;
    }
    sff.alpha_norm = std::sqrt(std::max(alpha_sq, 0.0));
    return sff;
}

SecondFundamentalForm second_fundamental_form(const Chart& chart, const ChartPoint& xi)
{
    return second_fundamental_form(evaluate_local(chart, xi));
}

std::vector<Eigen::MatrixXd> christoffel(const LocalGeometry& lg)
{
    const int n = lg.n;
    std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += lg.g_inv(a, l) * (lg.dg[i](l, j) + lg.dg[j](l, i) - lg.dg[l](i, j));
                gamma[static_cast<std::size_t>(a)](i, j) = 0.5 * s;
            }
    return gamma;
}

Eigen::MatrixXd d_K(const LocalGeometry& lg, int k)
{
    const Eigen::MatrixXd dginv = -lg.g_inv * lg.dg[k] * lg.g_inv;
    return dginv * lg.T * lg.g_inv + lg.g_inv * lg.dT[k] * lg.g_inv + lg.g_inv * lg.T * dginv;
}

namespace {

// (1/√g) ∂_i(√g M^{ij} ∂_j h) − M^{ij} ∂_i η ∂_j h for a symmetric field M with derivatives dM.
double weighted_divergence(const LocalGeometry& lg, const Eigen::MatrixXd& M, const std::array<Eigen::MatrixXd, 2>& dM,
                           const Jet& h)
{
    const int n = lg.n;
    const Eigen::VectorXd dh = h.d.head(n);
    const Eigen::MatrixXd hess = h.dd.topLeftCorner(n, n);
    const Eigen::VectorXd flux = M * dh;
    double s = (M.cwiseProduct(hess)).sum() - lg.grad_eta.dot(flux);
    for (int i = 0; i < n; ++i) {
        const double dlog_sqrt_g = 0.5 * (lg.g_inv * lg.dg[i]).trace();
        s += dlog_sqrt_g * flux[i] + dM[i].row(i).dot(dh);
    }
    return s;
}

}  // namespace

double apply_L(const LocalGeometry& lg, const Jet& h)
{
    std::array<Eigen::MatrixXd, 2> dK;
    for (int k = 0; k < lg.n; ++k) dK[k] = d_K(lg, k);
    return weighted_divergence(lg, lg.K, dK, h);
}

double drift_laplacian(const LocalGeometry& lg, const Jet& h)
{
    std::array<Eigen::MatrixXd, 2> dginv;
    for (int k = 0; k < lg.n; ++k) dginv[k] = -lg.g_inv * lg.dg[k] * lg.g_inv;
    return weighted_divergence(lg, lg.g_inv, dginv, h);
}

Eigen::VectorXd trace_nabla_T(const LocalGeometry& lg)
{
    const int n = lg.n;
    const auto gamma = christoffel(lg);
    // W_b = g^{ij} (∇_i T)_{bj},  (∇_i T)_{bj} = ∂_i T_bj − Γ^c_ib T_cj − Γ^c_ij T_bc
    Eigen::VectorXd W = Eigen::VectorXd::Zero(n);
    for (int b = 0; b < n; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double cov = lg.dT[i](b, j);
                for (int c = 0; c < n; ++c)
                    cov -= gamma[static_cast<std::size_t>(c)](i, b) * lg.T(c, j) +
                           gamma[static_cast<std::size_t>(c)](i, j) * lg.T(b, c);
                W[b] += lg.g_inv(i, j) * cov;
            }
    return lg.g_inv * W;
}

Eigen::VectorXd trace_alpha_T(const LocalGeometry& lg, const SecondFundamentalForm& sff)
{
    Eigen::VectorXd v = Eigen::VectorXd::Zero(lg.m);
    for (std::size_t k = 0; k < sff.alpha.size(); ++k)
        v += lg.K.cwiseProduct(sff.alpha[k]).sum() * sff.normals.col(static_cast<Eigen::Index>(k));
    return v;
}

double tensor_norm(const LocalGeometry& lg)
{
    const Eigen::MatrixXd mixed = lg.g_inv * lg.T;
    return std::sqrt(std::max((mixed * mixed).trace(), 0.0));
}

double tensor_trace(const LocalGeometry& lg) { return (lg.g_inv * lg.T).trace(); }

double unit_ball_volume(int n) { return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

// ---------------------------------------------------------------- constants

std::vector<ChartPoint> sample_points(const Domain& domain, int resolution)
{
    std::vector<ChartPoint> pts;
    const int r = resolution;
    switch (domain.kind) {
    case Domain::Kind::interval:
        for (int i = 0; i <= r; ++i)
            pts.emplace_back(domain.lower[0] + (domain.upper[0] - domain.lower[0]) * i / r, 0.0);
        break;
    case Domain::Kind::rectangle:
        for (int j = 0; j <= r; ++j)
            for (int i = 0; i <= r; ++i)
                pts.emplace_back(domain.lower[0] + (domain.upper[0] - domain.lower[0]) * i / r,
                                 domain.lower[1] + (domain.upper[1] - domain.lower[1]) * j / r);
        break;
    case Domain::Kind::disk: {
        pts.push_back(domain.center);
        const int angles = 8 * r;
        for (int j = 1; j <= r; ++j) {
            const double rho = domain.radius * j / r;
            for (int t = 0; t < angles; ++t) {
                const double phi = 2.0 * std::numbers::pi * t / angles;
                pts.push_back(domain.center + rho * ChartPoint(std::cos(phi), std::sin(phi)));
            }
        }
        break;
    }
    }
    return pts;
}

namespace {

// Composite Gauss quadrature of f over the exact domain.
template <class F>
double integrate_domain(const Domain& domain, int panels, F&& f)
{
    const GaussRule rule = gauss_legendre(4);
    auto nodes_on = [&](double a, double b, auto&& visit) {
        const double w = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
            for (std::size_t q = 0; q < rule.nodes.size(); ++q)
                visit(a + w * (p + 0.5 * (rule.nodes[q] + 1.0)), 0.5 * w * rule.weights[q]);
    };
    double sum = 0.0;
    switch (domain.kind) {
    case Domain::Kind::interval:
        nodes_on(domain.lower[0], domain.upper[0], [&](double x, double w) { sum += w * f(ChartPoint(x, 0.0)); });
        break;
    case Domain::Kind::rectangle:
        nodes_on(domain.lower[1], domain.upper[1], [&](double y, double wy) {
            nodes_on(domain.lower[0], domain.upper[0], [&](double x, double wx) { sum += wx * wy * f(ChartPoint(x, y)); });
        });
        break;
    case Domain::Kind::disk: {
        const int angles = 16 * panels;
        nodes_on(0.0, domain.radius, [&](double rho, double wr) {
            for (int t = 0; t < angles; ++t) {
                const double phi = 2.0 * std::numbers::pi * t / angles;
                sum += wr * rho * (2.0 * std::numbers::pi / angles) *
                       f(domain.center + rho * ChartPoint(std::cos(phi), std::sin(phi)));
            }
        });
        break;
    }
    }
    return sum;
}

}  // namespace

GeometricConstants compute_constants(const Chart& chart, int resolution)
{
    if (resolution < 8) raise(ErrorKind::parameter, "constants need resolution >= 8");
    GeometricConstants c;
    c.dim_n = chart.dim_n;
    c.dim_m = chart.dim_m;
    c.sample_resolution = resolution;
    c.tensor_is_metric = chart.tensor_is_metric();
    c.trT_inf = std::numeric_limits<double>::infinity();
    c.trT_sup = -std::numeric_limits<double>::infinity();
    c.eta_bar_0 = -std::numeric_limits<double>::infinity();

    const auto pts = sample_points(chart.domain, resolution);
    c.sample_count = pts.size();
    for (const auto& xi : pts) {
        const LocalGeometry lg = evaluate_local(chart, xi, false);
        Eigen::LLT<Eigen::MatrixXd> llt(lg.T);
        if (llt.info() != Eigen::Success)
            raise(ErrorKind::tensor, "T is not positive definite at sample " + point_string(xi, chart.dim_n));

        c.eta_0 = std::max(c.eta_0, std::sqrt(std::max(lg.grad_eta.dot(lg.g_inv * lg.grad_eta), 0.0)));
        if (chart.eta) {
            Jet e;
            e.v = lg.eta;
            e.d.head(chart.dim_n) = lg.grad_eta;
            e.dd.topLeftCorner(chart.dim_n, chart.dim_n) = lg.hess_eta;
            c.eta_bar_0 = std::max(c.eta_bar_0, drift_laplacian(lg, e));
        } else {
            c.eta_bar_0 = std::max(c.eta_bar_0, 0.0);
        }

        const SecondFundamentalForm sff = second_fundamental_form(lg);
        c.H_0 = std::max(c.H_0, sff.mean_curvature.norm());
        for (double a : sff.weingarten_norms) c.A_0 = std::max(c.A_0, a);

        c.T_star = std::max(c.T_star, tensor_norm(lg));
        if (!chart.tensor_is_metric()) {  // ∇g = 0 identically
            const Eigen::VectorXd V = trace_nabla_T(lg);
            c.T_0 = std::max(c.T_0, std::sqrt(std::max(V.dot(lg.g * V), 0.0)));
        }
        const double tr = tensor_trace(lg);
        c.trT_inf = std::min(c.trT_inf, tr);
        c.trT_sup = std::max(c.trT_sup, tr);
    }

    const int panels = std::max(resolution, 8);
    c.vol_omega = integrate_domain(chart.domain, panels,
                                   [&](const ChartPoint& xi) { return evaluate_local(chart, xi, false).sqrt_det_g; });
    c.weighted_vol = integrate_domain(chart.domain, panels,
                                      [&](const ChartPoint& xi) { return evaluate_local(chart, xi, false).weight(); });
    return c;
}

}  // namespace speclab
