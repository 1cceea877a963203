#pragma once

#include "speclab/expression.hpp"
#include "speclab/jet.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace speclab {

using ChartPoint = Eigen::Vector2d;  // second component unused for n = 1

/// Parameter domain of a chart: an interval, an axis-aligned rectangle or a disk.
struct Domain {
    enum class Kind { interval, rectangle, disk };

    Kind kind = Kind::rectangle;
    ChartPoint lower = ChartPoint::Zero();
    ChartPoint upper = ChartPoint::Ones();
    ChartPoint center = ChartPoint::Zero();
    double radius = 1.0;

    static Domain interval(double a, double b);
    static Domain rectangle(const ChartPoint& lower, const ChartPoint& upper);
    static Domain disk(const ChartPoint& center, double radius);

    int dim() const { return kind == Kind::interval ? 1 : 2; }
    bool contains(const ChartPoint& p, double tol = 1e-12) const;
    bool on_boundary(const ChartPoint& p, double tol = 1e-12) const;
    /// Lebesgue measure in chart coordinates.
    double area() const;
    /// Largest side length (or diameter for disks).
    double extent() const;
    std::string describe() const;
};

using ImmersionFn = std::function<std::vector<Jet>(const JetPoint&)>;
using ScalarField = std::function<Jet(const JetPoint&)>;
/// Symmetric (0,2) tensor in chart coordinates, packed as (T11, T12, T22).
using TensorFn = std::function<std::array<Jet, 3>(const JetPoint&)>;

/// A parameterized isometric immersion x: Ω → R^m carrying a weight η and a
/// symmetric positive definite tensor field T. The induced metric comes from
/// the immersion; `tensor` empty means T is the metric itself.
struct Chart {
    std::string id;
    std::vector<double> params;
    int dim_n = 2;
    int dim_m = 2;
    Domain domain;
    ImmersionFn immersion;

    std::string eta_id = "zero";
    ScalarField eta;

    std::string tensor_id = "metric";
    TensorFn tensor;

    bool tensor_is_metric() const { return !tensor; }
};

// Chart catalog.
Chart flat_interval(double a = 0.0, double b = 1.0);
Chart flat_rectangle(const ChartPoint& lower = ChartPoint::Zero(), const ChartPoint& upper = ChartPoint::Ones());
/// Inverse stereographic projection onto the sphere of radius r; the chart
/// disk of radius 1 maps onto the upper hemisphere.
Chart stereographic_sphere(double r, const Domain& domain);
/// Arclength-parameterized cylinder of radius r over (u, v).
Chart cylinder(double r, const Domain& domain);
/// cos θ · catenoid + sin θ · helicoid; every member has metric cosh²(v)·I.
Chart associate_family(double theta, const Domain& domain);

/// Builds a catalog chart by identifier. Parameters: sphere/cylinder radius,
/// associate-family angle; flat charts take none.
Chart make_chart(const std::string& id, const std::vector<double>& params, const Domain& domain);
std::vector<std::string> chart_catalog();

// Weight catalog.
void set_eta_zero(Chart& chart);
/// η(ξ) = Σ a_i ξ_i.
void set_eta_linear(Chart& chart, const std::vector<double>& coefficients);
/// η(ξ) = a·|ξ − c|².
void set_eta_radial_quadratic(Chart& chart, double a, const ChartPoint& center = ChartPoint::Zero());
void set_eta_expression(Chart& chart, const std::string& text);
std::vector<std::string> eta_catalog();

// Tensor catalog.
void set_tensor_metric(Chart& chart);
/// Constant diagonal chart components T_ii = values[i].
void set_tensor_diagonal(Chart& chart, const std::vector<double>& values);
void set_tensor_expression(Chart& chart, const std::string& t11, const std::string& t12, const std::string& t22);
std::vector<std::string> tensor_catalog();

/// Chart ξ' ↦ chart(S ξ' + offset) on `domain`, with T pulled back as SᵀTS.
Chart reparameterize(const Chart& chart, const Eigen::Matrix2d& S, const ChartPoint& offset, const Domain& domain);

/// Every pointwise quantity the assembly and the bounds need, evaluated once.
struct LocalGeometry {
    int n = 0;
    int m = 0;
    ChartPoint xi = ChartPoint::Zero();

    Eigen::VectorXd position;                       // x(ξ), m
    Eigen::MatrixXd tangent;                        // ∂_i x as columns, m×n
    std::array<std::array<Eigen::VectorXd, 2>, 2> second;  // ∂_i∂_j x

    Eigen::MatrixXd g;
    Eigen::MatrixXd g_inv;
    double sqrt_det_g = 0.0;
    std::array<Eigen::MatrixXd, 2> dg;  // ∂_k g_ij

    double eta = 0.0;
    Eigen::VectorXd grad_eta;  // ∂_i η
    Eigen::MatrixXd hess_eta;  // ∂_i∂_j η

    Eigen::MatrixXd T;                  // T_ab
    std::array<Eigen::MatrixXd, 2> dT;  // ∂_k T_ab
    Eigen::MatrixXd K;                  // g⁻¹ T g⁻¹, so T(∇u,∇v) = ∂u·K·∂v

    double weight() const;  // e^{-η} √det g
};

/// Evaluates the chart at ξ. Throws domain error outside the domain (when
/// `check_domain`), degeneracy error if the tangent space collapses and
/// evaluation error on non-finite values.
LocalGeometry evaluate_local(const Chart& chart, const ChartPoint& xi, bool check_domain = true);

/// Induced metric g_ij = ⟨∂_i x, ∂_j x⟩.
Eigen::MatrixXd metric(const Chart& chart, const ChartPoint& xi);

struct SecondFundamentalForm {
    Eigen::MatrixXd normals;             // m×(m−n), orthonormal, ⟂ tangent space
    std::vector<Eigen::MatrixXd> alpha;  // alpha[k](i,j) = ⟨∂_i∂_j x, e_k⟩
    Eigen::VectorXd mean_curvature;      // H = (1/n) g^{ij} α_ij ∈ R^m
    std::vector<double> weingarten_norms;  // Hilbert–Schmidt |A_{e_k}|
    double alpha_norm = 0.0;                // frame-independent |α|
};

SecondFundamentalForm second_fundamental_form(const Chart& chart, const ChartPoint& xi);
SecondFundamentalForm second_fundamental_form(const LocalGeometry& lg);

// Pointwise differential quantities on a LocalGeometry.

/// Christoffel symbols Γ^a_ij, indexed gamma[a](i, j).
std::vector<Eigen::MatrixXd> christoffel(const LocalGeometry& lg);
/// ∂_k K^{ij} for K = g⁻¹ T g⁻¹.
Eigen::MatrixXd d_K(const LocalGeometry& lg, int k);
/// 𝓛h = div(T∇h) − ⟨∇η, T∇h⟩ in chart form.
double apply_L(const LocalGeometry& lg, const Jet& h);
/// Drifting Laplacian Δh − ⟨∇η, ∇h⟩ (the operator with T = I).
double drift_laplacian(const LocalGeometry& lg, const Jet& h);
/// Components V^a of tr(∇T) = Σ_i (∇_{e_i}T)(e_i).
Eigen::VectorXd trace_nabla_T(const LocalGeometry& lg);
/// Normal vector tr(α∘T) = Σ_i α(T e_i, e_i) in R^m.
Eigen::VectorXd trace_alpha_T(const LocalGeometry& lg, const SecondFundamentalForm& sff);
/// Hilbert–Schmidt norm |T| with indices raised by g.
double tensor_norm(const LocalGeometry& lg);
double tensor_trace(const LocalGeometry& lg);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

struct GeometricConstants {
    int dim_n = 0;
    int dim_m = 0;
    double eta_0 = 0.0;      // sup |∇η|
    double eta_bar_0 = 0.0;  // sup (Δη − |∇η|²)
    double H_0 = 0.0;        // sup ‖H‖
    double A_0 = 0.0;        // max_k sup |A_{e_k}|
    double T_star = 0.0;     // sup |T|
    double T_0 = 0.0;        // sup |tr(∇T)|
    double trT_inf = 0.0;
    double trT_sup = 0.0;
    double vol_omega = 0.0;     // ∫ dM
    double weighted_vol = 0.0;  // ∫ e^{-η} dM
    int sample_resolution = 0;
    std::size_t sample_count = 0;
    bool tensor_is_metric = true;
};

/// Grid points used for suprema; nested under resolution doubling.
std::vector<ChartPoint> sample_points(const Domain& domain, int resolution);

/// Suprema over the sample grid (boundary included) and volumes by composite
/// Gauss quadrature over the exact domain. resolution ≥ 8.
GeometricConstants compute_constants(const Chart& chart, int resolution);

}  // namespace speclab
