#pragma once

#include "speclab/assembly.hpp"
#include "speclab/eigensolve.hpp"
#include "speclab/geometry.hpp"
#include "speclab/mesh.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace speclab {

enum class SpectrumSource { computed, closed_form, synthetic };

const char* to_string(SpectrumSource source);

/// Ascending positive eigenvalue sequence λ₁ ≤ … ≤ λ_K of an n-dimensional problem.
class Spectrum {
public:
    Spectrum(std::vector<double> values, int dim, SpectrumSource source);

    int dim() const noexcept { return dim_; }
    SpectrumSource source() const noexcept { return source_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    /// 1-based access, λ(1) = λ₁.
    double operator()(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }
    /// Relative verdict slack: 1e-6 for computed spectra, 1e-9 otherwise.
    double slack() const noexcept;

private:
    std::vector<double> values_;
    int dim_;
    SpectrumSource source_;
};

/// First K Dirichlet eigenvalues of the interval (0, L): k²π²/L².
Spectrum closed_form_interval(int count, double length = 1.0);
/// First K Dirichlet eigenvalues of [0,a]×[0,b], π²(p²/a² + q²/b²) sorted.
Spectrum closed_form_rectangle(int count, double a = 1.0, double b = 1.0);

/// One evaluated inequality lhs ≤ rhs.
struct BoundReport {
    std::string name;
    int k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool holds = true;
    double slack = 0.0;
    bool applicable = true;
    std::string note;
    std::string inputs;  // digest of the constants that entered rhs
};

BoundReport make_report(std::string name, int k, double lhs, double rhs, double slack);
std::string bounds_csv_header();
/// `name,k,lhs,rhs,ratio,holds,slack`, 17 significant digits.
std::string to_csv_row(const BoundReport& report);

/// (n²H₀² + η₀² + 2η̄₀)/4.
double upsilon_offset(const GeometricConstants& consts);
/// υᵢ = λᵢ + upsilon_offset; throws shift-positivity error if υ₁ ≤ 0.
Spectrum upsilon_shift(const Spectrum& spectrum, const GeometricConstants& consts);

/// Σ_{i≤k}(η_{k+1}−ηᵢ)² ≤ (4c/n) Σ_{i≤k}(η_{k+1}−ηᵢ)ηᵢ.
struct YangForm {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
};
YangForm yang_form(const std::vector<double>& values, int n, int k, double c = 1.0, double slack = 1e-9);
/// The c-hypothesis at every k' ≤ k.
bool yang_hypothesis_through(const std::vector<double>& values, int n, int k, double c = 1.0, double slack = 1e-9);

// Main theorems.
BoundReport check_thm_drift(const Spectrum& spectrum, const GeometricConstants& consts, int k);
/// Tensor inequality with tr(T) replaced by its infimum over the domain.
BoundReport check_thm_tensor(const Spectrum& spectrum, const GeometricConstants& consts, int k);
/// Integrated (pre-estimate) form with ∫uᵢ² tr(T) dm and the pointwise
/// curvature, tensor-divergence and weight terms evaluated by quadrature.
BoundReport check_thm_tensor_integrated(const SpectralResult& result, const Chart& chart, const Mesh& mesh,
                                        const DofMap& dofs, int k);

// Corollaries on a shifted spectrum.
std::array<BoundReport, 3> check_corollary_trio(const Spectrum& shifted, int k);
BoundReport check_polya_type(const Spectrum& shifted, double vol, int k);
BoundReport check_cheng_yang_type(const Spectrum& shifted, int k);

// Recursion lemmas with parameter c.
struct RecursionState {
    int k = 0;
    double mean = 0.0;         // Λ_k
    double mean_square = 0.0;  // T_k
    double F = 0.0;            // (1 + 2c/n)Λ_k² − T_k
};
RecursionState recursion_state(const std::vector<double>& values, int n, int k, double c);
/// C(n,k,c) = 1 − (c/3n)(k/(k+1))^{4c/n}(1+2c/n)(1+4c/n)/(k+1)³.
double recursion_constant(double n, int k, double c);

struct RecursionOutcome {
    bool applicable = false;
    RecursionState at_k;
    RecursionState at_next;
    double C = 0.0;
    BoundReport report;
};
RecursionOutcome recursion_lemma(const Spectrum& spectrum, double c, int k);
/// η_{k+1} ≤ (1 + 4c/n) k^{2c/n} η₁, applied when the c-hypothesis holds for all k' ≤ k.
BoundReport lemma_c_bound(const Spectrum& spectrum, double c, int k);

/// Rayleigh–Ritz test-function inequality for a scalar field h, evaluated on
/// discrete eigenfunctions by element quadrature.
BoundReport check_proposition_testfunction(const SpectralResult& result, const Chart& chart, const Mesh& mesh,
                                           const DofMap& dofs, const ScalarField& h, int k,
                                           const std::string& label = "h");

/// Classical comparators (PPW, Hile–Protter, Yang 1/2, Yang gap, Li–Yau,
/// Chen–Cheng, Xia–Xu). With constants supplied, the Euclidean-domain ones
/// are marked not applicable unless the chart is flat with η constant.
std::vector<BoundReport> intro_comparators(const Spectrum& spectrum, int k, const GeometricConstants* consts = nullptr,
                                           std::optional<double> vol = std::nullopt);

/// Weyl target 4π²/(ωₙ vol)^{2/n}.
double weyl_constant(int n, double vol);

struct WeylFit {
    int k_lo = 0;
    int k_hi = 0;
    double exponent = 0.0;        // slope of log λ_k against log k
    double constant = 0.0;        // exp(intercept) of the same fit
    double level_constant = 0.0;  // geometric mean of λ_k / k^{2/n}
    double target = 0.0;          // W
    double expected_exponent = 0.0;
    double mean_ratio = 0.0;         // ((1/K)Σλᵢ)/K^{2/n}
    double mean_target = 0.0;        // n/(n+2)·W
    double square_mean_ratio = 0.0;  // ((1/K)Σλᵢ²)/K^{4/n}
    double square_mean_target = 0.0; // n/(n+4)·W²
};
WeylFit weyl_fit(const Spectrum& spectrum, double vol, int k_lo, int k_hi);

}  // namespace speclab
