#include "sequences.hpp"

#include "speclab/assembly.hpp"
#include "speclab/bounds.hpp"
#include "speclab/eigensolve.hpp"
#include "speclab/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace speclab;
using std::numbers::pi;

namespace {

constexpr double pi2 = pi * pi;
constexpr double pi4 = pi2 * pi2;

GeometricConstants flat(int n)
{
    GeometricConstants c;
    c.dim_n = n;
    c.dim_m = n;
    c.T_star = std::sqrt(static_cast<double>(n));
    c.trT_inf = c.trT_sup = n;
    c.vol_omega = c.weighted_vol = 1.0;
    return c;
}

Spectrum synthetic(std::vector<double> v, int n) { return Spectrum(std::move(v), n, SpectrumSource::synthetic); }

struct SquareRun {
    Chart chart = flat_rectangle();
    Mesh mesh;
    DiscreteProblem problem;
    SpectralResult result;
    SquareRun(int res, int k)
    {
        mesh = build_structured(chart.domain, res);
        problem = assemble(chart, mesh);
        result = solve_sparse(problem.stiffness, problem.mass, k);
    }
};

}  // namespace

TEST_CASE("spectrum validation")
{
    CHECK_THROWS_AS(synthetic({1.0, 0.5}, 2), Error);
    CHECK_THROWS_AS(synthetic({0.0, 1.0}, 2), Error);
    CHECK_THROWS_AS(synthetic({1.0}, 0), Error);
    const Spectrum s = closed_form_rectangle(4);
    CHECK(s(1) == doctest::Approx(2 * pi2));
    CHECK(s(2) == doctest::Approx(5 * pi2));
    CHECK(s(3) == doctest::Approx(5 * pi2));
    CHECK(s(4) == doctest::Approx(8 * pi2));
    CHECK(closed_form_interval(3)(3) == doctest::Approx(9 * pi2));
    CHECK(s.slack() == 1e-9);
}

TEST_CASE("upsilon shift")
{
    const Spectrum lam = closed_form_interval(5);
    CHECK(upsilon_shift(lam, flat(1)).values() == lam.values());

    GeometricConstants drift = flat(1);
    drift.eta_0 = 2.0;
    drift.eta_bar_0 = -4.0;
    CHECK(upsilon_offset(drift) == -1.0);
    std::vector<double> shifted_drift;
    for (int k = 1; k <= 5; ++k) shifted_drift.push_back(1.0 + k * k * pi2);
    const Spectrum up = upsilon_shift(synthetic(shifted_drift, 1), drift);
    for (int k = 1; k <= 5; ++k) CHECK(up(k) == doctest::Approx(k * k * pi2).epsilon(1e-14));

    GeometricConstants hemi = flat(2);
    hemi.dim_m = 3;
    hemi.H_0 = 1.0;
    CHECK(upsilon_offset(hemi) == 1.0);

    GeometricConstants negative = flat(1);
    negative.eta_bar_0 = -10.0;
    try {
        upsilon_shift(synthetic({1.0, 2.0}, 1), negative);
        FAIL("nonpositive shift accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::shift_positivity);
    }
}

TEST_CASE("drift theorem on the square spectrum")
{
    const Spectrum s = closed_form_rectangle(20);
    const BoundReport r = check_thm_drift(s, flat(2), 3);
    CHECK(r.lhs == doctest::Approx(54 * pi4));
    CHECK(r.rhs == doctest::Approx(84 * pi4));
    CHECK(r.ratio == doctest::Approx(54.0 / 84.0));
    CHECK(r.holds);
    CHECK(check_thm_drift(synthetic({3.0, 3.0}, 2), flat(2), 1).lhs == 0.0);
    CHECK_THROWS_AS(check_thm_drift(s, flat(2), 20), Error);
    CHECK_THROWS_AS(check_thm_drift(s, flat(2), 0), Error);
}

TEST_CASE("drift theorem with the 1D weight matches Yang's inequality on the shifted sequence")
{
    GeometricConstants drift = flat(1);
    drift.eta_0 = 2.0;
    drift.eta_bar_0 = -4.0;
    std::vector<double> v;
    for (int k = 1; k <= 6; ++k) v.push_back(1.0 + k * k * pi2);
    const Spectrum lam = synthetic(v, 1);
    const BoundReport a = check_thm_drift(lam, drift, 2);
    const auto yang = intro_comparators(closed_form_interval(6), 2);
    const auto y1 = std::find_if(yang.begin(), yang.end(), [](const BoundReport& r) { return r.name == "yang1"; });
    REQUIRE(y1 != yang.end());
    CHECK(a.holds == y1->holds);
    CHECK(a.lhs == doctest::Approx(y1->lhs).epsilon(1e-12));
    CHECK(a.rhs == doctest::Approx(y1->rhs).epsilon(1e-12));
}

TEST_CASE("shift equivalence is an identity")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        GeometricConstants c = flat(1 + trial % 3);
        c.H_0 = uni(rng);
        c.eta_0 = 2 * uni(rng);
        c.eta_bar_0 = uni(rng) - 0.2;
        const Spectrum lam = synthetic(testing::random_sequence(rng, 8), c.dim_n);
        const Spectrum up = upsilon_shift(lam, c);
        for (int k = 1; k < 8; ++k) {
            const BoundReport r = check_thm_drift(lam, c, k);
            const YangForm y = yang_form(up.values(), c.dim_n, k);
            CHECK(r.lhs == doctest::Approx(y.lhs).epsilon(1e-12));
            CHECK(r.rhs == doctest::Approx(y.rhs).epsilon(1e-12));
            CHECK(r.holds == y.holds);
        }
    }
}

TEST_CASE("tensor theorem, infimum-trace form")
{
    const Spectrum s = closed_form_rectangle(12);
    for (int k = 1; k <= 10; ++k) {
        const BoundReport r = check_thm_tensor(s, flat(2), k);
        double gap2 = 0.0, yang = 0.0;
        for (int i = 1; i <= k; ++i) {
            gap2 += (s(k + 1) - s(i)) * (s(k + 1) - s(i));
            yang += (s(k + 1) - s(i)) * 4.0 * s(i);
        }
        CHECK(r.lhs == doctest::Approx(2.0 * gap2));
        CHECK(r.rhs == doctest::Approx(yang));
        CHECK(r.holds);
    }
    CHECK(check_thm_tensor(synthetic({2.0, 2.0}, 2), flat(2), 1).lhs == 0.0);
}

TEST_CASE("tensor theorem holds for contracted tensors and fails for T = 3I")
{
    // T = cI on the square: lhs = 2cΣΛ², rhs = Σ Λ·4λ with λ = cλ⁰, i.e. c·54 ≤ 84 at k = 3
    for (double c : {0.5, 1.0, 3.0}) {
        const Spectrum base = closed_form_rectangle(4);
        std::vector<double> v;
        for (double x : base.values()) v.push_back(c * x);
        GeometricConstants k = flat(2);
        k.tensor_is_metric = false;
        k.T_star = c * std::sqrt(2.0);
        k.trT_inf = 2 * c;
        const BoundReport r = check_thm_tensor(synthetic(v, 2), k, 3);
        CHECK(r.ratio == doctest::Approx(c * 54.0 / 84.0));
        CHECK(r.holds == (c <= 1.0));
    }
}

TEST_CASE("tensor theorem integrated form reduces to Yang on the flat square")
{
    const SquareRun run(24, 6);
    for (int k = 1; k <= 5; ++k) {
        const BoundReport r = check_thm_tensor_integrated(run.result, run.chart, run.mesh, run.problem.dofs, k);
        double gap2 = 0.0, yang = 0.0;
        for (int i = 0; i < k; ++i) {
            const double gap = run.result.eigenvalues[static_cast<std::size_t>(k)] - run.result.eigenvalues[static_cast<std::size_t>(i)];
            gap2 += gap * gap;
            yang += gap * 4.0 * run.result.eigenvalues[static_cast<std::size_t>(i)];
        }
        // ∫u² tr T = 2∫u² = 2, no curvature or drift terms
        CHECK(r.lhs == doctest::Approx(2.0 * gap2).epsilon(1e-10));
        CHECK(r.rhs == doctest::Approx(yang).epsilon(1e-10));
        CHECK(r.holds);
    }
}

TEST_CASE("corollary trio")
{
    const auto a = check_corollary_trio(closed_form_interval(4), 1);
    CHECK(a[0].lhs == doctest::Approx(4 * pi2));
    CHECK(a[0].rhs == doctest::Approx(5 * pi2));
    for (const auto& r : a) CHECK(r.holds);

    const auto b = check_corollary_trio(synthetic({2.0, 2.0, 2.0, 2.0}, 2), 3);
    CHECK(b[2].lhs == 0.0);
    for (const auto& r : b) CHECK(r.holds);

    const auto c = check_corollary_trio(closed_form_rectangle(8), 5);
    for (const auto& r : c) CHECK(r.holds);

    // far above the Yang range: the discriminant goes negative
    const auto d = check_corollary_trio(synthetic({1.0, 1.0, 50.0, 51.0}, 2), 3);
    CHECK_FALSE(d[1].holds);
    CHECK(d[1].note.find("hypothesis violated") != std::string::npos);

    CHECK_THROWS_AS(check_corollary_trio(closed_form_interval(3), 3), Error);
}

TEST_CASE("Polya-type and Cheng-Yang-type bounds")
{
    const BoundReport sq = check_polya_type(closed_form_rectangle(2), 1.0, 1);
    CHECK(sq.lhs == doctest::Approx(2.0 / std::sqrt(24.0) * 4.0 * pi).epsilon(1e-14));
    CHECK(sq.lhs == doctest::Approx(5.1302).epsilon(1e-4));
    CHECK(sq.holds);
    const BoundReport iv = check_polya_type(closed_form_interval(2), 1.0, 1);
    CHECK(iv.lhs == doctest::Approx(pi2 / std::sqrt(15.0)).epsilon(1e-14));
    CHECK(iv.holds);
    CHECK(check_polya_type(closed_form_rectangle(100), 1.0, 100).holds);
    CHECK_THROWS_AS(check_polya_type(closed_form_rectangle(2), 0.0, 1), Error);

    const BoundReport cy = check_cheng_yang_type(closed_form_interval(2), 1);
    CHECK(cy.lhs == doctest::Approx(4 * pi2));
    CHECK(cy.rhs == doctest::Approx(5 * pi2));
    CHECK(check_cheng_yang_type(synthetic({1.0, 1.0}, 2), 1).ratio == doctest::Approx(1.0 / 3.0));
    const BoundReport big = check_cheng_yang_type(closed_form_rectangle(25), 24);
    // λ₂₅ = 40π² (p² + q² = 40 is the 25th value counted with multiplicity)
    CHECK(big.lhs == doctest::Approx(40 * pi2));
    CHECK(big.holds);
    CHECK(big.rhs == doctest::Approx(144 * pi2));
}

TEST_CASE("appendix constant")
{
    CHECK(recursion_constant(2, 1, 1) == 0.96875);
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 50; ++k)
            for (double c : {1.0, 2.0}) {
                const double C = recursion_constant(n, k, c);
                CHECK(C > 0.0);
                CHECK(C < 1.0);
            }
}

TEST_CASE("recursion lemma")
{
    const Spectrum ones = synthetic(std::vector<double>(5, 1.0), 2);
    const RecursionOutcome o = recursion_lemma(ones, 1.0, 2);
    CHECK(o.applicable);
    CHECK(o.at_k.F == doctest::Approx(1.0));
    CHECK(o.report.holds);

    const Spectrum sq = closed_form_rectangle(21);
    for (int k = 1; k <= 20; ++k) {
        const RecursionOutcome r = recursion_lemma(sq, 1.0, k);
        CHECK(r.applicable);
        CHECK(r.at_k.F > 0.0);
        CHECK(r.report.holds);
    }

    const RecursionOutcome bad = recursion_lemma(synthetic({1.0, 100.0}, 2), 1.0, 1);
    CHECK_FALSE(bad.applicable);
    CHECK_FALSE(bad.report.applicable);
}

TEST_CASE("c-lemma bound")
{
    const BoundReport two = lemma_c_bound(synthetic({1.0, 2.0}, 2), 2.0, 1);
    CHECK(two.applicable);
    CHECK(two.rhs == doctest::Approx(5.0));
    CHECK(two.holds);
    const BoundReport iv = lemma_c_bound(closed_form_interval(4), 1.0, 3);
    CHECK(iv.lhs == doctest::Approx(16 * pi2));
    CHECK(iv.rhs == doctest::Approx(45 * pi2));
    CHECK(iv.holds);
    CHECK_FALSE(lemma_c_bound(synthetic({1.0, 100.0}, 2), 1.0, 1).applicable);
}

TEST_CASE("c-lemma at c = 1 reproduces the Cheng-Yang-type bound")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const Spectrum s = synthetic(testing::yang_sequence(rng, 10, 2.0), 2);
        for (int k = 1; k < 10; ++k) {
            const BoundReport a = lemma_c_bound(s, 1.0, k);
            const BoundReport b = check_cheng_yang_type(s, k);
            REQUIRE(a.applicable);
            CHECK(a.lhs == b.lhs);
            CHECK(a.rhs == b.rhs);
            CHECK(a.holds == b.holds);
        }
    }
}

TEST_CASE("appendix consistency on Yang-form sequences")
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        const double n = 1 + t % 3;
        const double c = t % 2 ? 1.0 : 2.0;
        const auto v = testing::yang_sequence(rng, 12, n, c);
        const Spectrum s = synthetic(v, static_cast<int>(n));
        for (int k = 1; k < 12; ++k) {
            REQUIRE(yang_hypothesis_through(v, static_cast<int>(n), k, c));
            const RecursionOutcome r = recursion_lemma(s, c, k);
            CHECK(r.applicable);
            CHECK(r.at_k.F > 0.0);
            CHECK(r.C > 0.0);
            CHECK(r.C < 1.0);
            CHECK(r.report.holds);
            CHECK(lemma_c_bound(s, c, k).holds);
        }
    }
}

TEST_CASE("Yang-form sequences satisfy the corollary trio")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        const double n = 1 + t % 3;
        const Spectrum s = synthetic(testing::yang_sequence(rng, 10, n), static_cast<int>(n));
        for (int k = 1; k < 10; ++k)
            for (const auto& r : check_corollary_trio(s, k)) CHECK(r.holds);
    }
}

TEST_CASE("degenerate gaps never fail")
{
    const Spectrum s = synthetic(std::vector<double>(6, 4.0), 2);
    GeometricConstants c = flat(2);
    for (int k = 1; k < 6; ++k) {
        CHECK(check_thm_drift(s, c, k).holds);
        CHECK(check_thm_tensor(s, c, k).holds);
        for (const auto& r : check_corollary_trio(s, k)) CHECK(r.holds);
        CHECK(check_cheng_yang_type(s, k).holds);
        CHECK(recursion_lemma(s, 1.0, k).report.holds);
        CHECK(lemma_c_bound(s, 2.0, k).holds);
        for (const auto& r : intro_comparators(s, k)) {
            if (!r.applicable) {
                CHECK((r.name == "hile_protter" || r.name == "li_yau"));
                continue;
            }
            CHECK(r.holds);
            if (r.name == "ppw" || r.name == "yang1" || r.name == "yang_gap" || r.name == "xia_xu" || r.name == "chen_cheng_yang1")
                CHECK(r.lhs == 0.0);
        }
    }
}

TEST_CASE("introduction comparators")
{
    const auto sq = intro_comparators(closed_form_rectangle(5), 3, nullptr, 1.0);
    for (const auto& r : sq) {
        CHECK(r.applicable);
        CHECK(r.holds);
        if (r.name == "yang1") CHECK(r.ratio == doctest::Approx(54.0 / 84.0));
    }
    const auto iv = intro_comparators(closed_form_interval(3), 1);
    const auto ppw = std::find_if(iv.begin(), iv.end(), [](const BoundReport& r) { return r.name == "ppw"; });
    CHECK(ppw->lhs == doctest::Approx(3 * pi2));
    CHECK(ppw->rhs == doctest::Approx(4 * pi2));

    GeometricConstants hemi = flat(2);
    hemi.dim_m = 3;
    hemi.H_0 = 1.0;
    hemi.A_0 = std::sqrt(2.0);
    hemi.vol_omega = 2 * pi;
    std::vector<double> v{2, 6, 6, 12, 12, 12, 20};
    for (const auto& r : intro_comparators(synthetic(v, 2), 4, &hemi)) {
        const bool euclidean = r.name == "ppw" || r.name == "hile_protter" || r.name == "yang1" || r.name == "yang2" ||
                               r.name == "yang_gap" || r.name == "li_yau";
        CHECK(r.applicable == !euclidean);
        if (r.applicable) CHECK(r.holds);
    }
}

TEST_CASE("proposition test-function inequality")
{
    const SquareRun run(20, 5);
    const ScalarField one = [](const JetPoint&) { return Jet(1.0); };
    const BoundReport c = check_proposition_testfunction(run.result, run.chart, run.mesh, run.problem.dofs, one, 3, "one");
    CHECK(c.lhs == 0.0);
    CHECK(c.holds);
    CHECK_FALSE(c.note.empty());

    const ScalarField x = [](const JetPoint& p) { return p[0]; };
    for (int k = 1; k <= 4; ++k) {
        const BoundReport r = check_proposition_testfunction(run.result, run.chart, run.mesh, run.problem.dofs, x, k, "x");
        // |∇h| = 1 so ∫uᵢ²T(∇h,∇h) = ∫uᵢ² = 1
        double gap2 = 0.0;
        for (int i = 0; i < k; ++i) {
            const double gap = run.result.eigenvalues[static_cast<std::size_t>(k)] - run.result.eigenvalues[static_cast<std::size_t>(i)];
            gap2 += gap * gap;
        }
        CHECK(r.lhs == doctest::Approx(gap2).epsilon(1e-6));
        CHECK(r.holds);
        CHECK(r.name == "proposition_testfunction_x");
    }
}

TEST_CASE("Weyl fit")
{
    const WeylFit iv = weyl_fit(closed_form_interval(40), 1.0, 1, 40);
    CHECK(iv.target == doctest::Approx(pi2).epsilon(1e-14));
    CHECK(iv.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(iv.constant == doctest::Approx(pi2).epsilon(1e-12));
    CHECK(iv.level_constant == doctest::Approx(pi2).epsilon(1e-12));

    const WeylFit sq = weyl_fit(closed_form_rectangle(500), 1.0, 1, 500);
    CHECK(sq.target == doctest::Approx(4 * pi).epsilon(1e-14));
    CHECK(sq.mean_target == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(sq.square_mean_target == doctest::Approx(16 * pi2 / 3).epsilon(1e-14));
    CHECK(sq.expected_exponent == 1.0);
    // boundary corrections make the fit approach the limits slowly from above
    CHECK(sq.level_constant > sq.target);
    CHECK(sq.mean_ratio > sq.mean_target);
    CHECK_THROWS_AS(weyl_fit(closed_form_interval(5), 1.0, 1, 5), Error);
}

TEST_CASE("CSV rows")
{
    const BoundReport r = make_report("x", 3, 1.0, 4.0, 1e-9);
    CHECK(bounds_csv_header() == "name,k,lhs,rhs,ratio,holds,slack");
    CHECK(to_csv_row(r) == "x,3,1,4,0.25,true,1.0000000000000001e-09");
    const BoundReport f = make_report("y", 1, 2.0, 1.0, 1e-6);
    CHECK_FALSE(f.holds);
    CHECK(make_report("z", 1, 1.0 + 1e-10, 1.0, 1e-9).holds);
}
