#include "fredholm/errors.hpp"
#include "fredholm/gram.hpp"
#include "fredholm/problems.hpp"
#include "fredholm/regparam.hpp"
#include "fredholm/rkhs.hpp"

#include <doctest.h>

#include <cmath>

using namespace fredholm;

namespace {

/// Diagonal system with lambda_l = 10^{-2l} and projections 10^{-1.5l}
/// (Picard decay) plus a noise floor near 1e-8.
struct Synthetic {
    GramFactorization fac;
    Eigen::VectorXd g;
};

Synthetic synthetic(int n)
{
    Eigen::VectorXd lam(n), g(n);
    for (int l = 0; l < n; ++l) {
        lam[l] = std::pow(10.0, -2.0 * l);
        g[l] = std::pow(10.0, -1.5 * l) + 1e-8 * (l % 2 ? 1.5 : 1.0);
    }
    return {spectral_factorize(lam.asDiagonal().toDenseMatrix()), g};
}

}  // namespace

TEST_CASE("noise generation")
{
    DataVector exact;
    exact.values = Eigen::VectorXd::LinSpaced(8, 1.0, 2.0);
    auto [same, m0] = add_noise(exact, 0.0, 5);
    CHECK(same.values == exact.values);
    CHECK(m0.realized_norm == 0.0);

    auto [a, ma] = add_noise(exact, 1e-3, 42);
    auto [b, mb] = add_noise(exact, 1e-3, 42);
    CHECK(a.values == b.values);
    CHECK(ma.realized_norm == mb.realized_norm);
    CHECK(a.kind == DataVector::Kind::noisy);
    auto [c, mc] = add_noise(exact, 1e-3, 43);
    CHECK(c.values != a.values);

    double mean = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) mean += add_noise(exact, 1e-2, s).second.realized_norm;
    mean /= 1000.0;
    CHECK(std::abs(mean / (1e-2 * exact.values.norm()) - 1.0) <= 0.05);

    CHECK_THROWS_AS(add_noise(exact, -1.0, 1), InvalidArgument);
}

TEST_CASE("gaussian stream moments")
{
    const auto w = gaussian_stream(11, 200000);
    double m = 0.0, v = 0.0;
    for (double x : w) m += x;
    m /= w.size();
    for (double x : w) v += (x - m) * (x - m);
    v /= w.size();
    CHECK(std::abs(m) < 0.01);
    CHECK(std::abs(v - 1.0) < 0.01);
    CHECK(gaussian_stream(11, 5) == std::vector<double>(w.begin(), w.begin() + 5));
}

TEST_CASE("discrepancy principle")
{
    const Synthetic s = synthetic(8);
    const TeigExpansion teig(s.fac, s.g);
    CHECK(discrepancy_kappa(teig, 10.0 * s.g.norm(), 1.1).kappa == 1);
    const DiscrepancyResult tight = discrepancy_kappa(teig, 1e-300, 1.1);
    CHECK(tight.kappa == 8);
    const DiscrepancyResult mid = discrepancy_kappa(teig, 1e-5, 1.1);
    CHECK(mid.satisfied);
    REQUIRE(mid.kappa > 1);
    // smallest kappa meeting the bound
    CHECK(teig.residual(mid.kappa) <= 1.1e-5);
    CHECK(teig.residual(mid.kappa - 1) > 1.1e-5);
    CHECK_THROWS_AS(discrepancy_kappa(teig, 0.0, 1.1), InvalidArgument);
    CHECK_THROWS_AS(discrepancy_kappa(teig, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("L-curve points are monotone")
{
    const Synthetic s = synthetic(12);
    const TeigExpansion teig(s.fac, s.g);
    const LCurve curve = lcurve_points(teig);
    CHECK(curve.dropped == 1);
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        CHECK(curve.points[k].log_residual <= curve.points[k - 1].log_residual);
        CHECK(curve.points[k].log_norm >= curve.points[k - 1].log_norm);
    }
    const CornerResult c = lcurve_corner(curve.points);
    CHECK_FALSE(c.degenerate);
    // The residual levels off near kappa = 6 and the norm takes off after
    // kappa = 8; the corner sits between the two.
    CHECK(c.kappa >= 6);
    CHECK(c.kappa <= 9);
}

TEST_CASE("corner of a right angle")
{
    std::vector<LCurvePoint> pts;
    for (int k = 1; k <= 5; ++k) pts.push_back({k, 6.0 - k, 0.0});
    for (int k = 6; k <= 9; ++k) pts.push_back({k, 1.0, k - 5.0});
    for (CornerMethod m : {CornerMethod::pruning, CornerMethod::max_curvature}) {
        const CornerResult c = lcurve_corner(pts, m);
        CHECK(c.kappa == 5);
        CHECK_FALSE(c.degenerate);
    }
}

TEST_CASE("collinear curve is degenerate")
{
    std::vector<LCurvePoint> pts;
    for (int k = 1; k <= 8; ++k) pts.push_back({k, -0.5 * k, 0.25 * k});
    CHECK(lcurve_corner(pts).degenerate);
    CHECK_THROWS_AS(lcurve_corner({pts[0], pts[1]}), InsufficientCurve);
}

TEST_CASE("best kappa sweeps")
{
    auto ps = test_problem_2(6);
    const RieszBasis basis = build_basis(ps);
    const GramFactorization fac = spectral_factorize(assemble_gram(basis));
    DataVector exact;
    exact.values = *ps->rhs_exact;

    // Noise-free smooth truth: the optimum sits at the end of the expansion,
    // give or take the last eigenvalues, which are round-off.
    const TeigExpansion clean(fac, shift_rhs(*ps, exact.values));
    const BestKappa cb = kappa_best(clean, basis, ps->truth, ErrorMetric::grid_max);
    CHECK(cb.kappa >= fac.cutoff - 2);
    CHECK(cb.errors[cb.kappa - 1] <= 1e-6);

    const auto noisy = add_noise(exact, 1e-4, 9).first;
    const TeigExpansion teig(fac, shift_rhs(*ps, noisy.values));
    for (ErrorMetric m : {ErrorMetric::grid_l2, ErrorMetric::grid_max}) {
        const BestKappa b = kappa_best(teig, basis, ps->truth, m, 500);
        REQUIRE(b.errors.size() == static_cast<std::size_t>(fac.cutoff));
        for (double e : b.errors) CHECK(b.errors[b.kappa - 1] <= e);
    }
    const BestKappa w = kappa_best(teig, basis, ps->truth, ErrorMetric::w_norm, 1000,
                                   shift_rhs(*ps, exact.values));
    for (double e : w.errors) CHECK(w.errors[w.kappa - 1] <= e);
    CHECK_THROWS_AS(kappa_best(teig, basis, ps->truth, ErrorMetric::w_norm), InvalidArgument);
}

TEST_CASE("report serialization")
{
    const Synthetic s = synthetic(6);
    const TeigExpansion teig(s.fac, s.g);
    ParamSelectionReport r;
    r.lcurve = lcurve_points(teig);
    r.kappa_lc = 3;
    r.tau = 1.1;
    const nlohmann::json j = to_json(r);
    CHECK(j["kappa_lc"] == 3);
    CHECK(j["kappa_d"].is_null());
    const std::string csv = lcurve_csv(r.lcurve);
    CHECK(csv.rfind("kappa,log_residual,log_norm\n", 0) == 0);
}
