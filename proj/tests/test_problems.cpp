#include "fredholm/errors.hpp"
#include "fredholm/problems.hpp"
#include "fredholm/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fredholm;

TEST_CASE("tp1 layout")
{
    auto ps = test_problem_1(5);
    CHECK(ps->equations[0].nodes == std::vector<double>{0.1, 0.325, 0.55, 0.775, 1.0});
    CHECK(ps->total_nodes() == 10);
    CHECK((*ps->rhs_exact)[0] == doctest::Approx(0.1 * (std::log(4.0) - 0.5)).epsilon(1e-15));
    CHECK(ps->bv.f0 == 1.0);
    CHECK(ps->bv.f1 == 2.0);
    CHECK_THROWS_AS(test_problem_1(1), InvalidArgument);
}

TEST_CASE("tp2 layout")
{
    auto ps = test_problem_2(10);
    const double pi = std::numbers::pi;
    CHECK(ps->bv.f0 == 0.0);
    CHECK(ps->bv.f1 == 0.0);
    CHECK(ps->truth(0.0) == 0.0);
    CHECK(std::abs(ps->truth(pi)) < 1e-15);
    CHECK(ps->equations[0].nodes.back() == pi / 2.0);
    // the second right-hand side at x = 1
    auto three = test_problem_2(3);
    ProblemSpec q = *three;
    q.equations[1].nodes = {1.0, 1.0, 1.0};
    const Eigen::VectorXd g = apply_forward(q, q.truth);
    CHECK(std::abs(g[3] - (pi + (1.0 + std::exp(pi)) / 2.0)) <= 1e-12);
}

TEST_CASE("forward map reproduces registered data")
{
    for (const char* name : {"tp1", "tp2", "fdem:sigma1", "fdem:sigma2", "fdem:sigma3"}) {
        auto ps = make_problem(name, 7);
        Eigen::VectorXd fw = apply_forward(*ps, ps->truth, {}, ps->truth_breakpoints);
        Eigen::Index j = 0;
        for (const Equation& e : ps->equations)
            for (double x : e.nodes) {
                if (e.tail) fw[j] += e.tail(x);
                ++j;
            }
        CHECK((fw - *ps->rhs_exact).norm() <= 1e-9 * ps->rhs_exact->norm());
    }
}

TEST_CASE("FDEM kernels and profiles")
{
    CHECK(fdem_kernel_vertical(0.0) == 0.0);
    CHECK(fdem_kernel_horizontal(0.0) == 2.0);
    CHECK(fdem_theta(0.0, 0.0) == 1.0);

    const TruthProfile s1 = truth_profile("sigma1");
    CHECK(s1.eval(1.0) == 2.0);
    CHECK(s1.alpha == doctest::Approx(std::exp(-1.0) + 1.0));
    CHECK(s1.beta == doctest::Approx(std::exp(-9.0) + 1.0));
    const TruthProfile s2 = truth_profile("sigma2");
    CHECK(s2.eval(1.0) == doctest::Approx(1.0));
    CHECK(s2.eval(std::nextafter(1.0, 2.0)) == doctest::Approx(1.0));
    CHECK(s2.beta == doctest::Approx(0.2 + 0.8 * std::exp(-3.0)));
    const TruthProfile s3 = truth_profile("sigma3");
    CHECK(s3.eval(1.0) == 2.0);
    CHECK(s3.eval(2.0) == 0.2);
    CHECK(s3.breakpoints == std::vector<double>{0.5, 1.5});
    CHECK_THROWS_AS(truth_profile("sigma9"), InvalidArgument);
}

TEST_CASE("FDEM tail truncation error for sigma1")
{
    // Data over [0, z0] plus the beta tail vs integrating the true profile to 60 m.
    // Below z0 the profile lies in [1, beta], so the gap is at most
    // (beta - 1) * int_{z0}^inf k^V(z + h) dz = (beta - 1) / theta(z0, h).
    auto ps = make_problem("fdem:sigma1", 5);
    const TruthProfile s1 = truth_profile("sigma1");
    for (Eigen::Index i = 0; i < 5; ++i) {
        const double h = ps->equations[0].nodes[i];
        const double deep = integrate([&](double z) { return fdem_kernel_vertical(z + h) * s1.eval(z); }, 0.0, 60.0) +
                            s1.eval(60.0) / fdem_theta(60.0, h);
        const double gap = (*ps->rhs_exact)[i] - deep;
        CHECK(gap >= 0.0);
        CHECK(gap <= (s1.beta - 1.0) / fdem_theta(4.0, h));
    }
}

TEST_CASE("sigma2 breakpoint handling")
{
    const TruthProfile s2 = truth_profile("sigma2");
    const auto f = [&](double z) { return fdem_kernel_vertical(z + 0.3) * s2.eval(z); };
    const double bp[] = {1.0};
    IntegrationConfig plain;
    plain.max_panel_doublings = 12;
    plain.rel_tol = 1e-15;
    CHECK(std::abs(integrate_with_breakpoints(f, 0.0, 4.0, bp) - integrate(f, 0.0, 4.0, plain)) <= 1e-8);
}

TEST_CASE("FDEM configuration errors")
{
    FdemConfig cfg;
    cfg.z0 = -1.0;
    CHECK_THROWS_AS(fdem_problem(cfg, truth_profile("sigma1")), InvalidArgument);
    cfg.z0 = 4.0;
    cfg.heights = {0.1, -0.2};
    CHECK_THROWS_AS(fdem_problem(cfg, truth_profile("sigma1")), InvalidArgument);
    cfg.heights = {0.1, 0.4, 0.9};
    cfg.alpha = 1.5;
    auto ps = fdem_problem(cfg, truth_profile("sigma1"));
    CHECK(ps->total_nodes() == 6);
    CHECK(ps->bv.f0 == 1.5);
    CHECK_THROWS_AS(make_problem("tp9", 5), InvalidArgument);
}

TEST_CASE("Galerkin baseline")
{
    const auto err = [](const GalerkinResult& r) {
        double m = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double t = std::numbers::pi * k / 1000.0;
            m = std::max(m, std::abs(r.value(t) - std::sin(t)));
        }
        return m;
    };
    const GalerkinResult g6 = galerkin_baseline(6);
    CHECK(g6.matrix.rows() == 12);
    CHECK(g6.matrix.cols() == 6);
    CHECK(err(g6) >= 1e-2);
    const GalerkinResult g20 = galerkin_baseline(20);
    CHECK(err(g20) >= 1e2);
    CHECK_THROWS_AS(galerkin_baseline(1), InvalidArgument);
}
