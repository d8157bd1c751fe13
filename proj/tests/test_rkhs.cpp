#include "fredholm/errors.hpp"
#include "fredholm/problems.hpp"
#include "fredholm/rkhs.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fredholm;

TEST_CASE("kernel second derivative")
{
    const Interval iv(0.0, 1.0);
    CHECK(reproducing_kernel_second(0.5, 0.25, iv) == doctest::Approx(-0.125).epsilon(1e-15));
    for (double z : {0.0, 0.1, 0.6, 1.0}) {
        CHECK(reproducing_kernel_second(0.0, z, iv) == 0.0);
        CHECK(reproducing_kernel_second(1.0, z, iv) == 0.0);
    }
    CHECK_THROWS_AS(Interval(1.0, 1.0), InvalidArgument);
}

TEST_CASE("kernel value")
{
    const Interval iv(0.0, 1.0);
    CHECK(std::abs(reproducing_kernel_value(0.5, 0.5, iv) - 1.0 / 48.0) <= 1e-15);
    CHECK(std::abs(reproducing_kernel_closed(0.5, 0.5, iv) - 1.0 / 48.0) <= 1e-15);
    CHECK(reproducing_kernel_value(0.0, 0.3, iv) == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    const Interval wide(-1.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        const double x = u(rng), y = u(rng);
        const double gq = reproducing_kernel_value(x, y, wide);
        CHECK(std::abs(gq - reproducing_kernel_value(y, x, wide)) <= 1e-14);
        CHECK(std::abs(gq - reproducing_kernel_closed(x, y, wide)) <= 1e-14);
    }
}

TEST_CASE("boundary lift")
{
    const Interval iv(0.0, 1.0);
    CHECK(boundary_lift(0.3, iv, {0.0, 0.0}) == 0.0);
    CHECK(boundary_lift(0.5, iv, {1.0, 2.0}) == doctest::Approx(1.5));
    const Interval fdem(0.0, 4.0);
    const BoundaryValues bv{1.3, 0.7};
    CHECK(boundary_lift(4.0, fdem, bv) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(boundary_lift(1.0, fdem, bv) == doctest::Approx(0.75 * 1.3 + 0.25 * 0.7).epsilon(1e-15));
}

TEST_CASE("reproducing property")
{
    const Interval iv(0.0, 1.0);
    CHECK(reproduce_value([](double) { return 0.0; }, 0.4, iv) == 0.0);
    CHECK(std::abs(reproduce_value([](double) { return -2.0; }, 0.5, iv) - 0.25) <= 1e-14);
    CHECK(reproduce_value([](double) { return -2.0; }, 0.0, iv) == 0.0);
    CHECK(reproduce_value([](double) { return -2.0; }, 1.0, iv) == 0.0);
    // f = sin(pi t): f'' = -pi^2 sin(pi t)
    const double pi = std::acos(-1.0);
    for (double y : {0.1, 0.37, 0.8})
        CHECK(std::abs(reproduce_value([pi](double z) { return -pi * pi * std::sin(pi * z); }, y, iv) -
                       std::sin(pi * y)) <= 1e-13);
}

TEST_CASE("shifted data")
{
    auto ps = test_problem_1(5);
    const Eigen::VectorXd zero_g = Eigen::VectorXd::Zero(ps->total_nodes());
    const Eigen::VectorXd phi = shift_rhs(*ps, *ps->rhs_exact);
    for (int i = 0; i < 5; ++i) {
        const double x = ps->equations[0].nodes[i];
        CHECK(std::abs(phi[i] - x * (std::log(4.0) - 1.5)) <= 1e-14);
        const double expect2 = (std::cos(x) + 1.0 - 2.0 * std::sin(x) / x) / (x * x);
        CHECK(std::abs(phi[5 + i] - expect2) <= 1e-12);
    }

    // Zero lift leaves the data unchanged.
    auto tp2 = test_problem_2(4);
    const Eigen::VectorXd g2 = *tp2->rhs_exact;
    CHECK((shift_rhs(*tp2, g2) - g2).norm() == 0.0);

    // Analytic shifts against the quadrature route, with and without a tail.
    for (const char* name : {"tp1", "fdem:sigma1", "fdem:sigma2"}) {
        auto p = make_problem(name, 6);
        ProblemSpec q = *p;
        for (Equation& e : q.equations) e.analytic_shift = nullptr;
        const Eigen::VectorXd a = shift_rhs(*p, *p->rhs_exact);
        const Eigen::VectorXd b = shift_rhs(q, *p->rhs_exact);
        CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
}
