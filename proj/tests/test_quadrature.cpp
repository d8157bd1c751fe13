#include "fredholm/errors.hpp"
#include "fredholm/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

using namespace fredholm;

TEST_CASE("low order rules")
{
    const QuadratureRule r1 = gauss_legendre_rule(1);
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    const QuadratureRule r2 = gauss_legendre_rule(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rule structure")
{
    for (int order : {3, 8, 16, 33, 64, 128}) {
        const QuadratureRule r = gauss_legendre_rule(order);
        CHECK(std::abs(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) - 2.0) <= 1e-14);
        for (int i = 0; i < order; ++i) {
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
            CHECK(r.nodes[i] == -r.nodes[order - 1 - i]);
            CHECK(r.weights[i] > 0.0);
        }
    }
    CHECK_THROWS_AS(gauss_legendre_rule(0), InvalidArgument);
}

TEST_CASE("polynomial exactness")
{
    // 2n-1 degree exactness: int_{-1}^1 t^k = 2/(k+1) for even k.
    const QuadratureRule r = gauss_legendre_rule(10);
    for (int k = 0; k <= 19; ++k) {
        double s = 0.0;
        for (int i = 0; i < 10; ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        const double expect = k % 2 ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(s - expect) <= 1e-14);
    }
}

TEST_CASE("integrate against antiderivatives")
{
    IntegrationConfig cfg;
    cfg.order = 16;
    CHECK(std::abs(integrate([](double t) { return 1.0 / (t + 1.0); }, 0.0, 1.0, cfg) - std::log(2.0)) <= 1e-14);
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // (t^2 + 1)/(t + 1) = t - 1 + 2/(t + 1)
    CHECK(std::abs(integrate([](double t) { return (t * t + 1.0) / (t + 1.0); }, 0.0, 1.0) -
                   (std::log(4.0) - 0.5)) <= 1e-14);
    CHECK(std::abs(integrate([](double t) { return std::sin(t); }, 0.0, std::numbers::pi) - 2.0) <= 1e-12);
}

TEST_CASE("breakpoints")
{
    const auto f = [](double z) { return std::abs(z - 0.5); };
    const double bp[] = {0.5};
    CHECK(std::abs(integrate_with_breakpoints(f, 0.0, 1.0, bp) - 0.25) <= 1e-14);

    const auto g = [](double t) { return std::exp(t) * std::cos(3 * t); };
    CHECK(integrate_with_breakpoints(g, 0.0, 2.0, {}) == integrate(g, 0.0, 2.0));

    const double many[] = {0.1, 0.2, 0.7};
    CHECK(integrate_with_breakpoints([](double) { return 0.0; }, 0.0, 1.0, many) == 0.0);

    const double unsorted[] = {0.7, 0.2};
    CHECK_THROWS_AS(integrate_with_breakpoints(g, 0.0, 1.0, unsorted), InvalidArgument);
    const double outside[] = {1.5};
    CHECK_THROWS_AS(integrate_with_breakpoints(g, 0.0, 1.0, outside), InvalidArgument);

    // integrate_split tolerates messy lists
    CHECK(std::abs(integrate_split(f, 0.0, 1.0, {1.0, 0.5, 0.5, 0.0}) - 0.25) <= 1e-14);
}

TEST_CASE("non-finite integrand")
{
    const auto f = [](double t) { return t > 0.3 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0), NumericDomainError);
    try {
        integrate(f, 0.0, 1.0);
    } catch (const NumericDomainError& e) {
        CHECK(e.abscissa() > 0.3);
    }
}

TEST_CASE("config validation and composite grid")
{
    IntegrationConfig bad;
    bad.order = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(integrate([](double t) { return t; }, 1.0, 0.0), InvalidArgument);

    const QuadratureGrid grid = composite_grid(0.0, 2.0, 4, 8);
    CHECK(grid.size() == 32);
    double s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) s += grid.weights[k] * grid.nodes[k] * grid.nodes[k];
    CHECK(std::abs(s - 8.0 / 3.0) <= 1e-14);
}

TEST_CASE("cached rule matches fresh rule")
{
    const QuadratureRule& a = cached_rule(24);
    const QuadratureRule b = gauss_legendre_rule(24);
    CHECK(a.nodes == b.nodes);
    CHECK(a.weights == b.weights);
    CHECK(&cached_rule(24) == &a);
}
