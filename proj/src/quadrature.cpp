#include "fredholm/quadrature.hpp"

#include "fredholm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fredholm {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<long double, long double> legendre(int n, long double x)
{
    long double p0 = 1.0L;
    long double p1 = x;
    if (n == 0) return {1.0L, 0.0L};
    for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const long double dp = n * (x * p1 - p0) / (x * x - 1.0L);
    return {p1, dp};
}

double checked(const RealFunction& f, double t)
{
    const double v = f(t);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite integrand value at t = " << t;
        throw NumericDomainError(msg.str(), t);
    }
    return v;
}

}  // namespace

void IntegrationConfig::validate() const
{
    if (order < 2) throw InvalidArgument("IntegrationConfig: order must be >= 2");
    if (max_panel_doublings < 0)
        throw InvalidArgument("IntegrationConfig: max_panel_doublings must be >= 0");
    if (!(rel_tol > 0.0)) throw InvalidArgument("IntegrationConfig: rel_tol must be > 0");
}

QuadratureRule gauss_legendre_rule(int order)
{
    if (order < 1) throw InvalidArgument("gauss_legendre_rule: order must be >= 1");

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.assign(order, 0.0);
    rule.weights.assign(order, 0.0);

    const int half = order / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess for the i-th largest root, then Newton.
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (order + 0.5L));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(order, x);
            const long double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        const auto [p, dp] = legendre(order, x);
        (void)p;
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        rule.nodes[order - 1 - i] = static_cast<double>(x);
        rule.nodes[i] = -static_cast<double>(x);
        rule.weights[order - 1 - i] = static_cast<double>(w);
        rule.weights[i] = static_cast<double>(w);
    }
    if (order % 2 == 1) {
        const auto [p, dp] = legendre(order, 0.0L);
        (void)p;
        rule.nodes[half] = 0.0;
        rule.weights[half] = static_cast<double>(2.0L / (dp * dp));
    }
    return rule;
}

const QuadratureRule& cached_rule(int order)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<const QuadratureRule>(gauss_legendre_rule(order));
    return *slot;
}

double integrate_panels(const RealFunction& f, double a, double b, int panels,
                        const QuadratureRule& rule)
{
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == panels) ? b : a + (p + 1) * width;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double sum = 0.0;
        for (int k = 0; k < rule.order; ++k)
            sum += rule.weights[k] * checked(f, mid + half * rule.nodes[k]);
        total += half * sum;
    }
    return total;
}

double integrate(const RealFunction& f, double a, double b, const IntegrationConfig& cfg)
{
    cfg.validate();
    if (!(a < b)) throw InvalidArgument("integrate: requires a < b");

    const QuadratureRule& rule = cached_rule(cfg.order);
    double previous = integrate_panels(f, a, b, 1, rule);
    int panels = 1;
    for (int d = 0; d < cfg.max_panel_doublings; ++d) {
        panels *= 2;
        const double current = integrate_panels(f, a, b, panels, rule);
        const double scale = std::max(std::fabs(current), 1e-300);
        if (std::fabs(current - previous) <= cfg.rel_tol * scale) return current;
        previous = current;
    }
    return previous;
}

double integrate_with_breakpoints(const RealFunction& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  const IntegrationConfig& cfg)
{
    if (!(a < b)) throw InvalidArgument("integrate_with_breakpoints: requires a < b");
    double lo = a;
    for (double bp : breakpoints) {
        if (!(bp > a && bp < b))
            throw InvalidArgument("integrate_with_breakpoints: breakpoint outside (a, b)");
        if (!(bp > lo))
            throw InvalidArgument("integrate_with_breakpoints: breakpoints must be strictly increasing");
        lo = bp;
    }
    if (breakpoints.empty()) return integrate(f, a, b, cfg);

    double total = 0.0;
    lo = a;
    for (double bp : breakpoints) {
        total += integrate(f, lo, bp, cfg);
        lo = bp;
    }
    return total + integrate(f, lo, b, cfg);
}

double integrate_split(const RealFunction& f, double a, double b,
                       std::vector<double> breakpoints, const IntegrationConfig& cfg)
{
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> inside;
    inside.reserve(breakpoints.size());
    for (double bp : breakpoints) {
        if (bp > a && bp < b && (inside.empty() || bp > inside.back())) inside.push_back(bp);
    }
    return integrate_with_breakpoints(f, a, b, inside, cfg);
}

QuadratureGrid composite_grid(double a, double b, int panels, int order)
{
    if (!(a < b)) throw InvalidArgument("composite_grid: requires a < b");
    if (panels < 1) throw InvalidArgument("composite_grid: panels must be >= 1");
    const QuadratureRule& rule = cached_rule(order);
    QuadratureGrid grid;
    grid.nodes.reserve(static_cast<std::size_t>(panels) * order);
    grid.weights.reserve(static_cast<std::size_t>(panels) * order);
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p + 1 == panels) ? b : a + (p + 1) * width;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (int k = 0; k < rule.order; ++k) {
            grid.nodes.push_back(mid + half * rule.nodes[k]);
            grid.weights.push_back(half * rule.weights[k]);
        }
    }
    return grid;
}

}  // namespace fredholm
