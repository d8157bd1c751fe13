#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fredholm {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes in increasing order.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

struct IntegrationConfig {
    int order = 64;
    int max_panel_doublings = 6;
    double rel_tol = 1e-12;

    void validate() const;
};

using RealFunction = std::function<double(double)>;

QuadratureRule gauss_legendre_rule(int order);

/// Same rule as gauss_legendre_rule, computed once per order and shared.
const QuadratureRule& cached_rule(int order);

/// Composite Gauss-Legendre estimate on `panels` equal panels of [a, b].
double integrate_panels(const RealFunction& f, double a, double b, int panels,
                        const QuadratureRule& rule);

/// Integrates f over [a, b], doubling the panel count until two successive
/// estimates agree to cfg.rel_tol (relative, with a 1e-300 floor) or
/// cfg.max_panel_doublings is exhausted. Returns the last estimate.
/// Throws NumericDomainError if f returns a non-finite value.
double integrate(const RealFunction& f, double a, double b,
                 const IntegrationConfig& cfg = {});

/// Sum of integrate() over the subintervals cut by `breakpoints`, which must
/// be strictly increasing and lie strictly inside (a, b).
double integrate_with_breakpoints(const RealFunction& f, double a, double b,
                                  std::span<const double> breakpoints,
                                  const IntegrationConfig& cfg = {});

/// Like integrate_with_breakpoints, but silently sorts the list and drops
/// points that are duplicated or not strictly inside (a, b). For internal
/// callers whose kink locations may coincide with an endpoint.
double integrate_split(const RealFunction& f, double a, double b,
                       std::vector<double> breakpoints,
                       const IntegrationConfig& cfg = {});

/// A fixed composite grid (nodes and weights) for repeated inner products.
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

QuadratureGrid composite_grid(double a, double b, int panels, int order);

}  // namespace fredholm
