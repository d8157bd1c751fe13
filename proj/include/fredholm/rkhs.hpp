#pragma once

#include "fredholm/quadrature.hpp"

#include <Eigen/Core>

namespace fredholm {

/// Closed interval [a, b] with a < b.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    Interval() = default;
    Interval(double lo, double hi);

    double length() const { return b - a; }
    bool contains(double t) const { return t >= a && t <= b; }
    /// Maps t into [a, b], tolerating a round-off overshoot of 1e-12 * length.
    /// Anything further out is an InvalidArgument.
    double clamp(double t) const;
};

/// Prescribed values f(a) = f0 and f(b) = f1.
struct BoundaryValues {
    double f0 = 0.0;
    double f1 = 0.0;
};

// The space W holds functions on [a, b] with f(a) = f(b) = 0 and f'' in L2,
// with inner product <f, g>_W = int f'' g''. Its reproducing kernel G has the
// second derivative below, which is the Dirichlet Green's function of d^2/dz^2.

/// G_y''(z). Piecewise linear in z with a kink at z = y.
double reproducing_kernel_second(double y, double z, const Interval& iv);

/// G(x, y) = int G_x''(z) G_y''(z) dz by quadrature with breakpoints {x, y}.
double reproducing_kernel_value(double x, double y, const Interval& iv,
                                const IntegrationConfig& cfg = {});

/// G(x, y) in closed form (a piecewise cubic). Used on the hot paths; the
/// quadrature version above is its test oracle.
double reproducing_kernel_closed(double x, double y, const Interval& iv);

/// The linear function with gamma(a) = f0, gamma(b) = f1.
double boundary_lift(double t, const Interval& iv, const BoundaryValues& bv);

/// f(y) = int G_y''(z) f''(z) dz for f in W, given f''.
double reproduce_value(const RealFunction& f_second, double y, const Interval& iv,
                       const IntegrationConfig& cfg = {});

struct ProblemSpec;

/// Data vector of the homogeneous problem: phi = g - (tail + int k gamma),
/// node by node in block order. Uses the problem's closed-form shift when
/// registered and quadrature otherwise.
Eigen::VectorXd shift_rhs(const ProblemSpec& ps, const Eigen::VectorXd& g,
                          const IntegrationConfig& cfg = {});

}  // namespace fredholm
