#include "fredholm/rkhs.hpp"

#include "fredholm/errors.hpp"
#include "fredholm/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fredholm {

Interval::Interval(double lo, double hi) : a(lo), b(hi)
{
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw InvalidArgument("Interval: requires finite a < b");
}

double Interval::clamp(double t) const
{
    const double tol = 1e-12 * (b - a);
    if (!(t >= a - tol && t <= b + tol)) {
        std::ostringstream msg;
        msg << "point " << t << " outside [" << a << ", " << b << "]";
        throw InvalidArgument(msg.str());
    }
    return std::clamp(t, a, b);
}

double reproducing_kernel_second(double y, double z, const Interval& iv)
{
    y = iv.clamp(y);
    z = iv.clamp(z);
    const double a = iv.a;
    const double b = iv.b;
    if (z < y) return (z - a) * (y - b) / (b - a);
    return (y - a) * (z - b) / (b - a);
}

double reproducing_kernel_value(double x, double y, const Interval& iv,
                                const IntegrationConfig& cfg)
{
    x = iv.clamp(x);
    y = iv.clamp(y);
    const auto integrand = [&](double z) {
        return reproducing_kernel_second(x, z, iv) * reproducing_kernel_second(y, z, iv);
    };
    return integrate_split(integrand, iv.a, iv.b, {x, y}, cfg);
}

double reproducing_kernel_closed(double x, double y, const Interval& iv)
{
    x = iv.clamp(x);
    y = iv.clamp(y);
    const double len = iv.length();
    const double s = (std::min(x, y) - iv.a) / len;
    const double r = (std::max(x, y) - iv.a) / len;
    return len * len * len * s * (1.0 - r) * (2.0 * r - r * r - s * s) / 6.0;
}

double boundary_lift(double t, const Interval& iv, const BoundaryValues& bv)
{
    t = iv.clamp(t);
    return (iv.b - t) / iv.length() * bv.f0 + (t - iv.a) / iv.length() * bv.f1;
}

double reproduce_value(const RealFunction& f_second, double y, const Interval& iv,
                       const IntegrationConfig& cfg)
{
    y = iv.clamp(y);
    const auto integrand = [&](double z) { return reproducing_kernel_second(y, z, iv) * f_second(z); };
    return integrate_split(integrand, iv.a, iv.b, {y}, cfg);
}

Eigen::VectorXd shift_rhs(const ProblemSpec& ps, const Eigen::VectorXd& g,
                          const IntegrationConfig& cfg)
{
    if (g.size() != ps.total_nodes())
        throw InvalidArgument("shift_rhs: data length does not match the number of nodes");

    Eigen::VectorXd phi = g;
    Eigen::Index j = 0;
    for (const Equation& eq : ps.equations) {
        for (double x : eq.nodes) {
            double offset = 0.0;
            if (eq.analytic_shift) {
                offset = eq.analytic_shift(x);
            } else {
                if (eq.tail) offset += eq.tail(x);
                if (ps.bv.f0 != 0.0 || ps.bv.f1 != 0.0) {
                    const auto integrand = [&](double t) {
                        return eq.kernel(x, t) * boundary_lift(t, ps.iv, ps.bv);
                    };
                    offset += integrate_split(integrand, ps.iv.a, ps.iv.b, eq.kernel_breakpoints, cfg);
                }
            }
            phi[j++] -= offset;
        }
    }
    return phi;
}

}  // namespace fredholm
