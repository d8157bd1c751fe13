#include "fredholm/problems.hpp"

#include "fredholm/errors.hpp"
#include "fredholm/solver.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <numbers>

namespace fredholm {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> spread(double lo, double hi, int n)
{
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    x.back() = hi;
    return x;
}

Eigen::VectorXd stack_rhs(const std::vector<Equation>& eqs, const std::vector<std::function<double(double)>>& g)
{
    Eigen::Index total = 0;
    for (const Equation& e : eqs) total += static_cast<Eigen::Index>(e.nodes.size());
    Eigen::VectorXd out(total);
    Eigen::Index j = 0;
    for (std::size_t l = 0; l < eqs.size(); ++l)
        for (double x : eqs[l].nodes) out[j++] = g[l](x);
    return out;
}

}  // namespace

std::shared_ptr<const ProblemSpec> test_problem_1(int n)
{
    if (n < 2) throw InvalidArgument("test_problem_1: n must be >= 2");
    const double log2 = std::log(2.0);
    const double log4 = std::log(4.0);

    auto ps = std::make_shared<ProblemSpec>();
    ps->label = "tp1";
    ps->iv = Interval(0.0, 1.0);
    ps->bv = {1.0, 2.0};
    ps->truth = [](double t) { return t * t + 1.0; };

    const std::vector<double> nodes = spread(0.1, 1.0, n);

    Equation e1;
    e1.name = "x/(t+1)";
    e1.kernel = [](double x, double t) { return x / (t + 1.0); };
    e1.nodes = nodes;
    e1.range_lo = 0.0;
    e1.range_hi = 1.0;
    e1.closed_form = AnalyticRepresenter{
        [](double x, double z) { return x * ((1.0 - z) * std::log1p(z) - z * std::log(4.0 / ((1.0 + z) * (1.0 + z)))); },
        [log2](double x, double y) {
            return x / 36.0 *
                   (6.0 * std::pow(1.0 + y, 3) * std::log1p(y) -
                    y * (y * y * (5.0 + 12.0 * log2) + 15.0 * y + 4.0 * (9.0 * log2 - 5.0)));
        }};
    // int_0^1 x/(t+1) (t+1) dt
    e1.analytic_shift = [](double x) { return x; };

    Equation e2;
    e2.name = "cos(xt)";
    e2.kernel = [](double x, double t) { return std::cos(x * t); };
    e2.nodes = nodes;
    e2.range_lo = 0.0;
    e2.range_hi = 1.0;
    e2.closed_form = AnalyticRepresenter{
        [](double x, double z) { return (z * std::cos(x) - std::cos(x * z) - z + 1.0) / (x * x); },
        [](double x, double y) {
            const double x2 = x * x;
            return y * (y - 1.0) / (6.0 * x2) * ((y + 1.0) * std::cos(x) - y + 2.0) +
                   (y * (1.0 - std::cos(x)) - 1.0 + std::cos(x * y)) / (x2 * x2);
        }};
    // int_0^1 cos(xt) (t+1) dt
    e2.analytic_shift = [](double x) { return 2.0 * std::sin(x) / x + (std::cos(x) - 1.0) / (x * x); };

    ps->equations = {e1, e2};
    ps->rhs_exact = stack_rhs(ps->equations, {
        [log4](double x) { return x * (log4 - 0.5); },
        [](double x) { return 2.0 / (x * x * x) * (x * std::cos(x) + (x * x - 1.0) * std::sin(x)); },
    });
    ps->validate();
    return ps;
}

std::shared_ptr<const ProblemSpec> test_problem_2(int n)
{
    if (n < 2) throw InvalidArgument("test_problem_2: n must be >= 2");

    auto ps = std::make_shared<ProblemSpec>();
    ps->label = "tp2";
    ps->iv = Interval(0.0, pi);
    ps->bv = {0.0, 0.0};
    ps->truth = [](double t) { return std::sin(t); };

    const std::vector<double> nodes = spread(0.1, pi / 2.0, n);

    Equation e1;
    e1.name = "exp(x cos t)";
    e1.kernel = [](double x, double t) { return std::exp(x * std::cos(t)); };
    e1.nodes = nodes;
    e1.range_lo = 0.0;
    e1.range_hi = pi / 2.0;

    Equation e2;
    e2.name = "xt + exp(xt)";
    e2.kernel = [](double x, double t) { return x * t + std::exp(x * t); };
    e2.nodes = nodes;
    e2.range_lo = 0.0;
    e2.range_hi = pi / 2.0;
    e2.closed_form = AnalyticRepresenter{
        [](double x, double z) {
            const double x2 = x * x;
            return z * (1.0 - std::exp(pi * x)) / (pi * x2) + x * z * (z * z - pi * pi) / 6.0 +
                   std::expm1(x * z) / x2;
        },
        [](double x, double y) {
            const double x2 = x * x;
            const double x4 = x2 * x2;
            return pi * pi * x * y / 36.0 * (0.7 * pi * pi - y * y) +
                   y / (6.0 * pi * x4) * (1.0 - std::exp(pi * x)) * (x2 * y * y + 6.0) +
                   pi * y / (6.0 * x2) * (std::exp(pi * x) + 2.0) +
                   y * y / 2.0 * (x * y * y * y / 60.0 - 1.0 / x2) + std::expm1(x * y) / x4;
        }};

    ps->equations = {e1, e2};
    ps->rhs_exact = stack_rhs(ps->equations, {
        [](double x) { return 2.0 * std::sinh(x) / x; },
        [](double x) { return pi * x + (1.0 + std::exp(pi * x)) / (1.0 + x * x); },
    });
    ps->validate();
    return ps;
}

double fdem_kernel_vertical(double z) { return 4.0 * z / std::pow(4.0 * z * z + 1.0, 1.5); }

double fdem_kernel_horizontal(double z) { return 2.0 - 4.0 * z / std::sqrt(4.0 * z * z + 1.0); }

double fdem_theta(double z, double h) { return std::sqrt(4.0 * (z + h) * (z + h) + 1.0); }

TruthProfile truth_profile(const std::string& name)
{
    TruthProfile p;
    p.name = name;
    if (name == "sigma1") {
        p.eval = [](double z) { return std::exp(-(z - 1.0) * (z - 1.0)) + 1.0; };
        p.alpha = std::exp(-1.0) + 1.0;
        p.beta = std::exp(-9.0) + 1.0;
    } else if (name == "sigma2") {
        p.eval = [](double z) { return z <= 1.0 ? 0.8 * z + 0.2 : 0.8 * std::exp(-(z - 1.0)) + 0.2; };
        p.alpha = 0.2;
        p.beta = 0.2 + 0.8 * std::exp(-3.0);
        p.breakpoints = {1.0};
    } else if (name == "sigma3") {
        p.eval = [](double z) { return (z >= 0.5 && z <= 1.5) ? 2.0 : 0.2; };
        p.alpha = 0.2;
        p.beta = 0.2;
        p.breakpoints = {0.5, 1.5};
    } else {
        throw InvalidArgument("truth_profile: unknown profile '" + name + "'");
    }
    return p;
}

std::shared_ptr<const ProblemSpec> fdem_problem(const FdemConfig& cfg, const TruthProfile& truth)
{
    if (!(cfg.z0 > 0.0)) throw InvalidArgument("fdem_problem: z0 must be > 0");
    std::vector<double> heights = cfg.heights;
    if (heights.empty()) {
        if (cfg.n < 2) throw InvalidArgument("fdem_problem: n must be >= 2");
        heights = spread(0.1, 1.0, cfg.n);
    }
    for (double h : heights)
        if (!(h > 0.0)) throw InvalidArgument("fdem_problem: heights must be positive");

    const double z0 = cfg.z0;
    const double alpha = cfg.alpha.value_or(truth.alpha);
    const double beta = cfg.beta.value_or(truth.beta);

    auto ps = std::make_shared<ProblemSpec>();
    ps->label = "fdem:" + truth.name;
    ps->iv = Interval(0.0, z0);
    ps->bv = {alpha, beta};
    ps->truth = truth.eval;
    ps->truth_breakpoints = truth.breakpoints;

    const auto theta = fdem_theta;
    const auto ash = [](double v) { return std::asinh(v); };

    const auto second_v = [z0, ash](double h, double x) {
        return 0.5 * ((1.0 - x / z0) * ash(2.0 * h) - ash(2.0 * (x + h)) + x / z0 * ash(2.0 * (z0 + h)));
    };

    Equation ev;
    ev.name = "vertical";
    ev.kernel = [](double h, double z) { return fdem_kernel_vertical(z + h); };
    ev.nodes = heights;
    ev.range_lo = 0.0;
    ev.range_hi = std::numeric_limits<double>::infinity();
    ev.closed_form = AnalyticRepresenter{
        second_v,
        [z0, theta, ash](double h, double y) {
            const double q = 0.125 - h * h - y * y / 3.0;
            return 3.0 / 16.0 *
                       ((y + h) * theta(y, h) - y * (1.0 + h / z0) * theta(z0, h) + h * (y / z0 - 1.0) * theta(0.0, h)) +
                   0.5 * ((0.5 * (y / z0 - 1.0) * q + y / 3.0 * (y - z0)) * ash(2.0 * h) +
                          (-y / (2.0 * z0) * q + y * (h + z0 / 3.0)) * ash(2.0 * (z0 + h)) +
                          0.5 * (0.125 - (y + h) * (y + h)) * ash(2.0 * (y + h)));
        }};
    ev.tail = [z0, beta, theta](double h) { return beta / theta(z0, h); };
    ev.analytic_shift = [z0, alpha, beta, theta, ash](double h) {
        return alpha / theta(0.0, h) + (alpha - beta) / (2.0 * z0) * (ash(2.0 * h) - ash(2.0 * (z0 + h)));
    };

    Equation eh;
    eh.name = "horizontal";
    eh.kernel = [](double h, double z) { return fdem_kernel_horizontal(z + h); };
    eh.nodes = heights;
    eh.range_lo = 0.0;
    eh.range_hi = std::numeric_limits<double>::infinity();
    eh.closed_form = AnalyticRepresenter{
        [z0, theta, second_v](double h, double x) {
            return 0.5 * (2.0 * x * (x - z0) + x * (1.0 + h / z0) * theta(z0, h) - (x + h) * theta(x, h) +
                          h * (1.0 - x / z0) * theta(0.0, h) + second_v(h, x));
        },
        [z0, theta, ash](double h, double y) {
            const double h2 = h * h;
            const double y2 = y * y;
            const double poly =
                (z0 * (h * (13.0 - 8.0 * (3.0 * h * y + h2 + 3.0 * y2)) + y * (13.0 - 8.0 * y2))) * theta(y, h) +
                y * (h * (8.0 * (3.0 * h * z0 + h2 + 2.0 * y2 + z0 * z0) - 13.0) + z0 * (8.0 * (2.0 * y2 - z0 * z0) - 13.0)) *
                    theta(z0, h) +
                h * (z0 * (8.0 * (h2 + 6.0 * y2 - 4.0 * y * z0) - 13.0) + y * (13.0 - 8.0 * (h2 + 2.0 * y2))) * theta(0.0, h) +
                16.0 * y * z0 * (y2 * y - 2.0 * y2 * z0 + z0 * z0 * z0);
            const double logs =
                (y - z0) * (1.0 - 16.0 * (h2 + y2 / 3.0 - 2.0 * y * z0 / 3.0)) * ash(2.0 * h) +
                z0 * (1.0 - 16.0 * (y + h) * (y + h)) * ash(2.0 * (y + h)) -
                y * (1.0 - 16.0 * (h2 + y2 / 3.0 + 2.0 * h * z0 + 2.0 * z0 * z0 / 3.0)) * ash(2.0 * (z0 + h));
            return poly / (192.0 * z0) + logs / (128.0 * z0);
        }};
    eh.tail = [z0, beta, theta](double h) { return beta * (theta(z0, h) - 2.0 * (h + z0)); };
    eh.analytic_shift = [z0, alpha, beta, theta, ash](double h) {
        const double d = alpha - beta;
        return (d * h / (2.0 * z0) + alpha) * theta(0.0, h) - d / 2.0 * (h / z0 + 1.0) * theta(z0, h) - 2.0 * beta * h +
               z0 * d + d / (4.0 * z0) * (ash(2.0 * h) - ash(2.0 * (z0 + h)));
    };

    ps->equations = {ev, eh};

    // Exact readings: [0, z0] part by quadrature plus the sigma = beta tail.
    Eigen::VectorXd g = apply_forward(*ps, truth.eval, {}, truth.breakpoints);
    Eigen::Index j = 0;
    for (const Equation& e : ps->equations)
        for (double h : e.nodes) g[j++] += e.tail(h);
    ps->rhs_exact = g;

    for (double z : uniform_grid(ps->iv, 401)) {
        if (truth.eval(z) < 0.0) {
            ps->warnings.push_back("truth profile is negative on [0, z0]");
            break;
        }
    }
    ps->validate();
    return ps;
}

std::shared_ptr<const ProblemSpec> make_problem(const std::string& name, int n, double z0)
{
    if (name == "tp1") return test_problem_1(n);
    if (name == "tp2") return test_problem_2(n);
    if (name.rfind("fdem:", 0) == 0) {
        FdemConfig cfg;
        cfg.z0 = z0;
        cfg.n = n;
        return fdem_problem(cfg, truth_profile(name.substr(5)));
    }
    throw InvalidArgument("unknown problem '" + name + "'");
}

double GalerkinResult::value(double t) const
{
    const double ht = pi / n;
    auto box = static_cast<Eigen::Index>(std::floor(t / ht));
    box = std::clamp<Eigen::Index>(box, 0, n - 1);
    return solution[box] / std::sqrt(ht);
}

GalerkinResult galerkin_baseline(int n)
{
    if (n < 2) throw InvalidArgument("galerkin_baseline: n must be >= 2");

    const std::vector<std::function<double(double, double)>> kernels = {
        [](double x, double t) { return std::exp(x * std::cos(t)); },
        [](double x, double t) { return x * t + std::exp(x * t); },
    };
    // Both right-hand sides tend to 2 as x -> 0.
    const std::vector<std::function<double(double)>> data = {
        [](double x) { return x == 0.0 ? 2.0 : 2.0 * std::sinh(x) / x; },
        [](double x) { return pi * x + (1.0 + std::exp(pi * x)) / (1.0 + x * x); },
    };

    const double hs = pi / (2.0 * n);
    const double ht = pi / n;
    IntegrationConfig cfg;
    cfg.order = 32;
    const QuadratureRule& rule = cached_rule(cfg.order);

    GalerkinResult r;
    r.n = n;
    r.matrix.resize(2 * n, n);
    r.rhs.resize(2 * n);
    for (int l = 0; l < 2; ++l) {
        for (int i = 0; i < n; ++i) {
            const double xa = i * hs;
            const double xb = (i + 1) * hs;
            r.rhs[l * n + i] = hs / 6.0 * (data[l](xa) + 4.0 * data[l](0.5 * (xa + xb)) + data[l](xb)) / std::sqrt(hs);
            const auto x_integral = [&](double t) {
                return integrate_panels([&](double x) { return kernels[l](x, t); }, xa, xb, 1, rule);
            };
            for (int j = 0; j < n; ++j) {
                const double ta = j * ht;
                const double tb = (j + 1) * ht;
                r.matrix(l * n + i, j) =
                    ht / 6.0 * (x_integral(ta) + 4.0 * x_integral(0.5 * (ta + tb)) + x_integral(tb)) / std::sqrt(hs * ht);
            }
        }
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(r.matrix);
    r.rank = cod.rank();
    r.rank_deficient = r.rank < n;
    r.solution = cod.solve(r.rhs);
    return r;
}

}  // namespace fredholm
