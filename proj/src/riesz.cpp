#include "fredholm/riesz.hpp"

#include "fredholm/errors.hpp"

#include <cmath>
#include <sstream>

namespace fredholm {

Eigen::Index ProblemSpec::total_nodes() const
{
    Eigen::Index total = 0;
    for (const Equation& eq : equations) total += static_cast<Eigen::Index>(eq.nodes.size());
    return total;
}

void ProblemSpec::validate() const
{
    if (equations.empty()) throw InvalidArgument("ProblemSpec: no equations");
    for (const Equation& eq : equations) {
        if (eq.nodes.empty()) throw InvalidArgument("ProblemSpec: equation '" + eq.name + "' has no nodes");
        if (!eq.kernel) throw InvalidArgument("ProblemSpec: equation '" + eq.name + "' has no kernel");
        for (double x : eq.nodes) {
            if (!(x >= eq.range_lo && x <= eq.range_hi)) {
                std::ostringstream msg;
                msg << "ProblemSpec: node " << x << " of equation '" << eq.name
                    << "' outside its collocation range";
                throw InvalidArgument(msg.str());
            }
        }
    }
    if (rhs_exact && rhs_exact->size() != total_nodes())
        throw InvalidArgument("ProblemSpec: rhs_exact length does not match node count");
}

IndexMap::IndexMap(const ProblemSpec& ps)
{
    offsets_.push_back(0);
    for (const Equation& eq : ps.equations)
        offsets_.push_back(offsets_.back() + static_cast<Eigen::Index>(eq.nodes.size()));
}

Eigen::Index IndexMap::index(Eigen::Index eq, Eigen::Index node) const
{
    if (eq < 0 || eq >= equations()) throw InvalidArgument("IndexMap: equation index out of range");
    if (node < 0 || node >= offsets_[eq + 1] - offsets_[eq])
        throw InvalidArgument("IndexMap: node index out of range");
    return offsets_[eq] + node;
}

std::pair<Eigen::Index, Eigen::Index> IndexMap::location(Eigen::Index j) const
{
    if (j < 0 || j >= size()) throw InvalidArgument("IndexMap: representer index out of range");
    Eigen::Index eq = 0;
    while (offsets_[eq + 1] <= j) ++eq;
    return {eq, j - offsets_[eq]};
}

namespace {

const Equation& equation_at(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node)
{
    if (eq < 0 || eq >= static_cast<Eigen::Index>(ps.equations.size()))
        throw InvalidArgument("representer: equation index out of range");
    const Equation& e = ps.equations[eq];
    if (node < 0 || node >= static_cast<Eigen::Index>(e.nodes.size()))
        throw InvalidArgument("representer: node index out of range");
    return e;
}

bool use_closed_form(const Equation& e, Route route)
{
    if (route == Route::closed_form && !e.closed_form)
        throw InvalidArgument("representer: no closed form registered for equation '" + e.name + "'");
    return route != Route::quadrature && e.closed_form.has_value();
}

double second_by_quadrature(const ProblemSpec& ps, const Equation& e, double x, double z,
                            const IntegrationConfig& cfg)
{
    // G_t''(z) vanishes for every t when z is an endpoint.
    if (z <= ps.iv.a || z >= ps.iv.b) return 0.0;
    const auto integrand = [&](double t) { return reproducing_kernel_second(t, z, ps.iv) * e.kernel(x, t); };
    std::vector<double> cuts = e.kernel_breakpoints;
    cuts.push_back(z);
    return integrate_split(integrand, ps.iv.a, ps.iv.b, std::move(cuts), cfg);
}

}  // namespace

double representer_second(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node, double z,
                          const IntegrationConfig& cfg, Route route)
{
    const Equation& e = equation_at(ps, eq, node);
    z = ps.iv.clamp(z);
    const double x = e.nodes[node];
    if (use_closed_form(e, route)) return e.closed_form->second(x, z);
    return second_by_quadrature(ps, e, x, z, cfg);
}

double representer_value(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node, double y,
                         const IntegrationConfig& cfg, Route route)
{
    const Equation& e = equation_at(ps, eq, node);
    y = ps.iv.clamp(y);
    const double x = e.nodes[node];
    if (y <= ps.iv.a || y >= ps.iv.b) return 0.0;
    if (use_closed_form(e, route)) return e.closed_form->value(x, y);

    const auto integrand = [&](double t) { return e.kernel(x, t) * reproducing_kernel_closed(t, y, ps.iv); };
    std::vector<double> cuts = e.kernel_breakpoints;
    cuts.push_back(y);
    return integrate_split(integrand, ps.iv.a, ps.iv.b, std::move(cuts), cfg);
}

double representer_value_nested(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node,
                                double y, const IntegrationConfig& cfg)
{
    const Equation& e = equation_at(ps, eq, node);
    y = ps.iv.clamp(y);
    const double x = e.nodes[node];
    const auto outer = [&](double z) {
        return reproducing_kernel_second(y, z, ps.iv) * second_by_quadrature(ps, e, x, z, cfg);
    };
    return integrate_split(outer, ps.iv.a, ps.iv.b, {y}, cfg);
}

RieszBasis::RieszBasis(std::shared_ptr<const ProblemSpec> ps, BasisConfig cfg)
    : ps_(std::move(ps)), cfg_(cfg)
{
    if (!ps_) throw InvalidArgument("RieszBasis: null problem");
    ps_->validate();
    cfg_.quad.validate();
    map_ = IndexMap(*ps_);
    grid_ = composite_grid(ps_->iv.a, ps_->iv.b, cfg_.gram_panels, cfg_.quad.order);

    samples_.resize(map_.size(), static_cast<Eigen::Index>(grid_.size()));
    for (Eigen::Index j = 0; j < map_.size(); ++j) {
        const auto [eq, node] = map_.location(j);
        for (std::size_t k = 0; k < grid_.size(); ++k)
            samples_(j, static_cast<Eigen::Index>(k)) =
                representer_second(*ps_, eq, node, grid_.nodes[k], cfg_.quad, cfg_.route);
    }
}

double RieszBasis::eval_second(Eigen::Index j, double z) const
{
    const auto [eq, node] = map_.location(j);
    return representer_second(*ps_, eq, node, z, cfg_.quad, cfg_.route);
}

double RieszBasis::eval_value(Eigen::Index j, double y) const
{
    const auto [eq, node] = map_.location(j);
    return representer_value(*ps_, eq, node, y, cfg_.quad, cfg_.route);
}

Eigen::MatrixXd RieszBasis::value_matrix(const std::vector<double>& points) const
{
    Eigen::MatrixXd values(map_.size(), static_cast<Eigen::Index>(points.size()));
    for (Eigen::Index j = 0; j < map_.size(); ++j)
        for (std::size_t k = 0; k < points.size(); ++k)
            values(j, static_cast<Eigen::Index>(k)) = eval_value(j, points[k]);
    return values;
}

RieszBasis build_basis(std::shared_ptr<const ProblemSpec> ps, const BasisConfig& cfg)
{
    return RieszBasis(std::move(ps), cfg);
}

double w_inner(const QuadratureGrid& grid, const Eigen::VectorXd& f2, const Eigen::VectorXd& g2)
{
    if (f2.size() != static_cast<Eigen::Index>(grid.size()) || g2.size() != f2.size())
        throw InvalidArgument("w_inner: sample vectors do not match the grid");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < f2.size(); ++k) sum += grid.weights[static_cast<std::size_t>(k)] * f2[k] * g2[k];
    return sum;
}

}  // namespace fredholm
