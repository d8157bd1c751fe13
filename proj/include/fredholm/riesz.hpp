#pragma once

#include "fredholm/quadrature.hpp"
#include "fredholm/rkhs.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fredholm {

/// k(x, t): collocation variable x, integration variable t.
using Kernel = std::function<double(double x, double t)>;

/// Closed forms of eta'' and eta for one equation, as functions of the
/// collocation node x and the abscissa.
struct AnalyticRepresenter {
    std::function<double(double x, double z)> second;
    std::function<double(double x, double y)> value;
};

/// One first-kind equation int_a^b k(x, t) f(t) dt = g(x), collocated at nodes.
struct Equation {
    std::string name;
    Kernel kernel;
    std::vector<double> nodes;
    /// Collocation range [c, d] the nodes must lie in.
    double range_lo = 0.0;
    double range_hi = 0.0;
    std::optional<AnalyticRepresenter> closed_form;
    /// Known data contribution not modelled on [a, b] (e.g. a truncated tail),
    /// subtracted from g before solving.
    std::function<double(double x)> tail;
    /// Closed form of tail(x) + int k(x, t) gamma(t) dt.
    std::function<double(double x)> analytic_shift;
    /// Kinks of t -> k(x, t), if any.
    std::vector<double> kernel_breakpoints;
};

/// Full description of one overdetermined system with boundary constraints.
struct ProblemSpec {
    std::string label;
    Interval iv;
    BoundaryValues bv;
    std::vector<Equation> equations;
    /// Exact (unshifted) data g in block order, if known.
    std::optional<Eigen::VectorXd> rhs_exact;
    /// Exact solution f, if known, and its kinks.
    std::function<double(double)> truth;
    std::vector<double> truth_breakpoints;
    std::vector<std::string> warnings;

    Eigen::Index total_nodes() const;
    /// Throws InvalidArgument on an empty equation or a node out of range.
    void validate() const;
};

/// Block index map j = i + N_{l-1}, zero-based on both sides.
class IndexMap {
public:
    IndexMap() = default;
    explicit IndexMap(const ProblemSpec& ps);

    Eigen::Index size() const { return offsets_.empty() ? 0 : offsets_.back(); }
    Eigen::Index equations() const { return static_cast<Eigen::Index>(offsets_.size()) - 1; }
    Eigen::Index index(Eigen::Index eq, Eigen::Index node) const;
    std::pair<Eigen::Index, Eigen::Index> location(Eigen::Index j) const;

private:
    std::vector<Eigen::Index> offsets_;
};

enum class Route {
    automatic,    ///< closed form when registered, else quadrature
    closed_form,  ///< closed form, InvalidArgument when absent
    quadrature,   ///< always quadrature
};

/// eta''_{eq,node}(z) = int G_t''(z) k(x, t) dt.
double representer_second(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node, double z,
                          const IntegrationConfig& cfg = {}, Route route = Route::automatic);

/// eta_{eq,node}(y). The quadrature route integrates k(x, t) G(t, y) dt with the
/// closed-form reproducing kernel, which equals the nested form below.
double representer_value(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node, double y,
                         const IntegrationConfig& cfg = {}, Route route = Route::automatic);

/// eta(y) = int G_y''(z) eta''(z) dz with eta'' itself from quadrature. Slow;
/// an independent cross-check for the closed forms and the fast route.
double representer_value_nested(const ProblemSpec& ps, Eigen::Index eq, Eigen::Index node,
                                double y, const IntegrationConfig& cfg = {});

struct BasisConfig {
    IntegrationConfig quad;
    /// Panels of the fixed composite grid used for W inner products.
    int gram_panels = 4;
    Route route = Route::automatic;
};

/// The N_m Riesz representers of a problem, with eta'' memoized on a fixed
/// composite Gauss-Legendre grid. Immutable once built.
class RieszBasis {
public:
    RieszBasis(std::shared_ptr<const ProblemSpec> ps, BasisConfig cfg);

    const ProblemSpec& problem() const { return *ps_; }
    std::shared_ptr<const ProblemSpec> problem_ptr() const { return ps_; }
    const BasisConfig& config() const { return cfg_; }
    const IndexMap& index_map() const { return map_; }
    Eigen::Index size() const { return map_.size(); }

    double eval_second(Eigen::Index j, double z) const;
    double eval_value(Eigen::Index j, double y) const;

    const QuadratureGrid& grid() const { return grid_; }
    /// N_m x grid-size matrix of eta''_j at the grid nodes.
    const Eigen::MatrixXd& second_samples() const { return samples_; }

    /// N_m x points matrix of eta_j(t).
    Eigen::MatrixXd value_matrix(const std::vector<double>& points) const;

private:
    std::shared_ptr<const ProblemSpec> ps_;
    BasisConfig cfg_;
    IndexMap map_;
    QuadratureGrid grid_;
    Eigen::MatrixXd samples_;
};

RieszBasis build_basis(std::shared_ptr<const ProblemSpec> ps, const BasisConfig& cfg = {});

/// <f, g>_W given f'' and g'' sampled on the basis grid.
double w_inner(const QuadratureGrid& grid, const Eigen::VectorXd& f2, const Eigen::VectorXd& g2);

}  // namespace fredholm
