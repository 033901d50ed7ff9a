#pragma once

#include <cstddef>
#include <vector>

#include "hpcloud/enrichment.hpp"
#include "hpcloud/grid.hpp"

namespace hpcloud {

/// Shape functions with nonzero support at one point.
struct ShapeEval {
    double x = 0.0;
    std::vector<std::size_t> active;  ///< global node indices, ascending
    std::vector<double> values;
    std::vector<double> derivs;
    double moment_rcond = 1.0;        ///< reciprocal condition of the equilibrated moment matrix (1 if unused)

    double value_sum() const;
    double deriv_sum() const;
};

struct CloudOptions {
    bool origin_shift = true;        ///< evaluate P at x_i - x instead of x_i
    double condition_cap = 1e12;
};

/// MLS hp-cloud shape functions over a grid, optionally coupled to linear
/// finite element hats on the first two and last two nodes.
///
/// In the coupled layout nodes 0, 1, n-1, n carry hats and nodes 2..n-2
/// carry clouds. Where the hats form a complete partition ([x_0, x_1] and
/// [x_{n-1}, x_n]) the clouds vanish. On the transition intervals
/// [x_1, x_2] and [x_{n-2}, x_{n-1}] the clouds are corrected with the
/// reproducing conditions so that hats and clouds together reproduce P.
class CloudBasis {
public:
    CloudBasis(Grid grid, EnrichmentBasis basis, WeightFunction weight = {}, CloudOptions options = {});

    const Grid& grid() const noexcept { return grid_; }
    const EnrichmentBasis& basis() const noexcept { return basis_; }
    const CloudOptions& options() const noexcept { return options_; }

    /// Plain MLS over every node (no boundary hats).
    ShapeEval evaluate_clouds(double x) const;

    /// Hats on the boundary nodes, corrected clouds elsewhere.
    ShapeEval evaluate_coupled(double x) const;

    /// Nodes kept after homogeneous Dirichlet conditions: all but x_0 and x_n.
    std::vector<std::size_t> retained_indices() const;

    /// Nodes whose shape functions are hats in the coupled layout.
    std::vector<std::size_t> fem_nodes() const;

private:
    struct Target;
    void covering_nodes(double x, std::size_t first, std::size_t last, std::vector<std::size_t>& out) const;
    void mls(double x, const std::vector<std::size_t>& nodes, const Target& target, ShapeEval& out,
             bool allow_truncation) const;

    Grid grid_;
    EnrichmentBasis basis_;
    WeightFunction weight_;
    CloudOptions options_;
    std::vector<double> prefix_max_hi_;  // max_{k<=i} (x_k + rho_k)
    std::vector<double> suffix_min_lo_;  // min_{k>=i} (x_k - rho_k)
};

std::vector<std::size_t> apply_dirichlet(const CloudBasis& basis);

}  // namespace hpcloud
