#pragma once

#include <cstddef>
#include <vector>

namespace hpcloud {

struct GridConfig {
    int n_intervals = 600;          ///< nodes are x_0..x_n
    double domain_start = 0.0;      ///< bohr
    double domain_end = 100.0;      ///< bohr
    double intensity = 1e-5;        ///< eps in (0, 1]; smaller drags nodes toward the origin
    double influence_factor = 2.2;  ///< nu > 1; cloud radius in units of the larger adjacent spacing

    void validate() const;
};

/// Exponentially distributed nodes with per-node cloud radii.
class Grid {
public:
    Grid(std::vector<double> nodes, double influence_factor);

    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double node(std::size_t i) const { return nodes_[i]; }

    /// h_k = x_k - x_{k-1}, k = 1..n.
    double spacing(std::size_t k) const { return nodes_[k] - nodes_[k - 1]; }
    double max_spacing() const noexcept;

    /// rho_j = nu * max{h_j, h_{j+1}}; the end nodes see a single spacing.
    double dilation(std::size_t j) const { return dilations_[j]; }
    const std::vector<double>& dilations() const noexcept { return dilations_; }

    double influence_factor() const noexcept { return nu_; }
    double start() const noexcept { return nodes_.front(); }
    double end() const noexcept { return nodes_.back(); }

    /// Index k with x in [x_k, x_{k+1}]; clamps to the last interval at x_n.
    std::size_t locate(double x) const;

private:
    std::vector<double> nodes_;
    std::vector<double> dilations_;
    double nu_;
};

Grid generate_grid(const GridConfig& cfg);

}  // namespace hpcloud
