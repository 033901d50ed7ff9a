#include "hpcloud/grid.hpp"

#include <algorithm>
#include <cmath>

#include "hpcloud/errors.hpp"

namespace hpcloud {

void GridConfig::validate() const {
    if (n_intervals < 2) throw ConfigError("n_intervals", "need at least 2 intervals");
    if (!(domain_start < domain_end)) throw ConfigError("domain_end", "domain_start must be below domain_end");
    if (domain_start < 0.0) throw ConfigError("domain_start", "radial domain must start at x >= 0");
    if (!(intensity > 0.0) || intensity > 1.0) throw ConfigError("eps", "intensity must lie in (0, 1]");
    if (!(influence_factor > 1.0)) throw ConfigError("nu", "influence factor must exceed 1");
}

Grid::Grid(std::vector<double> nodes, double influence_factor)
    : nodes_(std::move(nodes)), nu_(influence_factor) {
    if (nodes_.size() < 3) throw ConfigError("nodes", "need at least 3 nodes");
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (!(nodes_[i] > nodes_[i - 1])) throw ConfigError("nodes", "nodes must be strictly increasing");
    const std::size_t n = intervals();
    dilations_.resize(n + 1);
    dilations_[0] = nu_ * spacing(1);
    dilations_[n] = nu_ * spacing(n);
    for (std::size_t j = 1; j < n; ++j) dilations_[j] = nu_ * std::max(spacing(j), spacing(j + 1));
}

double Grid::max_spacing() const noexcept {
    double h = 0.0;
    for (std::size_t k = 1; k < nodes_.size(); ++k) h = std::max(h, spacing(k));
    return h;
}

std::size_t Grid::locate(double x) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    if (it == nodes_.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(k, intervals() - 1);
}

Grid generate_grid(const GridConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.n_intervals);
    const double lo = std::log(cfg.domain_start + cfg.intensity);
    const double step = (std::log(cfg.domain_end + cfg.intensity) - lo) / static_cast<double>(n);
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i) x[i] = std::exp(lo + step * static_cast<double>(i)) - cfg.intensity;
    // exp/log round-off would otherwise leave the endpoints a few ulps off
    x.front() = cfg.domain_start;
    x.back() = cfg.domain_end;
    return Grid(std::move(x), cfg.influence_factor);
}

}  // namespace hpcloud
