#include "hpcloud/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hpcloud/errors.hpp"

namespace hpcloud {

QuadratureRule build_quadrature(const Grid& grid, int factor, std::span<const double> breakpoints) {
    if (factor < 2 || factor % 2 != 0) throw ConfigError("quadrature_factor", "must be an even integer >= 2");
    QuadratureRule rule;
    rule.factor = factor;
    const int per_interval = factor / 2;
    const double g = 1.0 / std::sqrt(3.0);

    auto push_cell = [&](double a, double b, std::size_t k) {
        rule.cells.push_back({a, b, k});
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (double s : {-g, g}) {
            rule.points.push_back(mid + half * s);
            rule.weights.push_back(half);
            rule.point_interval.push_back(k);
        }
    };

    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double x0 = grid.node(k), x1 = grid.node(k + 1);
        const double h = (x1 - x0) / per_interval;
        for (int c = 0; c < per_interval; ++c) {
            const double a = x0 + c * h;
            const double b = (c + 1 == per_interval) ? x1 : x0 + (c + 1) * h;
            std::vector<double> cuts{a};
            for (double r : breakpoints)
                if (r > a && r < b) cuts.push_back(r);
            std::sort(cuts.begin() + 1, cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            cuts.push_back(b);
            for (std::size_t s = 0; s + 1 < cuts.size(); ++s) push_cell(cuts[s], cuts[s + 1], k);
        }
    }
    return rule;
}

}  // namespace hpcloud
