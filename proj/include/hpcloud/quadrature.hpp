#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpcloud/grid.hpp"

namespace hpcloud {

/// Two-point Gauss-Legendre rule on cells that tile the nodal intervals.
struct QuadratureRule {
    struct Cell {
        double a, b;
        std::size_t interval;  ///< nodal interval k, i.e. [x_k, x_{k+1}]
    };
    std::vector<Cell> cells;
    std::vector<double> points;
    std::vector<double> weights;
    std::vector<std::size_t> point_interval;  ///< nodal interval of each point
    int factor = 10;

    static constexpr int points_per_cell = 2;
    std::size_t total_points() const noexcept { return points.size(); }
};

/// Splits each nodal interval into factor/2 equal cells with two Gauss points
/// each (factor * n points in total). Cells that straddle a breakpoint are
/// split there, so a kink in the integrand never sits inside a cell.
QuadratureRule build_quadrature(const Grid& grid, int factor, std::span<const double> breakpoints = {});

/// Sum of f over the rule.
template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) s += rule.weights[q] * f(rule.points[q]);
    return s;
}

}  // namespace hpcloud
