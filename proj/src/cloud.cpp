#include "hpcloud/cloud.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpcloud/errors.hpp"

namespace hpcloud {

double ShapeEval::value_sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
double ShapeEval::deriv_sum() const { return std::accumulate(derivs.begin(), derivs.end(), 0.0); }

/// Right-hand side of the moment system and its x-derivative. Without
/// boundary hats this is P(0) (shifted) or P(x).
struct CloudBasis::Target {
    Eigen::VectorXd q;
    Eigen::VectorXd dq;
};

CloudBasis::CloudBasis(Grid grid, EnrichmentBasis basis, WeightFunction weight, CloudOptions options)
    : grid_(std::move(grid)), basis_(std::move(basis)), weight_(weight), options_(options) {
    const std::size_t count = grid_.node_count();
    prefix_max_hi_.resize(count);
    suffix_min_lo_.resize(count);
    double hi = -HUGE_VAL;
    for (std::size_t i = 0; i < count; ++i) {
        hi = std::max(hi, grid_.node(i) + grid_.dilation(i));
        prefix_max_hi_[i] = hi;
    }
    double lo = HUGE_VAL;
    for (std::size_t i = count; i-- > 0;) {
        lo = std::min(lo, grid_.node(i) - grid_.dilation(i));
        suffix_min_lo_[i] = lo;
    }
}

std::vector<std::size_t> CloudBasis::fem_nodes() const {
    const std::size_t n = grid_.intervals();
    return {0, 1, n - 1, n};
}

std::vector<std::size_t> CloudBasis::retained_indices() const {
    std::vector<std::size_t> idx(grid_.intervals() - 1);
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    return idx;
}

std::vector<std::size_t> apply_dirichlet(const CloudBasis& basis) { return basis.retained_indices(); }

void CloudBasis::covering_nodes(double x, std::size_t first, std::size_t last,
                                std::vector<std::size_t>& out) const {
    out.clear();
    if (first > last) return;
    const std::size_t k = std::clamp(grid_.locate(x), first, last);
    std::size_t lo = k;
    while (lo > first && prefix_max_hi_[lo - 1] > x) --lo;
    std::size_t hi = k;
    while (hi < last && suffix_min_lo_[hi + 1] < x) ++hi;
    for (std::size_t i = lo; i <= hi; ++i)
        if (std::abs(x - grid_.node(i)) < grid_.dilation(i)) out.push_back(i);
}

void CloudBasis::mls(double x, const std::vector<std::size_t>& nodes, const Target& target, ShapeEval& out,
                     bool allow_truncation) const {
    std::size_t m = basis_.size();
    if (nodes.size() < m) {
        if (!allow_truncation || nodes.empty())
            throw SingularMoment(x, 0.0, std::to_string(nodes.size()) + " covering clouds for " +
                                             std::to_string(m) + " enrichment functions");
        m = nodes.size();
    }

    const std::size_t count = nodes.size();
    const std::size_t full = basis_.size();
    std::vector<double> pbuf(full), dpbuf(full);
    Eigen::MatrixXd P(m, count), dP(m, count);
    Eigen::VectorXd w(count), dw(count);
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t i = nodes[c];
        const double xi = grid_.node(i);
        const double rho = grid_.dilation(i);
        const double r = std::abs(x - xi) / rho;
        w[c] = weight_.value(r);
        dw[c] = weight_.derivative(r) * (x >= xi ? 1.0 : -1.0) / rho;
        const double t = options_.origin_shift ? xi - x : xi;
        basis_.evaluate(t, pbuf, dpbuf);
        for (std::size_t k = 0; k < m; ++k) {
            P(k, c) = pbuf[k];
            // d/dx P(x_i - x) = -P'(x_i - x); unshifted node vectors are constant
            dP(k, c) = options_.origin_shift ? -dpbuf[k] : 0.0;
        }
    }

    Eigen::MatrixXd M = P * w.asDiagonal() * P.transpose();
    Eigen::MatrixXd dM = P * dw.asDiagonal() * P.transpose() + dP * w.asDiagonal() * P.transpose() +
                         P * w.asDiagonal() * dP.transpose();

    // Jacobi equilibration: the enrichment members live on very different
    // scales near the origin, which only inflates the raw condition number.
    Eigen::VectorXd d(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (!(M(k, k) > 0.0)) throw SingularMoment(x, 0.0, "zero diagonal in moment matrix");
        d[k] = 1.0 / std::sqrt(M(k, k));
    }
    const Eigen::MatrixXd Ms = d.asDiagonal() * M * d.asDiagonal();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Ms);
    const double rcond = lu.rcond();
    if (!(rcond * options_.condition_cap >= 1.0) || !std::isfinite(rcond))
        throw SingularMoment(x, rcond, "condition estimate above cap");
    auto solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
        return d.asDiagonal() * lu.solve(d.asDiagonal() * rhs);
    };

    const Eigen::VectorXd q = target.q.head(m);
    const Eigen::VectorXd dq = target.dq.head(m);
    const Eigen::VectorXd a = solve(q);
    const Eigen::VectorXd b = solve(dq - dM * a);

    out.moment_rcond = std::min(out.moment_rcond, rcond);
    for (std::size_t c = 0; c < count; ++c) {
        const auto Bi = P.col(c) * w[c];
        const Eigen::VectorXd dBi = P.col(c) * dw[c] + dP.col(c) * w[c];
        out.active.push_back(nodes[c]);
        out.values.push_back(a.dot(Bi));
        out.derivs.push_back(b.dot(Bi) + a.dot(dBi));
    }
}

ShapeEval CloudBasis::evaluate_clouds(double x) const {
    if (x < grid_.start() || x > grid_.end()) throw DomainError("evaluation point outside the grid");
    const std::size_t m = basis_.size();
    Target target{Eigen::VectorXd(m), Eigen::VectorXd::Zero(m)};
    std::vector<double> p(m), dp(m);
    basis_.evaluate(options_.origin_shift ? 0.0 : x, p, dp);
    for (std::size_t k = 0; k < m; ++k) {
        target.q[k] = p[k];
        if (!options_.origin_shift) target.dq[k] = dp[k];
    }
    std::vector<std::size_t> nodes;
    covering_nodes(x, 0, grid_.intervals(), nodes);
    ShapeEval out;
    out.x = x;
    mls(x, nodes, target, out, false);
    return out;
}

ShapeEval CloudBasis::evaluate_coupled(double x) const {
    if (x < grid_.start() || x > grid_.end()) throw DomainError("evaluation point outside the grid");
    const std::size_t n = grid_.intervals();
    if (n < 4) throw ConfigError("n_intervals", "boundary coupling needs at least 4 intervals");
    const auto& xs = grid_.nodes();
    ShapeEval out;
    out.x = x;

    // complete finite element zones: plain hats
    if (x <= xs[1]) {
        const double h = xs[1] - xs[0];
        out.active = {0, 1};
        out.values = {(xs[1] - x) / h, (x - xs[0]) / h};
        out.derivs = {-1.0 / h, 1.0 / h};
        return out;
    }
    if (x >= xs[n - 1]) {
        const double h = xs[n] - xs[n - 1];
        out.active = {n - 1, n};
        out.values = {(xs[n] - x) / h, (x - xs[n - 1]) / h};
        out.derivs = {-1.0 / h, 1.0 / h};
        return out;
    }

    // incomplete hat on a transition interval, if any
    std::size_t hat_node = 0;
    double hat = 0.0, dhat = 0.0;
    bool lower = false, upper = false;
    if (x < xs[2]) {
        lower = true;
        hat_node = 1;
        hat = (xs[2] - x) / (xs[2] - xs[1]);
        dhat = -1.0 / (xs[2] - xs[1]);
    } else if (x > xs[n - 2]) {
        upper = true;
        hat_node = n - 1;
        hat = (x - xs[n - 2]) / (xs[n - 1] - xs[n - 2]);
        dhat = 1.0 / (xs[n - 1] - xs[n - 2]);
    }

    const std::size_t m = basis_.size();
    Target target{Eigen::VectorXd(m), Eigen::VectorXd::Zero(m)};
    std::vector<double> p(m), dp(m);
    basis_.evaluate(options_.origin_shift ? 0.0 : x, p, dp);
    for (std::size_t k = 0; k < m; ++k) {
        target.q[k] = p[k];
        if (!options_.origin_shift) target.dq[k] = dp[k];
    }
    if (lower || upper) {
        const double xk = xs[hat_node];
        basis_.evaluate(options_.origin_shift ? xk - x : xk, p, dp);
        for (std::size_t k = 0; k < m; ++k) {
            target.q[k] -= hat * p[k];
            // shifted: d/dx [G(x) P(x_k - x)] = G' P - G P'
            target.dq[k] -= dhat * p[k] - (options_.origin_shift ? hat * dp[k] : 0.0);
        }
    }

    std::vector<std::size_t> nodes;
    covering_nodes(x, 2, n - 2, nodes);
    if (lower) {
        out.active.push_back(hat_node);
        out.values.push_back(hat);
        out.derivs.push_back(dhat);
    }
    mls(x, nodes, target, out, lower || upper);
    if (upper) {
        out.active.push_back(hat_node);
        out.values.push_back(hat);
        out.derivs.push_back(dhat);
    }
    return out;
}

}  // namespace hpcloud
