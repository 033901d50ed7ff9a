#include "hpcloud/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hpcloud/errors.hpp"

namespace hpcloud {

namespace {

// node -> dof map; -1 for eliminated boundary nodes
std::vector<long> dof_map(const CloudBasis& basis) {
    std::vector<long> map(basis.grid().node_count(), -1);
    const auto dofs = basis.retained_indices();
    for (std::size_t r = 0; r < dofs.size(); ++r) map[dofs[r]] = static_cast<long>(r);
    return map;
}

int thread_count(Execution exec) {
#ifdef _OPENMP
    if (exec == Execution::openmp) return omp_get_max_threads();
#else
    (void)exec;
#endif
    return 1;
}

}  // namespace

std::vector<std::pair<std::size_t, double>> smoothed_derivative(const CloudBasis& basis, std::size_t interval) {
    const Grid& g = basis.grid();
    if (interval >= g.intervals()) throw DomainError("smoothed_derivative: no such interval");
    const double h = g.node(interval + 1) - g.node(interval);
    if (!(h > 0.0)) throw DomainError("smoothed_derivative: zero-length cell");
    const ShapeEval left = basis.evaluate_coupled(g.node(interval));
    const ShapeEval right = basis.evaluate_coupled(g.node(interval + 1));
    std::map<std::size_t, double> diff;
    for (std::size_t a = 0; a < right.active.size(); ++a) diff[right.active[a]] += right.values[a];
    for (std::size_t a = 0; a < left.active.size(); ++a) diff[left.active[a]] -= left.values[a];
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(diff.size());
    for (const auto& [node, d] : diff) out.emplace_back(node, d / h);
    return out;
}

std::vector<PointShapes> evaluate_points(const CloudBasis& basis, const QuadratureRule& quad,
                                         const AssemblyOptions& options) {
    const auto map = dof_map(basis);
    const std::size_t count = quad.total_points();
    std::vector<PointShapes> out(count);

    std::vector<std::vector<std::pair<std::size_t, double>>> smoothed;
    if (options.derivative == DerivativeMode::smoothed) {
        smoothed.resize(basis.grid().intervals());
        for (std::size_t k = 0; k < smoothed.size(); ++k) smoothed[k] = smoothed_derivative(basis, k);
    }

    std::exception_ptr failure;
    const int threads = thread_count(options.execution);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads) if (threads > 1)
    for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(count); ++qi) {
        const auto q = static_cast<std::size_t>(qi);
        try {
            const ShapeEval ev = basis.evaluate_coupled(quad.points[q]);
            PointShapes& ps = out[q];
            if (options.derivative == DerivativeMode::pointwise) {
                for (std::size_t a = 0; a < ev.active.size(); ++a) {
                    const long d = map[ev.active[a]];
                    if (d < 0) continue;
                    ps.dof.push_back(static_cast<std::size_t>(d));
                    ps.value.push_back(ev.values[a]);
                    ps.deriv.push_back(ev.derivs[a]);
                }
            } else {
                std::map<std::size_t, std::pair<double, double>> merged;
                for (std::size_t a = 0; a < ev.active.size(); ++a) merged[ev.active[a]].first = ev.values[a];
                for (const auto& [node, d] : smoothed[quad.point_interval[q]]) merged[node].second = d;
                for (const auto& [node, vd] : merged) {
                    const long d = map[node];
                    if (d < 0) continue;
                    ps.dof.push_back(static_cast<std::size_t>(d));
                    ps.value.push_back(vd.first);
                    ps.deriv.push_back(vd.second);
                }
            }
        } catch (...) {
#pragma omp critical(hpcloud_eval_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

WeakFormMatrices assemble_weak_form(const CloudBasis& basis, const PhysicalSystem& sys, const QuadratureRule& quad,
                                    const AssemblyOptions& options) {
    const auto shapes = evaluate_points(basis, quad, options);
    WeakFormMatrices w;
    w.dofs = basis.retained_indices();
    const auto N = static_cast<Eigen::Index>(w.dofs.size());
    for (Matrix* m : {&w.m000, &w.m010, &w.m001, &w.m100, &w.m110, &w.m101, &w.m000_v, &w.m100_v})
        m->setZero(N, N);

    const std::size_t count = quad.total_points();
    std::vector<double> pot(count), inv_x(count);
    for (std::size_t q = 0; q < count; ++q) {
        pot[q] = potential(sys, quad.points[q]);
        inv_x[q] = 1.0 / quad.points[q];
    }

    // Each thread owns a block of rows and walks the points in order, so the
    // summation order per entry matches the serial path exactly.
    const int threads = thread_count(options.execution);
#pragma omp parallel num_threads(threads) if (threads > 1)
    {
        int tid = 0, nth = 1;
#ifdef _OPENMP
        tid = omp_get_thread_num();
        nth = omp_get_num_threads();
#endif
        const Eigen::Index lo = N * tid / nth, hi = N * (tid + 1) / nth;
        for (std::size_t q = 0; q < count; ++q) {
            const PointShapes& ps = shapes[q];
            const double wq = quad.weights[q], V = pot[q], ix = inv_x[q];
            for (std::size_t a = 0; a < ps.dof.size(); ++a) {
                const auto i = static_cast<Eigen::Index>(ps.dof[a]);
                if (i < lo || i >= hi) continue;
                const double vi = ps.value[a] * wq, di = ps.deriv[a] * wq;
                for (std::size_t b = 0; b < ps.dof.size(); ++b) {
                    const auto j = static_cast<Eigen::Index>(ps.dof[b]);
                    const double vj = ps.value[b], dj = ps.deriv[b];
                    w.m000(i, j) += vi * vj;
                    w.m010(i, j) += vi * dj;
                    w.m100(i, j) += di * vj;
                    w.m001(i, j) += vi * vj * ix;
                    w.m110(i, j) += di * dj;
                    w.m101(i, j) += di * vj * ix;
                    w.m000_v(i, j) += vi * vj * V;
                    w.m100_v(i, j) += di * vj * V;
                }
            }
        }
    }
    return w;
}

std::vector<double> theta_weights(const Grid& grid, std::size_t j, const std::vector<std::size_t>& indices) {
    std::vector<double> theta;
    theta.reserve(indices.size());
    const double xj = grid.node(j);
    for (std::size_t i : indices) theta.push_back(i == j ? 0.0 : grid.node(i) - xj);
    return theta;
}

std::vector<double> theta_weights(const Grid& grid, std::size_t j) {
    std::vector<std::size_t> idx(grid.intervals());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i + 1;
    return theta_weights(grid, j, idx);
}

Vector stability_tau(const Matrix& m000, const Matrix& m100, const Grid& grid, const std::vector<std::size_t>& dofs) {
    const auto N = static_cast<Eigen::Index>(dofs.size());
    if (m000.rows() != N || m100.rows() != N || m000.cols() != N || m100.cols() != N)
        throw DomainError("stability_tau: matrix/dof size mismatch");
    Vector tau(N);
    for (Eigen::Index r = 0; r < N; ++r) {
        const auto theta = theta_weights(grid, dofs[static_cast<std::size_t>(r)], dofs);
        double num = 0.0, den = 0.0, scale = 0.0;
        for (Eigen::Index c = 0; c < N; ++c) {
            const double t = theta[static_cast<std::size_t>(c)];
            num += m000(r, c) * t;
            den += m100(r, c) * t;
            scale += std::abs(m100(r, c) * t);
        }
        if (den == 0.0 || std::abs(den) <= 1e-14 * scale) throw DegenerateTau(static_cast<std::size_t>(r));
        tau[r] = std::abs(num / den);
    }
    return tau;
}

Vector stability_tau(const WeakFormMatrices& wfm, const Grid& grid) {
    return stability_tau(wfm.m000, wfm.m100, grid, wfm.dofs);
}

double stability_tau_fem(const Grid& grid, std::size_t j) {
    if (j < 1 || j >= grid.intervals()) throw DomainError("stability_tau_fem: j must be an interior node");
    const double hj = grid.spacing(j), hj1 = grid.spacing(j + 1);
    return 3.0 / 17.0 * hj1 * (hj1 - hj) / (hj1 + hj);
}

Vector stability_tau_fem(const Grid& grid, const std::vector<std::size_t>& dofs) {
    Vector tau(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t r = 0; r < dofs.size(); ++r) tau[static_cast<Eigen::Index>(r)] = stability_tau_fem(grid, dofs[r]);
    return tau;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::galerkin: return "galerkin";
        case Method::cpg: return "cpg";
        case Method::cpg_fem_tau: return "cpg_fem_tau";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "galerkin") return Method::galerkin;
    if (s == "cpg") return Method::cpg;
    if (s == "cpg_fem_tau") return Method::cpg_fem_tau;
    throw ConfigError("method", "unknown method '" + s + "' (galerkin, cpg, cpg_fem_tau)");
}

AssembledSystem assemble_system(const WeakFormMatrices& w, const PhysicalSystem& sys, Method method,
                                const Vector& tau) {
    const auto N = static_cast<Eigen::Index>(w.size());
    for (const Matrix* m : {&w.m000, &w.m010, &w.m001, &w.m100, &w.m110, &w.m101, &w.m000_v, &w.m100_v})
        if (m->rows() != N || m->cols() != N) throw DomainError("assemble_system: dimension mismatch");
    if (method != Method::galerkin && tau.size() != N) throw DomainError("assemble_system: tau size mismatch");

    const double c = sys.c, k = sys.kappa, mc2 = sys.rest_energy();
    AssembledSystem s;
    s.method = method;
    s.A.resize(2 * N, 2 * N);
    s.A.topLeftCorner(N, N) = mc2 * w.m000 + w.m000_v;
    s.A.topRightCorner(N, N) = -c * w.m010 + c * k * w.m001;
    s.A.bottomLeftCorner(N, N) = c * w.m010 + c * k * w.m001;
    s.A.bottomRightCorner(N, N) = -mc2 * w.m000 + w.m000_v;
    s.B.setZero(2 * N, 2 * N);
    s.B.topLeftCorner(N, N) = w.m000;
    s.B.bottomRightCorner(N, N) = w.m000;

    if (method == Method::galerkin) {
        s.tau.setZero(N);
        return s;
    }
    s.tau = tau;
    s.script_A.resize(2 * N, 2 * N);
    s.script_A.topLeftCorner(N, N) = c * w.m110 + c * k * w.m101;
    s.script_A.topRightCorner(N, N) = -mc2 * w.m100 + w.m100_v;
    s.script_A.bottomLeftCorner(N, N) = mc2 * w.m100 + w.m100_v;
    s.script_A.bottomRightCorner(N, N) = -c * w.m110 + c * k * w.m101;
    s.script_B.setZero(2 * N, 2 * N);
    s.script_B.topRightCorner(N, N) = w.m100;
    s.script_B.bottomLeftCorner(N, N) = w.m100;

    Vector row_tau(2 * N);
    row_tau << tau, tau;
    s.A += row_tau.asDiagonal() * s.script_A;
    s.B += row_tau.asDiagonal() * s.script_B;
    return s;
}

AssembledSystem assemble_system(const WeakFormMatrices& wfm, const PhysicalSystem& sys, const Grid& grid,
                                Method method) {
    switch (method) {
        case Method::galerkin: return assemble_system(wfm, sys, method, Vector::Zero(static_cast<Eigen::Index>(wfm.size())));
        case Method::cpg: return assemble_system(wfm, sys, method, stability_tau(wfm, grid));
        case Method::cpg_fem_tau: return assemble_system(wfm, sys, method, stability_tau_fem(grid, wfm.dofs));
    }
    throw DomainError("assemble_system: unknown method");
}

void write_triplets(std::ostream& os, const Matrix& m) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    os << "# rows " << m.rows() << " cols " << m.cols() << "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) os << i << ' ' << j << ' ' << m(i, j) << '\n';
    os.flags(flags);
    os.precision(prec);
}

}  // namespace hpcloud
