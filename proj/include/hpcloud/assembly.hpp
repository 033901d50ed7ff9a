#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hpcloud/cloud.hpp"
#include "hpcloud/physics.hpp"
#include "hpcloud/quadrature.hpp"

namespace hpcloud {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class DerivativeMode {
    pointwise,  ///< analytic shape-function derivatives at each point
    smoothed,   ///< cell-averaged derivative over the enclosing nodal interval
};

enum class Execution { serial, openmp };

struct AssemblyOptions {
    DerivativeMode derivative = DerivativeMode::pointwise;
    Execution execution = Execution::openmp;
};

/// (M_rst^q)_ij = int psi_j^(s) psi_i^(r) x^-t q(x) dx over the retained dofs;
/// r is the test-function derivative order and s the trial-function one.
struct WeakFormMatrices {
    std::vector<std::size_t> dofs;  ///< node index of each row/column
    Matrix m000, m010, m001, m100, m110, m101;
    Matrix m000_v, m100_v;          ///< weighted by the potential V

    std::size_t size() const noexcept { return dofs.size(); }
};

/// Shape values at every quadrature point, restricted to retained dofs.
struct PointShapes {
    std::vector<std::size_t> dof;  ///< dof (row) index, not node index
    std::vector<double> value;
    std::vector<double> deriv;
};

/// Kernel behind assembly: coupled shape functions at each quadrature point.
std::vector<PointShapes> evaluate_points(const CloudBasis& basis, const QuadratureRule& quad,
                                         const AssemblyOptions& options = {});

WeakFormMatrices assemble_weak_form(const CloudBasis& basis, const PhysicalSystem& sys, const QuadratureRule& quad,
                                    const AssemblyOptions& options = {});

/// (psi_i(x_{k+1}) - psi_i(x_k)) / (x_{k+1} - x_k) for nodal interval k,
/// as (node index, value) pairs.
std::vector<std::pair<std::size_t, double>> smoothed_derivative(const CloudBasis& basis, std::size_t interval);

/// theta_{ji} = x_i - x_j for each i in `indices` (signed sums of spacings).
std::vector<double> theta_weights(const Grid& grid, std::size_t j, const std::vector<std::size_t>& indices);
/// Same over nodes 1..n.
std::vector<double> theta_weights(const Grid& grid, std::size_t j);

/// Row-wise tau_j = | sum_i sigma_ji theta_ji / sum_i eta_ji theta_ji | with
/// sigma = M_000 and eta = M_100, rows indexed by `dofs`.
Vector stability_tau(const Matrix& m000, const Matrix& m100, const Grid& grid, const std::vector<std::size_t>& dofs);
Vector stability_tau(const WeakFormMatrices& wfm, const Grid& grid);

/// (3/17) h_{j+1} (h_{j+1} - h_j) / (h_{j+1} + h_j) for interior node j.
double stability_tau_fem(const Grid& grid, std::size_t j);
Vector stability_tau_fem(const Grid& grid, const std::vector<std::size_t>& dofs);

enum class Method { galerkin, cpg, cpg_fem_tau };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Generalized problem A X = lambda B X with X = (f, g).
struct AssembledSystem {
    Matrix A, B;                   ///< the perturbed matrices actually solved
    Matrix script_A, script_B;     ///< unscaled Petrov-Galerkin blocks (empty for galerkin)
    Vector tau;                    ///< per component row; zero for galerkin
    Method method = Method::galerkin;
};

/// Builds the block system. For the Petrov-Galerkin methods row j of both
/// perturbation blocks (in either block row) is scaled by tau_j before being added.
AssembledSystem assemble_system(const WeakFormMatrices& wfm, const PhysicalSystem& sys, Method method,
                                const Vector& tau);

/// Convenience: tau from the method, then assemble_system.
AssembledSystem assemble_system(const WeakFormMatrices& wfm, const PhysicalSystem& sys, const Grid& grid,
                                Method method);

/// "row col value" triplets (0-based, nonzeros only, 17 significant digits).
void write_triplets(std::ostream& os, const Matrix& m);

}  // namespace hpcloud
