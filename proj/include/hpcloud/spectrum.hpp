#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpcloud/physics.hpp"

namespace hpcloud {

struct GeneralizedEigen {
    std::vector<std::complex<double>> values;
    std::optional<Eigen::MatrixXcd> vectors;  ///< right eigenvectors, column k for values[k]
    std::string route;                        ///< "lu+geev" or "qz"
};

struct SolveOptions {
    bool vectors = false;
    /// Below this reciprocal condition of the equilibrated B the LU reduction
    /// is abandoned for the QZ iteration.
    double reduction_rcond = 1e-10;
    bool force_qz = false;
};

/// All eigenvalues of A x = lambda B x. B is Jacobi-equilibrated, then either
/// reduced to a standard problem through its LU factors or handed to QZ.
GeneralizedEigen solve_generalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const SolveOptions& options = {});

/// ||A x - lambda B x|| / ((||A|| + |lambda| ||B||) ||x||), Frobenius norms for the matrices.
double eigen_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, std::complex<double> lambda,
                      const Eigen::VectorXcd& x);

enum class LevelFlag { genuine, instilled_spurious, coincidence_suspect, unmatched_tail };
std::string to_string(LevelFlag f);

struct ClassifyTolerances {
    double imag_tol = 1e-8;         ///< relative imaginary part still counted as real
    double match_tol = 1e-3;        ///< relative distance for a genuine match
    double coincidence_tol = 1e-6;  ///< relative distance to the opposite-kappa ground level
};

struct LevelMatch {
    int level = 0;         ///< 1-based physical level
    int nr = 0;            ///< radial quantum number of the exact level
    double computed = 0.0; ///< shifted by -mc^2
    double exact = 0.0;
    double relative_error = 0.0;
    std::size_t index = 0; ///< position in positive_shifted
};

struct SpectrumReport {
    std::vector<std::complex<double>> raw;
    std::vector<double> real_spectrum;     ///< ascending
    std::vector<double> positive_shifted;  ///< lambda - mc^2 for lambda > 0, ascending
    std::vector<double> negative_shifted;  ///< lambda + mc^2 for lambda < 0, descending (closest to the gap first)
    std::vector<LevelMatch> matches;
    std::vector<LevelFlag> flags;          ///< one per positive_shifted entry
    std::size_t complex_count = 0;

    std::size_t count(LevelFlag f) const;
};

/// Pairs the positive branch with the exact levels and flags the rest.
///
/// For kappa < 0 the levels start at nr = 1, for kappa > 0 at nr = 2. Levels
/// are matched in order, each to the nearest unused computed value above the
/// previous match (ties go to the lower value). Leftovers between two matched
/// levels are instilled_spurious when they are farther than match_tol from
/// both neighbours; a value below the first matched level that reproduces the
/// nr = 1 level within coincidence_tol (kappa > 0 only) is coincidence_suspect.
/// Everything outside the matched window is unmatched_tail.
SpectrumReport classify_spectrum(const std::vector<std::complex<double>>& eigs, const PhysicalSystem& sys,
                                 int levels, const ClassifyTolerances& tol = {});

/// Least-squares slope of log(error) against log(h).
double convergence_rate(const std::vector<std::pair<double, double>>& h_and_error);

}  // namespace hpcloud
