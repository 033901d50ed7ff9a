#include "hpcloud/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpcloud/errors.hpp"

namespace hpcloud {

namespace {

using Eigen::MatrixXd;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

// Real LAPACK eigenvector storage (conjugate pairs in consecutive columns) to complex columns.
MatrixXcd unpack_vectors(const MatrixXd& v, const std::vector<std::complex<double>>& values) {
    const auto n = v.rows();
    MatrixXcd out(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        if (values[static_cast<std::size_t>(k)].imag() == 0.0) {
            out.col(k) = v.col(k).cast<std::complex<double>>();
        } else {
            for (Eigen::Index r = 0; r < n; ++r) {
                out(r, k) = {v(r, k), v(r, k + 1)};
                out(r, k + 1) = {v(r, k), -v(r, k + 1)};
            }
            ++k;
        }
    }
    return out;
}

GeneralizedEigen solve_standard(MatrixXd C, bool want_vectors) {
    const auto n = static_cast<lapack_int>(C.rows());
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    MatrixXd vr;
    if (want_vectors) vr.resize(n, n);
    double dummy = 0.0;
    const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, C.data(), n, wr.data(),
                                          wi.data(), &dummy, 1, want_vectors ? vr.data() : &dummy, n);
    if (info != 0) throw SolverError("dgeev failed to converge (info=" + std::to_string(info) + ")");
    GeneralizedEigen out;
    out.route = "lu+geev";
    out.values.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = {wr[k], wi[k]};
    if (want_vectors) out.vectors = unpack_vectors(vr, out.values);
    return out;
}

GeneralizedEigen solve_qz(MatrixXd A, MatrixXd B, bool want_vectors) {
    const auto n = static_cast<lapack_int>(A.rows());
    std::vector<double> ar(static_cast<std::size_t>(n)), ai(static_cast<std::size_t>(n)),
        beta(static_cast<std::size_t>(n));
    MatrixXd vr;
    if (want_vectors) vr.resize(n, n);
    double dummy = 0.0;
    const lapack_int info =
        LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, A.data(), n, B.data(), n, ar.data(),
                      ai.data(), beta.data(), &dummy, 1, want_vectors ? vr.data() : &dummy, n);
    if (info != 0) throw SolverError("dggev failed (info=" + std::to_string(info) + ")");
    GeneralizedEigen out;
    out.route = "qz";
    out.values.resize(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        if (beta[k] == 0.0) {
            out.values[k] = {std::numeric_limits<double>::infinity(), 0.0};
        } else {
            out.values[k] = {ar[k] / beta[k], ai[k] / beta[k]};
        }
    }
    if (want_vectors) out.vectors = unpack_vectors(vr, out.values);
    return out;
}

}  // namespace

GeneralizedEigen solve_generalized(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const SolveOptions& options) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw DomainError("solve_generalized: A and B must be square and of equal size");
    const auto n = A.rows();
    if (n == 0) return {};

    VectorXd d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double b = std::abs(B(i, i));
        d[i] = b > 0.0 ? 1.0 / std::sqrt(b) : 1.0;
    }
    MatrixXd As = d.asDiagonal() * A * d.asDiagonal();
    MatrixXd Bs = d.asDiagonal() * B * d.asDiagonal();

    GeneralizedEigen out;
    bool reduced = false;
    if (!options.force_qz) {
        Eigen::PartialPivLU<MatrixXd> lu(Bs);
        const double rcond = lu.rcond();
        if (std::isfinite(rcond) && rcond > options.reduction_rcond) {
            // the rcond estimate can miss an exactly singular B
            MatrixXd C = lu.solve(As);
            if (C.allFinite()) {
                out = solve_standard(std::move(C), options.vectors);
                reduced = true;
            }
        }
    }
    if (!reduced) out = solve_qz(std::move(As), std::move(Bs), options.vectors);

    if (out.vectors) {
        // undo the equilibration: A (D y) = lambda B (D y)
        for (Eigen::Index k = 0; k < n; ++k) {
            out.vectors->col(k) = d.cast<std::complex<double>>().asDiagonal() * out.vectors->col(k);
            out.vectors->col(k).normalize();
        }
    }
    return out;
}

double eigen_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, std::complex<double> lambda,
                      const Eigen::VectorXcd& x) {
    const Eigen::VectorXcd r = A.cast<std::complex<double>>() * x - lambda * (B.cast<std::complex<double>>() * x);
    return r.norm() / ((A.norm() + std::abs(lambda) * B.norm()) * x.norm());
}

std::string to_string(LevelFlag f) {
    switch (f) {
        case LevelFlag::genuine: return "genuine";
        case LevelFlag::instilled_spurious: return "instilled_spurious";
        case LevelFlag::coincidence_suspect: return "coincidence_suspect";
        case LevelFlag::unmatched_tail: return "unmatched_tail";
    }
    return "?";
}

std::size_t SpectrumReport::count(LevelFlag f) const {
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), f));
}

SpectrumReport classify_spectrum(const std::vector<std::complex<double>>& eigs, const PhysicalSystem& sys, int levels,
                                 const ClassifyTolerances& tol) {
    if (levels < 0) throw ConfigError("levels", "must be non-negative");
    SpectrumReport rep;
    rep.raw = eigs;
    const double mc2 = sys.rest_energy();
    for (const auto& e : eigs) {
        if (!std::isfinite(e.real())) continue;
        if (std::abs(e.imag()) <= tol.imag_tol * std::abs(e.real())) {
            rep.real_spectrum.push_back(e.real());
        } else {
            ++rep.complex_count;
        }
    }
    std::sort(rep.real_spectrum.begin(), rep.real_spectrum.end());
    for (double v : rep.real_spectrum) {
        if (v > 0.0) {
            rep.positive_shifted.push_back(v - mc2);
        } else {
            rep.negative_shifted.push_back(v + mc2);
        }
    }
    std::sort(rep.negative_shifted.begin(), rep.negative_shifted.end(), std::greater<>());
    const auto& pos = rep.positive_shifted;
    rep.flags.assign(pos.size(), LevelFlag::unmatched_tail);
    if (levels == 0) return rep;

    const bool in_gap = std::any_of(pos.begin(), pos.end(), [&](double v) { return v < 0.0 && v > -2.0 * mc2; });
    if (!in_gap) throw SolverError("no real eigenvalues in the gap (-mc^2, mc^2)");

    const int first_nr = sys.kappa < 0 ? 1 : 2;
    std::size_t start = 0;
    for (int level = 1; level <= levels && start < pos.size(); ++level) {
        const int nr = first_nr + level - 1;
        const double exact = exact_eigenvalue(sys, nr);
        std::size_t best = start;
        for (std::size_t i = start + 1; i < pos.size(); ++i)
            if (std::abs(pos[i] - exact) < std::abs(pos[best] - exact)) best = i;
        rep.matches.push_back({level, nr, pos[best], exact, std::abs((pos[best] - exact) / exact), best});
        rep.flags[best] = LevelFlag::genuine;
        start = best + 1;
    }

    const auto& mt = rep.matches;
    const std::size_t first = mt.front().index;
    for (std::size_t i = 0; i < first; ++i) {
        if (sys.kappa > 0) {
            const double ground = exact_eigenvalue(sys, 1);
            if (std::abs(pos[i] - ground) <= tol.coincidence_tol * std::abs(ground))
                rep.flags[i] = LevelFlag::coincidence_suspect;
        }
    }
    for (std::size_t k = 0; k + 1 < mt.size(); ++k) {
        const double lo = mt[k].exact, hi = mt[k + 1].exact;
        for (std::size_t i = mt[k].index + 1; i < mt[k + 1].index; ++i) {
            const bool far = std::abs((pos[i] - lo) / lo) > tol.match_tol && std::abs((pos[i] - hi) / hi) > tol.match_tol;
            rep.flags[i] = far ? LevelFlag::instilled_spurious : LevelFlag::coincidence_suspect;
        }
    }
    return rep;
}

double convergence_rate(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw DomainError("convergence_rate: need at least 3 samples");
    double sx = 0, sy = 0;
    for (const auto& [h, e] : samples) {
        if (!(h > 0.0) || !(e > 0.0)) throw DomainError("convergence_rate: h and error must be positive");
        sx += std::log(h);
        sy += std::log(e);
    }
    const double n = static_cast<double>(samples.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [h, e] : samples) {
        const double dx = std::log(h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(e) - my);
    }
    if (sxx <= 1e-24) throw DomainError("convergence_rate: all samples share one h");
    return sxy / sxx;
}

}  // namespace hpcloud
