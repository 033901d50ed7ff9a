#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hpcloud/assembly.hpp"
#include "hpcloud/grid.hpp"
#include "hpcloud/physics.hpp"
#include "hpcloud/spectrum.hpp"

namespace hpcloud {

/// Everything one solve needs. Fully deterministic, no seeds.
struct RunConfig {
    GridConfig grid;
    PhysicalSystem system;
    Method method = Method::cpg;
    std::string enrichment = "sto";
    int quadrature_factor = 10;
    int levels = 15;
    std::string output_path = "hpcloud_out";
    DerivativeMode derivative = DerivativeMode::pointwise;
    bool nonrelativistic = false;  ///< multiplies c by 100
    double condition_cap = 1e12;
    bool support_breakpoints = false;  ///< also split quadrature cells at x_j +- rho_j
    ClassifyTolerances tolerances;

    void validate() const;
    /// c actually used by the solve.
    PhysicalSystem effective_system() const;
};

/// Sets one field from its textual key; throws ConfigError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Every field with its effective value, in a fixed order.
std::vector<std::pair<std::string, std::string>> effective_settings(const RunConfig& cfg);

struct SolveResult {
    RunConfig config;
    SpectrumReport report;
    std::size_t dofs = 0;       ///< unknowns per component
    double h_max = 0.0;         ///< largest nodal spacing
    std::string solver_route;
    double seconds_assembly = 0.0;
    double seconds_eigen = 0.0;
};

SolveResult run_solve(const RunConfig& cfg);

/// Builds the assembled system only (dump-matrices and tests).
struct BuiltSystem {
    Grid grid;
    WeakFormMatrices weak;
    AssembledSystem system;
};
BuiltSystem build_system(const RunConfig& cfg);

/// Formats with 13 significant digits.
std::string format_number(double v);

/// level, computed_shifted, exact_shifted, relative_error, flag. `#` lines echo the config.
void write_spectrum_csv(std::ostream& os, const SolveResult& r);
std::string spectrum_json(const SolveResult& r);

/// Parameters a sweep can vary.
bool sweepable(const std::string& key);

struct SweepRow {
    std::string param_value;
    LevelMatch match;
};
std::vector<SolveResult> run_sweep(const RunConfig& cfg, const std::string& key, const std::vector<std::string>& values);
void write_sweep_csv(std::ostream& os, const RunConfig& cfg, const std::string& key,
                     const std::vector<std::string>& values, const std::vector<SolveResult>& results);

struct ConvergenceStudy {
    std::vector<int> n_values;
    std::vector<double> h_values;
    std::vector<std::vector<double>> relative_errors;  ///< [n index][level index]
    std::vector<double> rates;                         ///< per level
};
/// Per-level rates from precomputed (h, relative error) columns.
ConvergenceStudy convergence_from_errors(std::vector<int> n_values, std::vector<double> h_values,
                                         std::vector<std::vector<double>> relative_errors);
ConvergenceStudy run_convergence(const RunConfig& cfg, const std::vector<int>& n_values);
void write_convergence_csv(std::ostream& os, const RunConfig& cfg, const ConvergenceStudy& study);

}  // namespace hpcloud
