#include "hpcloud/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "hpcloud/cloud.hpp"
#include "hpcloud/enrichment.hpp"
#include "hpcloud/errors.hpp"
#include "hpcloud/quadrature.hpp"

namespace hpcloud {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long i = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(i);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::string nucleus_name(Nucleus n) { return n == Nucleus::point ? "point" : "extended_uniform"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.13g", v);
    return buf;
}

void RunConfig::validate() const {
    grid.validate();
    system.validate();
    if (quadrature_factor < 2 || quadrature_factor % 2 != 0)
        throw ConfigError("quadrature_factor", "must be an even integer >= 2");
    if (levels < 0) throw ConfigError("levels", "must be non-negative");
    if (grid.n_intervals < 4) throw ConfigError("n_intervals", "boundary coupling needs at least 4 intervals");
    if (!(condition_cap > 1.0)) throw ConfigError("condition_cap", "must exceed 1");
    if (!(tolerances.imag_tol >= 0.0)) throw ConfigError("imag_tol", "must be non-negative");
    if (!(tolerances.match_tol > 0.0)) throw ConfigError("match_tol", "must be positive");
    if (!(tolerances.coincidence_tol > 0.0)) throw ConfigError("coincidence_tol", "must be positive");
    if (levels > 0 && system.nucleus == Nucleus::point && !effective_system().subcritical())
        throw ConfigError("Z", "Z^2 alpha^2 >= kappa^2: point-nucleus levels are not real");
    (void)enrichment_by_name(enrichment, system.Z);
}

PhysicalSystem RunConfig::effective_system() const {
    PhysicalSystem s = system;
    if (nonrelativistic) s.c *= 100.0;
    return s;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "n_intervals" || key == "n") cfg.grid.n_intervals = to_int(key, v);
    else if (key == "domain_start") cfg.grid.domain_start = to_double(key, v);
    else if (key == "domain_end") cfg.grid.domain_end = to_double(key, v);
    else if (key == "eps") cfg.grid.intensity = to_double(key, v);
    else if (key == "nu") cfg.grid.influence_factor = to_double(key, v);
    else if (key == "Z") cfg.system.Z = to_double(key, v);
    else if (key == "A") cfg.system.A = to_double(key, v);
    else if (key == "kappa") cfg.system.kappa = to_int(key, v);
    else if (key == "c") cfg.system.c = to_double(key, v);
    else if (key == "m") cfg.system.m = to_double(key, v);
    else if (key == "r0_fm") cfg.system.r0_fm = to_double(key, v);
    else if (key == "nucleus") {
        if (v == "point") cfg.system.nucleus = Nucleus::point;
        else if (v == "extended_uniform" || v == "extended") cfg.system.nucleus = Nucleus::extended_uniform;
        else throw ConfigError(key, "expected point or extended_uniform, got '" + v + "'");
    } else if (key == "method") cfg.method = method_from_string(v);
    else if (key == "enrichment") cfg.enrichment = v;
    else if (key == "quadrature_factor") cfg.quadrature_factor = to_int(key, v);
    else if (key == "levels") cfg.levels = to_int(key, v);
    else if (key == "output_path") cfg.output_path = v;
    else if (key == "derivative") {
        if (v == "pointwise") cfg.derivative = DerivativeMode::pointwise;
        else if (v == "smoothed") cfg.derivative = DerivativeMode::smoothed;
        else throw ConfigError(key, "expected pointwise or smoothed, got '" + v + "'");
    } else if (key == "nonrelativistic") cfg.nonrelativistic = to_bool(key, v);
    else if (key == "condition_cap") cfg.condition_cap = to_double(key, v);
    else if (key == "support_breakpoints") cfg.support_breakpoints = to_bool(key, v);
    else if (key == "imag_tol") cfg.tolerances.imag_tol = to_double(key, v);
    else if (key == "match_tol") cfg.tolerances.match_tol = to_double(key, v);
    else if (key == "coincidence_tol") cfg.tolerances.coincidence_tol = to_double(key, v);
    else throw ConfigError(key, "unknown configuration key");
}

RunConfig parse_config(std::istream& in, RunConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(in, std::move(base));
}

std::vector<std::pair<std::string, std::string>> effective_settings(const RunConfig& c) {
    return {
        {"n_intervals", std::to_string(c.grid.n_intervals)},
        {"domain_start", format_number(c.grid.domain_start)},
        {"domain_end", format_number(c.grid.domain_end)},
        {"eps", format_number(c.grid.intensity)},
        {"nu", format_number(c.grid.influence_factor)},
        {"Z", format_number(c.system.Z)},
        {"A", format_number(c.system.A)},
        {"kappa", std::to_string(c.system.kappa)},
        {"c", format_number(c.system.c)},
        {"m", format_number(c.system.m)},
        {"nucleus", nucleus_name(c.system.nucleus)},
        {"r0_fm", format_number(c.system.r0_fm)},
        {"method", to_string(c.method)},
        {"enrichment", c.enrichment},
        {"quadrature_factor", std::to_string(c.quadrature_factor)},
        {"levels", std::to_string(c.levels)},
        {"output_path", c.output_path},
        {"derivative", c.derivative == DerivativeMode::pointwise ? "pointwise" : "smoothed"},
        {"nonrelativistic", c.nonrelativistic ? "true" : "false"},
        {"condition_cap", format_number(c.condition_cap)},
        {"support_breakpoints", c.support_breakpoints ? "true" : "false"},
        {"imag_tol", format_number(c.tolerances.imag_tol)},
        {"match_tol", format_number(c.tolerances.match_tol)},
        {"coincidence_tol", format_number(c.tolerances.coincidence_tol)},
    };
}

BuiltSystem build_system(const RunConfig& cfg) {
    cfg.validate();
    const PhysicalSystem sys = cfg.effective_system();
    Grid grid = generate_grid(cfg.grid);
    CloudBasis basis(grid, enrichment_by_name(cfg.enrichment, sys.Z), WeightFunction{},
                     CloudOptions{true, cfg.condition_cap});
    std::vector<double> breaks;
    if (sys.nucleus == Nucleus::extended_uniform) breaks.push_back(sys.nuclear_radius());
    if (cfg.support_breakpoints)
        for (std::size_t j = 0; j <= grid.intervals(); ++j) {
            breaks.push_back(grid.node(j) - grid.dilation(j));
            breaks.push_back(grid.node(j) + grid.dilation(j));
        }
    const QuadratureRule quad = build_quadrature(grid, cfg.quadrature_factor, breaks);
    AssemblyOptions opts;
    opts.derivative = cfg.derivative;
    WeakFormMatrices weak = assemble_weak_form(basis, sys, quad, opts);
    AssembledSystem system = assemble_system(weak, sys, grid, cfg.method);
    return {std::move(grid), std::move(weak), std::move(system)};
}

SolveResult run_solve(const RunConfig& cfg) {
    SolveResult r;
    r.config = cfg;
    const auto t0 = std::chrono::steady_clock::now();
    BuiltSystem built = build_system(cfg);
    r.seconds_assembly = seconds_since(t0);
    r.dofs = built.weak.size();
    r.h_max = built.grid.max_spacing();

    const auto t1 = std::chrono::steady_clock::now();
    const GeneralizedEigen eig = solve_generalized(built.system.A, built.system.B);
    r.seconds_eigen = seconds_since(t1);
    r.solver_route = eig.route;
    r.report = classify_spectrum(eig.values, cfg.effective_system(), cfg.levels, cfg.tolerances);
    return r;
}

void write_spectrum_csv(std::ostream& os, const SolveResult& r) {
    for (const auto& [k, v] : effective_settings(r.config)) os << "# " << k << " = " << v << "\n";
    os << "level,computed_shifted,exact_shifted,relative_error,flag\n";
    for (const auto& m : r.report.matches)
        os << m.level << ',' << format_number(m.computed) << ',' << format_number(m.exact) << ','
           << format_number(m.relative_error) << ',' << to_string(r.report.flags[m.index]) << '\n';
    // flagged leftovers inside the matched window carry no level number
    for (std::size_t i = 0; i < r.report.flags.size(); ++i) {
        const LevelFlag f = r.report.flags[i];
        if (f == LevelFlag::instilled_spurious || f == LevelFlag::coincidence_suspect)
            os << ',' << format_number(r.report.positive_shifted[i]) << ",,," << to_string(f) << '\n';
    }
}

std::string spectrum_json(const SolveResult& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : effective_settings(r.config)) params[k] = v;
    j["parameters"] = params;
    j["dofs_per_component"] = r.dofs;
    j["h_max"] = r.h_max;
    j["solver_route"] = r.solver_route;
    const auto& rep = r.report;
    j["complex_count"] = rep.complex_count;
    ordered_json raw = ordered_json::array();
    for (const auto& e : rep.raw) raw.push_back({e.real(), e.imag()});
    j["raw"] = raw;
    j["real_spectrum"] = rep.real_spectrum;
    j["positive_shifted"] = rep.positive_shifted;
    j["negative_shifted"] = rep.negative_shifted;
    ordered_json flags = ordered_json::array();
    for (auto f : rep.flags) flags.push_back(to_string(f));
    j["flags"] = flags;
    ordered_json matches = ordered_json::array();
    for (const auto& m : rep.matches)
        matches.push_back({{"level", m.level},
                           {"nr", m.nr},
                           {"computed", m.computed},
                           {"exact", m.exact},
                           {"relative_error", m.relative_error},
                           {"flag", to_string(rep.flags[m.index])}});
    j["matches"] = matches;
    return j.dump(2);
}

bool sweepable(const std::string& key) {
    return key == "nu" || key == "eps" || key == "n_intervals" || key == "quadrature_factor" || key == "method";
}

std::vector<SolveResult> run_sweep(const RunConfig& cfg, const std::string& key, const std::vector<std::string>& values) {
    if (!sweepable(key)) throw ConfigError("vary", "cannot sweep '" + key + "' (nu, eps, n_intervals, quadrature_factor, method)");
    if (values.empty()) throw ConfigError("values", "need at least one value");
    std::vector<RunConfig> configs;
    for (const auto& v : values) {
        RunConfig c = cfg;
        apply_setting(c, key, v);
        c.validate();
        configs.push_back(std::move(c));
    }
    std::vector<SolveResult> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(run_solve(c));
    return out;
}

void write_sweep_csv(std::ostream& os, const RunConfig& cfg, const std::string& key,
                     const std::vector<std::string>& values, const std::vector<SolveResult>& results) {
    for (const auto& [k, v] : effective_settings(cfg)) os << "# " << k << " = " << v << "\n";
    os << "# vary = " << key << "\n";
    os << "param_value,level,computed,exact,rel_error\n";
    for (std::size_t s = 0; s < results.size(); ++s)
        for (const auto& m : results[s].report.matches)
            os << values[s] << ',' << m.level << ',' << format_number(m.computed) << ',' << format_number(m.exact) << ','
               << format_number(m.relative_error) << '\n';
}

ConvergenceStudy convergence_from_errors(std::vector<int> n_values, std::vector<double> h_values,
                                         std::vector<std::vector<double>> errors) {
    if (n_values.size() < 3) throw ConfigError("n_values", "convergence needs at least 3 grid sizes");
    if (h_values.size() != n_values.size() || errors.size() != n_values.size())
        throw ConfigError("n_values", "sample count mismatch");
    ConvergenceStudy s{std::move(n_values), std::move(h_values), std::move(errors), {}};
    std::size_t levels = s.relative_errors.front().size();
    for (const auto& row : s.relative_errors) levels = std::min(levels, row.size());
    for (std::size_t l = 0; l < levels; ++l) {
        std::vector<std::pair<double, double>> samples;
        for (std::size_t i = 0; i < s.n_values.size(); ++i) samples.emplace_back(s.h_values[i], s.relative_errors[i][l]);
        s.rates.push_back(convergence_rate(samples));
    }
    return s;
}

ConvergenceStudy run_convergence(const RunConfig& cfg, const std::vector<int>& n_values) {
    if (n_values.size() < 3) throw ConfigError("n_values", "convergence needs at least 3 grid sizes");
    std::vector<double> hs;
    std::vector<std::vector<double>> errs;
    for (int n : n_values) {
        RunConfig c = cfg;
        c.grid.n_intervals = n;
        const SolveResult r = run_solve(c);
        hs.push_back(r.h_max);
        std::vector<double> e;
        for (const auto& m : r.report.matches) e.push_back(m.relative_error);
        errs.push_back(std::move(e));
    }
    return convergence_from_errors(n_values, std::move(hs), std::move(errs));
}

void write_convergence_csv(std::ostream& os, const RunConfig& cfg, const ConvergenceStudy& study) {
    for (const auto& [k, v] : effective_settings(cfg)) os << "# " << k << " = " << v << "\n";
    os << "# n_values =";
    for (int n : study.n_values) os << ' ' << n;
    os << "\n# h_values =";
    for (double h : study.h_values) os << ' ' << format_number(h);
    os << "\nlevel,rate\n";
    for (std::size_t l = 0; l < study.rates.size(); ++l) os << l + 1 << ',' << format_number(study.rates[l]) << '\n';
}

}  // namespace hpcloud
