// Command-line driver: solve, sweep, convergence, dump-matrices.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hpcloud/driver.hpp"
#include "hpcloud/errors.hpp"

namespace fs = std::filesystem;
using namespace hpcloud;

namespace {

constexpr const char* kOutputEnv = "HPCLOUD_OUTPUT_DIR";

struct Common {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;  // in command-line order
    std::vector<std::string> sets;
};

// One --<key> flag per RunConfig field, plus generic --set key=value.
void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--config", common.config_file, "flat key = value configuration file");
    sub->add_option("--set", common.sets, "override as key=value (repeatable)");
    for (const auto& [key, value] : effective_settings(RunConfig{})) {
        const std::string k = key;
        sub->add_option_function<std::string>(
               "--" + k, [&common, k](const std::string& v) { common.overrides.emplace_back(k, v); },
               "default " + value)
            ->type_name("VALUE");
    }
}

RunConfig resolve(const Common& common) {
    RunConfig cfg;
    if (!common.config_file.empty()) cfg = load_config_file(common.config_file, cfg);
    for (const auto& s : common.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("set", "expected key=value, got '" + s + "'");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    for (const auto& [k, v] : common.overrides) apply_setting(cfg, k, v);
    if (const char* env = std::getenv(kOutputEnv); env && *env) cfg.output_path = env;
    cfg.validate();
    return cfg;
}

fs::path output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.output_path);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("output_path", "cannot create '" + dir.string() + "': " + ec.message());
    return dir;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw ConfigError("output_path", "cannot write '" + p.string() + "'");
    return os;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

int cmd_solve(const Common& common) {
    const RunConfig cfg = resolve(common);
    const SolveResult r = run_solve(cfg);
    const fs::path dir = output_dir(cfg);
    {
        auto os = open_out(dir / "spectrum.csv");
        write_spectrum_csv(os, r);
    }
    {
        auto os = open_out(dir / "report.json");
        os << spectrum_json(r) << '\n';
    }
    std::cerr << "solved " << 2 * r.dofs << " unknowns via " << r.solver_route << " (assembly "
              << r.seconds_assembly << " s, eigen " << r.seconds_eigen << " s); " << r.report.matches.size()
              << " levels matched, " << r.report.count(LevelFlag::instilled_spurious) << " instilled spurious, "
              << r.report.count(LevelFlag::coincidence_suspect) << " coincidence suspects -> " << dir.string() << '\n';
    return 0;
}

int cmd_sweep(const Common& common, const std::string& vary, const std::string& values) {
    const RunConfig cfg = resolve(common);
    const auto vals = split_list(values);
    const auto results = run_sweep(cfg, vary, vals);
    auto os = open_out(output_dir(cfg) / "sweep.csv");
    write_sweep_csv(os, cfg, vary, vals, results);
    return 0;
}

int cmd_convergence(const Common& common, const std::string& n_list) {
    const RunConfig cfg = resolve(common);
    std::vector<int> ns;
    for (const auto& s : split_list(n_list)) {
        RunConfig probe = cfg;
        apply_setting(probe, "n_intervals", s);
        ns.push_back(probe.grid.n_intervals);
    }
    const ConvergenceStudy study = run_convergence(cfg, ns);
    auto os = open_out(output_dir(cfg) / "convergence.csv");
    write_convergence_csv(os, cfg, study);
    return 0;
}

int cmd_dump(const Common& common) {
    const RunConfig cfg = resolve(common);
    const BuiltSystem built = build_system(cfg);
    const fs::path dir = output_dir(cfg);
    auto a = open_out(dir / "A.txt");
    write_triplets(a, built.system.A);
    auto b = open_out(dir / "B.txt");
    write_triplets(b, built.system.B);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hp-cloud solver for the radial Coulomb-Dirac eigenproblem"};
    app.require_subcommand(1);

    Common solve_c, sweep_c, conv_c, dump_c;
    auto* solve = app.add_subcommand("solve", "solve one configuration, write spectrum.csv and report.json");
    add_common(solve, solve_c);

    std::string vary, values;
    auto* sweep = app.add_subcommand("sweep", "one solve per value of a parameter, write sweep.csv");
    add_common(sweep, sweep_c);
    sweep->add_option("--vary", vary, "nu, eps, n_intervals, quadrature_factor or method")->required();
    sweep->add_option("--values", values, "comma separated values")->required();

    std::string n_values;
    auto* conv = app.add_subcommand("convergence", "per-level convergence rates, write convergence.csv");
    add_common(conv, conv_c);
    conv->add_option("--n-values", n_values, "comma separated interval counts (at least 3)")->required();

    auto* dump = app.add_subcommand("dump-matrices", "write A.txt and B.txt as row col value triplets");
    add_common(dump, dump_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_c);
        if (sweep->parsed()) return cmd_sweep(sweep_c, vary, values);
        if (conv->parsed()) return cmd_convergence(conv_c, n_values);
        if (dump->parsed()) return cmd_dump(dump_c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.numerical() ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
