#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "hpcloud/driver.hpp"
#include "hpcloud/errors.hpp"

using namespace hpcloud;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.grid.n_intervals = 120;
    c.levels = 4;
    return c;
}

std::string csv_of(const SolveResult& r) {
    std::ostringstream os;
    write_spectrum_csv(os, r);
    return os.str();
}

std::string field_of(const ConfigError& e) { return e.field(); }

}  // namespace

TEST_CASE("config text parsing") {
    std::istringstream in(
        "# comment line\n"
        "n = 80   # trailing comment\n"
        "\n"
        "  nu=1.6\n"
        "Z = 92\n"
        "kappa = 1\n"
        "method = galerkin\n"
        "nucleus = extended_uniform\n"
        "derivative = smoothed\n"
        "nonrelativistic = true\n");
    const RunConfig c = parse_config(in);
    CHECK(c.grid.n_intervals == 80);
    CHECK(c.grid.influence_factor == 1.6);
    CHECK(c.system.Z == 92.0);
    CHECK(c.system.kappa == 1);
    CHECK(c.method == Method::galerkin);
    CHECK(c.system.nucleus == Nucleus::extended_uniform);
    CHECK(c.derivative == DerivativeMode::smoothed);
    CHECK(c.effective_system().c == doctest::Approx(100.0 * c.system.c));
    CHECK(c.grid.domain_end == 100.0);  // untouched default
}

TEST_CASE("config errors name the offending field") {
    auto fails_on = [](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_config(in).validate();
        } catch (const ConfigError& e) {
            return field_of(e);
        }
        return std::string("<none>");
    };
    CHECK(fails_on("bogus = 1\n") == "bogus");
    CHECK(fails_on("nu = fast\n") == "nu");
    CHECK(fails_on("n_intervals = 12.5\n") == "n_intervals");
    CHECK(fails_on("quadrature_factor = 7\n") == "quadrature_factor");
    CHECK(fails_on("method = supg\n") == "method");
    CHECK(fails_on("nonrelativistic = maybe\n") == "nonrelativistic");
    CHECK(fails_on("eps = -1\n") == "eps");
    CHECK(fails_on("n = 3\n") == "n_intervals");
    CHECK(fails_on("Z = 140\nkappa = -1\n") == "Z");
    CHECK(fails_on("just words\n") == "line 1");
    CHECK(fails_on("enrichment = spline9\n") == "enrichment");
    CHECK(fails_on("Z = 140\nkappa = -1\nlevels = 0\n") == "<none>");
    CHECK_THROWS_AS(load_config_file("/nonexistent/hpcloud.cfg"), ConfigError);
}

TEST_CASE("effective settings round-trip through apply_setting") {
    RunConfig c = small_config();
    c.grid.influence_factor = 1.7;
    c.system.Z = 80.0;
    c.method = Method::cpg_fem_tau;
    c.tolerances.match_tol = 2.5e-3;
    RunConfig d;
    for (const auto& [k, v] : effective_settings(c)) apply_setting(d, k, v);
    CHECK(effective_settings(d) == effective_settings(c));
}

TEST_CASE("solve output is deterministic and echoes the configuration") {
    const RunConfig c = small_config();
    const SolveResult a = run_solve(c), b = run_solve(c);
    const std::string csv = csv_of(a);
    CHECK(csv == csv_of(b));
    CHECK(csv.find("# n_intervals = 120\n") != std::string::npos);
    CHECK(csv.find("# method = cpg\n") != std::string::npos);
    CHECK(csv.find("level,computed_shifted,exact_shifted,relative_error,flag\n") != std::string::npos);
    REQUIRE(a.report.matches.size() == 4);
    CHECK(a.dofs == 119);
    for (const auto& m : a.report.matches) CHECK(m.relative_error < 1e-2);

    const auto j = nlohmann::json::parse(spectrum_json(a));
    CHECK(j.at("dofs_per_component") == 119);
    CHECK(j.at("matches").size() == 4);
    CHECK(j.at("parameters").at("n_intervals") == "120");
}

TEST_CASE("levels = 0 writes an empty table") {
    RunConfig c = small_config();
    c.levels = 0;
    const SolveResult r = run_solve(c);
    CHECK(r.report.matches.empty());
    std::istringstream lines(csv_of(r));
    std::string line;
    int data = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#' && line.rfind("level,", 0) != 0) ++data;
    CHECK(data == 0);
}

TEST_CASE("a one-value sweep reproduces a plain solve") {
    const RunConfig c = small_config();
    const auto sweep = run_sweep(c, "nu", {"2.2"});
    const SolveResult direct = run_solve(c);
    REQUIRE(sweep.size() == 1);
    REQUIRE(sweep[0].report.matches.size() == direct.report.matches.size());
    for (std::size_t k = 0; k < direct.report.matches.size(); ++k)
        CHECK(sweep[0].report.matches[k].computed == direct.report.matches[k].computed);

    std::ostringstream os;
    write_sweep_csv(os, c, "nu", {"2.2"}, sweep);
    CHECK(os.str().find("param_value,level,computed,exact,rel_error\n") != std::string::npos);
    CHECK(os.str().find("\n2.2,1,") != std::string::npos);

    CHECK_THROWS_AS(run_sweep(c, "Z", {"1"}), ConfigError);
    CHECK_THROWS_AS(run_sweep(c, "nu", {}), ConfigError);
    CHECK_THROWS_AS(run_sweep(c, "nu", {"2.2", "oops"}), ConfigError);
}

TEST_CASE("convergence bookkeeping") {
    const std::vector<double> h{0.4, 0.2, 0.1, 0.05};
    std::vector<std::vector<double>> errs;
    for (double x : h) errs.push_back({3.0 * x * x, 0.5 * x});
    const ConvergenceStudy s = convergence_from_errors({10, 20, 40, 80}, h, errs);
    REQUIRE(s.rates.size() == 2);
    CHECK(s.rates[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.rates[1] == doctest::Approx(1.0).epsilon(1e-12));

    std::ostringstream os;
    write_convergence_csv(os, small_config(), s);
    CHECK(os.str().find("level,rate\n") != std::string::npos);
    CHECK(os.str().find("# n_values = 10 20 40 80\n") != std::string::npos);

    CHECK_THROWS_AS(convergence_from_errors({10, 20}, {0.2, 0.1}, {{1.0}, {0.5}}), ConfigError);
    CHECK_THROWS_AS(convergence_from_errors({10, 20, 40}, {0.2, 0.1}, {{1.0}, {0.5}}), ConfigError);
    CHECK_THROWS_AS(run_convergence(small_config(), {100, 200}), ConfigError);
}

TEST_CASE("a small convergence run improves with n") {
    RunConfig c = small_config();
    c.levels = 2;
    const ConvergenceStudy s = run_convergence(c, {60, 90, 135});
    REQUIRE(s.rates.size() == 2);
    CHECK(s.h_values[0] > s.h_values[1]);
    CHECK(s.h_values[1] > s.h_values[2]);
    CHECK(s.rates[0] > 0.5);
}

TEST_CASE("number formatting") {
    CHECK(format_number(-1829.630746114123) == "-1829.630746114");
    CHECK(format_number(2.2) == "2.2");
    CHECK(format_number(1e-5) == "1e-05");
}
