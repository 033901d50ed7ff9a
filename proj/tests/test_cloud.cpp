#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "hpcloud/cloud.hpp"
#include "hpcloud/errors.hpp"

using namespace hpcloud;

namespace {

EnrichmentBasis constant_basis() {
    return EnrichmentBasis("constant", {{"1", [](double) { return 1.0; }, [](double) { return 0.0; }}});
}

Grid uniform_grid(int n, double h, double nu) {
    std::vector<double> x(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = h * i;
    return Grid(std::move(x), nu);
}

std::map<std::size_t, double> as_map(const ShapeEval& s, bool derivs = false) {
    std::map<std::size_t, double> m;
    for (std::size_t k = 0; k < s.active.size(); ++k) m[s.active[k]] = derivs ? s.derivs[k] : s.values[k];
    return m;
}

}  // namespace

TEST_CASE("Shepard functions split evenly between two equal clouds") {
    const CloudBasis basis(uniform_grid(4, 1.0, 1.2), constant_basis());
    const ShapeEval s = basis.evaluate_clouds(1.5);
    REQUIRE(s.active == std::vector<std::size_t>{1, 2});
    CHECK(s.values[0] == doctest::Approx(0.5));
    CHECK(s.values[1] == doctest::Approx(0.5));
    CHECK(s.derivs[0] == doctest::Approx(-s.derivs[1]));
}

TEST_CASE("partition of unity and nullity on the default grid") {
    const CloudBasis basis(generate_grid({200, 0.0, 100.0, 1e-5, 2.2}), sto_default_basis());
    const Grid& g = basis.grid();
    for (std::size_t k = 0; k < g.intervals(); k += 7) {
        const double x = 0.5 * (g.node(k) + g.node(k + 1));
        const ShapeEval c = basis.evaluate_coupled(x);
        CHECK(c.value_sum() == doctest::Approx(1.0).epsilon(1e-10));
        double scale = 0.0;
        for (double d : c.derivs) scale = std::max(scale, std::abs(d));
        CHECK(std::abs(c.deriv_sum()) <= 1e-8 * scale);
    }
}

TEST_CASE("shifted basis reproduction") {
    const CloudBasis basis(generate_grid({100, 0.0, 50.0, 1e-4, 2.2}), sto_default_basis());
    const EnrichmentBasis& P = basis.basis();
    for (double x : {0.01, 0.3, 2.0, 11.0, 40.0}) {
        const ShapeEval s = basis.evaluate_clouds(x);
        std::array<double, 2> acc{0.0, 0.0}, p{};
        for (std::size_t k = 0; k < s.active.size(); ++k) {
            P.evaluate(basis.grid().node(s.active[k]) - x, p);
            acc[0] += s.values[k] * p[0];
            acc[1] += s.values[k] * p[1];
        }
        CHECK(acc[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(acc[1]) <= 1e-10 * basis.grid().dilation(s.active.front()));
    }
}

TEST_CASE("unshifted basis reproduces the enrichment members themselves") {
    const CloudBasis basis(generate_grid({100, 0.0, 50.0, 1e-4, 2.2}), sto_default_basis(), {}, CloudOptions{false, 1e14});
    const EnrichmentBasis& P = basis.basis();
    for (double x : {0.3, 2.0, 11.0}) {
        const ShapeEval s = basis.evaluate_clouds(x);
        std::array<double, 2> acc{0.0, 0.0}, p{}, px{};
        for (std::size_t k = 0; k < s.active.size(); ++k) {
            P.evaluate(basis.grid().node(s.active[k]), p);
            acc[0] += s.values[k] * p[0];
            acc[1] += s.values[k] * p[1];
        }
        P.evaluate(x, px);
        CHECK(acc[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(acc[1] == doctest::Approx(px[1]).epsilon(1e-8));
    }
}

TEST_CASE("analytic derivatives match central differences") {
    const CloudBasis basis(generate_grid({60, 0.0, 20.0, 1e-3, 2.2}), sto_default_basis());
    const Grid& g = basis.grid();
    for (std::size_t k : {std::size_t{2}, std::size_t{10}, std::size_t{30}, std::size_t{57}}) {
        const double x = g.node(k) + 0.37 * g.spacing(k + 1);
        const double d = 1e-6 * g.spacing(k + 1);
        const auto c = as_map(basis.evaluate_coupled(x), true);
        auto up = as_map(basis.evaluate_coupled(x + d));
        auto dn = as_map(basis.evaluate_coupled(x - d));
        double scale = 0.0;
        for (const auto& [i, v] : c) scale = std::max(scale, std::abs(v));
        for (const auto& [i, v] : c) CHECK(std::abs(v - (up[i] - dn[i]) / (2.0 * d)) <= 1e-5 * scale);
    }
}

TEST_CASE("boundary node carries only its hat") {
    const CloudBasis basis(generate_grid({40, 0.0, 10.0, 1e-3, 2.2}), sto_default_basis());
    for (const auto& [x, node] : {std::pair{0.0, std::size_t{0}}, std::pair{10.0, std::size_t{40}}}) {
        const auto v = as_map(basis.evaluate_coupled(x));
        REQUIRE(v.count(node) == 1);
        for (const auto& [i, val] : v) CHECK(val == doctest::Approx(i == node ? 1.0 : 0.0));
    }
}

TEST_CASE("away from the boundary the coupled layout equals the plain clouds") {
    const CloudBasis basis(generate_grid({40, 0.0, 10.0, 1e-3, 2.2}), sto_default_basis());
    const Grid& g = basis.grid();
    const double x = 0.5 * (g.node(20) + g.node(21));
    const ShapeEval a = basis.evaluate_clouds(x);
    const ShapeEval b = basis.evaluate_coupled(x);
    REQUIRE(a.active == b.active);
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-13));
        CHECK(a.derivs[k] == doctest::Approx(b.derivs[k]).epsilon(1e-12));
    }
}

TEST_CASE("transition intervals keep the partition of unity") {
    for (double nu : {1.1, 2.2, 2.7}) {
        const CloudBasis basis(generate_grid({40, 0.0, 10.0, 1e-3, nu}), sto_default_basis());
        const Grid& g = basis.grid();
        const std::size_t n = g.intervals();
        for (double t : {0.1, 0.5, 0.9}) {
            for (std::size_t k : {std::size_t{1}, n - 2}) {
                const double x = g.node(k) + t * g.spacing(k + 1);
                const ShapeEval s = basis.evaluate_coupled(x);
                CHECK(s.value_sum() == doctest::Approx(1.0).epsilon(1e-10));
                CHECK(std::abs(s.deriv_sum()) <= 1e-8 / g.spacing(k + 1));
            }
        }
    }
}

TEST_CASE("degenerate moment matrices raise SingularMoment") {
    // two identical members make M singular everywhere
    const EnrichmentBasis twin("twin", {{"1", [](double) { return 1.0; }, [](double) { return 0.0; }},
                                        {"1", [](double) { return 1.0; }, [](double) { return 0.0; }}});
    const CloudBasis basis(uniform_grid(10, 1.0, 2.2), twin);
    CHECK_THROWS_AS(basis.evaluate_clouds(4.5), SingularMoment);
    try {
        basis.evaluate_clouds(4.5);
    } catch (const SingularMoment& e) {
        CHECK(e.numerical());
    }
    const CloudBasis capped(uniform_grid(10, 1.0, 2.2), sto_default_basis(), {}, CloudOptions{true, 1.0001});
    CHECK_THROWS_AS(capped.evaluate_clouds(4.5), SingularMoment);
}

TEST_CASE("Dirichlet conditions drop the two end nodes") {
    const CloudBasis small(generate_grid({10, 0.0, 10.0, 1e-3, 2.2}), sto_default_basis());
    const auto r = apply_dirichlet(small);
    REQUIRE(r.size() == 9);
    CHECK(r.front() == 1);
    CHECK(r.back() == 9);
    const CloudBasis big(generate_grid({600, 0.0, 100.0, 1e-5, 2.2}), sto_default_basis());
    CHECK(2 * apply_dirichlet(big).size() == 1198);
}
