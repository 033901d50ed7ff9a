#include <doctest.h>

#include <cmath>

#include "hpcloud/errors.hpp"
#include "hpcloud/grid.hpp"

using namespace hpcloud;

TEST_CASE("two-interval grid on the unit domain") {
    const Grid g = generate_grid({2, 0.0, 1.0, 1.0, 2.2});
    REQUIRE(g.node_count() == 3);
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(1) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    CHECK(g.node(2) == 1.0);
}

TEST_CASE("endpoints are exact and nodes increase") {
    for (double eps : {1e-7, 1e-5, 1e-2, 1.0}) {
        for (int n : {2, 7, 600}) {
            const Grid g = generate_grid({n, 0.3, 57.0, eps, 2.2});
            CHECK(g.start() == 0.3);
            CHECK(g.end() == 57.0);
            for (std::size_t k = 1; k < g.node_count(); ++k) CHECK(g.spacing(k) > 0.0);
        }
    }
}

TEST_CASE("smaller intensity drags the first node toward the origin") {
    // x_1 = exp(ln eps + (ln(Ib + eps) - ln eps) / n) - eps
    auto x1 = [](double eps) { return std::exp(std::log(eps) + (std::log(100.0 + eps) - std::log(eps)) / 600.0) - eps; };
    const Grid a = generate_grid({600, 0.0, 100.0, 1e-5, 2.2});
    const Grid b = generate_grid({600, 0.0, 100.0, 1e-4, 2.2});
    CHECK(a.node(1) == doctest::Approx(x1(1e-5)).epsilon(1e-12));
    CHECK(b.node(1) == doctest::Approx(x1(1e-4)).epsilon(1e-12));
    CHECK(a.node(1) < b.node(1));
}

TEST_CASE("spacings grow on an exponential grid and the last one is the largest") {
    const Grid g = generate_grid({600, 0.0, 100.0, 1e-5, 2.2});
    for (std::size_t k = 2; k <= g.intervals(); ++k) CHECK(g.spacing(k) > g.spacing(k - 1));
    CHECK(g.max_spacing() == g.spacing(g.intervals()));
}

TEST_CASE("dilations use the larger adjacent spacing") {
    const Grid g({0.0, 1.0, 3.0, 3.5, 5.0}, 2.0);
    CHECK(g.dilation(0) == 2.0);
    CHECK(g.dilation(1) == 4.0);
    CHECK(g.dilation(2) == 4.0);
    CHECK(g.dilation(3) == 3.0);
    CHECK(g.dilation(4) == 3.0);
}

TEST_CASE("locate finds the enclosing interval") {
    const Grid g({0.0, 1.0, 3.0, 3.5, 5.0}, 2.0);
    CHECK(g.locate(0.0) == 0);
    CHECK(g.locate(0.99) == 0);
    CHECK(g.locate(1.0) == 1);
    CHECK(g.locate(3.2) == 2);
    CHECK(g.locate(5.0) == 3);
}

TEST_CASE("invalid grid configurations are rejected") {
    CHECK_THROWS_AS(generate_grid({1, 0.0, 1.0, 1e-5, 2.2}), ConfigError);
    CHECK_THROWS_AS(generate_grid({10, 1.0, 1.0, 1e-5, 2.2}), ConfigError);
    CHECK_THROWS_AS(generate_grid({10, 2.0, 1.0, 1e-5, 2.2}), ConfigError);
    CHECK_THROWS_AS(generate_grid({10, 0.0, 1.0, 0.0, 2.2}), ConfigError);
    CHECK_THROWS_AS(generate_grid({10, 0.0, 1.0, -1e-3, 2.2}), ConfigError);
    CHECK_THROWS_AS(generate_grid({10, 0.0, 1.0, 1e-5, 1.0}), ConfigError);
    CHECK_THROWS_AS(Grid({0.0, 1.0, 1.0}, 2.0), ConfigError);
}

TEST_CASE("config errors name the offending field") {
    try {
        generate_grid({10, 0.0, 1.0, 0.0, 2.2});
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("eps") != std::string::npos);
    }
}
