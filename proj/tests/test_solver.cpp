/*
Copyright 2026 The GECS Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gecs/error.hpp"
#include "gecs/solver.hpp"
#include "oracles/oracles.hpp"

using namespace gecs::lp;

namespace {

// The dominance program on all six links of the six-cycle: variables are
// x over the five maximal activations followed by beta over the same five.
LinearProgram six_cycle_dominance() {
    const std::vector<std::vector<int>> columns{
        {1, 0, 1, 0, 1, 0}, {1, 0, 0, 1, 0, 0}, {0, 1, 0, 1, 0, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 1}};
    const std::size_t k = columns.size();
    LinearProgram lp;
    lp.objective.assign(2 * k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        lp.objective[j] = 1.0;
    }
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<double> row(2 * k, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = columns[j][i];
            row[k + j] = -columns[j][i];
        }
        lp.add(row, Relation::greater_equal, 0.0);
    }
    std::vector<double> simplex(2 * k, 0.0);
    for (std::size_t j = k; j < 2 * k; ++j) {
        simplex[j] = 1.0;
    }
    lp.add(simplex, Relation::equal, 1.0);
    return lp;
}

} // namespace

TEST_CASE("trivial programs") {
    LinearProgram lp{{1.0}, {}};
    lp.add({1.0}, Relation::greater_equal, 3.0);
    auto r = solve(lp);
    CHECK(r.status == Status::optimal);
    CHECK(r.value == doctest::Approx(3.0));

    LinearProgram bad{{1.0}, {}};
    bad.add({1.0}, Relation::less_equal, -1.0);
    CHECK(solve(bad).status == Status::infeasible);

    LinearProgram open{{-1.0}, {}};
    open.add({1.0}, Relation::greater_equal, 1.0);
    CHECK(solve(open).status == Status::unbounded);

    LinearProgram empty{{2.0, 1.0}, {}};
    r = solve(empty);
    CHECK(r.status == Status::optimal);
    CHECK(r.value == 0.0);
}

TEST_CASE("six-cycle dominance program") {
    const auto lp = six_cycle_dominance();
    const auto r = solve(lp);
    REQUIRE(r.status == Status::optimal);
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-9);
    CHECK(max_violation(lp, r.x) < 1e-9);
    const auto brute = oracle::vertex_enumeration_min(lp);
    REQUIRE(brute.has_value());
    CHECK(std::abs(*brute - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("malformed programs are rejected") {
    LinearProgram lp{{1.0, 1.0}, {}};
    lp.add({1.0}, Relation::less_equal, 1.0);
    CHECK_THROWS_AS(solve(lp), gecs::ValidationError);

    LinearProgram nan{{1.0}, {}};
    nan.add({std::numeric_limits<double>::quiet_NaN()}, Relation::less_equal, 1.0);
    CHECK_THROWS_AS(solve(nan), gecs::ValidationError);
}

TEST_CASE("iteration limit is reported distinctly") {
    const auto lp = six_cycle_dominance();
    Options opts;
    opts.max_iterations = 1;
    const auto r = solve(lp, opts);
    CHECK(r.status == Status::iteration_limit);
    CHECK(to_string(r.status) == "iteration_limit");
}

TEST_CASE("degenerate program terminates") {
    // A classic cycling example for Dantzig's rule.
    LinearProgram lp{{-0.75, 150.0, -0.02, 6.0}, {}};
    lp.add({0.25, -60.0, -0.04, 9.0}, Relation::less_equal, 0.0);
    lp.add({0.5, -90.0, -0.02, 3.0}, Relation::less_equal, 0.0);
    lp.add({0.0, 0.0, 1.0, 0.0}, Relation::less_equal, 1.0);
    const auto r = solve(lp);
    REQUIRE(r.status == Status::optimal);
    CHECK(r.value == doctest::Approx(-0.05));
}

TEST_CASE("property: random bounded programs match vertex enumeration") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> rel(0, 2);
    int solved = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const std::size_t m = 1 + (trial / 6) % 4;
        LinearProgram lp;
        for (std::size_t j = 0; j < n; ++j) {
            lp.objective.push_back(coef(rng));
        }
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < n; ++j) {
                row.push_back(coef(rng));
            }
            lp.add(row, static_cast<Relation>(rel(rng)), coef(rng));
        }
        // Box every variable so the program is bounded.
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            lp.add(row, Relation::less_equal, 4.0);
        }
        const auto r = solve(lp);
        const auto brute = oracle::vertex_enumeration_min(lp);
        if (!brute) {
            INFO("trial " << trial << " violation " << (r.x.empty() ? -1.0 : max_violation(lp, r.x)));
            CHECK(r.status == Status::infeasible);
            continue;
        }
        REQUIRE(r.status == Status::optimal);
        CHECK(std::abs(r.value - *brute) < 1e-7);
        CHECK(max_violation(lp, r.x) < 1e-7);
        ++solved;

        const auto again = solve(lp);
        CHECK(again.x == r.x);
        CHECK(again.iterations == r.iterations);
    }
    CHECK(solved > 100);
}
