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
#include <random>

#include "fixtures.hpp"
#include "gecs/capacity.hpp"
#include "gecs/error.hpp"
#include "oracles/oracles.hpp"

using namespace gecs;

namespace {

void check_certificate(const RegionResult &r, std::span<const double> lambda, std::span<const LinkRadio> radios) {
    REQUIRE(r.inside);
    double total = 0.0;
    std::vector<double> served(lambda.size(), 0.0);
    std::vector<double> spent(lambda.size(), 0.0);
    for (const auto &w : r.certificate) {
        CHECK(w.weight >= 0.0);
        total += w.weight;
        for (std::size_t l = 0; l < lambda.size(); ++l) {
            served[l] += w.weight * w.allocation.rate[l];
            spent[l] += w.weight * w.allocation.power[l];
        }
    }
    CHECK(std::abs(total - 1.0) < 1e-7);
    for (std::size_t l = 0; l < lambda.size(); ++l) {
        CHECK(served[l] >= lambda[l] - 1e-7);
        CHECK(spent[l] <= radios[l].p_avg() + 1e-7);
    }
}

std::vector<LinkRadio> awgn_radios(std::size_t n, double p_avg) {
    std::vector<LinkRadio> out;
    for (std::size_t l = 0; l < n; ++l) {
        out.emplace_back(RatePowerCurve::awgn({0.5 + 0.3 * static_cast<double>(l), 1.0, 1.0}),
                         std::vector<double>{0, 1, 3}, p_avg);
    }
    return out;
}

} // namespace

TEST_CASE("allocation counts") {
    const auto pair = fixture::conflicting_pair();
    CHECK(enumerate_feasible_allocations(pair, fixture::replicate(fixture::unit_radio(1.0), 2)).size() == 3);

    const auto one = fixture::single_link();
    const std::vector<LinkRadio> single{fixture::two_rate_radio(0.75)};
    const auto allocs = enumerate_feasible_allocations(one, single);
    REQUIRE(allocs.size() == 3);
    CHECK(allocs[0].power == std::vector<double>{0.0});

    // Independent sets of the six-cycle conflict graph, the empty one included.
    const auto c6 = fixture::six_cycle();
    const auto six = enumerate_feasible_allocations(c6, fixture::replicate(fixture::unit_radio(1.0), 6));
    CHECK(six.size() == oracle::independent_set_count(oracle::adjacency_of(c6)));
    CHECK(six.size() == 18);
    for (const auto &a : six) {
        CHECK(is_feasible_power_vector(c6, a.power));
    }

    CHECK_THROWS_AS(enumerate_feasible_allocations(c6, fixture::replicate(fixture::unit_radio(1.0), 6), 5),
                    EnumerationLimitError);
    CHECK_THROWS_AS(enumerate_feasible_allocations(c6, fixture::replicate(fixture::unit_radio(1.0), 2)),
                    ValidationError);
}

TEST_CASE("single-link membership around the power budget") {
    const auto net = fixture::single_link();
    const std::vector<double> lambda{1.0};

    const std::vector<LinkRadio> rich{fixture::two_rate_radio(0.75)};
    const auto in = membership(lambda, net, rich);
    check_certificate(in, lambda, rich);

    // At P_avg = 0.5 the best mix runs the rate-1 level 2/3 of the time.
    const std::vector<LinkRadio> poor{fixture::two_rate_radio(0.5)};
    CHECK_FALSE(membership(lambda, net, poor).inside);
    CHECK(max_admissible_rate(0, net, poor) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    const std::vector<double> zero{0.0};
    CHECK(membership(zero, net, poor).inside);
}

TEST_CASE("max admissible rate") {
    const auto net = fixture::single_link();
    const std::vector<LinkRadio> r04{fixture::unit_radio(0.4)};
    CHECK(std::abs(max_admissible_rate(0, net, r04) - 0.4) < 1e-9);
    const std::vector<double> d{1.0};
    CHECK(std::abs(boundary_scale(d, net, r04) - 0.4) < 1e-9);

    const std::vector<LinkRadio> full{fixture::two_rate_radio(2.0)};
    CHECK(std::abs(max_admissible_rate(0, net, full) - 2.0) < 1e-9);

    const auto pair = fixture::conflicting_pair();
    const auto radios = fixture::replicate(fixture::unit_radio(1.0), 2);
    CHECK(std::abs(max_admissible_rate(0, pair, radios) - 1.0) < 1e-9);
    CHECK(std::abs(max_admissible_rate(1, pair, radios) - 1.0) < 1e-9);
}

TEST_CASE("six-cycle boundary along the all-ones direction") {
    const auto net = fixture::six_cycle();
    const CapacityRegion region(net, fixture::replicate(fixture::unit_radio(1.0), 6));
    const std::vector<double> ones(6, 1.0);
    const auto b = region.boundary_scale(ones);

    // Independent bound: every allocation serves at most alpha = 3 links at
    // rate 1, so rho * 6 <= 3; the two triples time-shared equally attain it.
    const auto adj = oracle::adjacency_of(net);
    std::size_t alpha = 0;
    for (std::size_t mask = 0; mask < 64; ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                ok = ok && !(((mask >> i) & 1u) && ((mask >> j) & 1u) && adj[i][j]);
            }
        }
        if (ok) {
            alpha = std::max<std::size_t>(alpha, static_cast<std::size_t>(__builtin_popcountll(mask)));
        }
    }
    CHECK(std::abs(b.scale - static_cast<double>(alpha) / 6.0) < 1e-9);
    CHECK(std::abs(b.scale - 0.5) < 1e-9);

    std::vector<double> lambda(6, b.scale);
    check_certificate(region.membership(lambda), lambda, region.radios());

    for (LinkId l = 0; l < 6; ++l) {
        std::vector<double> unit(6, 0.0);
        unit[l] = 1.0;
        CHECK(std::abs(region.boundary_scale(unit).scale - region.max_admissible_rate(l)) < 1e-9);
    }
}

TEST_CASE("full budgets reduce to the scheduling region") {
    const auto net = fixture::six_cycle();
    const CapacityRegion region(net, fixture::replicate(fixture::unit_radio(1.0), 6));
    std::vector<double> lambda{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
    CHECK(region.membership(lambda).inside);
    lambda[0] = 0.51;
    CHECK_FALSE(region.membership(lambda).inside);
}

TEST_CASE("property: membership is monotone along random directions") {
    const auto net = fixture::six_cycle();
    const CapacityRegion region(net, awgn_radios(6, 1.0));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> d(6);
        for (auto &x : d) {
            x = coord(rng);
        }
        const double rho = region.boundary_scale(d).scale;
        REQUIRE(rho > 0.0);
        for (double f : {0.25, 0.5, 0.9, 1.0}) {
            std::vector<double> lambda(6);
            for (std::size_t l = 0; l < 6; ++l) {
                lambda[l] = f * rho * d[l];
            }
            const auto r = region.membership(lambda);
            CHECK(r.inside);
            if (r.inside) {
                check_certificate(r, lambda, region.radios());
            }
        }
        std::vector<double> beyond(6);
        for (std::size_t l = 0; l < 6; ++l) {
            beyond[l] = (rho + 1e-6) * d[l];
        }
        CHECK_FALSE(region.membership(beyond).inside);
    }
}

TEST_CASE("property: an extra power level never shrinks the region") {
    const auto net = fixture::path(3);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(0.05, 1.0);
    std::uniform_real_distribution<double> level(0.2, 6.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto base = awgn_radios(3, 1.0);
        std::vector<double> d(3);
        for (auto &x : d) {
            x = coord(rng);
        }
        const double rho = boundary_scale(d, net, base);
        std::vector<double> lambda(3);
        for (std::size_t l = 0; l < 3; ++l) {
            lambda[l] = rho * d[l];
        }
        const std::size_t link = static_cast<std::size_t>(trial) % 3;
        auto levels = std::vector<double>(base[link].levels().begin(), base[link].levels().end());
        levels.push_back(level(rng));
        auto augmented = base;
        augmented[link] = LinkRadio(base[link].curve(), levels, base[link].p_avg());
        CHECK(membership(lambda, net, augmented).inside);
        CHECK(boundary_scale(d, net, augmented) >= rho - 1e-9);
    }
}
