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

#pragma once

#include <random>
#include <vector>

#include "gecs/netmodel.hpp"
#include "gecs/ratepower.hpp"

namespace fixture {

/// Cycle v0..v5 with edge i = (v_i, v_{i+1 mod 6}), one-hop interference.
inline gecs::ConflictNetwork six_cycle() {
    gecs::Graph g{6, {}};
    for (std::size_t i = 0; i < 6; ++i) {
        g.edges.push_back({i, (i + 1) % 6});
    }
    return gecs::build_conflict_sets(g, gecs::InterferenceModel::one_hop());
}

inline gecs::ConflictNetwork path(std::size_t links) {
    gecs::Graph g{links + 1, {}};
    for (std::size_t i = 0; i < links; ++i) {
        g.edges.push_back({i, i + 1});
    }
    return gecs::build_conflict_sets(g, gecs::InterferenceModel::one_hop());
}

inline gecs::ConflictNetwork single_link() { return gecs::ConflictNetwork::from_conflicts({{}}); }

inline gecs::ConflictNetwork conflicting_pair() { return gecs::ConflictNetwork::from_conflicts({{1}, {0}}); }

/// Levels {0, 1}, rates {0, 1}.
inline gecs::LinkRadio unit_radio(double p_avg = 1.0) {
    return gecs::LinkRadio(gecs::RatePowerCurve::table({{0.0, 0.0}, {1.0, 1.0}}), p_avg);
}

/// Two packets at power 2 or one packet at power 0.75.
inline gecs::LinkRadio two_rate_radio(double p_avg) {
    return gecs::LinkRadio(gecs::RatePowerCurve::table({{0.0, 0.0}, {0.75, 1.0}, {2.0, 2.0}}), p_avg);
}

inline std::vector<gecs::LinkRadio> replicate(const gecs::LinkRadio &r, std::size_t n) {
    return std::vector<gecs::LinkRadio>(n, r);
}

/// Random symmetric conflict network on n links with edge probability p.
inline gecs::ConflictNetwork random_network(std::size_t n, double p, std::mt19937_64 &rng) {
    std::vector<std::vector<gecs::LinkId>> sets(n);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) {
                sets[i].push_back(j);
                sets[j].push_back(i);
            }
        }
    }
    return gecs::ConflictNetwork::from_conflicts(sets);
}

} // namespace fixture
