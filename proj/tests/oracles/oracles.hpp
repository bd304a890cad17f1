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

// Brute-force reference computations for tests. Nothing here calls into the
// library code path it is used to check.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gecs/netmodel.hpp"
#include "gecs/ratepower.hpp"
#include "gecs/solver.hpp"

namespace oracle {

/// Plain adjacency matrix built from explicit conflict lists.
using Adjacency = std::vector<std::vector<bool>>;

Adjacency adjacency_of(const gecs::ConflictNetwork &net);

/// All 0/1 vectors over `subset` (as sorted link lists) that are feasible
/// and maximal with conflicts restricted to the subset, sorted
/// lexicographically.
std::vector<std::vector<std::size_t>> maximal_sets(const Adjacency &adj, const std::vector<std::size_t> &subset);

/// Number of independent sets (including the empty one) by bitmask scan.
std::size_t independent_set_count(const Adjacency &adj);

/// Minimum of a bounded, feasible LP by enumerating every basis of its
/// equality form. Empty when infeasible.
std::optional<double> vertex_enumeration_min(const gecs::lp::LinearProgram &program);

struct Eq2Optimum {
    double value;
    std::vector<double> power; // lexicographically smallest maximizer
};

/// Exhaustive maximization of sum(q r - u P) over every level vector of the
/// network, filtering infeasible ones.
Eq2Optimum exhaustive_maxweight(const Adjacency &adj, const std::vector<gecs::LinkRadio> &radios,
                                const std::vector<double> &q, const std::vector<double> &u);

/// Smallest max_i nu_i / mu_i over pairs of convex combinations on a grid of
/// resolution 1/steps per simplex. Columns are 0/1 vectors over the subset.
double grid_sigma(const std::vector<std::vector<double>> &columns, int steps);

/// Lowest-power level index maximizing q*rate - u*power.
std::size_t scan_best_level(const std::vector<double> &levels, const std::vector<double> &rates, double q, double u);

} // namespace oracle
