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

#include <cstddef>
#include <span>
#include <vector>

#include "gecs/netmodel.hpp"

namespace gecs {

/// Pooling threshold of one link subset together with the pair of convex
/// combinations that attains it.
struct SubgraphSigma {
    std::vector<LinkId> subset;
    double sigma = 1.0;
    /// Maximal activations of the subset (columns of the activation matrix).
    std::vector<ActivationVector> activations;
    std::vector<double> mu_weights;
    std::vector<double> nu_weights;
    /// mu and nu over the subset, in subset order.
    std::vector<double> mu;
    std::vector<double> nu;
};

struct LpfResult {
    double sigma_star = 1.0;
    /// Argmin subset with its witness.
    SubgraphSigma witness;
    /// sigma of every nonempty subset, in bitmask order.
    std::vector<std::pair<std::vector<LinkId>, double>> per_subgraph;
};

inline constexpr std::size_t kDefaultLpfLinkCap = 14;

/**
 * Smallest sigma for which some convex combination mu of maximal activations
 * of `subset`, scaled by sigma, dominates another such combination nu:
 *
 *   minimize sum(x)  s.t.  M x >= M beta,  sum(beta) = 1,  x, beta >= 0
 *
 * with sigma = sum(x), mu = M x / sigma, nu = M beta.
 */
SubgraphSigma sigma_for_subgraph(const ConflictNetwork &net, std::span<const LinkId> subset,
                                 std::size_t cap = kDefaultMaximalActivationCap);

/// Minimum of sigma_for_subgraph over all nonempty link subsets. Ties resolve
/// to the lexicographically smallest subset.
LpfResult lpf(const ConflictNetwork &net, std::size_t max_links = kDefaultLpfLinkCap);

/// True iff sigma * mu is NOT strictly below nu in every coordinate, where mu
/// and nu are the given convex combinations of `activations` restricted to
/// `subset`. Throws ValidationError when weights do not sum to 1 within 1e-9.
bool check_sigma_pair(std::span<const LinkId> subset, std::span<const ActivationVector> activations,
                      std::span<const double> mu_weights, std::span<const double> nu_weights, double sigma);

} // namespace gecs
