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
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gecs {

/// Dense link index in [0, num_links).
using LinkId = std::size_t;
using VertexId = std::size_t;

struct Edge {
    VertexId from;
    VertexId to;
};

struct Graph {
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
};

/// Binary interference model used to derive conflict sets from a graph.
/// K = 1 is node-exclusive (one-hop): links conflict iff they share a vertex.
/// For K > 1, two links conflict when some pair of their endpoints lies
/// within K - 1 hops of each other.
struct InterferenceModel {
    unsigned hops = 1;

    static InterferenceModel one_hop() { return {1}; }
    static InterferenceModel k_hop(unsigned k) { return {k}; }
};

/**
 * Links with symmetric, irreflexive interference sets.
 *
 * Immutable after construction. Every constructor validates symmetry and
 * irreflexivity and throws ValidationError naming the offending link pair.
 */
class ConflictNetwork {
  public:
    /// Explicit conflict lists, one per link. Duplicates inside a list are
    /// tolerated; asymmetric pairs, self-conflicts and out-of-range ids are not.
    static ConflictNetwork from_conflicts(const std::vector<std::vector<LinkId>> &conflicts);

    /// Derives conflict sets from an undirected graph; each edge is one link,
    /// numbered in edge order.
    static ConflictNetwork from_graph(const Graph &graph, InterferenceModel model);

    std::size_t num_links() const { return conflicts_.size(); }

    /// Sorted interference set I_l.
    const std::vector<LinkId> &conflicts(LinkId link) const { return conflicts_.at(link); }

    bool in_conflict(LinkId a, LinkId b) const { return adjacency_[a * conflicts_.size() + b] != 0; }

    /// Endpoints per link when the network came from a graph.
    const std::optional<std::vector<Edge>> &endpoints() const { return endpoints_; }

    /// True iff no two links in `links` conflict.
    bool is_independent(std::span<const LinkId> links) const;

  private:
    explicit ConflictNetwork(std::vector<std::vector<LinkId>> conflicts);

    std::vector<std::vector<LinkId>> conflicts_;
    std::vector<std::uint8_t> adjacency_;
    std::optional<std::vector<Edge>> endpoints_;
};

/// Builds the conflict network of `graph` under `model`.
ConflictNetwork build_conflict_sets(const Graph &graph, InterferenceModel model);

/// 0/1 activation indicator indexed by LinkId over the whole network.
/// Links outside the enumerated subset are always 0.
struct ActivationVector {
    std::vector<std::uint8_t> active;

    std::vector<LinkId> support() const;
    friend bool operator==(const ActivationVector &, const ActivationVector &) = default;
};

inline constexpr std::size_t kDefaultMaximalActivationCap = 20;

/**
 * All maximal feasible activations of the links in `subset`, with conflicts
 * restricted to the subset. Output is exhaustive, duplicate-free, and ordered
 * lexicographically by the sorted list of active links.
 *
 * Throws EnumerationLimitError when |subset| exceeds `cap` and
 * ValidationError on an empty subset or an unknown link.
 */
std::vector<ActivationVector> enumerate_maximal_activations(const ConflictNetwork &net,
                                                            std::span<const LinkId> subset,
                                                            std::size_t cap = kDefaultMaximalActivationCap);

/// True iff the support of `power` is an independent set.
/// Throws ValidationError on a length mismatch or a negative entry.
bool is_feasible_power_vector(const ConflictNetwork &net, std::span<const double> power);

/// Independent sets of the whole network in lexicographic order of their
/// sorted link lists, starting with the empty set.
std::vector<std::vector<LinkId>> enumerate_independent_sets(const ConflictNetwork &net, std::size_t cap);

} // namespace gecs
