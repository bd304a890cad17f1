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

#include "gecs/netmodel.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include "gecs/error.hpp"

namespace gecs {

namespace {

std::string link_name(LinkId l) { return "l" + std::to_string(l + 1); }

// Hop distances from every vertex (BFS); unreachable = max.
std::vector<std::vector<std::size_t>> all_pairs_hops(const Graph &graph) {
    const std::size_t n = graph.num_vertices;
    std::vector<std::vector<VertexId>> adj(n);
    for (const Edge &e : graph.edges) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    constexpr auto kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, kInf));
    for (VertexId s = 0; s < n; ++s) {
        std::queue<VertexId> frontier;
        dist[s][s] = 0;
        frontier.push(s);
        while (!frontier.empty()) {
            const VertexId v = frontier.front();
            frontier.pop();
            for (VertexId w : adj[v]) {
                if (dist[s][w] == kInf) {
                    dist[s][w] = dist[s][v] + 1;
                    frontier.push(w);
                }
            }
        }
    }
    return dist;
}

} // namespace

ConflictNetwork::ConflictNetwork(std::vector<std::vector<LinkId>> conflicts) : conflicts_(std::move(conflicts)) {
    const std::size_t n = conflicts_.size();
    adjacency_.assign(n * n, 0);
    for (LinkId l = 0; l < n; ++l) {
        auto &set = conflicts_[l];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (LinkId k : set) {
            if (k >= n) {
                throw ValidationError("conflict set of " + link_name(l) + " references unknown link index " +
                                      std::to_string(k));
            }
            if (k == l) {
                throw ValidationError("link " + link_name(l) + " lists itself as a conflict");
            }
            adjacency_[l * n + k] = 1;
        }
    }
    for (LinkId l = 0; l < n; ++l) {
        for (LinkId k : conflicts_[l]) {
            if (!adjacency_[k * n + l]) {
                throw ValidationError("asymmetric conflict: " + link_name(k) + " is in I_" + link_name(l) +
                                      " but " + link_name(l) + " is not in I_" + link_name(k));
            }
        }
    }
}

ConflictNetwork ConflictNetwork::from_conflicts(const std::vector<std::vector<LinkId>> &conflicts) {
    if (conflicts.empty()) {
        throw ValidationError("network has no links");
    }
    return ConflictNetwork(conflicts);
}

ConflictNetwork ConflictNetwork::from_graph(const Graph &graph, InterferenceModel model) {
    if (graph.edges.empty()) {
        throw ValidationError("graph has no edges");
    }
    if (model.hops < 1) {
        throw ValidationError("interference model needs K >= 1 hops");
    }
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        const Edge &e = graph.edges[i];
        if (e.from >= graph.num_vertices || e.to >= graph.num_vertices) {
            throw ValidationError("edge " + link_name(i) + " references a vertex outside [0, " +
                                  std::to_string(graph.num_vertices) + ")");
        }
        if (e.from == e.to) {
            throw ValidationError("edge " + link_name(i) + " is a self-loop");
        }
    }

    const auto dist = all_pairs_hops(graph);
    const std::size_t m = graph.edges.size();
    std::vector<std::vector<LinkId>> conflicts(m);
    for (LinkId a = 0; a < m; ++a) {
        for (LinkId b = a + 1; b < m; ++b) {
            const Edge &ea = graph.edges[a];
            const Edge &eb = graph.edges[b];
            const std::size_t d = std::min({dist[ea.from][eb.from], dist[ea.from][eb.to], dist[ea.to][eb.from],
                                            dist[ea.to][eb.to]});
            if (d < model.hops) {
                conflicts[a].push_back(b);
                conflicts[b].push_back(a);
            }
        }
    }
    ConflictNetwork net(std::move(conflicts));
    net.endpoints_ = graph.edges;
    return net;
}

bool ConflictNetwork::is_independent(std::span<const LinkId> links) const {
    for (std::size_t i = 0; i < links.size(); ++i) {
        for (std::size_t j = i + 1; j < links.size(); ++j) {
            if (in_conflict(links[i], links[j])) {
                return false;
            }
        }
    }
    return true;
}

ConflictNetwork build_conflict_sets(const Graph &graph, InterferenceModel model) {
    return ConflictNetwork::from_graph(graph, model);
}

std::vector<LinkId> ActivationVector::support() const {
    std::vector<LinkId> out;
    for (LinkId l = 0; l < active.size(); ++l) {
        if (active[l]) {
            out.push_back(l);
        }
    }
    return out;
}

std::vector<ActivationVector> enumerate_maximal_activations(const ConflictNetwork &net,
                                                            std::span<const LinkId> subset, std::size_t cap) {
    if (subset.empty()) {
        throw ValidationError("maximal activation enumeration needs a nonempty subset");
    }
    if (subset.size() > cap) {
        std::ostringstream msg;
        msg << "subset of " << subset.size() << " links exceeds the enumeration cap of " << cap;
        throw EnumerationLimitError(msg.str());
    }
    std::vector<LinkId> links(subset.begin(), subset.end());
    std::sort(links.begin(), links.end());
    if (std::adjacent_find(links.begin(), links.end()) != links.end()) {
        throw ValidationError("subset contains a duplicate link");
    }
    for (LinkId l : links) {
        if (l >= net.num_links()) {
            throw ValidationError("subset references unknown link index " + std::to_string(l));
        }
    }

    const std::size_t k = links.size();
    std::vector<ActivationVector> out;
    std::vector<std::uint8_t> chosen(k, 0);

    auto blocked = [&](std::size_t pos, std::size_t upto) {
        for (std::size_t j = 0; j < upto; ++j) {
            if (chosen[j] && net.in_conflict(links[pos], links[j])) {
                return true;
            }
        }
        return false;
    };

    // Include-first depth-first search; for pairwise-incomparable sets this
    // emits them in lexicographic order of their sorted link lists.
    auto recurse = [&](auto &&self, std::size_t pos) -> void {
        if (pos == k) {
            for (std::size_t j = 0; j < k; ++j) {
                if (!chosen[j] && !blocked(j, k)) {
                    return;
                }
            }
            ActivationVector v;
            v.active.assign(net.num_links(), 0);
            for (std::size_t j = 0; j < k; ++j) {
                v.active[links[j]] = chosen[j];
            }
            out.push_back(std::move(v));
            return;
        }
        if (!blocked(pos, pos)) {
            chosen[pos] = 1;
            self(self, pos + 1);
            chosen[pos] = 0;
        }
        self(self, pos + 1);
    };
    recurse(recurse, 0);
    return out;
}

bool is_feasible_power_vector(const ConflictNetwork &net, std::span<const double> power) {
    if (power.size() != net.num_links()) {
        throw ValidationError("power vector has " + std::to_string(power.size()) + " entries for " +
                              std::to_string(net.num_links()) + " links");
    }
    std::vector<LinkId> support;
    for (LinkId l = 0; l < power.size(); ++l) {
        if (power[l] < 0.0) {
            throw ValidationError("negative power on link " + link_name(l));
        }
        if (power[l] > 0.0) {
            support.push_back(l);
        }
    }
    return net.is_independent(support);
}

std::vector<std::vector<LinkId>> enumerate_independent_sets(const ConflictNetwork &net, std::size_t cap) {
    std::vector<std::vector<LinkId>> out;
    std::vector<LinkId> current;
    auto recurse = [&](auto &&self, LinkId next) -> void {
        if (out.size() >= cap) {
            throw EnumerationLimitError("independent-set enumeration exceeds the cap of " + std::to_string(cap));
        }
        out.push_back(current);
        for (LinkId l = next; l < net.num_links(); ++l) {
            bool ok = true;
            for (LinkId c : current) {
                if (net.in_conflict(l, c)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                current.push_back(l);
                self(self, l + 1);
                current.pop_back();
            }
        }
    };
    recurse(recurse, 0);
    return out;
}

} // namespace gecs
