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

#include "gecs/lpf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gecs/error.hpp"
#include "gecs/solver.hpp"

namespace gecs {

namespace {

std::vector<double> combine(std::span<const LinkId> subset, std::span<const ActivationVector> activations,
                            std::span<const double> weights) {
    std::vector<double> out(subset.size(), 0.0);
    for (std::size_t j = 0; j < activations.size(); ++j) {
        for (std::size_t i = 0; i < subset.size(); ++i) {
            out[i] += weights[j] * activations[j].active[subset[i]];
        }
    }
    return out;
}

} // namespace

SubgraphSigma sigma_for_subgraph(const ConflictNetwork &net, std::span<const LinkId> subset, std::size_t cap) {
    SubgraphSigma result;
    result.activations = enumerate_maximal_activations(net, subset, cap);
    result.subset.assign(subset.begin(), subset.end());
    std::sort(result.subset.begin(), result.subset.end());

    const auto &cols = result.activations;
    const std::size_t k = cols.size();
    const std::size_t rows = result.subset.size();

    auto coverage = [&](std::size_t i, std::size_t width) {
        std::vector<double> row(width, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            const double m = cols[j].active[result.subset[i]];
            row[j] = m;
            row[k + j] = -m;
        }
        return row;
    };
    auto beta_sum = [&](std::size_t width) {
        std::vector<double> row(width, 0.0);
        std::fill(row.begin() + static_cast<std::ptrdiff_t>(k), row.begin() + static_cast<std::ptrdiff_t>(2 * k), 1.0);
        return row;
    };

    // Variables: x_0..x_{k-1}, beta_0..beta_{k-1}.
    lp::LinearProgram prog;
    prog.objective.assign(2 * k, 0.0);
    std::fill(prog.objective.begin(), prog.objective.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
    for (std::size_t i = 0; i < rows; ++i) {
        prog.add(coverage(i, 2 * k), lp::Relation::greater_equal, 0.0);
    }
    prog.add(beta_sum(2 * k), lp::Relation::equal, 1.0);

    const lp::Outcome o = lp::solve(prog);
    if (o.status != lp::Status::optimal) {
        throw std::runtime_error("local-pooling LP ended with status " + std::string(lp::to_string(o.status)));
    }
    result.sigma = o.value;
    std::vector<double> x(o.x);

    // Among optimal pairs prefer one with sigma*mu = nu on every link and the
    // largest smallest nu entry, so that any smaller sigma makes the pair a
    // strict domination. Falls back to the vertex above when none exists.
    {
        const std::size_t t = 2 * k;
        lp::LinearProgram refine;
        refine.objective.assign(t + 1, 0.0);
        refine.objective[t] = -1.0;
        for (std::size_t i = 0; i < rows; ++i) {
            refine.add(coverage(i, t + 1), lp::Relation::equal, 0.0);
            auto floor = coverage(i, t + 1);
            std::fill(floor.begin(), floor.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
            for (std::size_t j = 0; j < k; ++j) {
                floor[k + j] = -floor[k + j];
            }
            floor[t] = -1.0;
            refine.add(std::move(floor), lp::Relation::greater_equal, 0.0);
        }
        refine.add(beta_sum(t + 1), lp::Relation::equal, 1.0);
        std::vector<double> x_sum(t + 1, 0.0);
        std::fill(x_sum.begin(), x_sum.begin() + static_cast<std::ptrdiff_t>(k), 1.0);
        refine.add(std::move(x_sum), lp::Relation::less_equal, result.sigma);
        const lp::Outcome r = lp::solve(refine);
        if (r.status == lp::Status::optimal && -r.value > 1e-9) {
            x.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(t));
        }
    }

    const double total = std::accumulate(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
    result.mu_weights.resize(k);
    result.nu_weights.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        result.mu_weights[j] = x[j] / total;
        result.nu_weights[j] = x[k + j];
    }
    result.mu = combine(result.subset, cols, result.mu_weights);
    result.nu = combine(result.subset, cols, result.nu_weights);
    return result;
}

LpfResult lpf(const ConflictNetwork &net, std::size_t max_links) {
    const std::size_t n = net.num_links();
    if (n > max_links) {
        throw EnumerationLimitError("LPF over " + std::to_string(n) + " links exceeds the cap of " +
                                    std::to_string(max_links) + " links");
    }
    LpfResult result;
    bool have_best = false;
    const std::size_t subsets = std::size_t{1} << n;
    result.per_subgraph.reserve(subsets - 1);
    std::vector<LinkId> subset;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        subset.clear();
        for (LinkId l = 0; l < n; ++l) {
            if (mask & (std::size_t{1} << l)) {
                subset.push_back(l);
            }
        }
        SubgraphSigma s = sigma_for_subgraph(net, subset, n);
        result.per_subgraph.emplace_back(subset, s.sigma);
        const double gap = have_best ? s.sigma - result.sigma_star : -1.0;
        if (gap < -1e-12 || (std::abs(gap) <= 1e-12 && s.subset < result.witness.subset)) {
            result.sigma_star = s.sigma;
            result.witness = std::move(s);
            have_best = true;
        }
    }
    return result;
}

bool check_sigma_pair(std::span<const LinkId> subset, std::span<const ActivationVector> activations,
                      std::span<const double> mu_weights, std::span<const double> nu_weights, double sigma) {
    if (mu_weights.size() != activations.size() || nu_weights.size() != activations.size()) {
        throw ValidationError("weight vectors must have one entry per activation vector");
    }
    for (auto weights : {mu_weights, nu_weights}) {
        const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ValidationError("convex weights sum to " + std::to_string(sum) + ", not 1");
        }
        if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < -1e-12; })) {
            throw ValidationError("convex weights must be non-negative");
        }
    }
    const auto mu = combine(subset, activations, mu_weights);
    const auto nu = combine(subset, activations, nu_weights);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (!(sigma * mu[i] < nu[i])) {
            return true;
        }
    }
    return false;
}

} // namespace gecs
