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

#include "gecs/schedulers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gecs/error.hpp"

namespace gecs {

void SchedulerInput::validate() const {
    const std::size_t n = net.num_links();
    if (q.size() != n || u.size() != n || radios.size() != n) {
        throw ValidationError("scheduler input lengths do not match the " + std::to_string(n) + "-link network");
    }
    for (LinkId l = 0; l < n; ++l) {
        if (!(q[l] >= 0.0) || !(u[l] >= 0.0)) {
            throw ValidationError("queues of l" + std::to_string(l + 1) + " must be non-negative");
        }
    }
}

PowerDecision PowerDecision::idle(std::size_t links) {
    PowerDecision d;
    d.power.assign(links, 0.0);
    d.rate.assign(links, 0.0);
    d.level.assign(links, 0);
    return d;
}

void PowerDecision::assign(LinkId link, const PowerChoice &choice) {
    power[link] = choice.power;
    rate[link] = choice.rate;
    level[link] = choice.level;
}

double maxweight_objective(std::span<const double> q, std::span<const double> u, const PowerDecision &decision) {
    double total = 0.0;
    for (std::size_t l = 0; l < q.size(); ++l) {
        total += q[l] * decision.rate[l] - u[l] * decision.power[l];
    }
    return total;
}

namespace {

/**
 * Shared greedy sweep. Repeatedly takes the remaining link of highest
 * priority, asks `choose` for its power level, and removes it. A link that
 * transmits also removes its remaining conflict set; a link that stays idle
 * removes only itself, so it never blocks its neighbors.
 */
template <typename Priority, typename Choose>
PowerDecision greedy_sweep(const SchedulerInput &input, Rng &rng, TieBreak ties, Priority &&priority,
                           Choose &&choose, std::vector<LinkId> *order = nullptr) {
    const std::size_t n = input.net.num_links();
    std::vector<double> weight(n);
    for (LinkId l = 0; l < n; ++l) {
        weight[l] = priority(l);
    }
    std::vector<std::uint8_t> remaining(n, 1);
    std::size_t left = n;
    std::vector<LinkId> tied;
    PowerDecision decision = PowerDecision::idle(n);

    while (left > 0) {
        tied.clear();
        for (LinkId l = 0; l < n; ++l) {
            if (!remaining[l]) {
                continue;
            }
            if (tied.empty() || weight[l] > weight[tied.front()]) {
                tied.assign(1, l);
            } else if (weight[l] == weight[tied.front()]) {
                tied.push_back(l);
            }
        }
        LinkId pick = tied.front();
        if (tied.size() > 1 && ties == TieBreak::random) {
            pick = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)];
        }
        if (order) {
            order->push_back(pick);
        }
        remaining[pick] = 0;
        --left;
        const PowerChoice choice = choose(pick);
        if (choice.level == 0) {
            continue;
        }
        decision.assign(pick, choice);
        for (LinkId k : input.net.conflicts(pick)) {
            if (remaining[k]) {
                remaining[k] = 0;
                --left;
            }
        }
    }
    return decision;
}

PowerChoice peak_power(const LinkRadio &radio) {
    const std::size_t top = radio.num_levels() - 1;
    return {top, radio.levels()[top], radio.rates()[top], 0.0};
}

bool lexicographically_less(const std::vector<double> &a, const std::vector<double> &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

PowerDecision gecs_decide(const SchedulerInput &input, Rng &rng, TieBreak ties) {
    input.validate();
    return greedy_sweep(
        input, rng, ties, [&](LinkId l) { return input.q[l] * input.q[l] + input.u[l] * input.u[l]; },
        [&](LinkId l) { return optimal_power_for_link(input.radios[l], input.q[l], input.u[l]); });
}

std::vector<LinkId> gecs_selection_order(const SchedulerInput &input, Rng &rng, TieBreak ties,
                                         const std::function<double(double)> &transform) {
    input.validate();
    std::vector<LinkId> order;
    greedy_sweep(
        input, rng, ties, [&](LinkId l) { return transform(input.q[l] * input.q[l] + input.u[l] * input.u[l]); },
        [&](LinkId l) { return optimal_power_for_link(input.radios[l], input.q[l], input.u[l]); }, &order);
    return order;
}

PowerDecision gmw_decide(const SchedulerInput &input, Rng &rng, TieBreak ties) {
    input.validate();
    const std::size_t n = input.net.num_links();
    std::vector<PowerChoice> best(n);
    for (LinkId l = 0; l < n; ++l) {
        best[l] = optimal_power_for_link(input.radios[l], input.q[l], input.u[l]);
    }
    return greedy_sweep(
        input, rng, ties, [&](LinkId l) { return best[l].objective; }, [&](LinkId l) { return best[l]; });
}

PowerDecision maxweight_decide(const SchedulerInput &input, std::span<const FeasibleAllocation> allocations) {
    input.validate();
    const std::size_t n = input.net.num_links();
    PowerDecision best = PowerDecision::idle(n);
    double best_value = 0.0;
    bool have = false;
    for (const auto &a : allocations) {
        double value = 0.0;
        for (LinkId l = 0; l < n; ++l) {
            value += input.q[l] * a.rate[l] - input.u[l] * a.power[l];
        }
        const double tol = 1e-12 * std::max(1.0, std::abs(best_value));
        const bool better = !have || value > best_value + tol;
        const bool tie = have && std::abs(value - best_value) <= tol;
        if (better || (tie && lexicographically_less(a.power, best.power))) {
            best.power = a.power;
            best.rate = a.rate;
            best.level = a.level;
            best_value = better ? value : best_value;
            have = true;
        }
    }
    return best;
}

PowerDecision maxweight_decide(const SchedulerInput &input, std::size_t cap) {
    input.validate();
    const auto allocations = enumerate_feasible_allocations(input.net, input.radios, cap);
    return maxweight_decide(input, allocations);
}

PowerDecision gms_fixed_power_decide(const SchedulerInput &input, Rng &rng, TieBreak ties) {
    input.validate();
    return greedy_sweep(
        input, rng, ties, [&](LinkId l) { return input.q[l]; },
        [&](LinkId l) { return input.q[l] > 0.0 ? peak_power(input.radios[l]) : PowerChoice{}; });
}

namespace {

constexpr std::array<std::string_view, 4> kPolicyNames{"gecs", "gmw", "maxweight", "gms"};

class GreedyPolicy final : public Policy {
  public:
    using Fn = PowerDecision (*)(const SchedulerInput &, Rng &, TieBreak);
    GreedyPolicy(std::string_view name, Fn fn, TieBreak ties) : name_(name), fn_(fn), ties_(ties) {}

    std::string_view name() const override { return name_; }
    PowerDecision decide(const SchedulerInput &input, Rng &rng) override { return fn_(input, rng, ties_); }

  private:
    std::string_view name_;
    Fn fn_;
    TieBreak ties_;
};

class MaxWeightPolicy final : public Policy {
  public:
    MaxWeightPolicy(const ConflictNetwork &net, std::span<const LinkRadio> radios)
        : allocations_(enumerate_feasible_allocations(net, radios)) {}

    std::string_view name() const override { return kPolicyNames[2]; }
    PowerDecision decide(const SchedulerInput &input, Rng &) override { return maxweight_decide(input, allocations_); }

  private:
    std::vector<FeasibleAllocation> allocations_;
};

} // namespace

std::span<const std::string_view> policy_names() { return kPolicyNames; }

std::unique_ptr<Policy> make_policy(std::string_view name, const ConflictNetwork &net,
                                    std::span<const LinkRadio> radios, TieBreak ties) {
    if (name == kPolicyNames[0]) {
        return std::make_unique<GreedyPolicy>(kPolicyNames[0], &gecs_decide, ties);
    }
    if (name == kPolicyNames[1]) {
        return std::make_unique<GreedyPolicy>(kPolicyNames[1], &gmw_decide, ties);
    }
    if (name == kPolicyNames[2]) {
        return std::make_unique<MaxWeightPolicy>(net, radios);
    }
    if (name == kPolicyNames[3]) {
        return std::make_unique<GreedyPolicy>(kPolicyNames[3], &gms_fixed_power_decide, ties);
    }
    throw ValidationError("unknown policy '" + std::string(name) + "' (expected gecs, gmw, maxweight or gms)");
}

} // namespace gecs
