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
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecs/capacity.hpp"
#include "gecs/netmodel.hpp"
#include "gecs/ratepower.hpp"

namespace gecs {

using Rng = std::mt19937_64;

/// Queue snapshot handed to a policy for one slot.
struct SchedulerInput {
    std::span<const double> q;
    std::span<const double> u;
    const ConflictNetwork &net;
    std::span<const LinkRadio> radios;

    /// Throws ValidationError on inconsistent lengths or negative queues.
    void validate() const;
};

/// Per-slot power assignment; every entry is one of the link's levels.
struct PowerDecision {
    std::vector<double> power;
    std::vector<double> rate;
    std::vector<std::size_t> level;

    static PowerDecision idle(std::size_t links);
    void assign(LinkId link, const PowerChoice &choice);
};

/// How ties between equal-priority links are broken.
enum class TieBreak { random, lowest_index };

/// sum_l (q_l * r_l - u_l * P_l)
double maxweight_objective(std::span<const double> q, std::span<const double> u, const PowerDecision &decision);

PowerDecision gecs_decide(const SchedulerInput &input, Rng &rng, TieBreak ties = TieBreak::random);

/// Links in the order GECS considers them, with the priority Q^2 + U^2
/// passed through `transform` first. The identity transform reproduces the
/// order used by gecs_decide.
std::vector<LinkId> gecs_selection_order(const SchedulerInput &input, Rng &rng, TieBreak ties,
                                         const std::function<double(double)> &transform);

PowerDecision gmw_decide(const SchedulerInput &input, Rng &rng, TieBreak ties = TieBreak::random);

/// Exact maximizer over all feasible allocations; ties go to the
/// lexicographically smallest power vector.
PowerDecision maxweight_decide(const SchedulerInput &input, std::size_t cap = kDefaultAllocationCap);
PowerDecision maxweight_decide(const SchedulerInput &input, std::span<const FeasibleAllocation> allocations);

/// Greedy maximal scheduling by queue length, transmitting at peak power.
PowerDecision gms_fixed_power_decide(const SchedulerInput &input, Rng &rng, TieBreak ties = TieBreak::random);

/// Stateful wrapper used by the simulator; maxweight caches its allocations.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::string_view name() const = 0;
    virtual PowerDecision decide(const SchedulerInput &input, Rng &rng) = 0;
};

/// `name` is one of gecs, gmw, maxweight, gms. Throws ValidationError otherwise.
std::unique_ptr<Policy> make_policy(std::string_view name, const ConflictNetwork &net,
                                    std::span<const LinkRadio> radios, TieBreak ties = TieBreak::random);

/// Names accepted by make_policy.
std::span<const std::string_view> policy_names();

} // namespace gecs
