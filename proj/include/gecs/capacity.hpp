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
#include "gecs/ratepower.hpp"

namespace gecs {

/// One interference-feasible power vector with its induced rates.
struct FeasibleAllocation {
    std::vector<double> power;
    std::vector<double> rate;
    std::vector<std::size_t> level;
};

inline constexpr std::size_t kDefaultAllocationCap = 1'000'000;

/// Every feasible allocation: for each independent set, every combination of
/// nonzero levels on its links. Starts with the all-idle allocation.
std::vector<FeasibleAllocation> enumerate_feasible_allocations(const ConflictNetwork &net,
                                                               std::span<const LinkRadio> radios,
                                                               std::size_t cap = kDefaultAllocationCap);

struct WeightedAllocation {
    FeasibleAllocation allocation;
    double weight;
};

/// Verdict of a membership query against the closed power-constrained region.
struct RegionResult {
    bool inside = false;
    /// Time-sharing weights over allocations (nonzero entries only) when inside.
    std::vector<WeightedAllocation> certificate;
    /// Per-link sum of weight * rate and weight * power of the certificate.
    std::vector<double> served;
    std::vector<double> spent;
};

struct BoundaryResult {
    double scale = 0.0;
    std::vector<WeightedAllocation> certificate;
};

/**
 * Power-constrained stability region of a small network, held as the list of
 * feasible allocations. Membership, admissible rates and boundary scales are
 * LPs over time-sharing weights on that list.
 */
class CapacityRegion {
  public:
    CapacityRegion(const ConflictNetwork &net, std::vector<LinkRadio> radios,
                   std::size_t cap = kDefaultAllocationCap);

    std::size_t num_links() const { return radios_.size(); }
    const std::vector<FeasibleAllocation> &allocations() const { return allocations_; }
    const std::vector<LinkRadio> &radios() const { return radios_; }

    /// Closure test: exists theta in the simplex with sum theta*r >= lambda
    /// and sum theta*P <= P_avg.
    RegionResult membership(std::span<const double> lambda) const;

    /// Largest rho >= 0 with rho * direction in the closed region.
    BoundaryResult boundary_scale(std::span<const double> direction) const;

    /// C_l^av: boundary scale along the unit vector of `link`.
    double max_admissible_rate(LinkId link) const;

  private:
    std::vector<WeightedAllocation> collect(const std::vector<double> &theta) const;

    std::vector<LinkRadio> radios_;
    std::vector<FeasibleAllocation> allocations_;
};

RegionResult membership(std::span<const double> lambda, const ConflictNetwork &net,
                        std::span<const LinkRadio> radios);
double max_admissible_rate(LinkId link, const ConflictNetwork &net, std::span<const LinkRadio> radios);
double boundary_scale(std::span<const double> direction, const ConflictNetwork &net,
                      std::span<const LinkRadio> radios);

} // namespace gecs
