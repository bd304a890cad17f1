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

#include "gecs/capacity.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gecs/error.hpp"
#include "gecs/solver.hpp"

namespace gecs {

namespace {

void check_radios(const ConflictNetwork &net, std::span<const LinkRadio> radios) {
    if (radios.size() != net.num_links()) {
        throw ValidationError("expected " + std::to_string(net.num_links()) + " radios, got " +
                              std::to_string(radios.size()));
    }
}

void check_rate_vector(std::span<const double> v, std::size_t n, const char *what) {
    if (v.size() != n) {
        throw ValidationError(std::string(what) + " has " + std::to_string(v.size()) + " entries for " +
                              std::to_string(n) + " links");
    }
    for (std::size_t l = 0; l < n; ++l) {
        if (!(v[l] >= 0.0)) {
            throw ValidationError(std::string(what) + " entry for l" + std::to_string(l + 1) +
                                  " must be non-negative");
        }
    }
}

void require_optimal(const lp::Outcome &o, const char *what) {
    if (o.status != lp::Status::optimal) {
        throw std::runtime_error(std::string(what) + " LP ended with status " + std::string(lp::to_string(o.status)));
    }
}

} // namespace

std::vector<FeasibleAllocation> enumerate_feasible_allocations(const ConflictNetwork &net,
                                                               std::span<const LinkRadio> radios, std::size_t cap) {
    check_radios(net, radios);
    const std::size_t n = net.num_links();
    const auto sets = enumerate_independent_sets(net, cap);

    std::size_t total = 0;
    for (const auto &set : sets) {
        std::size_t combos = 1;
        for (LinkId l : set) {
            combos *= radios[l].num_levels() - 1;
            if (combos > cap) {
                break;
            }
        }
        total += combos;
        if (total > cap) {
            std::ostringstream msg;
            msg << "feasible-allocation enumeration exceeds the cap of " << cap;
            throw EnumerationLimitError(msg.str());
        }
    }

    std::vector<FeasibleAllocation> out;
    out.reserve(total);
    FeasibleAllocation current;
    current.power.assign(n, 0.0);
    current.rate.assign(n, 0.0);
    current.level.assign(n, 0);
    for (const auto &set : sets) {
        // Every nonzero level combination on the active links.
        auto fill = [&](auto &&self, std::size_t i) -> void {
            if (i == set.size()) {
                out.push_back(current);
                return;
            }
            const LinkId l = set[i];
            for (std::size_t lvl = 1; lvl < radios[l].num_levels(); ++lvl) {
                current.level[l] = lvl;
                current.power[l] = radios[l].levels()[lvl];
                current.rate[l] = radios[l].rates()[lvl];
                self(self, i + 1);
            }
            current.level[l] = 0;
            current.power[l] = 0.0;
            current.rate[l] = 0.0;
        };
        fill(fill, 0);
    }
    return out;
}

CapacityRegion::CapacityRegion(const ConflictNetwork &net, std::vector<LinkRadio> radios, std::size_t cap)
    : radios_(std::move(radios)), allocations_(enumerate_feasible_allocations(net, radios_, cap)) {}

std::vector<WeightedAllocation> CapacityRegion::collect(const std::vector<double> &theta) const {
    std::vector<WeightedAllocation> out;
    for (std::size_t i = 0; i < allocations_.size(); ++i) {
        if (theta[i] > 0.0) {
            out.push_back({allocations_[i], theta[i]});
        }
    }
    return out;
}

RegionResult CapacityRegion::membership(std::span<const double> lambda) const {
    const std::size_t n = num_links();
    check_rate_vector(lambda, n, "arrival-rate vector");
    const std::size_t k = allocations_.size();

    lp::LinearProgram prog;
    prog.objective.assign(k, 0.0);
    prog.add(std::vector<double>(k, 1.0), lp::Relation::equal, 1.0);
    for (LinkId l = 0; l < n; ++l) {
        std::vector<double> rate_row(k);
        std::vector<double> power_row(k);
        for (std::size_t i = 0; i < k; ++i) {
            rate_row[i] = allocations_[i].rate[l];
            power_row[i] = allocations_[i].power[l];
        }
        prog.add(std::move(rate_row), lp::Relation::greater_equal, lambda[l]);
        prog.add(std::move(power_row), lp::Relation::less_equal, radios_[l].p_avg());
    }
    const lp::Outcome o = lp::solve(prog);
    RegionResult result;
    if (o.status == lp::Status::infeasible) {
        return result;
    }
    require_optimal(o, "membership");
    result.inside = true;
    result.certificate = collect(o.x);
    result.served.assign(n, 0.0);
    result.spent.assign(n, 0.0);
    for (const auto &w : result.certificate) {
        for (LinkId l = 0; l < n; ++l) {
            result.served[l] += w.weight * w.allocation.rate[l];
            result.spent[l] += w.weight * w.allocation.power[l];
        }
    }
    return result;
}

BoundaryResult CapacityRegion::boundary_scale(std::span<const double> direction) const {
    const std::size_t n = num_links();
    check_rate_vector(direction, n, "direction");
    if (std::all_of(direction.begin(), direction.end(), [](double d) { return d == 0.0; })) {
        throw ValidationError("direction must be nonzero");
    }
    const std::size_t k = allocations_.size();

    // Variables: theta_0..theta_{k-1}, rho.
    lp::LinearProgram prog;
    prog.objective.assign(k + 1, 0.0);
    prog.objective[k] = -1.0;
    std::vector<double> simplex_row(k + 1, 1.0);
    simplex_row[k] = 0.0;
    prog.add(std::move(simplex_row), lp::Relation::equal, 1.0);
    for (LinkId l = 0; l < n; ++l) {
        std::vector<double> rate_row(k + 1);
        std::vector<double> power_row(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            rate_row[i] = allocations_[i].rate[l];
            power_row[i] = allocations_[i].power[l];
        }
        rate_row[k] = -direction[l];
        prog.add(std::move(rate_row), lp::Relation::greater_equal, 0.0);
        prog.add(std::move(power_row), lp::Relation::less_equal, radios_[l].p_avg());
    }
    const lp::Outcome o = lp::solve(prog);
    require_optimal(o, "boundary-scale");
    BoundaryResult result;
    result.scale = o.x[k];
    std::vector<double> theta(o.x.begin(), o.x.begin() + static_cast<std::ptrdiff_t>(k));
    result.certificate = collect(theta);
    return result;
}

double CapacityRegion::max_admissible_rate(LinkId link) const {
    if (link >= num_links()) {
        throw ValidationError("unknown link index " + std::to_string(link));
    }
    std::vector<double> unit(num_links(), 0.0);
    unit[link] = 1.0;
    return boundary_scale(unit).scale;
}

RegionResult membership(std::span<const double> lambda, const ConflictNetwork &net,
                        std::span<const LinkRadio> radios) {
    check_radios(net, radios);
    return CapacityRegion(net, {radios.begin(), radios.end()}).membership(lambda);
}

double max_admissible_rate(LinkId link, const ConflictNetwork &net, std::span<const LinkRadio> radios) {
    check_radios(net, radios);
    return CapacityRegion(net, {radios.begin(), radios.end()}).max_admissible_rate(link);
}

double boundary_scale(std::span<const double> direction, const ConflictNetwork &net,
                      std::span<const LinkRadio> radios) {
    check_radios(net, radios);
    return CapacityRegion(net, {radios.begin(), radios.end()}).boundary_scale(direction).scale;
}

} // namespace gecs
