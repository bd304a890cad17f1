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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gecs/capacity.hpp"
#include "gecs/netmodel.hpp"
#include "gecs/ratepower.hpp"
#include "gecs/sim.hpp"

namespace gecs {

/// Arrival section: one law for every link, parameterized by per-link means.
struct ArrivalConfig {
    sim::ArrivalKind kind = sim::ArrivalKind::poisson;
    double batch = 1.0;       // bernoulli_batch
    std::size_t period = 1;   // periodic
    /// Fixed per-link means; lambda = rho * means.
    std::optional<std::vector<double>> means;
    /// Load direction; lambda = rho * boundary_scale(direction) * direction.
    std::optional<std::vector<double>> direction;
    /// Direction is the vector of per-link maximum admissible rates.
    bool direction_is_max_admissible = false;
};

struct ExperimentConfig {
    std::vector<std::string> policies{"gecs", "gmw"};
    std::vector<double> rho{1.0};
    std::uint64_t horizon = 100000;
    std::vector<std::uint64_t> seeds{1};
    unsigned jobs = 1;
    TieBreak ties = TieBreak::random;
    sim::VirtualDepartures virtual_departures = sim::VirtualDepartures::constant;
    double stability_window = 0.5;
    sim::StabilityThresholds thresholds;
    double power_tol = 0.01;
    std::uint64_t trace_stride = 1;
    sim::QueueState initial;
    std::size_t allocation_cap = kDefaultAllocationCap;
    std::size_t activation_cap = kDefaultMaximalActivationCap;
};

struct Scenario {
    std::string name;
    ConflictNetwork net;
    std::vector<LinkRadio> radios;
    ArrivalConfig arrivals;
    ExperimentConfig experiment;
    /// Non-fatal findings (e.g. a budget at or above peak power).
    std::vector<std::string> warnings;

    std::vector<double> p_avg() const;
};

/// Parses a scenario document. Unknown keys, wrong types and model invariant
/// violations throw ValidationError naming the offending field or link.
Scenario parse_scenario(const nlohmann::json &doc, const std::string &fallback_name = "scenario");

/// Reads and parses a scenario file. Throws IoError when the file cannot be
/// read and ValidationError on malformed content.
Scenario load_scenario(const std::filesystem::path &path);

/// Load direction of the scenario, resolving "max_admissible" via `region`.
std::vector<double> load_direction(const Scenario &scenario, const CapacityRegion &region);

/// Per-link mean arrival rates at load factor `rho`.
std::vector<double> arrival_means(const Scenario &scenario, const CapacityRegion *region, double rho);

/// Arrival laws with the given per-link means.
std::vector<sim::ArrivalSpec> arrival_specs(const ArrivalConfig &config, const std::vector<double> &means);

/// One row of the results CSV.
struct RunRow {
    std::string scenario;
    std::string policy;
    double rho = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t horizon = 0;
    double avg_sum_q = 0.0;
    double max_u = 0.0;
    sim::Verdict verdict = sim::Verdict::inconclusive;
    std::vector<double> avg_power;
};

struct RunRequest {
    std::string policy;
    double rho = 1.0;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> horizon;
    bool slot_log = false;
};

/// Builds the capacity region only when the scenario needs it to resolve its
/// load direction.
std::optional<CapacityRegion> region_for(const Scenario &scenario);

struct RunOutput {
    RunRow row;
    sim::RunMetrics metrics;
};

RunOutput run_point(const Scenario &scenario, const CapacityRegion *region, const RunRequest &request);

/// Full policy x rho x seed grid, policy-major. Rows come back in grid order
/// whatever the completion order of the `jobs` workers.
std::vector<RunRow> sweep(const Scenario &scenario, unsigned jobs, std::optional<std::uint64_t> horizon = std::nullopt);

void write_csv_header(std::ostream &out, std::size_t links);
void write_csv_row(std::ostream &out, const RunRow &row);

/// Per-slot trace: t, sum_q, V, then q_*, u_*, p_* per link.
void write_trace_csv(std::ostream &out, const sim::RunMetrics &metrics);

std::string format_number(double value);

} // namespace gecs
