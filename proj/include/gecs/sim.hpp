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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecs/netmodel.hpp"
#include "gecs/ratepower.hpp"
#include "gecs/schedulers.hpp"

namespace gecs::sim {

enum class ArrivalKind { bernoulli_batch, poisson, periodic, constant };

/// Per-link arrival law. All kinds are i.i.d. across slots except periodic,
/// which delivers `batch` units in every slot t with t % period == 0.
struct ArrivalSpec {
    ArrivalKind kind = ArrivalKind::constant;
    double mean = 0.0;   // poisson / constant
    double prob = 0.0;   // bernoulli_batch
    double batch = 0.0;  // bernoulli_batch / periodic
    std::size_t period = 1;

    static ArrivalSpec bernoulli_batch(double prob, double batch);
    static ArrivalSpec poisson(double mean);
    static ArrivalSpec periodic(double batch, std::size_t period);
    static ArrivalSpec constant(double rate);

    /// Mean units per slot.
    double mean_rate() const;
    void validate() const;
};

std::string_view to_string(ArrivalKind kind);

/// Draws per-link arrival amounts slot by slot.
class ArrivalProcess {
  public:
    explicit ArrivalProcess(std::vector<ArrivalSpec> specs);

    std::size_t num_links() const { return specs_.size(); }
    const std::vector<ArrivalSpec> &specs() const { return specs_; }
    void draw(std::uint64_t slot, Rng &rng, std::span<double> out);

  private:
    std::vector<ArrivalSpec> specs_;
    std::vector<std::poisson_distribution<long>> poisson_;
};

struct QueueState {
    std::vector<double> q;
    std::vector<double> u;

    static QueueState zeros(std::size_t links) { return {std::vector<double>(links, 0.0), std::vector<double>(links, 0.0)}; }
};

/**
 * One slot of queue dynamics:
 *   U' = [U - P_avg]^+ + P
 *   Q' = [Q - S]^+ + A
 * with S the decision's rate and P its power.
 */
QueueState step(const QueueState &state, const PowerDecision &decision, std::span<const double> arrivals,
                std::span<const double> p_avg);

/// How much budget leaves the virtual queue each slot.
enum class VirtualDepartures {
    constant, // exactly P_avg
    iid       // uniform on [0, 2 P_avg]
};

struct SlotRecord {
    std::vector<double> q;
    std::vector<double> u;
    std::vector<double> arrivals;
    std::vector<double> power;
    std::vector<double> rate;
    std::vector<double> served;
};

struct RunConfig {
    std::uint64_t horizon = 1000;
    std::uint64_t seed = 1;
    std::string policy = "gecs";
    TieBreak ties = TieBreak::random;
    VirtualDepartures virtual_departures = VirtualDepartures::constant;
    /// Empty means all-zero queues.
    QueueState initial;
    /// Keep sum-Q and V every `trace_stride` slots.
    std::uint64_t trace_stride = 1;
    bool slot_log = false;
};

struct RunMetrics {
    std::uint64_t horizon = 0;
    /// Time average of sum_l Q_l over post-step states.
    double avg_sum_q = 0.0;
    std::vector<double> avg_power;
    std::vector<double> avg_arrivals;
    std::vector<double> avg_served;
    std::vector<double> max_u;
    std::vector<double> final_u;
    std::vector<double> final_q;
    std::uint64_t trace_stride = 1;
    /// sum_l Q_l after slot (i+1)*stride - 1.
    std::vector<double> sum_q_trace;
    /// V = max_l (Q_l^2 + U_l^2), sampled like sum_q_trace.
    std::vector<double> v_trace;
    std::vector<SlotRecord> slots;

    double overall_max_u() const;
};

/// Runs `config.horizon` slots: draw arrivals, decide on the current queues,
/// apply `step`. Arrivals, tie-breaks and virtual departures use separate
/// streams derived from the seed, so policies see identical arrival paths.
RunMetrics run(const ConflictNetwork &net, std::span<const LinkRadio> radios, std::span<const ArrivalSpec> arrivals,
               const RunConfig &config);

enum class Verdict { stable, unstable, inconclusive };
std::string_view to_string(Verdict verdict);

struct StabilityThresholds {
    double stable_slope = 0.01;
    double unstable_slope = 0.1;
};

struct StabilityReport {
    Verdict verdict = Verdict::inconclusive;
    /// Least-squares slope of sum Q per slot over the window.
    double slope = 0.0;
    /// slope divided by the mean per-link arrival rate.
    double normalized_slope = 0.0;
};

/// Classifies the tail `window` fraction of the sum-Q trace. Throws
/// ValidationError when the run is shorter than 1000 slots, has no trace, or
/// the window is outside (0, 1).
StabilityReport stability_verdict(const RunMetrics &metrics, double window, StabilityThresholds thresholds = {});

struct PowerCompliance {
    std::vector<bool> ok;
    std::vector<double> excess;
    double max_u = 0.0;

    bool all_ok() const;
};

/// Flags links whose time-average power exceeds p_avg + tol.
PowerCompliance power_compliance(const RunMetrics &metrics, std::span<const double> p_avg, double tol);

/// Mean V over the final quarter of the trace divided by the mean V over the
/// quarter centred on the midpoint.
double lyapunov_drift_ratio(const RunMetrics &metrics);

} // namespace gecs::sim
