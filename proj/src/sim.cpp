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

#include "gecs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gecs/error.hpp"

namespace gecs::sim {

ArrivalSpec ArrivalSpec::bernoulli_batch(double prob, double batch) {
    ArrivalSpec s;
    s.kind = ArrivalKind::bernoulli_batch;
    s.prob = prob;
    s.batch = batch;
    return s;
}

ArrivalSpec ArrivalSpec::poisson(double mean) {
    ArrivalSpec s;
    s.kind = ArrivalKind::poisson;
    s.mean = mean;
    return s;
}

ArrivalSpec ArrivalSpec::periodic(double batch, std::size_t period) {
    ArrivalSpec s;
    s.kind = ArrivalKind::periodic;
    s.batch = batch;
    s.period = period;
    return s;
}

ArrivalSpec ArrivalSpec::constant(double rate) {
    ArrivalSpec s;
    s.kind = ArrivalKind::constant;
    s.mean = rate;
    return s;
}

double ArrivalSpec::mean_rate() const {
    switch (kind) {
    case ArrivalKind::bernoulli_batch:
        return prob * batch;
    case ArrivalKind::periodic:
        return batch / static_cast<double>(period);
    case ArrivalKind::poisson:
    case ArrivalKind::constant:
        return mean;
    }
    return 0.0;
}

void ArrivalSpec::validate() const {
    const bool finite = std::isfinite(mean) && std::isfinite(prob) && std::isfinite(batch);
    if (!finite || mean < 0.0 || batch < 0.0) {
        throw ValidationError("arrival parameters must be finite and non-negative");
    }
    if (kind == ArrivalKind::bernoulli_batch && (prob < 0.0 || prob > 1.0)) {
        throw ValidationError("bernoulli arrival probability " + std::to_string(prob) + " is outside [0, 1]");
    }
    if (kind == ArrivalKind::periodic && period == 0) {
        throw ValidationError("periodic arrivals need a period >= 1");
    }
}

std::string_view to_string(ArrivalKind kind) {
    switch (kind) {
    case ArrivalKind::bernoulli_batch:
        return "bernoulli_batch";
    case ArrivalKind::poisson:
        return "poisson";
    case ArrivalKind::periodic:
        return "periodic";
    case ArrivalKind::constant:
        return "constant";
    }
    return "unknown";
}

ArrivalProcess::ArrivalProcess(std::vector<ArrivalSpec> specs) : specs_(std::move(specs)) {
    poisson_.reserve(specs_.size());
    for (const auto &s : specs_) {
        s.validate();
        poisson_.emplace_back(s.kind == ArrivalKind::poisson && s.mean > 0.0 ? s.mean : 1.0);
    }
}

void ArrivalProcess::draw(std::uint64_t slot, Rng &rng, std::span<double> out) {
    for (std::size_t l = 0; l < specs_.size(); ++l) {
        const auto &s = specs_[l];
        switch (s.kind) {
        case ArrivalKind::bernoulli_batch:
            out[l] = std::bernoulli_distribution(s.prob)(rng) ? s.batch : 0.0;
            break;
        case ArrivalKind::poisson:
            out[l] = s.mean > 0.0 ? static_cast<double>(poisson_[l](rng)) : 0.0;
            break;
        case ArrivalKind::periodic:
            out[l] = slot % s.period == 0 ? s.batch : 0.0;
            break;
        case ArrivalKind::constant:
            out[l] = s.mean;
            break;
        }
    }
}

QueueState step(const QueueState &state, const PowerDecision &decision, std::span<const double> arrivals,
                std::span<const double> p_avg) {
    const std::size_t n = state.q.size();
    QueueState next;
    next.q.resize(n);
    next.u.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        next.u[l] = std::max(state.u[l] - p_avg[l], 0.0) + decision.power[l];
        next.q[l] = std::max(state.q[l] - decision.rate[l], 0.0) + arrivals[l];
    }
    return next;
}

namespace {

// Independent generator per (seed, purpose) pair.
Rng stream(std::uint64_t seed, std::uint32_t tag) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag};
    return Rng(seq);
}

} // namespace

double RunMetrics::overall_max_u() const {
    return max_u.empty() ? 0.0 : *std::max_element(max_u.begin(), max_u.end());
}

RunMetrics run(const ConflictNetwork &net, std::span<const LinkRadio> radios, std::span<const ArrivalSpec> arrivals,
               const RunConfig &config) {
    const std::size_t n = net.num_links();
    if (radios.size() != n || arrivals.size() != n) {
        throw ValidationError("scenario needs one radio and one arrival law per link");
    }
    if (config.horizon < 1) {
        throw ValidationError("horizon must be at least one slot");
    }
    if (config.trace_stride < 1) {
        throw ValidationError("trace stride must be at least 1");
    }

    QueueState state = config.initial.q.empty() && config.initial.u.empty() ? QueueState::zeros(n) : config.initial;
    if (state.q.size() != n || state.u.size() != n) {
        throw ValidationError("initial state must have one Q and one U entry per link");
    }
    for (std::size_t l = 0; l < n; ++l) {
        if (!(state.q[l] >= 0.0) || !(state.u[l] >= 0.0)) {
            throw ValidationError("initial queues must be non-negative");
        }
    }

    std::vector<double> p_avg(n);
    for (std::size_t l = 0; l < n; ++l) {
        p_avg[l] = radios[l].p_avg();
    }

    Rng arrival_rng = stream(config.seed, 0xA11);
    Rng policy_rng = stream(config.seed, 0x5C4);
    Rng budget_rng = stream(config.seed, 0xB06);

    ArrivalProcess process({arrivals.begin(), arrivals.end()});
    std::unique_ptr<Policy> policy;
    try {
        policy = make_policy(config.policy, net, radios, config.ties);
    } catch (const EnumerationLimitError &e) {
        throw EnumerationLimitError("slot 0: " + std::string(e.what()));
    }

    RunMetrics m;
    m.horizon = config.horizon;
    m.trace_stride = config.trace_stride;
    m.avg_power.assign(n, 0.0);
    m.avg_arrivals.assign(n, 0.0);
    m.avg_served.assign(n, 0.0);
    m.max_u = state.u;
    m.sum_q_trace.reserve(config.horizon / config.trace_stride);
    m.v_trace.reserve(config.horizon / config.trace_stride);

    std::vector<double> a(n);
    std::vector<double> departures(p_avg);
    double sum_q_total = 0.0;
    for (std::uint64_t t = 0; t < config.horizon; ++t) {
        process.draw(t, arrival_rng, a);
        const SchedulerInput input{state.q, state.u, net, radios};
        PowerDecision d;
        try {
            d = policy->decide(input, policy_rng);
        } catch (const EnumerationLimitError &e) {
            throw EnumerationLimitError("slot " + std::to_string(t) + ": " + e.what());
        }
        if (config.virtual_departures == VirtualDepartures::iid) {
            for (std::size_t l = 0; l < n; ++l) {
                departures[l] = std::uniform_real_distribution<double>(0.0, 2.0 * p_avg[l])(budget_rng);
            }
        }
        QueueState next = step(state, d, a, departures);

        if (config.slot_log) {
            SlotRecord rec{state.q, state.u, a, d.power, d.rate, std::vector<double>(n)};
            for (std::size_t l = 0; l < n; ++l) {
                rec.served[l] = std::min(state.q[l], d.rate[l]);
            }
            m.slots.push_back(std::move(rec));
        }

        double sum_q = 0.0;
        double v = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            m.avg_power[l] += d.power[l];
            m.avg_arrivals[l] += a[l];
            m.avg_served[l] += std::min(state.q[l], d.rate[l]);
            m.max_u[l] = std::max(m.max_u[l], next.u[l]);
            sum_q += next.q[l];
            v = std::max(v, next.q[l] * next.q[l] + next.u[l] * next.u[l]);
        }
        sum_q_total += sum_q;
        if ((t + 1) % config.trace_stride == 0) {
            m.sum_q_trace.push_back(sum_q);
            m.v_trace.push_back(v);
        }
        state = std::move(next);
    }

    const double T = static_cast<double>(config.horizon);
    m.avg_sum_q = sum_q_total / T;
    for (std::size_t l = 0; l < n; ++l) {
        m.avg_power[l] /= T;
        m.avg_arrivals[l] /= T;
        m.avg_served[l] /= T;
    }
    m.final_q = state.q;
    m.final_u = state.u;
    return m;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::stable:
        return "stable";
    case Verdict::unstable:
        return "unstable";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

StabilityReport stability_verdict(const RunMetrics &metrics, double window, StabilityThresholds thresholds) {
    if (!(window > 0.0 && window < 1.0)) {
        throw ValidationError("stability window must be a fraction in (0, 1)");
    }
    if (metrics.horizon < 1000) {
        throw ValidationError("horizon of " + std::to_string(metrics.horizon) +
                              " slots is too short for a stability verdict (need >= 1000)");
    }
    const auto &trace = metrics.sum_q_trace;
    const std::size_t count = static_cast<std::size_t>(std::ceil(window * static_cast<double>(trace.size())));
    if (count < 2) {
        throw ValidationError("stability verdict needs at least two trace samples in the window");
    }
    const std::size_t start = trace.size() - count;

    // Least squares on (slot index, sum Q).
    const double stride = static_cast<double>(metrics.trace_stride);
    double mean_t = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = start; i < trace.size(); ++i) {
        mean_t += static_cast<double>(i) * stride;
        mean_y += trace[i];
    }
    mean_t /= static_cast<double>(count);
    mean_y /= static_cast<double>(count);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = start; i < trace.size(); ++i) {
        const double dt = static_cast<double>(i) * stride - mean_t;
        sxy += dt * (trace[i] - mean_y);
        sxx += dt * dt;
    }

    StabilityReport report;
    report.slope = sxy / sxx;
    double mean_arrival = 0.0;
    for (double a : metrics.avg_arrivals) {
        mean_arrival += a;
    }
    mean_arrival = metrics.avg_arrivals.empty() ? 0.0 : mean_arrival / static_cast<double>(metrics.avg_arrivals.size());
    report.normalized_slope = mean_arrival > 0.0 ? report.slope / mean_arrival : report.slope;
    if (report.normalized_slope < thresholds.stable_slope) {
        report.verdict = Verdict::stable;
    } else if (report.normalized_slope > thresholds.unstable_slope) {
        report.verdict = Verdict::unstable;
    }
    return report;
}

bool PowerCompliance::all_ok() const {
    return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

PowerCompliance power_compliance(const RunMetrics &metrics, std::span<const double> p_avg, double tol) {
    if (p_avg.size() != metrics.avg_power.size()) {
        throw ValidationError("power budget vector does not match the run's link count");
    }
    PowerCompliance out;
    out.max_u = metrics.overall_max_u();
    for (std::size_t l = 0; l < p_avg.size(); ++l) {
        const double excess = metrics.avg_power[l] - p_avg[l];
        out.excess.push_back(excess);
        out.ok.push_back(excess <= tol);
    }
    return out;
}

double lyapunov_drift_ratio(const RunMetrics &metrics) {
    const auto &v = metrics.v_trace;
    const std::size_t n = v.size();
    if (n < 8) {
        throw ValidationError("trace too short for a drift diagnostic");
    }
    auto mean = [&](std::size_t from, std::size_t to) {
        return std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to),
                               0.0) /
               static_cast<double>(to - from);
    };
    const double mid = mean(n / 2 - n / 8, n / 2 + n / 8);
    const double tail = mean(n - n / 4, n);
    return mid > 0.0 ? tail / mid : (tail > 0.0 ? INFINITY : 1.0);
}

} // namespace gecs::sim
