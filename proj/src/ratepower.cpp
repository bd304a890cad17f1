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

#include "gecs/ratepower.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gecs/error.hpp"

namespace gecs {

namespace {

bool same_power(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

} // namespace

RatePowerCurve RatePowerCurve::awgn(AwgnParams params) {
    if (!(params.gain > 0.0) || !(params.noise_power > 0.0) || !(params.bandwidth > 0.0)) {
        throw ValidationError("AWGN gain, noise power and bandwidth must be positive");
    }
    RatePowerCurve c;
    c.awgn_ = params;
    return c;
}

RatePowerCurve RatePowerCurve::table(std::vector<RatePowerPoint> points) {
    std::sort(points.begin(), points.end(), [](const auto &a, const auto &b) { return a.power < b.power; });
    if (points.empty() || points.front().power != 0.0) {
        points.insert(points.begin(), RatePowerPoint{0.0, 0.0});
    }
    if (points.front().rate != 0.0) {
        throw ValidationError("rate at power 0 must be 0");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].power) || !std::isfinite(points[i].rate) || points[i].power < 0.0) {
            throw ValidationError("rate-power table entries must be finite with non-negative power");
        }
        if (i > 0 && (points[i].power <= points[i - 1].power || points[i].rate <= points[i - 1].rate)) {
            std::ostringstream msg;
            msg << "rate must be strictly increasing in power (points " << i - 1 << " and " << i << ")";
            throw ValidationError(msg.str());
        }
    }
    RatePowerCurve c;
    c.points_ = std::move(points);
    return c;
}

double RatePowerCurve::rate(double power) const {
    if (power < 0.0) {
        throw ValidationError("negative power");
    }
    if (awgn_) {
        const auto &p = *awgn_;
        return p.bandwidth * std::log2(1.0 + p.gain * power / p.noise_power);
    }
    for (const auto &pt : points_) {
        if (same_power(pt.power, power)) {
            return pt.rate;
        }
    }
    std::ostringstream msg;
    msg << "power " << power << " is not a point of the rate-power table";
    throw ValidationError(msg.str());
}

LinkRadio::LinkRadio(const RatePowerCurve &curve, std::vector<double> levels, double p_avg)
    : curve_(curve), p_avg_(p_avg) {
    init(std::move(levels));
}

LinkRadio::LinkRadio(const RatePowerCurve &curve, double p_avg) : curve_(curve), p_avg_(p_avg) {
    if (curve.is_awgn()) {
        throw ValidationError("an AWGN radio needs explicit power levels");
    }
    std::vector<double> levels;
    for (const auto &pt : curve.points()) {
        levels.push_back(pt.power);
    }
    init(std::move(levels));
}

void LinkRadio::init(std::vector<double> levels) {
    if (!std::isfinite(p_avg_) || p_avg_ < 0.0) {
        throw ValidationError("average power budget must be finite and non-negative");
    }
    for (double p : levels) {
        if (!std::isfinite(p) || p < 0.0) {
            throw ValidationError("power levels must be finite and non-negative");
        }
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.empty() || levels.front() != 0.0) {
        levels.insert(levels.begin(), 0.0);
    }
    levels_ = std::move(levels);
    rates_.reserve(levels_.size());
    for (double p : levels_) {
        rates_.push_back(curve_.rate(p));
    }
    for (std::size_t i = 1; i < rates_.size(); ++i) {
        if (!(rates_[i] > rates_[i - 1])) {
            throw ValidationError("rates must be strictly increasing across power levels");
        }
    }
}

std::optional<std::size_t> LinkRadio::level_index(double power) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (same_power(levels_[i], power)) {
            return i;
        }
    }
    return std::nullopt;
}

double rate_for_power(const LinkRadio &radio, double power) {
    const auto idx = radio.level_index(power);
    if (!idx) {
        std::ostringstream msg;
        msg << "power " << power << " is not a configured level";
        throw ValidationError(msg.str());
    }
    return radio.rates()[*idx];
}

ConvexityReport validate_convexity(std::span<const RatePowerPoint> points) {
    ConvexityReport report;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double dc = points[i].rate - points[i - 1].rate;
        const double dp = points[i].power - points[i - 1].power;
        report.slopes.push_back(dp / dc);
    }
    for (std::size_t i = 1; i < report.slopes.size(); ++i) {
        const double prev = report.slopes[i - 1];
        if (report.slopes[i] < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
            report.ok = false;
            report.violation = i;
            std::ostringstream msg;
            msg << "power per unit rate drops from " << prev << " to " << report.slopes[i] << " at rate "
                << points[i].rate;
            report.message = msg.str();
            break;
        }
    }
    return report;
}

ConvexityReport validate_convexity(const RatePowerCurve &curve, std::span<const double> levels) {
    std::vector<double> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<RatePowerPoint> points;
    for (double p : sorted) {
        points.push_back({p, curve.rate(p)});
    }
    return validate_convexity(points);
}

PowerChoice optimal_power_for_link(const LinkRadio &radio, double q, double u) {
    PowerChoice best;
    const auto levels = radio.levels();
    const auto rates = radio.rates();
    for (std::size_t i = 1; i < levels.size(); ++i) {
        const double objective = q * rates[i] - u * levels[i];
        if (objective > best.objective) {
            best = {i, levels[i], rates[i], objective};
        }
    }
    return best;
}

} // namespace gecs
