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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gecs {

/// AWGN link: rate = W * log2(1 + h * P / (N0 W)).
struct AwgnParams {
    double gain = 1.0;       // h, dimensionless power gain
    double noise_power = 1.0; // N0 * W, power units
    double bandwidth = 1.0;  // W, rate-normalization units
};

struct RatePowerPoint {
    double power;
    double rate;
};

/// Convex power-vs-rate relation of a link, given either in closed AWGN form
/// or as an explicit table of (power, rate) points.
class RatePowerCurve {
  public:
    static RatePowerCurve awgn(AwgnParams params);
    /// Points are sorted by power; (0, 0) is added when missing. Throws
    /// ValidationError unless rate is strictly increasing in power.
    static RatePowerCurve table(std::vector<RatePowerPoint> points);

    bool is_awgn() const { return awgn_.has_value(); }
    const std::optional<AwgnParams> &awgn_params() const { return awgn_; }
    const std::vector<RatePowerPoint> &points() const { return points_; }

    /// Rate at `power`. Table curves only answer for their own points.
    double rate(double power) const;

  private:
    std::optional<AwgnParams> awgn_;
    std::vector<RatePowerPoint> points_;
};

/// Discrete power levels of one link with their rates and the average budget.
class LinkRadio {
  public:
    /// `levels` is sorted and deduplicated; level 0 is inserted if absent.
    LinkRadio(const RatePowerCurve &curve, std::vector<double> levels, double p_avg);
    /// Uses every point of a table curve as a level.
    LinkRadio(const RatePowerCurve &curve, double p_avg);

    std::span<const double> levels() const { return levels_; }
    std::span<const double> rates() const { return rates_; }
    std::size_t num_levels() const { return levels_.size(); }
    double p_avg() const { return p_avg_; }
    double p_max() const { return levels_.back(); }
    double c_max() const { return rates_.back(); }
    const RatePowerCurve &curve() const { return curve_; }

    /// Budget at or above peak power: power control has nothing to do.
    bool power_control_vacuous() const { return p_avg_ >= p_max(); }

    /// Index of `power` among the levels, if it is one.
    std::optional<std::size_t> level_index(double power) const;

  private:
    void init(std::vector<double> levels);

    RatePowerCurve curve_;
    std::vector<double> levels_;
    std::vector<double> rates_;
    double p_avg_;
};

/// Rate of a configured level. Exact lookup; throws ValidationError otherwise.
double rate_for_power(const LinkRadio &radio, double power);

struct ConvexityReport {
    bool ok = true;
    /// Incremental power per unit rate between consecutive points.
    std::vector<double> slopes;
    /// First slope index that decreased, when !ok.
    std::optional<std::size_t> violation;
    std::string message;
};

/// Discrete convexity of power-as-a-function-of-rate: consecutive slopes
/// dP/dc must be non-decreasing.
ConvexityReport validate_convexity(std::span<const RatePowerPoint> points);
ConvexityReport validate_convexity(const RatePowerCurve &curve, std::span<const double> levels);

struct PowerChoice {
    std::size_t level = 0;
    double power = 0.0;
    double rate = 0.0;
    double objective = 0.0;
};

/// Level maximizing q * rate - u * power; ties go to the lowest power.
/// Level 0 always scores 0, so the returned objective is non-negative.
PowerChoice optimal_power_for_link(const LinkRadio &radio, double q, double u);

} // namespace gecs
