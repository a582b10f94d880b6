// Copyright 2026 The edrstream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>
#include <vector>

#include "edr/frame.hpp"

namespace edr {

/// alpha = 1 - 2^(-1/tau_half). Throws DomainError unless tau_half is finite and > 0.
double alpha_from_half_life(double tau_half);
/// Inverse of alpha_from_half_life; alpha must lie in (0, 1).
double half_life_from_alpha(double alpha);

/// Decay, sensitivity and thresholds of one EMA timescale. Alpha and the
/// half-life are kept consistent by construction.
class TimescaleParams {
public:
    static TimescaleParams from_alpha(double alpha, double beta = 1.0, double nu_on = 0.05, double nu_off = 0.05);
    static TimescaleParams from_half_life(double tau_half, double beta = 1.0, double nu_on = 0.05,
                                          double nu_off = 0.05);

    double alpha() const noexcept { return alpha_; }
    double tau_half() const noexcept { return tau_half_; }
    double beta() const noexcept { return beta_; }
    double nu_on() const noexcept { return nu_on_; }
    double nu_off() const noexcept { return nu_off_; }

    friend bool operator==(const TimescaleParams&, const TimescaleParams&) = default;

private:
    TimescaleParams(double alpha, double tau_half, double beta, double nu_on, double nu_off);

    double alpha_;
    double tau_half_;
    double beta_;
    double nu_on_;
    double nu_off_;
};

enum class ReturnMode { Ratio, Log };
enum class ThresholdMode { Soft, Hard };
enum class ColorMode { Luma, PerChannel };

std::string_view to_string(ReturnMode mode) noexcept;
std::string_view to_string(ThresholdMode mode) noexcept;
std::string_view to_string(ColorMode mode) noexcept;

struct EdrConfig {
    std::vector<TimescaleParams> timescales;
    ReturnMode return_mode = ReturnMode::Ratio;
    ThresholdMode threshold_mode = ThresholdMode::Soft;
    ColorMode color_mode = ColorMode::Luma;
    float epsilon = kDefaultEpsilon;

    /// Fast (alpha = 0.5) and slow (alpha = 0.166) soft-threshold timescales.
    static EdrConfig fast_slow();
    /// A single fast timescale (alpha = 0.5).
    static EdrConfig fast();

    std::size_t num_timescales() const noexcept { return timescales.size(); }
    /// Throws DomainError when the configuration is unusable.
    void validate() const;

    friend bool operator==(const EdrConfig&, const EdrConfig&) = default;
};

}  // namespace edr
