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

#include "edr/params.hpp"

#include <cmath>
#include <string>

#include "edr/error.hpp"

namespace edr {

double alpha_from_half_life(double tau_half) {
    if (!std::isfinite(tau_half) || tau_half <= 0.0) {
        throw DomainError("half-life must be finite and positive, got " + std::to_string(tau_half));
    }
    // -expm1(-ln2/tau) keeps full precision for long half-lives.
    return -std::expm1(-std::log(2.0) / tau_half);
}

double half_life_from_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    return -std::log(2.0) / std::log1p(-alpha);
}

TimescaleParams::TimescaleParams(double alpha, double tau_half, double beta, double nu_on, double nu_off)
    : alpha_(alpha), tau_half_(tau_half), beta_(beta), nu_on_(nu_on), nu_off_(nu_off) {
    if (!std::isfinite(beta)) throw DomainError("beta must be finite");
    if (!(nu_on >= 0.0) || !std::isfinite(nu_on)) {
        throw DomainError("nu_on must be finite and >= 0, got " + std::to_string(nu_on));
    }
    if (!(nu_off >= 0.0 && nu_off < 1.0)) {
        throw DomainError("nu_off must lie in [0, 1), got " + std::to_string(nu_off));
    }
}

TimescaleParams TimescaleParams::from_alpha(double alpha, double beta, double nu_on, double nu_off) {
    const double tau = half_life_from_alpha(alpha);
    return TimescaleParams(alpha, tau, beta, nu_on, nu_off);
}

TimescaleParams TimescaleParams::from_half_life(double tau_half, double beta, double nu_on, double nu_off) {
    const double alpha = alpha_from_half_life(tau_half);
    if (!(alpha < 1.0)) throw DomainError("half-life too short: alpha rounds to 1");
    return TimescaleParams(alpha, tau_half, beta, nu_on, nu_off);
}

std::string_view to_string(ReturnMode mode) noexcept { return mode == ReturnMode::Ratio ? "ratio" : "log"; }
std::string_view to_string(ThresholdMode mode) noexcept { return mode == ThresholdMode::Soft ? "soft" : "hard"; }
std::string_view to_string(ColorMode mode) noexcept {
    return mode == ColorMode::Luma ? "luma" : "per_channel";
}

EdrConfig EdrConfig::fast_slow() {
    EdrConfig config;
    config.timescales = {TimescaleParams::from_alpha(0.5), TimescaleParams::from_alpha(0.166)};
    return config;
}

EdrConfig EdrConfig::fast() {
    EdrConfig config;
    config.timescales = {TimescaleParams::from_alpha(0.5)};
    return config;
}

void EdrConfig::validate() const {
    if (timescales.empty()) throw DomainError("at least one timescale is required");
    if (timescales.size() > 127) throw DomainError("at most 127 timescales are supported");
    if (!(epsilon > 0.0f && epsilon < 1.0f)) {
        throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
    for (const auto& ts : timescales) {
        if (static_cast<float>(ts.alpha()) >= 1.0f || static_cast<float>(ts.alpha()) <= 0.0f) {
            throw DomainError("alpha " + std::to_string(ts.alpha()) + " is not representable inside (0, 1)");
        }
    }
}

}  // namespace edr
