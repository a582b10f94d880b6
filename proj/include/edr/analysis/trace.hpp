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

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "edr/edr.hpp"

namespace edr::analysis {

/// Per-frame values of the EDR pipeline at one pixel. Series are indexed [k][t].
struct PixelTrace {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t channel = 0;  // EDR channel (always 0 in luma mode)
    std::vector<float> intensity;  // clamped input as seen by the EMA
    std::vector<std::vector<float>> ema;
    std::vector<std::vector<float>> returns;
    std::vector<std::vector<float>> on;
    std::vector<std::vector<float>> off;

    std::size_t frames() const noexcept { return intensity.size(); }
    std::size_t timescales() const noexcept { return ema.size(); }
};

/// Runs the full processor over `frames` and records one pixel.
PixelTrace pixel_trace(std::span<const IntensityFrame> frames, const EdrConfig& config, std::uint32_t x,
                       std::uint32_t y, std::uint32_t channel = 0, kernels::Isa isa = kernels::Isa::Auto);

/// `frame,intensity,ema_0..,return_0..,e_on_0..,e_off_0..`
void write_trace_csv(std::ostream& out, const PixelTrace& trace);

}  // namespace edr::analysis
