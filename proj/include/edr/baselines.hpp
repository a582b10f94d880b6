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

#include <optional>

#include "edr/frame.hpp"
#include "edr/kernels.hpp"

// Frame-difference and DVS-style comparison representations.
namespace edr::baselines {

/// Placeholder log-intensity threshold for the DVS emulation.
constexpr double kDefaultDvsTheta = 0.15;

/// cur - prev for 1-channel frames.
DiffFrame gray_diff(const IntensityFrame& prev, const IntensityFrame& cur, kernels::Isa isa = kernels::Isa::Auto);
/// cur - prev per channel for 3-channel frames.
DiffFrame rgb_diff(const IntensityFrame& prev, const IntensityFrame& cur, kernels::Isa isa = kernels::Isa::Auto);
/// Any matching channel count; reuses `out` when its geometry fits.
void diff_into(const IntensityFrame& prev, const IntensityFrame& cur, DiffFrame& out,
               const kernels::KernelTable& table);

/// Two-frame DVS emulation on 1-channel frames: ON where ln(cur) - ln(prev) > theta,
/// OFF where it is < -theta. Evaluated as cur/prev against e^(+-theta).
EventFrame log_diff_events(const IntensityFrame& prev, const IntensityFrame& cur, double theta = kDefaultDvsTheta,
                           std::uint32_t frame_idx = 0, kernels::Isa isa = kernels::Isa::Auto);
void log_diff_events_into(const IntensityFrame& prev, const IntensityFrame& cur, double theta, EventFrame& out,
                          const kernels::KernelTable& table);

/// Streams diffs over a sequence; the first frame yields zeros.
class FrameDiffer {
public:
    explicit FrameDiffer(kernels::Isa isa = kernels::Isa::Auto) : table_(&kernels::select(isa)) {}

    DiffFrame push(const IntensityFrame& frame);
    void reset() noexcept { prev_.reset(); }

private:
    const kernels::KernelTable* table_;
    std::optional<IntensityFrame> prev_;
};

}  // namespace edr::baselines
