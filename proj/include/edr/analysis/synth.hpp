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
#include <string_view>
#include <utility>
#include <vector>

#include "edr/frame.hpp"

namespace edr::analysis {

enum class Pattern { Constant, Impulse, Step, MovingSquare, GlobalGain };

std::string_view to_string(Pattern pattern) noexcept;
/// "constant", "impulse", "step", "moving_square", "global_gain".
Pattern parse_pattern(std::string_view name);

struct SynthParams {
    float background = 0.3f;        // constant level / baseline / square background
    float amplitude = 0.4f;         // impulse height, step size, square contrast (added to background)
    std::uint32_t onset = 5;        // frame of the impulse, step, or gain change
    std::uint32_t square_size = 8;
    std::int32_t start_x = 0;
    std::int32_t start_y = 0;
    std::int32_t velocity_x = 1;    // pixels per frame, positions wrap around the frame
    std::int32_t velocity_y = 0;
    float gain = 2.0f;              // global_gain: frames from onset on are scaled by this
    float texture_low = 0.05f;      // global_gain: random texture range
    float texture_high = 0.45f;
    std::uint64_t seed = 1;
    std::uint32_t channels = 1;     // identical planes when > 1
};

/// Deterministic synthetic sequences for tests and benchmarks. Every value
/// must stay inside [epsilon, 1]; parameters that would leave it raise DomainError.
std::vector<IntensityFrame> synth_video(Pattern pattern, const SynthParams& params, std::uint32_t width,
                                        std::uint32_t height, std::uint32_t n_frames);

/// Top-left corner of the moving square at frame t (wrapped).
std::pair<std::uint32_t, std::uint32_t> square_origin(const SynthParams& params, std::uint32_t width,
                                                      std::uint32_t height, std::uint32_t t);

/// Independent uniform values in [low, high) per pixel and frame.
std::vector<IntensityFrame> random_video(std::uint32_t width, std::uint32_t height, std::uint32_t n_frames,
                                         std::uint32_t channels, float low, float high, std::uint64_t seed);

}  // namespace edr::analysis
