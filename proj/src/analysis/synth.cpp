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

#include "edr/analysis/synth.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "edr/error.hpp"

namespace edr::analysis {

namespace {

class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : rng_(seed) {}
    // 24 random mantissa bits, so the sequence is identical across standard libraries.
    float next(float low, float high) {
        const float u = static_cast<float>(rng_() >> 40) * 0x1.0p-24f;
        return low + (high - low) * u;
    }

private:
    std::mt19937_64 rng_;
};

void require_level(float v, const char* what) {
    if (!(v >= kDefaultEpsilon && v <= 1.0f)) {
        throw DomainError(std::string(what) + " level " + std::to_string(v) + " leaves [epsilon, 1]");
    }
}

std::uint32_t wrap(std::int64_t v, std::uint32_t n) {
    const std::int64_t m = v % static_cast<std::int64_t>(n);
    return static_cast<std::uint32_t>(m < 0 ? m + n : m);
}

}  // namespace

std::string_view to_string(Pattern pattern) noexcept {
    switch (pattern) {
        case Pattern::Constant: return "constant";
        case Pattern::Impulse: return "impulse";
        case Pattern::Step: return "step";
        case Pattern::MovingSquare: return "moving_square";
        case Pattern::GlobalGain: return "global_gain";
    }
    return "unknown";
}

Pattern parse_pattern(std::string_view name) {
    for (auto p : {Pattern::Constant, Pattern::Impulse, Pattern::Step, Pattern::MovingSquare, Pattern::GlobalGain}) {
        if (to_string(p) == name) return p;
    }
    throw DomainError("unknown pattern '" + std::string(name) + "'");
}

std::pair<std::uint32_t, std::uint32_t> square_origin(const SynthParams& p, std::uint32_t width,
                                                      std::uint32_t height, std::uint32_t t) {
    return {wrap(p.start_x + std::int64_t{p.velocity_x} * t, width),
            wrap(p.start_y + std::int64_t{p.velocity_y} * t, height)};
}

std::vector<IntensityFrame> synth_video(Pattern pattern, const SynthParams& p, std::uint32_t width,
                                        std::uint32_t height, std::uint32_t n_frames) {
    if (width == 0 || height == 0 || n_frames == 0 || p.channels == 0) {
        throw DomainError("synthetic video needs positive geometry and frame count");
    }
    std::vector<IntensityFrame> frames;
    frames.reserve(n_frames);

    switch (pattern) {
        case Pattern::Constant: {
            require_level(p.background, "constant");
            for (std::uint32_t t = 0; t < n_frames; ++t) frames.emplace_back(width, height, p.channels, p.background);
            break;
        }
        case Pattern::Impulse:
        case Pattern::Step: {
            require_level(p.background, "background");
            require_level(p.background + p.amplitude, "peak");
            for (std::uint32_t t = 0; t < n_frames; ++t) {
                const bool lit = pattern == Pattern::Impulse ? t == p.onset : t >= p.onset;
                frames.emplace_back(width, height, p.channels, lit ? p.background + p.amplitude : p.background);
            }
            break;
        }
        case Pattern::MovingSquare: {
            require_level(p.background, "background");
            require_level(p.background + p.amplitude, "square");
            if (p.square_size == 0 || p.square_size >= std::min(width, height)) {
                throw DomainError("square size must lie in [1, min(width, height))");
            }
            for (std::uint32_t t = 0; t < n_frames; ++t) {
                IntensityFrame f(width, height, p.channels, p.background);
                const auto [ox, oy] = square_origin(p, width, height, t);
                for (std::uint32_t c = 0; c < p.channels; ++c) {
                    for (std::uint32_t dy = 0; dy < p.square_size; ++dy) {
                        for (std::uint32_t dx = 0; dx < p.square_size; ++dx) {
                            f.at(c, (ox + dx) % width, (oy + dy) % height) = p.background + p.amplitude;
                        }
                    }
                }
                frames.push_back(std::move(f));
            }
            break;
        }
        case Pattern::GlobalGain: {
            if (!(p.gain > 0.0f)) throw DomainError("gain must be positive");
            if (!(p.texture_low < p.texture_high)) throw DomainError("texture range is empty");
            require_level(p.texture_low, "texture low");
            require_level(p.texture_high, "texture high");
            require_level(p.texture_low * p.gain, "gained texture low");
            require_level(p.texture_high * p.gain, "gained texture high");
            const auto base = random_video(width, height, 1, p.channels, p.texture_low, p.texture_high, p.seed).front();
            for (std::uint32_t t = 0; t < n_frames; ++t) {
                IntensityFrame f = base;
                if (t >= p.onset) {
                    for (float& v : f.data()) v *= p.gain;
                }
                frames.push_back(std::move(f));
            }
            break;
        }
    }
    return frames;
}

std::vector<IntensityFrame> random_video(std::uint32_t width, std::uint32_t height, std::uint32_t n_frames,
                                         std::uint32_t channels, float low, float high, std::uint64_t seed) {
    if (!(low < high)) throw DomainError("random video range is empty");
    UniformSource src(seed);
    std::vector<IntensityFrame> frames;
    frames.reserve(n_frames);
    for (std::uint32_t t = 0; t < n_frames; ++t) {
        IntensityFrame f(width, height, channels);
        for (float& v : f.data()) v = src.next(low, high);
        frames.push_back(std::move(f));
    }
    return frames;
}

}  // namespace edr::analysis
