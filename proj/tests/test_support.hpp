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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "edr/frame.hpp"

namespace edr::testing {

/// Uniform random frames drawn from [low, high); identical for a given seed.
inline std::vector<IntensityFrame> random_frames(std::uint32_t w, std::uint32_t h, std::uint32_t n,
                                                 std::uint64_t seed, float low = 0.05f, float high = 0.95f,
                                                 std::uint32_t channels = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> dist(low, high);
    std::vector<IntensityFrame> frames;
    frames.reserve(n);
    for (std::uint32_t t = 0; t < n; ++t) {
        IntensityFrame f(w, h, channels);
        for (float& v : f.data()) v = dist(rng);
        frames.push_back(std::move(f));
    }
    return frames;
}

inline IntensityFrame constant_frame(std::uint32_t w, std::uint32_t h, float value, std::uint32_t channels = 1) {
    return IntensityFrame(w, h, channels, value);
}

/// Closed-form EMA: alpha * sum_s (1-alpha)^s I(t-s) + (1-alpha)^t I(0), in long double.
inline long double ema_weighted_sum(std::span<const long double> series, std::size_t t, long double alpha) {
    const long double decay = 1.0L - alpha;
    long double acc = 0.0L;
    long double w = 1.0L;
    for (std::size_t s = 0; s < t; ++s) {
        acc += alpha * w * series[t - s];
        w *= decay;
    }
    return acc + w * series[0];
}

/// Extended-precision alpha for a given half-life, computed without the library routine.
inline long double oracle_alpha(long double tau_half) { return 1.0L - std::pow(2.0L, -1.0L / tau_half); }

inline double max_abs_diff(std::span<const float> a, std::span<const float> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(double{a[i]} - double{b[i]}));
    return m;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("edr_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace edr::testing
