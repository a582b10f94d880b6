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

#include "edr/frame.hpp"
#include "edr/kernels.hpp"

namespace edr::analysis {

struct ChannelFrameStat {
    std::uint32_t channel = 0;
    std::uint32_t frame = 0;
    std::uint64_t nonzero = 0;
    double density = 0.0;         // nonzero / (width * height)
    double mean_magnitude = 0.0;  // over nonzero entries; 0 when there are none

    friend bool operator==(const ChannelFrameStat&, const ChannelFrameStat&) = default;
};

/// Bin edges shared by all channels; counts[channel][bin].
struct MagnitudeHistogram {
    std::vector<double> edges;
    std::vector<std::vector<std::uint64_t>> counts;
};

struct SparsityReport {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 0;
    std::uint32_t frames = 0;
    std::vector<ChannelFrameStat> per_frame;  // channel-major: index channel * frames + frame
    std::vector<double> channel_density;
    std::vector<double> channel_mean_magnitude;
    std::uint64_t total_events = 0;
    double overall_density = 0.0;
    MagnitudeHistogram histogram;

    const ChannelFrameStat& at(std::uint32_t channel, std::uint32_t frame) const {
        return per_frame.at(std::size_t{channel} * frames + frame);
    }
};

constexpr std::size_t kDefaultHistogramBins = 64;

/// Full rescan of a stream. The histogram spans [0, max magnitude] and
/// includes zero entries, so each channel's counts sum to width * height * frames.
SparsityReport sparsity_stats(std::span<const EventFrame> frames, std::size_t bins = kDefaultHistogramBins);

/// Running counts fed one frame at a time (no histogram; no frames retained).
class SparsityAccumulator {
public:
    explicit SparsityAccumulator(kernels::Isa isa = kernels::Isa::Auto) : table_(&kernels::select(isa)) {}

    void add(const EventFrame& frame);

    std::uint32_t frames() const noexcept { return frames_; }
    std::uint64_t total_events() const noexcept { return total_; }
    /// Fraction of nonzero entries over every channel and frame seen.
    double density() const noexcept;
    const std::vector<ChannelFrameStat>& per_frame() const noexcept { return stats_; }  // frame-major

private:
    const kernels::KernelTable* table_;
    std::uint32_t width_ = 0, height_ = 0, channels_ = 0;
    std::uint32_t frames_ = 0;
    std::uint64_t total_ = 0;
    std::vector<ChannelFrameStat> stats_;
};

/// `channel,frame,density,mean_magnitude`
void write_stats_csv(std::ostream& out, const SparsityReport& report);

}  // namespace edr::analysis
