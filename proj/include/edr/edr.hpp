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
#include <memory>
#include <span>

#include "edr/frame.hpp"
#include "edr/kernels.hpp"
#include "edr/params.hpp"

namespace edr {

/// Smoothed intensity per (timescale, channel, pixel) plus the number of
/// frames folded in so far. Plane index is channel * K + timescale.
class EmaState {
public:
    EmaState(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::size_t timescales);

    std::uint32_t width() const noexcept { return planes_.width(); }
    std::uint32_t height() const noexcept { return planes_.height(); }
    std::uint32_t channels() const noexcept { return channels_; }
    std::size_t timescales() const noexcept { return timescales_; }

    std::span<float> plane(std::size_t k, std::uint32_t c = 0) { return planes_.plane(plane_index(k, c)); }
    std::span<const float> plane(std::size_t k, std::uint32_t c = 0) const {
        return planes_.plane(plane_index(k, c));
    }

    std::uint64_t frame_count = 0;

private:
    std::uint32_t plane_index(std::size_t k, std::uint32_t c) const noexcept {
        return static_cast<std::uint32_t>(c * timescales_ + k);
    }

    std::uint32_t channels_;
    std::size_t timescales_;
    PlanarImage planes_;
};

/// Returns per (timescale, channel); baseline 1 for ratio mode, 0 for log mode.
class ReturnFrame : public PlanarImage {
public:
    ReturnFrame(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::size_t timescales,
                ReturnMode mode)
        : PlanarImage(width, height, static_cast<std::uint32_t>(channels * timescales)),
          mode(mode),
          timescales(timescales) {}

    std::span<float> plane_for(std::size_t k, std::uint32_t c = 0) {
        return plane(static_cast<std::uint32_t>(c * timescales + k));
    }
    std::span<const float> plane_for(std::size_t k, std::uint32_t c = 0) const {
        return plane(static_cast<std::uint32_t>(c * timescales + k));
    }

    ReturnMode mode;
    std::size_t timescales;
};

// Reference pipeline, one stage at a time.

/// EMA recursion for every timescale. The first frame initializes the state
/// to the frame itself. Expects already-clamped intensities.
void ema_step(EmaState& state, const IntensityFrame& frame, std::span<const TimescaleParams> timescales);
/// Ratio (I / ema)^beta or log beta * ln(I / ema); `state` must already include `frame`.
ReturnFrame compute_returns(const IntensityFrame& frame, const EmaState& state, const EdrConfig& config);
EventFrame threshold_events(const ReturnFrame& returns, const EdrConfig& config, std::uint32_t frame_idx = 0);

/// RGB planes followed by the event planes: 3 + 2K channels.
StackedFrame stack_channels(const IntensityFrame& rgb, const EventFrame& events);

class TilePool;

struct ProcessorOptions {
    kernels::Isa isa = kernels::Isa::Auto;
    unsigned threads = 1;        // row tiles processed in parallel within a frame
    bool keep_returns = false;   // retain the last ReturnFrame (used by traces)
};

/// Streaming frame -> event transform. Frames must be fed in temporal order;
/// results do not depend on `threads`.
class EdrProcessor {
public:
    /// In luma mode a 3-channel input is reduced to BT.601 luma first; in
    /// per-channel mode every input channel gets its own K timescales.
    EdrProcessor(EdrConfig config, std::uint32_t width, std::uint32_t height, std::uint32_t input_channels = 1,
                 ProcessorOptions options = {});
    ~EdrProcessor();
    EdrProcessor(EdrProcessor&&) noexcept;
    EdrProcessor& operator=(EdrProcessor&&) noexcept;

    EventFrame process(const IntensityFrame& frame);
    /// Reuses `out`'s storage when its geometry already matches.
    void process_into(const IntensityFrame& frame, EventFrame& out);
    void reset() noexcept;

    const EdrConfig& config() const noexcept { return config_; }
    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t input_channels() const noexcept { return input_channels_; }
    /// Channels that carry their own EMA state (1 in luma mode).
    std::uint32_t edr_channels() const noexcept { return state_.channels(); }
    /// Timescale count as written to event files: K * edr_channels.
    std::uint32_t event_timescales() const noexcept {
        return static_cast<std::uint32_t>(config_.num_timescales()) * edr_channels();
    }
    std::uint64_t frame_count() const noexcept { return state_.frame_count; }
    const EmaState& state() const noexcept { return state_; }
    /// Last frame's returns; only valid with keep_returns.
    const ReturnFrame& last_returns() const;
    const kernels::KernelTable& kernel_table() const noexcept { return *table_; }

private:
    void run_tile(const IntensityFrame& input, EventFrame& out, std::size_t begin, std::size_t end, bool init);

    EdrConfig config_;
    std::uint32_t width_;
    std::uint32_t height_;
    std::uint32_t input_channels_;
    ProcessorOptions options_;
    const kernels::KernelTable* table_;
    std::vector<kernels::EdrStepParams> step_params_;
    EmaState state_;
    std::unique_ptr<ReturnFrame> returns_;
    IntensityFrame luma_scratch_;
    std::unique_ptr<TilePool> pool_;
};

}  // namespace edr
