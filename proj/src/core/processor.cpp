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

#include <algorithm>
#include <string>

#include "edr/edr.hpp"
#include "edr/error.hpp"
#include "edr/tile_pool.hpp"

namespace edr {

namespace {

std::uint32_t edr_channel_count(const EdrConfig& config, std::uint32_t input_channels) {
    if (config.color_mode == ColorMode::Luma) {
        if (input_channels != 1 && input_channels != 3) {
            throw ShapeError("luma mode needs 1 or 3 input channels, got " + std::to_string(input_channels));
        }
        return 1;
    }
    if (input_channels == 0) throw ShapeError("input channel count must be positive");
    return input_channels;
}

const EdrConfig& validated(const EdrConfig& config) {
    config.validate();
    return config;
}

}  // namespace

EdrProcessor::EdrProcessor(EdrConfig config, std::uint32_t width, std::uint32_t height, std::uint32_t input_channels,
                           ProcessorOptions options)
    : config_(validated(config)),
      width_(width),
      height_(height),
      input_channels_(input_channels),
      options_(options),
      table_(&kernels::select(options.isa)),
      state_(width, height, edr_channel_count(config_, input_channels), config_.num_timescales()) {
    if (width > 0xFFFF || height > 0xFFFF) throw ShapeError("width and height must fit in 16 bits");
    if (options_.threads == 0) throw DomainError("thread count must be positive");
    for (const auto& ts : config_.timescales) step_params_.push_back(kernels::make_step_params(ts, config_));
    if (options_.keep_returns) {
        returns_ = std::make_unique<ReturnFrame>(width, height, state_.channels(), config_.num_timescales(),
                                                 config_.return_mode);
    }
    if (config_.color_mode == ColorMode::Luma && input_channels == 3) luma_scratch_ = IntensityFrame(width, height, 1);
    if (options_.threads > 1) pool_ = std::make_unique<TilePool>(options_.threads);
}

EdrProcessor::~EdrProcessor() = default;
EdrProcessor::EdrProcessor(EdrProcessor&&) noexcept = default;
EdrProcessor& EdrProcessor::operator=(EdrProcessor&&) noexcept = default;

EventFrame EdrProcessor::process(const IntensityFrame& frame) {
    EventFrame out;
    process_into(frame, out);
    return out;
}

void EdrProcessor::process_into(const IntensityFrame& frame, EventFrame& out) {
    if (frame.width() != width_ || frame.height() != height_ || frame.channels() != input_channels_) {
        throw ShapeError("frame is " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) + "x" +
                         std::to_string(frame.channels()) + ", processor expects " + std::to_string(width_) + "x" +
                         std::to_string(height_) + "x" + std::to_string(input_channels_));
    }
    const std::uint32_t K = event_timescales();
    if (out.width() != width_ || out.height() != height_ || out.timescales() != K) {
        out = EventFrame(0, width_, height_, K);
    }
    out.frame_idx = static_cast<std::uint32_t>(state_.frame_count);

    const bool init = state_.frame_count == 0;
    const std::size_t tiles = pool_ ? std::min<std::size_t>(pool_->threads(), height_) : 1;

    auto tile_range = [&](std::size_t t) {
        const std::size_t row_begin = height_ * t / tiles;
        const std::size_t row_end = height_ * (t + 1) / tiles;
        return std::pair{row_begin * width_, row_end * width_};
    };

    if (config_.color_mode == ColorMode::Luma && input_channels_ == 3) {
        auto job = [&](std::size_t t) {
            const auto [b, e] = tile_range(t);
            table_->luma(frame.plane(0).data() + b, frame.plane(1).data() + b, frame.plane(2).data() + b,
                         luma_scratch_.plane(0).data() + b, e - b);
            run_tile(luma_scratch_, out, b, e, init);
        };
        if (pool_) pool_->run(tiles, job); else job(0);
    } else {
        auto job = [&](std::size_t t) {
            const auto [b, e] = tile_range(t);
            run_tile(frame, out, b, e, init);
        };
        if (pool_) pool_->run(tiles, job); else job(0);
    }
    ++state_.frame_count;
}

void EdrProcessor::run_tile(const IntensityFrame& input, EventFrame& out, std::size_t begin, std::size_t end,
                            bool init) {
    const std::size_t K = config_.num_timescales();
    for (std::uint32_t c = 0; c < state_.channels(); ++c) {
        const float* in = input.plane(c).data();
        for (std::size_t k = 0; k < K; ++k) {
            const auto t = static_cast<std::uint32_t>(c * K + k);
            kernels::EdrStepArgs args;
            args.input = in + begin;
            args.ema = state_.plane(k, c).data() + begin;
            args.on = out.plane(2 * t).data() + begin;
            args.off = out.plane(2 * t + 1).data() + begin;
            args.returns = returns_ ? returns_->plane_for(k, c).data() + begin : nullptr;
            args.count = end - begin;
            args.initialize = init;
            table_->edr_step(args, step_params_[k]);
        }
    }
}

void EdrProcessor::reset() noexcept {
    // The next frame overwrites the state wholesale, so only the counter matters.
    state_.frame_count = 0;
}

const ReturnFrame& EdrProcessor::last_returns() const {
    if (!returns_) throw DomainError("processor was not created with keep_returns");
    return *returns_;
}

}  // namespace edr
