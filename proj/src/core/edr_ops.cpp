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

#include <string>

#include "edr/detail/element_math.hpp"
#include "edr/edr.hpp"
#include "edr/error.hpp"

namespace edr {

EmaState::EmaState(std::uint32_t width, std::uint32_t height, std::uint32_t channels, std::size_t timescales)
    : channels_(channels),
      timescales_(timescales),
      planes_(width, height, static_cast<std::uint32_t>(channels * timescales)) {
    if (timescales == 0) throw DomainError("EMA state needs at least one timescale");
}

void ema_step(EmaState& state, const IntensityFrame& frame, std::span<const TimescaleParams> timescales) {
    if (frame.width() != state.width() || frame.height() != state.height() || frame.channels() != state.channels()) {
        throw ShapeError("frame geometry does not match EMA state");
    }
    if (timescales.size() != state.timescales()) throw ShapeError("timescale count does not match EMA state");

    const bool first = state.frame_count == 0;
    for (std::uint32_t c = 0; c < frame.channels(); ++c) {
        const auto in = frame.plane(c);
        for (std::size_t k = 0; k < timescales.size(); ++k) {
            const float alpha = static_cast<float>(timescales[k].alpha());
            auto ema = state.plane(k, c);
            for (std::size_t i = 0; i < in.size(); ++i) {
                const float prev = first ? in[i] : ema[i];
                ema[i] = detail::ema_update(prev, in[i], alpha);
            }
        }
    }
    ++state.frame_count;
}

ReturnFrame compute_returns(const IntensityFrame& frame, const EmaState& state, const EdrConfig& config) {
    if (frame.width() != state.width() || frame.height() != state.height() || frame.channels() != state.channels()) {
        throw ShapeError("frame geometry does not match EMA state");
    }
    if (config.num_timescales() != state.timescales()) throw ShapeError("timescale count does not match EMA state");

    ReturnFrame out(frame.width(), frame.height(), frame.channels(), state.timescales(), config.return_mode);
    for (std::uint32_t c = 0; c < frame.channels(); ++c) {
        const auto in = frame.plane(c);
        for (std::size_t k = 0; k < state.timescales(); ++k) {
            const float beta = static_cast<float>(config.timescales[k].beta());
            const auto ema = state.plane(k, c);
            auto dst = out.plane_for(k, c);
            for (std::size_t i = 0; i < in.size(); ++i) {
                dst[i] = config.return_mode == ReturnMode::Ratio ? detail::ratio_return(in[i], ema[i], beta)
                                                                 : detail::log_return(in[i], ema[i], beta);
            }
        }
    }
    return out;
}

EventFrame threshold_events(const ReturnFrame& returns, const EdrConfig& config, std::uint32_t frame_idx) {
    if (returns.mode != config.return_mode) throw DomainError("return mode does not match configuration");
    if (returns.timescales != config.num_timescales()) throw ShapeError("timescale count does not match returns");

    const std::size_t K = returns.timescales;
    const std::uint32_t channels = returns.channels() / static_cast<std::uint32_t>(K);
    const bool hard = config.threshold_mode == ThresholdMode::Hard;
    EventFrame out(frame_idx, returns.width(), returns.height(), returns.channels());
    for (std::uint32_t c = 0; c < channels; ++c) {
        for (std::size_t k = 0; k < K; ++k) {
            const auto p = kernels::make_step_params(config.timescales[k], config);
            const auto r = returns.plane_for(k, c);
            const auto t = static_cast<std::uint32_t>(c * K + k);
            auto on = out.plane(2 * t);
            auto off = out.plane(2 * t + 1);
            for (std::size_t i = 0; i < r.size(); ++i) {
                on[i] = detail::on_event(r[i], p.on_threshold, hard);
                off[i] = detail::off_event(r[i], p.off_threshold, hard);
            }
        }
    }
    return out;
}

StackedFrame stack_channels(const IntensityFrame& rgb, const EventFrame& events) {
    if (rgb.channels() != 3) throw ShapeError("stacking expects a 3-channel frame, got " + std::to_string(rgb.channels()));
    if (!rgb.same_geometry(events)) throw ShapeError("frame and event geometry differ");
    StackedFrame out(rgb.width(), rgb.height(), 3 + events.channels());
    for (std::uint32_t c = 0; c < 3; ++c) {
        const auto src = rgb.plane(c);
        std::copy(src.begin(), src.end(), out.plane(c).begin());
    }
    for (std::uint32_t c = 0; c < events.channels(); ++c) {
        const auto src = events.plane(c);
        std::copy(src.begin(), src.end(), out.plane(3 + c).begin());
    }
    return out;
}

}  // namespace edr
