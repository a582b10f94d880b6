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

#include "edr/analysis/trace.hpp"

#include <string>

#include "edr/analysis/csv.hpp"
#include "edr/detail/element_math.hpp"
#include "edr/error.hpp"

namespace edr::analysis {

PixelTrace pixel_trace(std::span<const IntensityFrame> frames, const EdrConfig& config, std::uint32_t x,
                       std::uint32_t y, std::uint32_t channel, kernels::Isa isa) {
    if (frames.empty()) throw DomainError("trace needs at least one frame");
    const auto& first = frames.front();
    if (x >= first.width() || y >= first.height()) {
        throw DomainError("pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") outside " +
                          std::to_string(first.width()) + "x" + std::to_string(first.height()));
    }
    ProcessorOptions options;
    options.isa = isa;
    options.keep_returns = true;
    EdrProcessor proc(config, first.width(), first.height(), first.channels(), options);
    if (channel >= proc.edr_channels()) throw DomainError("trace channel " + std::to_string(channel) + " out of range");

    const std::size_t K = config.num_timescales();
    PixelTrace trace;
    trace.x = x;
    trace.y = y;
    trace.channel = channel;
    for (auto* series : {&trace.ema, &trace.returns, &trace.on, &trace.off}) series->resize(K);

    const bool to_luma = config.color_mode == ColorMode::Luma && first.channels() == 3;
    const std::size_t i = std::size_t{y} * first.width() + x;
    EventFrame events;
    for (const auto& frame : frames) {
        proc.process_into(frame, events);
        const float raw = to_luma ? detail::luma(frame.at(0, x, y), frame.at(1, x, y), frame.at(2, x, y))
                                  : frame.at(channel, x, y);
        trace.intensity.push_back(detail::clamp_intensity(raw, config.epsilon));
        for (std::size_t k = 0; k < K; ++k) {
            const auto t = static_cast<std::uint32_t>(channel * K + k);
            trace.ema[k].push_back(proc.state().plane(k, channel)[i]);
            trace.returns[k].push_back(proc.last_returns().plane_for(k, channel)[i]);
            trace.on[k].push_back(events.plane(2 * t)[i]);
            trace.off[k].push_back(events.plane(2 * t + 1)[i]);
        }
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const PixelTrace& trace) {
    const std::size_t K = trace.timescales();
    out << "frame,intensity";
    for (const char* name : {"ema_", "return_", "e_on_", "e_off_"}) {
        for (std::size_t k = 0; k < K; ++k) out << ',' << name << k;
    }
    out << '\n';
    for (std::size_t t = 0; t < trace.frames(); ++t) {
        out << t << ',' << format_real(trace.intensity[t]);
        for (const auto* series : {&trace.ema, &trace.returns, &trace.on, &trace.off}) {
            for (std::size_t k = 0; k < K; ++k) out << ',' << format_real((*series)[k][t]);
        }
        out << '\n';
    }
}

}  // namespace edr::analysis
