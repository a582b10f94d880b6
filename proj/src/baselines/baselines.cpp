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

#include "edr/baselines.hpp"

#include <cmath>
#include <string>

#include "edr/error.hpp"

namespace edr::baselines {

namespace {

void check_pair(const IntensityFrame& prev, const IntensityFrame& cur) {
    if (!prev.same_geometry(cur) || prev.channels() != cur.channels()) {
        throw ShapeError("frame pair geometry differs: " + std::to_string(prev.width()) + "x" +
                         std::to_string(prev.height()) + "x" + std::to_string(prev.channels()) + " vs " +
                         std::to_string(cur.width()) + "x" + std::to_string(cur.height()) + "x" +
                         std::to_string(cur.channels()));
    }
}

void require_channels(const IntensityFrame& f, std::uint32_t channels, const char* what) {
    if (f.channels() != channels) {
        throw ShapeError(std::string(what) + " expects " + std::to_string(channels) + "-channel frames, got " +
                         std::to_string(f.channels()));
    }
}

}  // namespace

void diff_into(const IntensityFrame& prev, const IntensityFrame& cur, DiffFrame& out,
               const kernels::KernelTable& table) {
    check_pair(prev, cur);
    if (!out.same_geometry(cur) || out.channels() != cur.channels()) {
        out = DiffFrame(cur.width(), cur.height(), cur.channels());
    }
    for (std::uint32_t c = 0; c < cur.channels(); ++c) {
        table.diff(prev.plane(c).data(), cur.plane(c).data(), out.plane(c).data(), cur.pixels());
    }
}

DiffFrame gray_diff(const IntensityFrame& prev, const IntensityFrame& cur, kernels::Isa isa) {
    require_channels(prev, 1, "gray_diff");
    check_pair(prev, cur);
    DiffFrame out;
    diff_into(prev, cur, out, kernels::select(isa));
    return out;
}

DiffFrame rgb_diff(const IntensityFrame& prev, const IntensityFrame& cur, kernels::Isa isa) {
    require_channels(prev, 3, "rgb_diff");
    check_pair(prev, cur);
    DiffFrame out;
    diff_into(prev, cur, out, kernels::select(isa));
    return out;
}

void log_diff_events_into(const IntensityFrame& prev, const IntensityFrame& cur, double theta, EventFrame& out,
                          const kernels::KernelTable& table) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("log-diff threshold must be finite and positive, got " + std::to_string(theta));
    }
    require_channels(prev, 1, "log_diff_events");
    check_pair(prev, cur);
    if (!out.same_geometry(cur) || out.timescales() != 1) out = EventFrame(out.frame_idx, cur.width(), cur.height(), 1);
    const auto up = static_cast<float>(std::exp(theta));
    const auto down = static_cast<float>(std::exp(-theta));
    table.log_diff(prev.plane(0).data(), cur.plane(0).data(), out.plane(0).data(), out.plane(1).data(), cur.pixels(),
                   up, down);
}

EventFrame log_diff_events(const IntensityFrame& prev, const IntensityFrame& cur, double theta,
                           std::uint32_t frame_idx, kernels::Isa isa) {
    EventFrame out;
    out.frame_idx = frame_idx;
    log_diff_events_into(prev, cur, theta, out, kernels::select(isa));
    return out;
}

DiffFrame FrameDiffer::push(const IntensityFrame& frame) {
    DiffFrame out;
    if (!prev_) {
        out = DiffFrame(frame.width(), frame.height(), frame.channels());
    } else {
        diff_into(*prev_, frame, out, *table_);
    }
    prev_ = frame;
    return out;
}

}  // namespace edr::baselines
