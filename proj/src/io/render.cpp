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

#include "edr/io/render.hpp"

#include <cmath>
#include <string>

#include "edr/error.hpp"

namespace edr::io {

std::uint8_t render_value(float magnitude, double max_magnitude) {
    if (!(magnitude > 0.0f)) return 0;  // zero, negative or NaN
    const double scaled = 255.0 * std::min(static_cast<double>(magnitude) / max_magnitude, 1.0);
    return static_cast<std::uint8_t>(std::floor(scaled + 0.5));
}

RenderedEvents render_event_frame(const EventFrame& frame, std::uint32_t k, double max_magnitude) {
    if (k >= frame.timescales()) {
        throw DomainError("timescale " + std::to_string(k) + " out of range for a K=" +
                          std::to_string(frame.timescales()) + " frame");
    }
    if (!(max_magnitude > 0.0) || !std::isfinite(max_magnitude)) {
        throw DomainError("max magnitude must be finite and positive");
    }
    RenderedEvents out;
    for (auto* img : {&out.on, &out.off}) {
        img->width = frame.width();
        img->height = frame.height();
        img->channels = 1;
    }
    const auto on = frame.on(k);
    const auto off = frame.off(k);
    out.on.samples.resize(on.size());
    out.off.samples.resize(off.size());
    for (std::size_t i = 0; i < on.size(); ++i) {
        out.on.samples[i] = render_value(on[i], max_magnitude);
        out.off.samples[i] = render_value(off[i], max_magnitude);
    }
    return out;
}

}  // namespace edr::io
