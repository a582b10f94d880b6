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

#include "edr/frame.hpp"
#include "edr/io/netpbm.hpp"

namespace edr::io {

struct RenderedEvents {
    NetpbmImage on;
    NetpbmImage off;
};

/// round(255 * min(magnitude / max_magnitude, 1)), halves rounded up.
std::uint8_t render_value(float magnitude, double max_magnitude);

/// Grayscale ON and OFF images for timescale k. Hard events (0/1) render as
/// 0/255 with the default max_magnitude of 1.
RenderedEvents render_event_frame(const EventFrame& frame, std::uint32_t k, double max_magnitude = 1.0);

}  // namespace edr::io
