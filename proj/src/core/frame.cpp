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

#include "edr/frame.hpp"

#include <string>

#include "edr/detail/element_math.hpp"
#include "edr/error.hpp"

namespace edr {

PlanarImage::PlanarImage(std::uint32_t width, std::uint32_t height, std::uint32_t channels, float fill)
    : width_(width), height_(height), channels_(channels) {
    if (width == 0 || height == 0 || channels == 0) {
        throw ShapeError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height) + "x" + std::to_string(channels));
    }
    data_.assign(std::size_t{channels} * pixels(), fill);
}

std::span<float> PlanarImage::plane(std::uint32_t c) {
    if (c >= channels_) throw ShapeError("plane " + std::to_string(c) + " out of range");
    return std::span<float>(data_).subspan(std::size_t{c} * pixels(), pixels());
}

std::span<const float> PlanarImage::plane(std::uint32_t c) const {
    if (c >= channels_) throw ShapeError("plane " + std::to_string(c) + " out of range");
    return std::span<const float>(data_).subspan(std::size_t{c} * pixels(), pixels());
}

IntensityFrame IntensityFrame::from_interleaved_u8(std::span<const std::uint8_t> bytes, std::uint32_t width,
                                                   std::uint32_t height, std::uint32_t channels, float epsilon) {
    IntensityFrame frame(width, height, channels);
    const std::size_t n = frame.pixels();
    if (bytes.size() != n * channels) {
        throw ShapeError("expected " + std::to_string(n * channels) + " bytes, got " + std::to_string(bytes.size()));
    }
    for (std::uint32_t c = 0; c < channels; ++c) {
        auto dst = frame.plane(c);
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = detail::clamp_intensity(static_cast<float>(bytes[i * channels + c]) / 255.0f, epsilon);
        }
    }
    return frame;
}

IntensityFrame IntensityFrame::to_luma() const {
    if (channels() == 1) return *this;
    if (channels() != 3) throw ShapeError("luma conversion needs 1 or 3 channels, got " + std::to_string(channels()));
    IntensityFrame out(width(), height(), 1);
    auto r = plane(0), g = plane(1), b = plane(2);
    auto dst = out.plane(0);
    for (std::size_t i = 0; i < pixels(); ++i) dst[i] = detail::luma(r[i], g[i], b[i]);
    return out;
}

void IntensityFrame::clamp(float epsilon) {
    for (float& v : data()) v = detail::clamp_intensity(v, epsilon);
}

}  // namespace edr
