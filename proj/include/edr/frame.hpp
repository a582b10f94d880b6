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

#include <cstddef>
#include <cstdint>
#include <new>
#include <span>
#include <vector>

namespace edr {

constexpr float kDefaultEpsilon = 1e-3f;

/// Cache-line aligned storage so vector kernels can use aligned stores.
template <typename T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::align_val_t kAlign{64};

    AlignedAllocator() noexcept = default;
    template <typename U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

    template <typename U>
    friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) noexcept { return true; }
};

/// Planar row-major float image: `channels` planes of `width * height` values.
class PlanarImage {
public:
    PlanarImage() = default;
    PlanarImage(std::uint32_t width, std::uint32_t height, std::uint32_t channels, float fill = 0.0f);

    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t channels() const noexcept { return channels_; }
    std::size_t pixels() const noexcept { return std::size_t{width_} * height_; }
    /// True when width and height agree; channel counts may differ.
    bool same_geometry(const PlanarImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    std::span<float> plane(std::uint32_t c);
    std::span<const float> plane(std::uint32_t c) const;
    std::span<float> data() noexcept { return data_; }
    std::span<const float> data() const noexcept { return data_; }

    float& at(std::uint32_t c, std::uint32_t x, std::uint32_t y) { return data_[index(c, x, y)]; }
    float at(std::uint32_t c, std::uint32_t x, std::uint32_t y) const { return data_[index(c, x, y)]; }

    friend bool operator==(const PlanarImage&, const PlanarImage&) = default;

private:
    std::size_t index(std::uint32_t c, std::uint32_t x, std::uint32_t y) const noexcept {
        return std::size_t{c} * pixels() + std::size_t{y} * width_ + x;
    }

    std::uint32_t width_ = 0;
    std::uint32_t height_ = 0;
    std::uint32_t channels_ = 0;
    std::vector<float, AlignedAllocator<float>> data_;
};

/// One normalized video frame with values in [epsilon, 1].
class IntensityFrame : public PlanarImage {
public:
    using PlanarImage::PlanarImage;

    /// Normalizes interleaved 8-bit samples (v / 255) and clamps to [epsilon, 1].
    static IntensityFrame from_interleaved_u8(std::span<const std::uint8_t> bytes, std::uint32_t width,
                                              std::uint32_t height, std::uint32_t channels,
                                              float epsilon = kDefaultEpsilon);

    /// BT.601 luma of a 3-channel frame; a 1-channel frame is returned unchanged.
    IntensityFrame to_luma() const;
    void clamp(float epsilon);
};

/// Dense event magnitudes for one frame. Channel 2k is ON and 2k+1 is OFF for
/// timescale k; with per-channel colour the timescale index runs over
/// (input channel, timescale) pairs.
class EventFrame : public PlanarImage {
public:
    EventFrame() = default;
    EventFrame(std::uint32_t frame_idx, std::uint32_t width, std::uint32_t height, std::uint32_t timescales)
        : PlanarImage(width, height, 2 * timescales), frame_idx(frame_idx) {}

    std::uint32_t timescales() const noexcept { return channels() / 2; }
    std::span<const float> on(std::uint32_t k) const { return plane(2 * k); }
    std::span<const float> off(std::uint32_t k) const { return plane(2 * k + 1); }

    std::uint32_t frame_idx = 0;

    friend bool operator==(const EventFrame&, const EventFrame&) = default;
};

/// Signed inter-frame intensity difference, values in [-1, 1].
class DiffFrame : public PlanarImage {
public:
    using PlanarImage::PlanarImage;
};

/// Appearance planes followed by event planes, as consumed by two-stream models.
class StackedFrame : public PlanarImage {
public:
    using PlanarImage::PlanarImage;
};

}  // namespace edr
