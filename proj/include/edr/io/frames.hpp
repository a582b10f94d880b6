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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "edr/frame.hpp"
#include "edr/io/netpbm.hpp"
#include "edr/params.hpp"

namespace edr::io {

struct IngestOptions {
    ColorMode color_mode = ColorMode::Luma;  // Luma reduces RGB input to one BT.601 plane
    float epsilon = kDefaultEpsilon;
};

/// Geometry of headerless interleaved 8-bit input.
struct RawGeometry {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 1;
};

/// Normalizes to v / 255, converts to luma if requested, then clamps to [epsilon, 1].
IntensityFrame to_intensity(std::span<const std::uint8_t> interleaved, std::uint32_t width, std::uint32_t height,
                            std::uint32_t channels, const IngestOptions& options);
IntensityFrame to_intensity(const NetpbmImage& image, const IngestOptions& options);

/// A directory (every .pgm/.ppm inside) or a path whose file name may contain
/// '*' / '?' wildcards. Sorted lexicographically, so frame numbers must be zero-padded.
std::vector<std::filesystem::path> list_frame_files(const std::string& dir_or_glob);

std::vector<IntensityFrame> read_frames(std::span<const std::filesystem::path> files, const IngestOptions& options);
std::vector<IntensityFrame> read_frames(const std::string& dir_or_glob, const IngestOptions& options);

std::vector<IntensityFrame> parse_raw_frames(std::span<const std::uint8_t> bytes, const RawGeometry& geometry,
                                             const IngestOptions& options);
std::vector<IntensityFrame> read_raw_frames(const std::filesystem::path& path, const RawGeometry& geometry,
                                            const IngestOptions& options);

/// Quantizes a frame back to 8 bits (round(v * 255)) for PGM/PPM output.
NetpbmImage to_netpbm(const IntensityFrame& frame);

}  // namespace edr::io
