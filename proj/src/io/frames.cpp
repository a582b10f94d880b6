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

#include "edr/io/frames.hpp"

#include <algorithm>
#include <cmath>
#include <fnmatch.h>

#include "edr/detail/element_math.hpp"
#include "edr/error.hpp"

namespace edr::io {

namespace fs = std::filesystem;

IntensityFrame to_intensity(std::span<const std::uint8_t> interleaved, std::uint32_t width, std::uint32_t height,
                            std::uint32_t channels, const IngestOptions& options) {
    if (!(options.epsilon > 0.0f && options.epsilon < 1.0f)) throw DomainError("epsilon must lie in (0, 1)");
    const std::size_t n = std::size_t{width} * height;
    if (interleaved.size() != n * channels) throw ShapeError("sample count does not match frame geometry");

    const bool luma = options.color_mode == ColorMode::Luma && channels == 3;
    if (options.color_mode == ColorMode::Luma && channels != 1 && channels != 3) {
        throw ShapeError("luma ingestion needs 1 or 3 channels, got " + std::to_string(channels));
    }
    IntensityFrame frame(width, height, luma ? 1 : channels);
    if (luma) {
        auto dst = frame.plane(0);
        for (std::size_t i = 0; i < n; ++i) {
            const float r = interleaved[3 * i] / 255.0f;
            const float g = interleaved[3 * i + 1] / 255.0f;
            const float b = interleaved[3 * i + 2] / 255.0f;
            dst[i] = detail::clamp_intensity(detail::luma(r, g, b), options.epsilon);
        }
        return frame;
    }
    for (std::uint32_t c = 0; c < channels; ++c) {
        auto dst = frame.plane(c);
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = detail::clamp_intensity(interleaved[i * channels + c] / 255.0f, options.epsilon);
        }
    }
    return frame;
}

IntensityFrame to_intensity(const NetpbmImage& image, const IngestOptions& options) {
    return to_intensity(image.samples, image.width, image.height, image.channels, options);
}

std::vector<fs::path> list_frame_files(const std::string& dir_or_glob) {
    std::vector<fs::path> files;
    std::error_code ec;
    const fs::path source(dir_or_glob);
    if (fs::is_directory(source, ec)) {
        for (const auto& entry : fs::directory_iterator(source, ec)) {
            const auto ext = entry.path().extension().string();
            if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".PGM" || ext == ".PPM")) {
                files.push_back(entry.path());
            }
        }
        if (ec) throw IoError("cannot list '" + dir_or_glob + "': " + ec.message());
    } else {
        const fs::path dir = source.has_parent_path() ? source.parent_path() : fs::path(".");
        const std::string pattern = source.filename().string();
        if (pattern.find_first_of("*?[") == std::string::npos) {
            if (!fs::is_regular_file(source, ec)) throw IoError("no such frame file or directory '" + dir_or_glob + "'");
            files.push_back(source);
        } else {
            if (!fs::is_directory(dir, ec)) throw IoError("no such directory '" + dir.string() + "'");
            for (const auto& entry : fs::directory_iterator(dir, ec)) {
                if (entry.is_regular_file() &&
                    ::fnmatch(pattern.c_str(), entry.path().filename().c_str(), FNM_PERIOD) == 0) {
                    files.push_back(entry.path());
                }
            }
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    if (files.empty()) throw IoError("no PGM/PPM frames found at '" + dir_or_glob + "'");
    return files;
}

std::vector<IntensityFrame> read_frames(std::span<const fs::path> files, const IngestOptions& options) {
    std::vector<IntensityFrame> frames;
    frames.reserve(files.size());
    NetpbmImage first;
    for (std::size_t i = 0; i < files.size(); ++i) {
        NetpbmImage image = read_netpbm(files[i]);
        if (i == 0) {
            first = image;
        } else if (image.width != first.width || image.height != first.height || image.channels != first.channels) {
            throw ShapeError("frame '" + files[i].string() + "' is " + std::to_string(image.width) + "x" +
                             std::to_string(image.height) + "x" + std::to_string(image.channels) +
                             " but the sequence started at " + std::to_string(first.width) + "x" +
                             std::to_string(first.height) + "x" + std::to_string(first.channels));
        }
        frames.push_back(to_intensity(image, options));
    }
    return frames;
}

std::vector<IntensityFrame> read_frames(const std::string& dir_or_glob, const IngestOptions& options) {
    const auto files = list_frame_files(dir_or_glob);
    return read_frames(files, options);
}

std::vector<IntensityFrame> parse_raw_frames(std::span<const std::uint8_t> bytes, const RawGeometry& g,
                                             const IngestOptions& options) {
    if (g.width == 0 || g.height == 0 || g.channels == 0) throw DomainError("raw geometry must be positive");
    const std::size_t frame_bytes = std::size_t{g.width} * g.height * g.channels;
    if (bytes.size() % frame_bytes != 0) {
        throw ParseError("raw stream length " + std::to_string(bytes.size()) + " is not a multiple of the " +
                             std::to_string(frame_bytes) + "-byte frame size",
                         bytes.size() - bytes.size() % frame_bytes);
    }
    std::vector<IntensityFrame> frames;
    for (std::size_t off = 0; off < bytes.size(); off += frame_bytes) {
        frames.push_back(to_intensity(bytes.subspan(off, frame_bytes), g.width, g.height, g.channels, options));
    }
    return frames;
}

std::vector<IntensityFrame> read_raw_frames(const fs::path& path, const RawGeometry& geometry,
                                            const IngestOptions& options) {
    return parse_raw_frames(read_file_bytes(path), geometry, options);
}

NetpbmImage to_netpbm(const IntensityFrame& frame) {
    if (frame.channels() != 1 && frame.channels() != 3) throw ShapeError("PGM/PPM output needs 1 or 3 channels");
    NetpbmImage image{frame.width(), frame.height(), frame.channels(), {}};
    const std::size_t n = frame.pixels();
    image.samples.resize(n * frame.channels());
    for (std::uint32_t c = 0; c < frame.channels(); ++c) {
        const auto src = frame.plane(c);
        for (std::size_t i = 0; i < n; ++i) {
            const float v = std::clamp(src[i], 0.0f, 1.0f);
            image.samples[i * frame.channels() + c] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
        }
    }
    return image;
}

}  // namespace edr::io
