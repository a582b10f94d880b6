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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace edr::io {

/// 8-bit binary Netpbm image (P5 gray or P6 RGB), samples interleaved.
struct NetpbmImage {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 1;  // 1 -> P5, 3 -> P6
    std::vector<std::uint8_t> samples;

    friend bool operator==(const NetpbmImage&, const NetpbmImage&) = default;
};

/// Parses P5/P6 with maxval 255. Throws ParseError carrying the byte offset.
NetpbmImage parse_netpbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_netpbm(const NetpbmImage& image);

NetpbmImage read_netpbm(const std::filesystem::path& path);
void write_netpbm(const std::filesystem::path& path, const NetpbmImage& image);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace edr::io
