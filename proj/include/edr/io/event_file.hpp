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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <tuple>
#include <vector>

#include "edr/frame.hpp"

// Event containers. All fields little-endian, magnitudes IEEE-754 binary32.
//
// EDRD (dense), 15-byte header:
//   "EDRD" | version u8 = 1 | width u16 | height u16 | K u8 | reserved u8 | frame_count u32
//   then per frame: frame_idx u32, 2K planes of width*height f32 (row-major)
//
// EDRS (sparse), 19-byte header:
//   "EDRS" | version u8 = 1 | width u16 | height u16 | K u8 | reserved u8 | event_count u64
//   then event_count 13-byte records: frame_idx u32 | x u16 | y u16 | channel u8 | magnitude f32
//
// Channel 2k + p holds timescale k, polarity p (0 = ON, 1 = OFF).
namespace edr::io {

constexpr std::uint8_t kFormatVersion = 1;
constexpr std::size_t kDenseHeaderSize = 15;
constexpr std::size_t kSparseHeaderSize = 19;
constexpr std::size_t kSparseRecordSize = 13;

struct StreamGeometry {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t timescales = 0;  // K; files carry 2K channels

    std::uint32_t channels() const noexcept { return 2 * timescales; }
    friend bool operator==(const StreamGeometry&, const StreamGeometry&) = default;
};

/// Throws DomainError if the geometry cannot be encoded (zero sizes, > 16-bit sides, K outside [1, 127]).
void validate_geometry(const StreamGeometry& geometry);
StreamGeometry geometry_of(const EventFrame& frame);

struct SparseEventRecord {
    std::uint32_t frame_idx = 0;
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::uint8_t channel = 0;
    float magnitude = 0.0f;

    /// Storage order: (frame_idx, y, x, channel).
    auto key() const noexcept { return std::tuple{frame_idx, y, x, channel}; }
    friend bool operator==(const SparseEventRecord&, const SparseEventRecord&) = default;
};

struct DenseStream {
    StreamGeometry geometry;
    std::vector<EventFrame> frames;
};

struct SparseStream {
    StreamGeometry geometry;
    std::vector<SparseEventRecord> records;
};

struct SparseReadOptions {
    /// Reject out-of-order records instead of sorting them.
    bool strict = false;
};

std::vector<std::uint8_t> encode_dense(const StreamGeometry& geometry, std::span<const EventFrame> frames);
/// Throws FormatError (magic/version), ParseError (truncation, count mismatch)
/// or ValidationError (negative or non-finite magnitude).
DenseStream decode_dense(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_sparse(const StreamGeometry& geometry, std::span<const SparseEventRecord> records);
SparseStream decode_sparse(std::span<const std::uint8_t> bytes, SparseReadOptions options = {});

void write_dense(const std::filesystem::path& path, const StreamGeometry& geometry, std::span<const EventFrame> frames);
DenseStream read_dense(const std::filesystem::path& path);
void write_sparse(const std::filesystem::path& path, const StreamGeometry& geometry,
                  std::span<const EventFrame> frames);
SparseStream read_sparse(const std::filesystem::path& path, SparseReadOptions options = {});

/// Nonzero entries of one frame, in storage order.
void append_sparse(const EventFrame& frame, std::vector<SparseEventRecord>& out);
std::vector<SparseEventRecord> sparsify(std::span<const EventFrame> frames);
/// Rebuilds frame_count dense frames with indices first_frame_idx, first_frame_idx + 1, ...
/// Records outside that window raise ValidationError.
std::vector<EventFrame> densify(const SparseStream& stream, std::uint32_t frame_count,
                                std::uint32_t first_frame_idx = 0);

/// Streams frames into an EDRD file; the frame count is patched in by finish().
class DenseWriter {
public:
    DenseWriter(const std::filesystem::path& path, const StreamGeometry& geometry);
    void write(const EventFrame& frame);
    void finish();
    std::uint64_t frames_written() const noexcept { return count_; }

private:
    std::filesystem::path path_;
    StreamGeometry geometry_;
    std::ofstream out_;
    std::uint64_t count_ = 0;
    std::vector<std::uint8_t> buffer_;
};

/// Streams frames into an EDRS file; the event count is patched in by finish().
/// Frames must arrive in increasing frame_idx order.
class SparseWriter {
public:
    SparseWriter(const std::filesystem::path& path, const StreamGeometry& geometry);
    void write(const EventFrame& frame);
    void finish();
    std::uint64_t events_written() const noexcept { return count_; }

private:
    std::filesystem::path path_;
    StreamGeometry geometry_;
    std::ofstream out_;
    std::uint64_t count_ = 0;
    std::int64_t last_frame_ = -1;
    std::vector<SparseEventRecord> records_;
    std::vector<std::uint8_t> buffer_;
};

}  // namespace edr::io
