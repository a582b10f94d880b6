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

#include "edr/io/event_file.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "edr/error.hpp"
#include "edr/io/netpbm.hpp"

namespace edr::io {

namespace {

constexpr std::uint8_t kDenseMagic[4] = {'E', 'D', 'R', 'D'};
constexpr std::uint8_t kSparseMagic[4] = {'E', 'D', 'R', 'S'};

class ByteWriter {
public:
    explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) {
        out_.push_back(static_cast<std::uint8_t>(v));
        out_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int s = 0; s < 32; s += 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void u64(std::uint64_t v) {
        for (int s = 0; s < 64; s += 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
    }
    void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
    void bytes(const std::uint8_t* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }

private:
    std::vector<std::uint8_t>& out_;
};

class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
        pos_ += 8;
        return v;
    }
    float f32() { return std::bit_cast<float>(u32()); }

    std::size_t pos() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

    void need(std::size_t n) const {
        if (remaining() < n) {
            throw ParseError(std::string("truncated ") + what_ + ": need " + std::to_string(n) + " more bytes",
                             bytes_.size());
        }
    }

private:
    std::span<const std::uint8_t> bytes_;
    const char* what_;
    std::size_t pos_ = 0;
};

void write_header(ByteWriter& w, const std::uint8_t (&magic)[4], const StreamGeometry& g) {
    w.bytes(magic, 4);
    w.u8(kFormatVersion);
    w.u16(static_cast<std::uint16_t>(g.width));
    w.u16(static_cast<std::uint16_t>(g.height));
    w.u8(static_cast<std::uint8_t>(g.timescales));
    w.u8(0);
}

StreamGeometry read_header(ByteReader& r, const std::uint8_t (&magic)[4], const char* name) {
    r.need(4);
    for (int i = 0; i < 4; ++i) {
        if (r.u8() != magic[i]) throw FormatError(std::string("not an ") + name + " file (bad magic)", 0);
    }
    const std::size_t version_pos = r.pos();
    const std::uint8_t version = r.u8();
    if (version != kFormatVersion) {
        throw FormatError(std::string("unsupported ") + name + " version " + std::to_string(version), version_pos);
    }
    StreamGeometry g;
    g.width = r.u16();
    g.height = r.u16();
    const std::size_t k_pos = r.pos();
    g.timescales = r.u8();
    r.u8();  // reserved
    if (g.width == 0 || g.height == 0) throw ValidationError("zero width or height in header", 5);
    if (g.timescales == 0 || g.timescales > 127) {
        throw ValidationError("timescale count " + std::to_string(g.timescales) + " outside [1, 127]", k_pos);
    }
    return g;
}

bool valid_magnitude(float v) { return std::isfinite(v) && !std::signbit(v); }

void check_frame(const StreamGeometry& g, const EventFrame& f) {
    if (f.width() != g.width || f.height() != g.height || f.channels() != g.channels()) {
        throw ShapeError("frame " + std::to_string(f.frame_idx) + " does not match stream geometry " +
                         std::to_string(g.width) + "x" + std::to_string(g.height) + " K=" +
                         std::to_string(g.timescales));
    }
}

void encode_dense_frame(ByteWriter& w, const EventFrame& f) {
    w.u32(f.frame_idx);
    for (float v : f.data()) w.f32(v);
}

void encode_record(ByteWriter& w, const SparseEventRecord& rec) {
    w.u32(rec.frame_idx);
    w.u16(rec.x);
    w.u16(rec.y);
    w.u8(rec.channel);
    w.f32(rec.magnitude);
}

void patch_count(std::ofstream& out, const std::filesystem::path& path, std::streamoff offset, std::uint64_t count,
                 int bytes) {
    std::uint8_t buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<std::uint8_t>(count >> (8 * i));
    out.seekp(offset);
    out.write(reinterpret_cast<const char*>(buf), bytes);
    out.flush();
    if (!out) throw IoError("failed finalizing '" + path.string() + "'");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void flush_buffer(std::ofstream& out, std::vector<std::uint8_t>& buffer, const std::filesystem::path& path) {
    out.write(reinterpret_cast<const char*>(buffer.data()), static_cast<std::streamsize>(buffer.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    buffer.clear();
}

}  // namespace

void validate_geometry(const StreamGeometry& g) {
    if (g.width == 0 || g.height == 0) throw DomainError("stream width and height must be positive");
    if (g.width > 0xFFFF || g.height > 0xFFFF) throw DomainError("stream width and height must fit in 16 bits");
    if (g.timescales == 0 || g.timescales > 127) {
        throw DomainError("timescale count " + std::to_string(g.timescales) + " outside [1, 127]");
    }
}

StreamGeometry geometry_of(const EventFrame& frame) {
    return {frame.width(), frame.height(), frame.timescales()};
}

std::vector<std::uint8_t> encode_dense(const StreamGeometry& g, std::span<const EventFrame> frames) {
    validate_geometry(g);
    if (frames.size() > 0xFFFFFFFFull) throw DomainError("too many frames for EDRD");
    std::vector<std::uint8_t> out;
    out.reserve(kDenseHeaderSize + frames.size() * (4 + std::size_t{4} * g.channels() * g.width * g.height));
    ByteWriter w(out);
    write_header(w, kDenseMagic, g);
    w.u32(static_cast<std::uint32_t>(frames.size()));
    for (const auto& f : frames) {
        check_frame(g, f);
        encode_dense_frame(w, f);
    }
    return out;
}

DenseStream decode_dense(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes, "EDRD stream");
    DenseStream stream;
    stream.geometry = read_header(r, kDenseMagic, "EDRD");
    const std::uint32_t frame_count = r.u32();
    const auto& g = stream.geometry;
    const std::uint64_t frame_bytes = 4 + std::uint64_t{4} * g.channels() * g.width * g.height;
    const std::uint64_t payload = r.remaining();
    if (payload != frame_bytes * frame_count) {
        const std::uint64_t whole = payload / frame_bytes;
        if (payload < frame_bytes * frame_count) {
            throw ParseError("header declares " + std::to_string(frame_count) + " frames but payload holds " +
                                 std::to_string(whole) + (payload % frame_bytes ? " and a partial frame" : ""),
                             kDenseHeaderSize + whole * frame_bytes);
        }
        throw ParseError("header declares " + std::to_string(frame_count) + " frames but payload has " +
                             std::to_string(payload - frame_bytes * frame_count) + " trailing bytes",
                         kDenseHeaderSize + frame_bytes * frame_count);
    }
    stream.frames.reserve(frame_count);
    for (std::uint32_t i = 0; i < frame_count; ++i) {
        const std::uint32_t idx = r.u32();
        EventFrame frame(idx, g.width, g.height, g.timescales);
        for (float& v : frame.data()) {
            const std::size_t at = r.pos();
            v = r.f32();
            if (!valid_magnitude(v)) throw ValidationError("negative or non-finite event magnitude", at);
        }
        stream.frames.push_back(std::move(frame));
    }
    return stream;
}

std::vector<std::uint8_t> encode_sparse(const StreamGeometry& g, std::span<const SparseEventRecord> records) {
    validate_geometry(g);
    std::vector<std::uint8_t> out;
    out.reserve(kSparseHeaderSize + records.size() * kSparseRecordSize);
    ByteWriter w(out);
    write_header(w, kSparseMagic, g);
    w.u64(records.size());
    for (const auto& rec : records) encode_record(w, rec);
    return out;
}

SparseStream decode_sparse(std::span<const std::uint8_t> bytes, SparseReadOptions options) {
    ByteReader r(bytes, "EDRS stream");
    SparseStream stream;
    stream.geometry = read_header(r, kSparseMagic, "EDRS");
    const std::uint64_t count = r.u64();
    const auto& g = stream.geometry;
    const std::uint64_t payload = r.remaining();
    if (payload / kSparseRecordSize < count) {
        throw ParseError("header declares " + std::to_string(count) + " events but payload holds " +
                             std::to_string(payload / kSparseRecordSize),
                         bytes.size());
    }
    if (payload != count * kSparseRecordSize) {
        throw ParseError("trailing bytes after " + std::to_string(count) + " events",
                         kSparseHeaderSize + count * kSparseRecordSize);
    }

    stream.records.reserve(count);
    bool sorted = true;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::size_t at = r.pos();
        SparseEventRecord rec;
        rec.frame_idx = r.u32();
        rec.x = r.u16();
        rec.y = r.u16();
        rec.channel = r.u8();
        rec.magnitude = r.f32();
        if (rec.x >= g.width || rec.y >= g.height) {
            throw ValidationError("event at (" + std::to_string(rec.x) + ", " + std::to_string(rec.y) +
                                      ") outside " + std::to_string(g.width) + "x" + std::to_string(g.height),
                                  at);
        }
        if (rec.channel >= g.channels()) {
            throw ValidationError("channel " + std::to_string(rec.channel) + " outside [0, " +
                                      std::to_string(g.channels()) + ")",
                                  at);
        }
        if (!valid_magnitude(rec.magnitude) || rec.magnitude == 0.0f) {
            throw ValidationError("event magnitude must be finite and positive", at);
        }
        if (!stream.records.empty()) {
            const auto prev = stream.records.back().key();
            if (prev == rec.key()) throw ValidationError("duplicate event record", at);
            if (prev > rec.key()) {
                if (options.strict) throw ValidationError("event records out of (frame, y, x, channel) order", at);
                sorted = false;
            }
        }
        stream.records.push_back(rec);
    }
    if (!sorted) {
        std::stable_sort(stream.records.begin(), stream.records.end(),
                         [](const auto& a, const auto& b) { return a.key() < b.key(); });
        const auto dup = std::adjacent_find(stream.records.begin(), stream.records.end(),
                                            [](const auto& a, const auto& b) { return a.key() == b.key(); });
        if (dup != stream.records.end()) {
            throw ValidationError("duplicate event record", static_cast<std::uint64_t>(dup - stream.records.begin()));
        }
    }
    return stream;
}

void write_dense(const std::filesystem::path& path, const StreamGeometry& geometry,
                 std::span<const EventFrame> frames) {
    write_file_bytes(path, encode_dense(geometry, frames));
}

DenseStream read_dense(const std::filesystem::path& path) { return decode_dense(read_file_bytes(path)); }

void write_sparse(const std::filesystem::path& path, const StreamGeometry& geometry,
                  std::span<const EventFrame> frames) {
    for (const auto& f : frames) check_frame(geometry, f);
    write_file_bytes(path, encode_sparse(geometry, sparsify(frames)));
}

SparseStream read_sparse(const std::filesystem::path& path, SparseReadOptions options) {
    return decode_sparse(read_file_bytes(path), options);
}

void append_sparse(const EventFrame& frame, std::vector<SparseEventRecord>& out) {
    if (frame.width() > 0xFFFF || frame.height() > 0xFFFF || frame.channels() > 254) {
        throw DomainError("frame geometry cannot be encoded as sparse records");
    }
    const std::size_t n = frame.pixels();
    const std::uint32_t channels = frame.channels();
    const auto data = frame.data();
    for (std::uint32_t y = 0; y < frame.height(); ++y) {
        for (std::uint32_t x = 0; x < frame.width(); ++x) {
            const std::size_t i = std::size_t{y} * frame.width() + x;
            for (std::uint32_t c = 0; c < channels; ++c) {
                const float v = data[c * n + i];
                if (v != 0.0f) {
                    out.push_back({frame.frame_idx, static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y),
                                   static_cast<std::uint8_t>(c), v});
                }
            }
        }
    }
}

std::vector<SparseEventRecord> sparsify(std::span<const EventFrame> frames) {
    std::vector<SparseEventRecord> out;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i > 0 && frames[i].frame_idx <= frames[i - 1].frame_idx) {
            throw DomainError("frames must have strictly increasing indices to be stored sparsely");
        }
        append_sparse(frames[i], out);
    }
    return out;
}

std::vector<EventFrame> densify(const SparseStream& stream, std::uint32_t frame_count, std::uint32_t first_frame_idx) {
    const auto& g = stream.geometry;
    validate_geometry(g);
    std::vector<EventFrame> frames;
    frames.reserve(frame_count);
    for (std::uint32_t i = 0; i < frame_count; ++i) frames.emplace_back(first_frame_idx + i, g.width, g.height, g.timescales);
    for (std::size_t i = 0; i < stream.records.size(); ++i) {
        const auto& rec = stream.records[i];
        if (rec.frame_idx < first_frame_idx || rec.frame_idx - first_frame_idx >= frame_count) {
            throw ValidationError("event frame index " + std::to_string(rec.frame_idx) + " outside the " +
                                      std::to_string(frame_count) + "-frame window",
                                  i);
        }
        if (rec.x >= g.width || rec.y >= g.height || rec.channel >= g.channels()) {
            throw ValidationError("event record outside stream geometry", i);
        }
        frames[rec.frame_idx - first_frame_idx].at(rec.channel, rec.x, rec.y) = rec.magnitude;
    }
    return frames;
}

DenseWriter::DenseWriter(const std::filesystem::path& path, const StreamGeometry& geometry)
    : path_(path), geometry_(geometry) {
    validate_geometry(geometry);
    out_ = open_for_write(path);
    ByteWriter w(buffer_);
    write_header(w, kDenseMagic, geometry);
    w.u32(0);
    flush_buffer(out_, buffer_, path_);
}

void DenseWriter::write(const EventFrame& frame) {
    check_frame(geometry_, frame);
    if (count_ == 0xFFFFFFFFull) throw DomainError("too many frames for EDRD");
    ByteWriter w(buffer_);
    encode_dense_frame(w, frame);
    flush_buffer(out_, buffer_, path_);
    ++count_;
}

void DenseWriter::finish() {
    patch_count(out_, path_, kDenseHeaderSize - 4, count_, 4);
    out_.close();
}

SparseWriter::SparseWriter(const std::filesystem::path& path, const StreamGeometry& geometry)
    : path_(path), geometry_(geometry) {
    validate_geometry(geometry);
    out_ = open_for_write(path);
    ByteWriter w(buffer_);
    write_header(w, kSparseMagic, geometry);
    w.u64(0);
    flush_buffer(out_, buffer_, path_);
}

void SparseWriter::write(const EventFrame& frame) {
    check_frame(geometry_, frame);
    if (static_cast<std::int64_t>(frame.frame_idx) <= last_frame_) {
        throw DomainError("sparse frames must arrive in increasing frame_idx order");
    }
    last_frame_ = frame.frame_idx;
    records_.clear();
    append_sparse(frame, records_);
    ByteWriter w(buffer_);
    for (const auto& rec : records_) encode_record(w, rec);
    flush_buffer(out_, buffer_, path_);
    count_ += records_.size();
}

void SparseWriter::finish() {
    patch_count(out_, path_, kSparseHeaderSize - 8, count_, 8);
    out_.close();
}

}  // namespace edr::io
