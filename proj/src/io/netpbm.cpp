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

#include "edr/io/netpbm.hpp"

#include <fstream>
#include <string>

#include "edr/error.hpp"

namespace edr::io {

namespace {

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class HeaderCursor {
public:
    explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    /// Stores the offset of the token's first digit in `start`.
    std::uint32_t read_number(const char* what, std::size_t& start) {
        skip_space_and_comments();
        start = pos_;
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFu) throw ParseError(std::string(what) + " is too large", start);
            ++pos_;
        }
        if (pos_ == start) {
            if (pos_ >= bytes_.size()) throw ParseError(std::string("truncated header, expected ") + what, pos_);
            throw ParseError(std::string("expected ") + what, pos_);
        }
        return static_cast<std::uint32_t>(value);
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

NetpbmImage parse_netpbm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2) throw ParseError("truncated Netpbm magic", bytes.size());
    if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
        throw ParseError("not a binary PGM/PPM file (expected P5 or P6)", 0);
    }
    NetpbmImage image;
    image.channels = bytes[1] == '5' ? 1 : 3;

    HeaderCursor cur(bytes);
    cur.advance(2);
    if (cur.pos() < bytes.size() && !is_space(bytes[cur.pos()]) && bytes[cur.pos()] != '#') {
        throw ParseError("missing whitespace after magic", cur.pos());
    }
    std::size_t width_pos = 0, height_pos = 0, maxval_pos = 0;
    image.width = cur.read_number("width", width_pos);
    image.height = cur.read_number("height", height_pos);
    const std::uint32_t maxval = cur.read_number("maxval", maxval_pos);
    if (image.width == 0) throw ParseError("zero image width", width_pos);
    if (image.height == 0) throw ParseError("zero image height", height_pos);
    if (maxval != 255) throw ParseError("only maxval 255 is supported, got " + std::to_string(maxval), maxval_pos);
    if (cur.pos() >= bytes.size() || !is_space(bytes[cur.pos()])) {
        throw ParseError("expected a single whitespace byte before the raster", cur.pos());
    }
    cur.advance(1);

    const std::uint64_t need = std::uint64_t{image.width} * image.height * image.channels;
    const std::uint64_t have = bytes.size() - cur.pos();
    if (have < need) {
        throw ParseError("truncated raster: need " + std::to_string(need) + " bytes, have " + std::to_string(have),
                         bytes.size());
    }
    // Anything after the first raster (e.g. a second image) is ignored.
    image.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos()),
                         bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos() + need));
    return image;
}

std::vector<std::uint8_t> encode_netpbm(const NetpbmImage& image) {
    if (image.channels != 1 && image.channels != 3) throw ShapeError("Netpbm images have 1 or 3 channels");
    if (image.samples.size() != std::size_t{image.width} * image.height * image.channels) {
        throw ShapeError("sample count does not match image geometry");
    }
    const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + "\n" + std::to_string(image.width) +
                               " " + std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.samples.begin(), image.samples.end());
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

NetpbmImage read_netpbm(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    try {
        return parse_netpbm(bytes);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message(), e.position().value_or(0));
    }
}

void write_netpbm(const std::filesystem::path& path, const NetpbmImage& image) {
    write_file_bytes(path, encode_netpbm(image));
}

}  // namespace edr::io
