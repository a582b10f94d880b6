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

#include "edr/analysis/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edr/analysis/csv.hpp"
#include "edr/error.hpp"

namespace edr::analysis {

SparsityReport sparsity_stats(std::span<const EventFrame> frames, std::size_t bins) {
    if (frames.empty()) throw DomainError("sparsity statistics need at least one frame");
    if (bins == 0) throw DomainError("histogram needs at least one bin");
    const EventFrame& first = frames.front();
    for (const auto& f : frames) {
        if (!f.same_geometry(first) || f.channels() != first.channels()) throw ShapeError("frames differ in geometry");
    }

    SparsityReport r;
    r.width = first.width();
    r.height = first.height();
    r.channels = first.channels();
    r.frames = static_cast<std::uint32_t>(frames.size());
    const std::size_t n = first.pixels();

    float max_magnitude = 0.0f;
    for (const auto& f : frames) {
        for (float v : f.data()) max_magnitude = std::max(max_magnitude, v);
    }

    r.per_frame.resize(std::size_t{r.channels} * r.frames);
    r.channel_density.assign(r.channels, 0.0);
    r.channel_mean_magnitude.assign(r.channels, 0.0);
    const double top = max_magnitude > 0.0f ? max_magnitude : 1.0;
    r.histogram.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b) r.histogram.edges[b] = top * static_cast<double>(b) / bins;
    r.histogram.counts.assign(r.channels, std::vector<std::uint64_t>(bins, 0));

    for (std::uint32_t c = 0; c < r.channels; ++c) {
        std::uint64_t channel_nonzero = 0;
        double channel_sum = 0.0;
        auto& hist = r.histogram.counts[c];
        for (std::uint32_t t = 0; t < r.frames; ++t) {
            const auto plane = frames[t].plane(c);
            std::uint64_t nonzero = 0;
            double sum = 0.0;
            for (float v : plane) {
                if (v != 0.0f) {
                    ++nonzero;
                    sum += v;
                }
                const auto bin = static_cast<std::size_t>(static_cast<double>(v) / top * static_cast<double>(bins));
                ++hist[std::min(bin, bins - 1)];
            }
            auto& s = r.per_frame[std::size_t{c} * r.frames + t];
            s.channel = c;
            s.frame = frames[t].frame_idx;
            s.nonzero = nonzero;
            s.density = static_cast<double>(nonzero) / static_cast<double>(n);
            s.mean_magnitude = nonzero ? sum / static_cast<double>(nonzero) : 0.0;
            channel_nonzero += nonzero;
            channel_sum += sum;
        }
        r.channel_density[c] = static_cast<double>(channel_nonzero) / (static_cast<double>(n) * r.frames);
        r.channel_mean_magnitude[c] = channel_nonzero ? channel_sum / static_cast<double>(channel_nonzero) : 0.0;
        r.total_events += channel_nonzero;
    }
    r.overall_density = static_cast<double>(r.total_events) / (static_cast<double>(n) * r.frames * r.channels);
    return r;
}

void SparsityAccumulator::add(const EventFrame& frame) {
    if (frames_ == 0) {
        width_ = frame.width();
        height_ = frame.height();
        channels_ = frame.channels();
    } else if (frame.width() != width_ || frame.height() != height_ || frame.channels() != channels_) {
        throw ShapeError("frame geometry changed mid-stream");
    }
    const std::size_t n = frame.pixels();
    for (std::uint32_t c = 0; c < channels_; ++c) {
        const auto plane = frame.plane(c);
        const std::size_t nonzero = table_->count_nonzero(plane.data(), n);
        double sum = 0.0;
        if (nonzero) {
            for (float v : plane) sum += v;
        }
        stats_.push_back({c, frame.frame_idx, nonzero, static_cast<double>(nonzero) / static_cast<double>(n),
                          nonzero ? sum / static_cast<double>(nonzero) : 0.0});
        total_ += nonzero;
    }
    ++frames_;
}

double SparsityAccumulator::density() const noexcept {
    if (frames_ == 0) return 0.0;
    return static_cast<double>(total_) / (static_cast<double>(width_) * height_ * channels_ * frames_);
}

void write_stats_csv(std::ostream& out, const SparsityReport& report) {
    out << "channel,frame,density,mean_magnitude\n";
    for (const auto& s : report.per_frame) {
        out << s.channel << ',' << s.frame << ',' << format_real(s.density) << ',' << format_real(s.mean_magnitude)
            << '\n';
    }
}

}  // namespace edr::analysis
