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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "edr/analysis/sparsity.hpp"
#include "edr/analysis/synth.hpp"
#include "edr/baselines.hpp"
#include "edr/edr.hpp"
#include "edr/error.hpp"

namespace edr::analysis {
namespace {

std::vector<EventFrame> random_events(std::uint32_t w, std::uint32_t h, std::uint32_t K, std::uint32_t n,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> mag(0.0f, 2.0f);
    std::bernoulli_distribution fire(0.15);
    std::vector<EventFrame> frames;
    for (std::uint32_t t = 0; t < n; ++t) {
        EventFrame f(t, w, h, K);
        for (float& v : f.data()) v = fire(rng) ? mag(rng) : 0.0f;
        frames.push_back(std::move(f));
    }
    return frames;
}

TEST(SparsityStats, AllZeroFramesHaveZeroDensity) {
    std::vector<EventFrame> frames(4, EventFrame(0, 6, 6, 2));
    const auto r = sparsity_stats(frames);
    EXPECT_EQ(r.total_events, 0u);
    EXPECT_EQ(r.overall_density, 0.0);
    for (const auto& s : r.per_frame) {
        EXPECT_EQ(s.density, 0.0);
        EXPECT_EQ(s.mean_magnitude, 0.0);
    }
    for (const auto& counts : r.histogram.counts) EXPECT_EQ(counts.front(), 4u * 36u);
}

TEST(SparsityStats, SingleEventDensity) {
    EventFrame f(0, 10, 10, 1);
    f.at(1, 4, 7) = 0.3f;
    const auto r = sparsity_stats(std::span(&f, 1));
    ASSERT_EQ(r.channels, 2u);
    EXPECT_DOUBLE_EQ(r.at(1, 0).density, 0.01);
    EXPECT_EQ(r.at(1, 0).nonzero, 1u);
    EXPECT_FLOAT_EQ(r.at(1, 0).mean_magnitude, 0.3f);
    EXPECT_EQ(r.at(0, 0).density, 0.0);
    EXPECT_DOUBLE_EQ(r.channel_density[1], 0.01);
    EXPECT_DOUBLE_EQ(r.overall_density, 0.005);
}

TEST(SparsityStats, HistogramCountsCoverEveryEntry) {
    const auto frames = random_events(7, 5, 2, 9, 4);
    for (std::size_t bins : {1u, 3u, 64u}) {
        const auto r = sparsity_stats(frames, bins);
        ASSERT_EQ(r.histogram.edges.size(), bins + 1);
        EXPECT_EQ(r.histogram.edges.front(), 0.0);
        for (std::size_t b = 1; b < r.histogram.edges.size(); ++b) {
            EXPECT_GT(r.histogram.edges[b], r.histogram.edges[b - 1]);
        }
        for (const auto& counts : r.histogram.counts) {
            std::uint64_t sum = 0;
            for (auto c : counts) sum += c;
            EXPECT_EQ(sum, 7u * 5u * 9u);
        }
        for (const auto& s : r.per_frame) {
            EXPECT_GE(s.density, 0.0);
            EXPECT_LE(s.density, 1.0);
        }
    }
}

TEST(SparsityStats, RejectsEmptyAndMixedInput) {
    EXPECT_THROW(sparsity_stats({}), DomainError);
    std::vector<EventFrame> mixed{EventFrame(0, 4, 4, 1), EventFrame(1, 4, 5, 1)};
    EXPECT_THROW(sparsity_stats(mixed), ShapeError);
    std::vector<EventFrame> one{EventFrame(0, 4, 4, 1)};
    EXPECT_THROW(sparsity_stats(one, 0), DomainError);
}

TEST(SparsityStats, StreamingCounterAgreesWithRescan) {
    for (auto isa : {kernels::Isa::Scalar, kernels::Isa::Auto}) {
        const auto frames = random_events(13, 9, 3, 11, 6);
        const auto r = sparsity_stats(frames);
        SparsityAccumulator acc(isa);
        for (const auto& f : frames) acc.add(f);
        EXPECT_EQ(acc.frames(), 11u);
        EXPECT_EQ(acc.total_events(), r.total_events);
        EXPECT_EQ(acc.density(), r.overall_density);
        for (std::uint32_t t = 0; t < 11; ++t) {
            for (std::uint32_t c = 0; c < 6; ++c) {
                const auto& s = acc.per_frame()[t * 6 + c];
                EXPECT_EQ(s, r.at(c, t));
            }
        }
    }
}

TEST(SparsityStats, CsvLayout) {
    EventFrame f(0, 2, 1, 1);
    f.at(0, 0, 0) = 0.5f;
    std::ostringstream out;
    write_stats_csv(out, sparsity_stats(std::span(&f, 1)));
    EXPECT_EQ(out.str(), "channel,frame,density,mean_magnitude\n0,0,0.5,0.5\n1,0,0,0\n");
}

// Frames after the last change at which a pixel can still fire, for a
// background b, contrast a and decay alpha: a (1-alpha)^n <= b nu / (1 + nu).
std::uint32_t memory_frames(double b, double a, double alpha, double nu) {
    return static_cast<std::uint32_t>(std::ceil(std::log(b * nu / ((1.0 + nu) * a)) / std::log(1.0 - alpha)));
}

TEST(SparsityStats, MovingSquareEventsStayInsideSweptBand) {
    const std::uint32_t W = 64, H = 48, T = 40;
    SynthParams p;
    p.square_size = 8;
    p.start_x = 2;
    p.start_y = 20;
    const auto video = synth_video(Pattern::MovingSquare, p, W, H, T);
    const auto cfg = EdrConfig::fast_slow();
    EdrProcessor proc(cfg, W, H);
    std::vector<EventFrame> events;
    for (const auto& f : video) events.push_back(proc.process(f));
    const auto report = sparsity_stats(events);

    const std::uint32_t memory = memory_frames(p.background, p.amplitude, cfg.timescales[1].alpha(), 0.05);
    for (std::uint32_t t = 0; t < T; ++t) {
        // Union of square footprints over the frames that can still be remembered.
        std::vector<bool> band(W * H, false);
        const std::uint32_t from = t > memory ? t - memory : 0;
        for (std::uint32_t s = from; s <= t; ++s) {
            const auto [ox, oy] = square_origin(p, W, H, s);
            for (std::uint32_t dy = 0; dy < p.square_size; ++dy)
                for (std::uint32_t dx = 0; dx < p.square_size; ++dx) band[((oy + dy) % H) * W + (ox + dx) % W] = true;
        }
        std::size_t band_area = 0;
        for (bool b : band) band_area += b;
        for (std::uint32_t c = 0; c < 4; ++c) {
            const auto plane = events[t].plane(c);
            for (std::size_t i = 0; i < plane.size(); ++i) {
                if (!band[i]) {
                    ASSERT_EQ(plane[i], 0.0f) << "t=" << t << " c=" << c << " i=" << i;
                }
            }
            EXPECT_LE(report.at(c, t).density, static_cast<double>(band_area) / (W * H));
            EXPECT_LT(report.at(c, t).density, 0.10);
        }
    }
}

TEST(SparsityStats, GrayDiffSupportIsCoveredByFastEvents) {
    const std::uint32_t W = 32, H = 32;
    SynthParams p;
    p.square_size = 6;
    p.start_y = 10;
    const auto video = synth_video(Pattern::MovingSquare, p, W, H, 20);
    EdrProcessor proc(EdrConfig::fast_slow(), W, H);
    proc.process(video[0]);
    for (std::size_t t = 1; t < video.size(); ++t) {
        const auto e = proc.process(video[t]);
        const auto d = baselines::gray_diff(video[t - 1], video[t]);
        for (std::size_t i = 0; i < d.pixels(); ++i) {
            if (d.plane(0)[i] > 0.0f) {
                EXPECT_GT(e.on(0)[i], 0.0f) << t << " " << i;
            }
            if (d.plane(0)[i] < 0.0f) {
                EXPECT_GT(e.off(0)[i], 0.0f) << t << " " << i;
            }
        }
    }
}

}  // namespace
}  // namespace edr::analysis
