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

#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "edr/analysis/bench.hpp"
#include "edr/error.hpp"

namespace edr::analysis {
namespace {

BenchOptions opts(Representation repr, std::uint32_t w, std::uint32_t h, EdrConfig cfg = EdrConfig::fast_slow()) {
    BenchOptions o;
    o.representation = repr;
    o.width = w;
    o.height = h;
    o.config = std::move(cfg);
    return o;
}

// Median over alternating rounds of fps(a) / fps(b), which cancels slow drifts in machine speed.
double median_ratio(const BenchOptions& a, const BenchOptions& b, int rounds = 5) {
    std::vector<double> ratios;
    for (int i = 0; i < rounds; ++i) ratios.push_back(throughput_bench(a).fps / throughput_bench(b).fps);
    std::sort(ratios.begin(), ratios.end());
    return ratios[ratios.size() / 2];
}

TEST(ThroughputBench, ReportIsConsistent) {
    auto o = opts(Representation::Edr, 64, 48);
    o.n_frames = 150;
    o.runs = 3;
    const auto r = throughput_bench(o);
    EXPECT_EQ(r.representation, "edr");
    EXPECT_EQ(r.width, 64u);
    EXPECT_EQ(r.height, 48u);
    EXPECT_EQ(r.frames, 130u);
    EXPECT_EQ(r.threads, 1u);
    ASSERT_EQ(r.run_seconds.size(), 3u);
    auto sorted = r.run_seconds;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(r.seconds, sorted[1]);
    EXPECT_DOUBLE_EQ(r.fps, r.frames / r.seconds);
    EXPECT_GT(r.fps, 0.0);
}

TEST(ThroughputBench, EveryRepresentationRuns) {
    for (auto repr : {Representation::Edr, Representation::GrayDiff, Representation::RgbDiff,
                      Representation::LogDiffEvents, Representation::Noop}) {
        auto o = opts(repr, 32, 24);
        o.n_frames = 120;
        o.runs = 1;
        const auto r = throughput_bench(o);
        EXPECT_EQ(r.representation, to_string(repr));
        EXPECT_GT(r.fps, 0.0);
        EXPECT_EQ(parse_representation(to_string(repr)), repr);
    }
    EXPECT_THROW(parse_representation("flow"), DomainError);
}

TEST(ThroughputBench, RejectsInvalidSetups) {
    auto o = opts(Representation::Edr, 32, 24);
    o.n_frames = 119;
    EXPECT_THROW(throughput_bench(o), DomainError);
    o = opts(Representation::Edr, 0, 24);
    EXPECT_THROW(throughput_bench(o), DomainError);
    o = opts(Representation::Edr, 32, 24);
    o.runs = 0;
    EXPECT_THROW(throughput_bench(o), DomainError);
    o = opts(Representation::Edr, 32, 24);
    o.threads = 0;
    EXPECT_THROW(throughput_bench(o), DomainError);
    o = opts(Representation::Edr, 32, 24);
    o.input_ring = 1;
    EXPECT_THROW(throughput_bench(o), DomainError);
}

TEST(ThroughputBench, MultiThreadedEdrReportsThreads) {
    auto o = opts(Representation::Edr, 64, 64);
    o.threads = 3;
    o.n_frames = 120;
    o.runs = 1;
    EXPECT_EQ(throughput_bench(o).threads, 3u);
}

TEST(ThroughputBench, GrayDiffIsFasterThanEdr) {
    const double ratio = median_ratio(opts(Representation::GrayDiff, 320, 240), opts(Representation::Edr, 320, 240), 3);
    EXPECT_GT(ratio, 1.0);
}

TEST(ThroughputBench, NoopBoundsHarnessOverhead) {
    const double ratio = median_ratio(opts(Representation::Noop, 320, 240), opts(Representation::Edr, 320, 240), 3);
    EXPECT_GE(ratio, 50.0);
}

TEST(ThroughputBench, FpsScalesInverselyWithPixelCount) {
    const double ratio = median_ratio(opts(Representation::Edr, 160, 120, EdrConfig::fast()),
                                      opts(Representation::Edr, 320, 240, EdrConfig::fast()));
    RecordProperty("fps_ratio", std::to_string(ratio));
    EXPECT_GE(ratio, 3.0);
    EXPECT_LE(ratio, 5.0);
}

TEST(ThroughputBench, DoublingTimescalesRoughlyHalvesFps) {
    const double ratio = median_ratio(opts(Representation::Edr, 160, 120, EdrConfig::fast()),
                                      opts(Representation::Edr, 160, 120, EdrConfig::fast_slow()));
    RecordProperty("fps_ratio", std::to_string(ratio));
    EXPECT_GE(ratio, 1.5);
    EXPECT_LE(ratio, 2.5);
}

TEST(ThroughputBench, CsvLayout) {
    BenchReport r;
    r.representation = "graydiff";
    r.width = 4;
    r.height = 2;
    r.frames = 100;
    r.seconds = 0.5;
    r.fps = 200;
    r.threads = 2;
    std::ostringstream out;
    write_bench_csv(out, std::span(&r, 1));
    EXPECT_EQ(out.str(), "repr,width,height,threads,frames,seconds,fps\ngraydiff,4,2,2,100,0.5,200\n");
}

}  // namespace
}  // namespace edr::analysis
