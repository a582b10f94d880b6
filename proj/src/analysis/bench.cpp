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

#include "edr/analysis/bench.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "edr/analysis/csv.hpp"
#include "edr/analysis/synth.hpp"
#include "edr/baselines.hpp"
#include "edr/edr.hpp"
#include "edr/error.hpp"

namespace edr::analysis {

namespace {

using Clock = std::chrono::steady_clock;

// Prevents the no-op loop from being optimized out.
volatile float g_sink = 0.0f;

double time_frames(std::uint32_t warmup, std::uint32_t timed, const auto& step) {
    for (std::uint32_t t = 0; t < warmup; ++t) step(t);
    const auto start = Clock::now();
    for (std::uint32_t t = warmup; t < warmup + timed; ++t) step(t);
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Representation repr) noexcept {
    switch (repr) {
        case Representation::Edr: return "edr";
        case Representation::GrayDiff: return "graydiff";
        case Representation::RgbDiff: return "rgbdiff";
        case Representation::LogDiffEvents: return "logdiff";
        case Representation::Noop: return "noop";
    }
    return "unknown";
}

Representation parse_representation(std::string_view name) {
    for (auto r : {Representation::Edr, Representation::GrayDiff, Representation::RgbDiff,
                   Representation::LogDiffEvents, Representation::Noop}) {
        if (to_string(r) == name) return r;
    }
    throw DomainError("unknown representation '" + std::string(name) + "'");
}

BenchReport throughput_bench(const BenchOptions& o) {
    if (o.width == 0 || o.height == 0 || o.width > 0xFFFF || o.height > 0xFFFF) {
        throw DomainError("benchmark geometry must be positive and fit in 16 bits");
    }
    if (o.n_frames < o.warmup + 100) {
        throw DomainError("benchmark needs at least warmup + 100 frames, got " + std::to_string(o.n_frames));
    }
    if (o.runs == 0) throw DomainError("benchmark needs at least one run");
    if (o.threads == 0) throw DomainError("thread count must be positive");
    if (o.input_ring < 2) throw DomainError("input ring needs at least two frames");
    const std::uint32_t ring = o.input_ring;

    const std::uint32_t channels = o.representation == Representation::RgbDiff ? 3 : 1;
    const auto inputs = random_video(o.width, o.height, ring, channels, 0.05f, 0.95f, o.seed);
    const kernels::KernelTable& table = kernels::select(o.isa);
    const std::uint32_t timed = o.n_frames - o.warmup;

    BenchReport report;
    report.representation = std::string(to_string(o.representation));
    report.width = o.width;
    report.height = o.height;
    report.frames = timed;
    report.threads = o.representation == Representation::Edr ? o.threads : 1;
    report.isa = table.name;

    for (std::uint32_t run = 0; run < o.runs; ++run) {
        double seconds = 0.0;
        switch (o.representation) {
            case Representation::Edr: {
                ProcessorOptions popt;
                popt.isa = o.isa;
                popt.threads = o.threads;
                EdrProcessor proc(o.config, o.width, o.height, 1, popt);
                EventFrame out;
                seconds = time_frames(o.warmup, timed, [&](std::uint32_t t) {
                    proc.process_into(inputs[t % ring], out);
                });
                break;
            }
            case Representation::GrayDiff:
            case Representation::RgbDiff: {
                DiffFrame out;
                seconds = time_frames(o.warmup, timed, [&](std::uint32_t t) {
                    baselines::diff_into(inputs[(t + ring - 1) % ring], inputs[t % ring], out,
                                         table);
                });
                break;
            }
            case Representation::LogDiffEvents: {
                EventFrame out;
                seconds = time_frames(o.warmup, timed, [&](std::uint32_t t) {
                    baselines::log_diff_events_into(inputs[(t + ring - 1) % ring],
                                                    inputs[t % ring], o.theta, out, table);
                });
                break;
            }
            case Representation::Noop: {
                seconds = time_frames(o.warmup, timed, [&](std::uint32_t t) {
                    g_sink = g_sink + inputs[t % ring].data()[t % 7];
                });
                break;
            }
        }
        report.run_seconds.push_back(seconds);
    }

    auto sorted = report.run_seconds;
    std::sort(sorted.begin(), sorted.end());
    report.seconds = sorted[sorted.size() / 2];
    // A no-op run can finish below clock resolution.
    report.seconds = std::max(report.seconds, 1e-9);
    report.fps = static_cast<double>(report.frames) / report.seconds;
    return report;
}

void write_bench_csv(std::ostream& out, std::span<const BenchReport> reports) {
    out << "repr,width,height,threads,frames,seconds,fps\n";
    for (const auto& r : reports) {
        out << r.representation << ',' << r.width << ',' << r.height << ',' << r.threads << ',' << r.frames << ','
            << format_real(r.seconds) << ',' << format_real(r.fps) << '\n';
    }
}

}  // namespace edr::analysis
