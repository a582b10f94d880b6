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
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edr/kernels.hpp"
#include "edr/params.hpp"

namespace edr::analysis {

enum class Representation {
    Edr,
    GrayDiff,
    RgbDiff,
    LogDiffEvents,
    Noop,  // touches each input frame only; bounds the harness overhead
};

std::string_view to_string(Representation repr) noexcept;
/// "edr", "graydiff", "rgbdiff", "logdiff", "noop".
Representation parse_representation(std::string_view name);

struct BenchOptions {
    Representation representation = Representation::Edr;
    std::uint32_t width = 320;
    std::uint32_t height = 240;
    std::uint32_t n_frames = 500;  // per run, including warmup
    EdrConfig config = EdrConfig::fast_slow();
    unsigned threads = 1;          // tile parallelism, EDR only
    kernels::Isa isa = kernels::Isa::Auto;
    std::uint32_t warmup = 20;
    std::uint32_t runs = 5;
    double theta = 0.15;           // log-diff threshold
    std::uint64_t seed = 7;
    /// Distinct pre-generated input frames cycled through the timed loop.
    std::uint32_t input_ring = 2;
};

struct BenchReport {
    std::string representation;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint64_t frames = 0;   // timed frames per run (warmup excluded)
    double seconds = 0.0;       // median run wall time
    double fps = 0.0;           // frames / seconds
    unsigned threads = 1;
    std::string isa;
    std::vector<double> run_seconds;
};

/// Times the transform alone: inputs are generated before the clock starts
/// and no file I/O happens inside the timed loop.
BenchReport throughput_bench(const BenchOptions& options);

/// `repr,width,height,threads,frames,seconds,fps`
void write_bench_csv(std::ostream& out, std::span<const BenchReport> reports);

}  // namespace edr::analysis
