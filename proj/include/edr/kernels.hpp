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

#include <cstddef>
#include <string_view>

#include "edr/params.hpp"

// Per-pixel inner loops. Every kernel table computes the same element-wise
// functions; which one runs is decided at runtime from CPU features.
//
// Arithmetic that is only +, -, *, / and comparisons (EMA update, ratio
// returns with beta == 1, thresholds, differences, luma) is bit-identical
// across tables. Paths that need ln/exp (log returns, beta != 1) use
// polynomial approximations in the vector tables and agree with the scalar
// reference to a few ulp.
//
// Vector tables pad their tails so that every element goes through the same
// vector arithmetic regardless of where a tile boundary falls.
namespace edr::kernels {

enum class Isa { Auto, Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;
/// Accepts "auto", "scalar", "avx2".
Isa parse_isa(std::string_view name);

struct EdrStepParams {
    float alpha = 0.5f;
    float beta = 1.0f;
    float on_threshold = 1.05f;   // 1 + nu_on (ratio) or nu_on (log)
    float off_threshold = 0.95f;  // 1 - nu_off (ratio) or -nu_off (log)
    float epsilon = kDefaultEpsilon;
    ReturnMode return_mode = ReturnMode::Ratio;
    ThresholdMode threshold_mode = ThresholdMode::Soft;
};

EdrStepParams make_step_params(const TimescaleParams& ts, const EdrConfig& config);

struct EdrStepArgs {
    const float* input = nullptr;  // raw intensities, clamped inside the kernel
    float* ema = nullptr;          // state, updated in place
    float* on = nullptr;
    float* off = nullptr;
    float* returns = nullptr;      // optional
    std::size_t count = 0;
    bool initialize = false;       // first frame: ema <- clamped input before the update
};

struct KernelTable {
    Isa isa;
    const char* name;

    /// clamp -> EMA update -> return -> bipolar threshold for one timescale.
    void (*edr_step)(const EdrStepArgs& args, const EdrStepParams& params);
    /// out = 0.299 r + 0.587 g + 0.114 b
    void (*luma)(const float* r, const float* g, const float* b, float* out, std::size_t n);
    /// out = cur - prev
    void (*diff)(const float* prev, const float* cur, float* out, std::size_t n);
    /// on = [cur/prev > up_ratio], off = [cur/prev < down_ratio]
    void (*log_diff)(const float* prev, const float* cur, float* on, float* off, std::size_t n, float up_ratio,
                     float down_ratio);
    std::size_t (*count_nonzero)(const float* values, std::size_t n);
};

const KernelTable& scalar_table() noexcept;
/// Nullptr when the build has no AVX2 table or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;
bool cpu_has_avx2() noexcept;

/// Auto picks the widest supported table. Requesting an unavailable ISA throws DomainError.
const KernelTable& select(Isa isa = Isa::Auto);

}  // namespace edr::kernels
