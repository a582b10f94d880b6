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

#include "edr/detail/element_math.hpp"
#include "kernel_tables.hpp"

namespace edr::kernels::detail {

namespace {

using edr::detail::clamp_intensity;
using edr::detail::ema_update;

void edr_step(const EdrStepArgs& a, const EdrStepParams& p) {
    const bool hard = p.threshold_mode == ThresholdMode::Hard;
    const bool ratio = p.return_mode == ReturnMode::Ratio;
    for (std::size_t i = 0; i < a.count; ++i) {
        const float x = clamp_intensity(a.input[i], p.epsilon);
        const float e = ema_update(a.initialize ? x : a.ema[i], x, p.alpha);
        a.ema[i] = e;
        const float r = ratio ? edr::detail::ratio_return(x, e, p.beta) : edr::detail::log_return(x, e, p.beta);
        if (a.returns) a.returns[i] = r;
        a.on[i] = edr::detail::on_event(r, p.on_threshold, hard);
        a.off[i] = edr::detail::off_event(r, p.off_threshold, hard);
    }
}

void luma(const float* r, const float* g, const float* b, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = edr::detail::luma(r[i], g[i], b[i]);
}

void diff(const float* prev, const float* cur, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = cur[i] - prev[i];
}

void log_diff(const float* prev, const float* cur, float* on, float* off, std::size_t n, float up, float down) {
    for (std::size_t i = 0; i < n; ++i) {
        const float q = cur[i] / prev[i];
        on[i] = q > up ? 1.0f : 0.0f;
        off[i] = q < down ? 1.0f : 0.0f;
    }
}

std::size_t count_nonzero(const float* v, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count += v[i] != 0.0f;
    return count;
}

}  // namespace

const KernelTable kScalarTable{Isa::Scalar, "scalar", edr_step, luma, diff, log_diff, count_nonzero};

}  // namespace edr::kernels::detail
