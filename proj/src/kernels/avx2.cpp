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

// Compiled with -mavx2 -mfma. Keep standard-library templates out of this
// file: inline instantiations made here could be merged into callers that
// run on CPUs without AVX2.

#include <immintrin.h>

#include "avx2_math.hpp"
#include "kernel_tables.hpp"

namespace edr::kernels::detail {

namespace {

constexpr std::size_t kLanes = 8;

struct StepConstants {
    __m256 alpha, beta, on_thr, off_thr, eps, one, zero;

    explicit StepConstants(const EdrStepParams& p)
        : alpha(_mm256_set1_ps(p.alpha)),
          beta(_mm256_set1_ps(p.beta)),
          on_thr(_mm256_set1_ps(p.on_threshold)),
          off_thr(_mm256_set1_ps(p.off_threshold)),
          eps(_mm256_set1_ps(p.epsilon)),
          one(_mm256_set1_ps(1.0f)),
          zero(_mm256_setzero_ps()) {}
};

template <bool Ratio, bool Hard, bool UnitBeta, bool Init, bool WriteReturns>
inline void edr_lanes(const float* in, float* ema, float* on, float* off, float* ret, const StepConstants& k) {
    __m256 x = _mm256_loadu_ps(in);
    x = _mm256_max_ps(x, k.eps);  // NaN -> eps
    x = _mm256_min_ps(x, k.one);

    __m256 e = Init ? x : _mm256_loadu_ps(ema);
    // Same rounding sequence as the scalar ema + alpha * (x - ema).
    e = _mm256_add_ps(e, _mm256_mul_ps(k.alpha, _mm256_sub_ps(x, e)));
    _mm256_storeu_ps(ema, e);

    const __m256 q = _mm256_div_ps(x, e);
    __m256 r;
    if constexpr (Ratio) {
        r = UnitBeta ? q : avx2::exp_ps(_mm256_mul_ps(k.beta, avx2::log_ps(q)));
    } else {
        r = avx2::log_ps(q);
        if constexpr (!UnitBeta) r = _mm256_mul_ps(k.beta, r);
    }
    if constexpr (WriteReturns) _mm256_storeu_ps(ret, r);

    const __m256 d_on = _mm256_sub_ps(r, k.on_thr);
    const __m256 d_off = _mm256_sub_ps(k.off_thr, r);
    if constexpr (Hard) {
        _mm256_storeu_ps(on, _mm256_and_ps(_mm256_cmp_ps(d_on, k.zero, _CMP_GT_OQ), k.one));
        _mm256_storeu_ps(off, _mm256_and_ps(_mm256_cmp_ps(d_off, k.zero, _CMP_GT_OQ), k.one));
    } else {
        _mm256_storeu_ps(on, _mm256_max_ps(d_on, k.zero));
        _mm256_storeu_ps(off, _mm256_max_ps(d_off, k.zero));
    }
}

template <bool Ratio, bool Hard, bool UnitBeta, bool Init, bool WriteReturns>
void edr_loop(const EdrStepArgs& a, const EdrStepParams& p) {
    const StepConstants k(p);
    const std::size_t full = a.count - a.count % kLanes;
    for (std::size_t i = 0; i < full; i += kLanes) {
        edr_lanes<Ratio, Hard, UnitBeta, Init, WriteReturns>(a.input + i, a.ema + i, a.on + i, a.off + i,
                                                             WriteReturns ? a.returns + i : nullptr, k);
    }
    const std::size_t tail = a.count - full;
    if (tail == 0) return;

    alignas(32) float in[kLanes], ema[kLanes], on[kLanes], off[kLanes], ret[kLanes];
    for (std::size_t j = 0; j < kLanes; ++j) {
        in[j] = j < tail ? a.input[full + j] : 1.0f;
        ema[j] = j < tail ? a.ema[full + j] : 1.0f;
    }
    edr_lanes<Ratio, Hard, UnitBeta, Init, WriteReturns>(in, ema, on, off, ret, k);
    for (std::size_t j = 0; j < tail; ++j) {
        a.ema[full + j] = ema[j];
        a.on[full + j] = on[j];
        a.off[full + j] = off[j];
        if constexpr (WriteReturns) a.returns[full + j] = ret[j];
    }
}

using StepFn = void (*)(const EdrStepArgs&, const EdrStepParams&);

template <bool Ratio, bool Hard, bool UnitBeta>
StepFn pick_tail(bool init, bool write_returns) {
    if (init) return write_returns ? edr_loop<Ratio, Hard, UnitBeta, true, true> : edr_loop<Ratio, Hard, UnitBeta, true, false>;
    return write_returns ? edr_loop<Ratio, Hard, UnitBeta, false, true> : edr_loop<Ratio, Hard, UnitBeta, false, false>;
}

template <bool Ratio>
StepFn pick_mode(bool hard, bool unit_beta, bool init, bool write_returns) {
    if (hard) {
        return unit_beta ? pick_tail<Ratio, true, true>(init, write_returns)
                         : pick_tail<Ratio, true, false>(init, write_returns);
    }
    return unit_beta ? pick_tail<Ratio, false, true>(init, write_returns)
                     : pick_tail<Ratio, false, false>(init, write_returns);
}

void edr_step(const EdrStepArgs& a, const EdrStepParams& p) {
    const bool hard = p.threshold_mode == ThresholdMode::Hard;
    const bool unit_beta = p.beta == 1.0f;
    const bool write_returns = a.returns != nullptr;
    const StepFn fn = p.return_mode == ReturnMode::Ratio ? pick_mode<true>(hard, unit_beta, a.initialize, write_returns)
                                                         : pick_mode<false>(hard, unit_beta, a.initialize, write_returns);
    fn(a, p);
}

inline __m256 luma_lanes(const float* r, const float* g, const float* b) {
    const __m256 wr = _mm256_set1_ps(0.299f), wg = _mm256_set1_ps(0.587f), wb = _mm256_set1_ps(0.114f);
    const __m256 rg = _mm256_add_ps(_mm256_mul_ps(wr, _mm256_loadu_ps(r)), _mm256_mul_ps(wg, _mm256_loadu_ps(g)));
    return _mm256_add_ps(rg, _mm256_mul_ps(wb, _mm256_loadu_ps(b)));
}

void luma(const float* r, const float* g, const float* b, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) _mm256_storeu_ps(out + i, luma_lanes(r + i, g + i, b + i));
    for (; i < n; ++i) out[i] = (0.299f * r[i] + 0.587f * g[i]) + 0.114f * b[i];
}

void diff(const float* prev, const float* cur, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_ps(out + i, _mm256_sub_ps(_mm256_loadu_ps(cur + i), _mm256_loadu_ps(prev + i)));
    }
    for (; i < n; ++i) out[i] = cur[i] - prev[i];
}

void log_diff(const float* prev, const float* cur, float* on, float* off, std::size_t n, float up, float down) {
    const __m256 vup = _mm256_set1_ps(up), vdown = _mm256_set1_ps(down), one = _mm256_set1_ps(1.0f);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256 q = _mm256_div_ps(_mm256_loadu_ps(cur + i), _mm256_loadu_ps(prev + i));
        _mm256_storeu_ps(on + i, _mm256_and_ps(_mm256_cmp_ps(q, vup, _CMP_GT_OQ), one));
        _mm256_storeu_ps(off + i, _mm256_and_ps(_mm256_cmp_ps(q, vdown, _CMP_LT_OQ), one));
    }
    for (; i < n; ++i) {
        const float q = cur[i] / prev[i];
        on[i] = q > up ? 1.0f : 0.0f;
        off[i] = q < down ? 1.0f : 0.0f;
    }
}

std::size_t count_nonzero(const float* v, std::size_t n) {
    const __m256 zero = _mm256_setzero_ps();
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const int mask = _mm256_movemask_ps(_mm256_cmp_ps(_mm256_loadu_ps(v + i), zero, _CMP_NEQ_UQ));
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i) count += v[i] != 0.0f;
    return count;
}

}  // namespace

const KernelTable kAvx2Table{Isa::Avx2, "avx2", edr_step, luma, diff, log_diff, count_nonzero};

}  // namespace edr::kernels::detail
