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

#include <cmath>

// Scalar element functions. The reference operations and the scalar kernel
// table both call these, so the two agree bit for bit.
namespace edr::detail {

inline float clamp_intensity(float x, float epsilon) noexcept {
    // Written as selects so NaN maps to epsilon, matching _mm256_max_ps(x, eps).
    x = x > epsilon ? x : epsilon;
    return x < 1.0f ? x : 1.0f;
}

inline float ema_update(float ema, float input, float alpha) noexcept {
    return ema + alpha * (input - ema);
}

inline float ratio_return(float input, float ema, float beta) noexcept {
    const float q = input / ema;
    return beta == 1.0f ? q : std::pow(q, beta);
}

inline float log_return(float input, float ema, float beta) noexcept {
    return beta * std::log(input / ema);
}

inline float on_event(float r, float on_threshold, bool hard) noexcept {
    const float d = r - on_threshold;
    if (hard) return d > 0.0f ? 1.0f : 0.0f;
    return d > 0.0f ? d : 0.0f;
}

inline float off_event(float r, float off_threshold, bool hard) noexcept {
    const float d = off_threshold - r;
    if (hard) return d > 0.0f ? 1.0f : 0.0f;
    return d > 0.0f ? d : 0.0f;
}

inline float luma(float r, float g, float b) noexcept {
    return (0.299f * r + 0.587f * g) + 0.114f * b;
}

}  // namespace edr::detail
