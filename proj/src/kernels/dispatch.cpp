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
#include <string>

#include "edr/error.hpp"
#include "kernel_tables.hpp"

namespace edr::kernels {

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Auto: return "auto";
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name) {
    if (name == "auto") return Isa::Auto;
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    throw DomainError("unknown instruction set '" + std::string(name) + "' (expected auto, scalar or avx2)");
}

EdrStepParams make_step_params(const TimescaleParams& ts, const EdrConfig& config) {
    EdrStepParams p;
    p.alpha = static_cast<float>(ts.alpha());
    p.beta = static_cast<float>(ts.beta());
    if (config.return_mode == ReturnMode::Ratio) {
        p.on_threshold = static_cast<float>(1.0 + ts.nu_on());
        p.off_threshold = static_cast<float>(1.0 - ts.nu_off());
    } else {
        p.on_threshold = static_cast<float>(ts.nu_on());
        p.off_threshold = static_cast<float>(-ts.nu_off());
    }
    p.epsilon = config.epsilon;
    p.return_mode = config.return_mode;
    p.threshold_mode = config.threshold_mode;
    return p;
}

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

const KernelTable* avx2_table() noexcept {
#if defined(EDR_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &detail::kAvx2Table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& select(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return scalar_table();
        case Isa::Avx2:
            if (const auto* t = avx2_table()) return *t;
            throw DomainError("AVX2 kernels are not available on this build or CPU");
        case Isa::Auto: break;
    }
    if (const auto* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace edr::kernels
