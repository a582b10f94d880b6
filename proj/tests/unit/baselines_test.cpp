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

#include <gtest/gtest.h>

#include "edr/baselines.hpp"
#include "edr/error.hpp"
#include "test_support.hpp"

namespace edr::baselines {
namespace {

using testing::constant_frame;
using testing::random_frames;

const std::vector<kernels::Isa> kIsas = [] {
    std::vector<kernels::Isa> v{kernels::Isa::Scalar};
    if (kernels::avx2_table() != nullptr) v.push_back(kernels::Isa::Avx2);
    return v;
}();

TEST(GrayDiff, IdenticalFramesGiveZeros) {
    const auto f = random_frames(9, 7, 1, 1)[0];
    for (auto isa : kIsas) {
        const auto d = gray_diff(f, f, isa);
        for (float v : d.data()) EXPECT_EQ(v, 0.0f);
    }
}

TEST(GrayDiff, SinglePixelChange) {
    auto prev = constant_frame(4, 4, 0.2f);
    auto cur = prev;
    cur.at(0, 2, 1) = 0.7f;
    for (auto isa : kIsas) {
        const auto d = gray_diff(prev, cur, isa);
        for (std::uint32_t y = 0; y < 4; ++y) {
            for (std::uint32_t x = 0; x < 4; ++x) {
                if (x == 2 && y == 1) EXPECT_FLOAT_EQ(d.at(0, x, y), 0.5f);
                else EXPECT_EQ(d.at(0, x, y), 0.0f);
            }
        }
    }
}

TEST(GrayDiff, IsAntisymmetricAndBounded) {
    const auto f = random_frames(33, 5, 2, 2, 0.0f, 1.0f);
    for (auto isa : kIsas) {
        const auto ab = gray_diff(f[0], f[1], isa);
        const auto ba = gray_diff(f[1], f[0], isa);
        for (std::size_t i = 0; i < ab.data().size(); ++i) {
            EXPECT_EQ(ab.data()[i], -ba.data()[i]);
            EXPECT_LE(std::abs(ab.data()[i]), 1.0f);
        }
    }
}

TEST(GrayDiff, RejectsBadShapes) {
    EXPECT_THROW(gray_diff(constant_frame(4, 4, 0.5f), constant_frame(4, 3, 0.5f)), ShapeError);
    EXPECT_THROW(gray_diff(constant_frame(4, 4, 0.5f, 3), constant_frame(4, 4, 0.5f, 3)), ShapeError);
}

TEST(RgbDiff, EqualsPlaneWiseGrayDiff) {
    const auto f = random_frames(10, 6, 2, 3, 0.0f, 1.0f, 3);
    for (auto isa : kIsas) {
        const auto d = rgb_diff(f[0], f[1], isa);
        ASSERT_EQ(d.channels(), 3u);
        for (std::uint32_t c = 0; c < 3; ++c) {
            IntensityFrame a(10, 6, 1), b(10, 6, 1);
            std::copy(f[0].plane(c).begin(), f[0].plane(c).end(), a.plane(0).begin());
            std::copy(f[1].plane(c).begin(), f[1].plane(c).end(), b.plane(0).begin());
            const auto g = gray_diff(a, b, isa);
            EXPECT_TRUE(std::equal(g.plane(0).begin(), g.plane(0).end(), d.plane(c).begin()));
        }
    }
}

TEST(RgbDiff, ChangeStaysInItsChannel) {
    const auto prev = constant_frame(3, 3, 0.5f, 3);
    auto cur = prev;
    cur.at(1, 0, 0) = 0.9f;
    const auto d = rgb_diff(prev, cur);
    for (std::uint32_t c : {0u, 2u}) for (float v : d.plane(c)) EXPECT_EQ(v, 0.0f);
    EXPECT_NEAR(d.at(1, 0, 0), 0.4f, 1e-6);
    const auto same = rgb_diff(prev, prev);
    for (float v : same.data()) EXPECT_EQ(v, 0.0f);
    EXPECT_THROW(rgb_diff(constant_frame(3, 3, 0.5f), constant_frame(3, 3, 0.5f)), ShapeError);
}

TEST(FrameDiffer, FirstFrameIsZero) {
    const auto f = random_frames(5, 5, 4, 4);
    FrameDiffer differ;
    const auto first = differ.push(f[0]);
    for (float v : first.data()) EXPECT_EQ(v, 0.0f);
    EXPECT_EQ(differ.push(f[1]), gray_diff(f[0], f[1]));
    EXPECT_EQ(differ.push(f[2]), gray_diff(f[1], f[2]));
    differ.reset();
    const auto restarted = differ.push(f[3]);
    for (float v : restarted.data()) EXPECT_EQ(v, 0.0f);
}

TEST(LogDiffEvents, UnchangedFramesAreSilent) {
    const auto f = random_frames(8, 8, 1, 5)[0];
    for (auto isa : kIsas) {
        const auto e = log_diff_events(f, f, 0.15, 0, isa);
        EXPECT_EQ(e.timescales(), 1u);
        for (float v : e.data()) EXPECT_EQ(v, 0.0f);
    }
}

TEST(LogDiffEvents, LargeIncreaseFiresOnOnlyThere) {
    const double theta = 0.15;
    const auto prev = constant_frame(5, 4, 0.2f);
    auto cur = prev;
    cur.at(0, 3, 2) = static_cast<float>(0.2 * std::exp(2 * theta));
    for (auto isa : kIsas) {
        const auto e = log_diff_events(prev, cur, theta, 7, isa);
        EXPECT_EQ(e.frame_idx, 7u);
        for (std::uint32_t y = 0; y < 4; ++y) {
            for (std::uint32_t x = 0; x < 5; ++x) {
                EXPECT_EQ(e.on(0)[y * 5 + x], (x == 3 && y == 2) ? 1.0f : 0.0f);
                EXPECT_EQ(e.off(0)[y * 5 + x], 0.0f);
            }
        }
        const auto rev = log_diff_events(cur, prev, theta, 0, isa);
        EXPECT_EQ(rev.off(0)[2 * 5 + 3], 1.0f);
        EXPECT_EQ(rev.on(0)[2 * 5 + 3], 0.0f);
    }
}

TEST(LogDiffEvents, ToleratesGainWithinTheta) {
    const auto prev = random_frames(16, 16, 1, 6, 0.05f, 0.6f)[0];
    for (double g : {0.87, 0.9, 1.1, 1.15}) {
        auto cur = prev;
        for (float& v : cur.data()) v = static_cast<float>(v * g);
        for (auto isa : kIsas) {
            const auto e = log_diff_events(prev, cur, 0.15, 0, isa);
            for (float v : e.data()) EXPECT_EQ(v, 0.0f);
        }
    }
}

TEST(LogDiffEvents, InvariantUnderGainOnBothFrames) {
    const auto f = random_frames(16, 16, 2, 7, 0.05f, 0.45f);
    const auto base = log_diff_events(f[0], f[1], 0.15);
    auto a = f[0], b = f[1];
    for (auto* img : {&a, &b}) for (float& v : img->data()) v *= 2.0f;
    EXPECT_EQ(log_diff_events(a, b, 0.15), base);
}

TEST(LogDiffEvents, RejectsBadTheta) {
    const auto f = constant_frame(2, 2, 0.5f);
    for (double theta : {0.0, -0.1, std::nan(""), double(INFINITY)}) EXPECT_THROW(log_diff_events(f, f, theta), DomainError);
    EXPECT_THROW(log_diff_events(f, constant_frame(2, 3, 0.5f), 0.15), ShapeError);
}

TEST(Baselines, ReprocessingIsDeterministic) {
    const auto f = random_frames(12, 12, 6, 8);
    for (std::size_t t = 1; t < f.size(); ++t) {
        EXPECT_EQ(gray_diff(f[t - 1], f[t]), gray_diff(f[t - 1], f[t]));
        EXPECT_EQ(log_diff_events(f[t - 1], f[t]), log_diff_events(f[t - 1], f[t]));
        if (kIsas.size() > 1) {
            EXPECT_EQ(gray_diff(f[t - 1], f[t], kernels::Isa::Scalar), gray_diff(f[t - 1], f[t], kernels::Isa::Avx2));
            EXPECT_EQ(log_diff_events(f[t - 1], f[t], 0.15, 0, kernels::Isa::Scalar),
                      log_diff_events(f[t - 1], f[t], 0.15, 0, kernels::Isa::Avx2));
        }
    }
}

}  // namespace
}  // namespace edr::baselines
