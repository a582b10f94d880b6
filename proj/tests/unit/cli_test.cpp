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

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "edr/io/event_file.hpp"
#include "edr/io/netpbm.hpp"
#include "test_support.hpp"

namespace edr::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result edr(std::vector<std::string> args) {
    args.insert(args.begin(), "edr");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    testing::TempDir dir{"cli"};

    std::string path(const std::string& name) const { return (dir / name).string(); }

    void synth(const std::vector<std::string>& extra, const std::string& out_dir = "frames") {
        std::vector<std::string> args{"synth", "--out-dir", path(out_dir)};
        args.insert(args.end(), extra.begin(), extra.end());
        const auto r = edr(args);
        ASSERT_EQ(r.code, 0) << r.err;
    }

    void write_text(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
    }
};

TEST_F(CliTest, HelpSucceedsForEverySubcommand) {
    EXPECT_EQ(edr({"--help"}).code, 0);
    for (const char* sub : {"transform", "render", "trace", "stats", "bench", "diff", "synth"}) {
        const auto r = edr({sub, "--help"});
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_NE(r.out.find("--"), std::string::npos) << sub;
    }
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
    EXPECT_EQ(edr({}).code, 2);
    EXPECT_EQ(edr({"explode"}).code, 2);
    EXPECT_EQ(edr({"transform", "--frames", path("x")}).code, 2);  // no output flag
    EXPECT_EQ(edr({"transform", "--dense", path("a.edrd")}).code, 2);  // no input
    EXPECT_EQ(edr({"transform", "--frames", path("x"), "--raw", path("y"), "--dense", path("a")}).code, 2);
    EXPECT_EQ(edr({"transform", "--frames", path("x"), "--dense", path("a"), "--preset", "fast", "--config",
                   path("c.json")}).code, 2);
    EXPECT_EQ(edr({"bench", "--width", "10"}).code, 2);
    EXPECT_EQ(edr({"bench", "--width", "10", "--height", "10", "--threads", "0"}).code, 2);
    EXPECT_EQ(edr({"diff", "--frames", path("x"), "--mode", "flow"}).code, 2);
    EXPECT_EQ(edr({"synth"}).code, 2);
    // Flag validation happens before any file is touched.
    EXPECT_FALSE(std::filesystem::exists(dir / "a.edrd"));
}

TEST_F(CliTest, ConstantInputGivesEmptySparseStream) {
    synth({"--pattern", "constant", "--width", "16", "--height", "12", "--n-frames", "10"});
    const auto r = edr({"transform", "--frames", path("frames"), "--sparse", path("c.edrs")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("frames=10 events=0 density=0 "), std::string::npos) << r.out;
    EXPECT_EQ(std::filesystem::file_size(dir / "c.edrs"), io::kSparseHeaderSize);
}

TEST_F(CliTest, DenseAndSparseOutputsAgree) {
    synth({"--pattern", "moving_square", "--width", "40", "--height", "30", "--n-frames", "25", "--start-y", "5"});
    const auto r = edr({"transform", "--frames", path("frames"), "--dense", path("m.edrd"), "--sparse",
                        path("m.edrs")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto dense = io::read_dense(dir / "m.edrd");
    const auto sparse = io::read_sparse(dir / "m.edrs");
    EXPECT_EQ(dense.geometry, (io::StreamGeometry{40, 30, 2}));
    EXPECT_EQ(sparse.geometry, dense.geometry);
    ASSERT_EQ(dense.frames.size(), 25u);
    EXPECT_FALSE(sparse.records.empty());
    EXPECT_EQ(io::densify(sparse, 25), dense.frames);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRunsAndThreads) {
    synth({"--pattern", "moving_square", "--width", "33", "--height", "21", "--n-frames", "15", "--square-size", "5"});
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("a.edrd"), "--sparse", path("a.edrs")}).code, 0);
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("b.edrd"), "--sparse", path("b.edrs"),
                   "--threads", "4"}).code, 0);
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("c.edrd"), "--isa", "scalar"}).code, 0);
    EXPECT_EQ(io::read_file_bytes(dir / "a.edrd"), io::read_file_bytes(dir / "b.edrd"));
    EXPECT_EQ(io::read_file_bytes(dir / "a.edrs"), io::read_file_bytes(dir / "b.edrs"));
    EXPECT_EQ(io::read_file_bytes(dir / "a.edrd"), io::read_file_bytes(dir / "c.edrd"));
}

TEST_F(CliTest, RawInputMatchesFrameFiles) {
    synth({"--pattern", "step", "--width", "8", "--height", "6", "--n-frames", "9", "--raw-out", path("v.raw")});
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("f.edrd")}).code, 0);
    ASSERT_EQ(edr({"transform", "--raw", path("v.raw"), "--width", "8", "--height", "6", "--dense", path("r.edrd")}).code, 0);
    EXPECT_EQ(io::read_file_bytes(dir / "f.edrd"), io::read_file_bytes(dir / "r.edrd"));
    EXPECT_EQ(edr({"transform", "--raw", path("v.raw"), "--width", "7", "--height", "6", "--dense", path("x")}).code, 3);
}

TEST_F(CliTest, ConfigErrorsMapToExitCodes) {
    synth({"--pattern", "constant", "--width", "4", "--height", "4", "--n-frames", "2"});
    write_text("alpha1.json", R"({"timescales": [{"alpha": 1}]})");
    auto r = edr({"transform", "--frames", path("frames"), "--dense", path("o"), "--config", path("alpha1.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("domain error"), std::string::npos) << r.err;

    write_text("unknown.json", R"({"timescales": [{"alpha": 0.5}], "speed": 3})");
    EXPECT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("o"), "--config", path("unknown.json")}).code, 3);
    write_text("broken.json", R"({"timescales": )");
    EXPECT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("o"), "--config", path("broken.json")}).code, 3);
    EXPECT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("o"), "--config", path("none.json")}).code, 5);
    EXPECT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("o"), "--preset", "slow"}).code, 2);
}

TEST_F(CliTest, InputErrorsMapToExitCodes) {
    EXPECT_EQ(edr({"transform", "--frames", path("missing"), "--dense", path("o")}).code, 5);
    std::filesystem::create_directories(dir / "bad");
    write_text("bad/f0.pgm", "P5 2 2 255\n\x01");
    auto r = edr({"transform", "--frames", path("bad"), "--dense", path("o")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("offset 12"), std::string::npos) << r.err;

    synth({"--pattern", "constant", "--width", "4", "--height", "4", "--n-frames", "1"}, "mixed");
    synth({"--pattern", "constant", "--width", "5", "--height", "4", "--n-frames", "1", "--background", "0.5"}, "other");
    std::filesystem::copy_file(dir / "other" / "frame_00000.pgm", dir / "mixed" / "frame_00001.pgm");
    EXPECT_EQ(edr({"transform", "--frames", path("mixed"), "--dense", path("o")}).code, 4);

    write_text("junk.edrd", "EDRX");
    EXPECT_EQ(edr({"render", "--dense", path("junk.edrd"), "--out-dir", path("r")}).code, 3);
    EXPECT_EQ(edr({"stats", "--dense", path("nothere.edrd")}).code, 5);
}

TEST_F(CliTest, RenderWritesTwoImagesPerTimescale) {
    synth({"--pattern", "moving_square", "--width", "20", "--height", "16", "--n-frames", "4", "--square-size", "4"});
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("e.edrd")}).code, 0);
    auto r = edr({"render", "--dense", path("e.edrd"), "--out-dir", path("img")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "img")) count += entry.path().extension() == ".pgm";
    EXPECT_EQ(count, 4u * 4u);
    const auto black = io::read_netpbm(dir / "img" / "frame_000000_k1_off.pgm");
    EXPECT_EQ(black.width, 20u);
    for (auto v : black.samples) EXPECT_EQ(v, 0);

    r = edr({"render", "--dense", path("e.edrd"), "--out-dir", path("one"), "--frame", "2", "--timescale", "0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "one" / "frame_000002_k0_on.pgm"));
    EXPECT_FALSE(std::filesystem::exists(dir / "one" / "frame_000002_k1_on.pgm"));
    EXPECT_EQ(edr({"render", "--dense", path("e.edrd"), "--out-dir", path("x"), "--frame", "9"}).code, 4);
    EXPECT_EQ(edr({"render", "--dense", path("e.edrd"), "--out-dir", path("x"), "--timescale", "2"}).code, 4);
}

TEST_F(CliTest, StatsFromDenseAndSparseAgree) {
    synth({"--pattern", "moving_square", "--width", "24", "--height", "24", "--n-frames", "12", "--square-size", "6"});
    ASSERT_EQ(edr({"transform", "--frames", path("frames"), "--dense", path("s.edrd"), "--sparse", path("s.edrs")}).code, 0);
    ASSERT_EQ(edr({"stats", "--dense", path("s.edrd"), "--out", path("d.csv")}).code, 0);
    ASSERT_EQ(edr({"stats", "--sparse", path("s.edrs"), "--num-frames", "12", "--out", path("s.csv")}).code, 0);
    EXPECT_EQ(io::read_file_bytes(dir / "d.csv"), io::read_file_bytes(dir / "s.csv"));
    const auto csv = io::read_file_bytes(dir / "d.csv");
    EXPECT_EQ(std::string(csv.begin(), csv.begin() + 37), "channel,frame,density,mean_magnitude\n");
    EXPECT_EQ(edr({"stats", "--dense", path("s.edrd"), "--sparse", path("s.edrs")}).code, 2);
}

TEST_F(CliTest, DiffOfIdenticalFramesIsZero) {
    synth({"--pattern", "constant", "--width", "6", "--height", "5", "--n-frames", "4"});
    for (const char* mode : {"gray", "logdiff"}) {
        const auto r = edr({"diff", "--frames", path("frames"), "--mode", mode, "--out", path("d.csv")});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.out.find("nonzero=0"), std::string::npos) << r.out;
    }
    synth({"--pattern", "constant", "--width", "6", "--height", "5", "--n-frames", "3", "--channels", "3"}, "rgb");
    auto r = edr({"diff", "--frames", path("rgb"), "--mode", "rgb"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("2,2,0,0,0,0"), std::string::npos) << r.out;
    EXPECT_EQ(edr({"diff", "--frames", path("frames"), "--mode", "rgb"}).code, 4);
    EXPECT_EQ(edr({"diff", "--frames", path("frames"), "--mode", "gray", "--dense", path("x")}).code, 2);
}

TEST_F(CliTest, DiffLogdiffWritesDenseEvents) {
    synth({"--pattern", "step", "--width", "6", "--height", "5", "--n-frames", "8"});
    ASSERT_EQ(edr({"diff", "--frames", path("frames"), "--mode", "logdiff", "--dense", path("l.edrd"), "--out",
                   path("l.csv")}).code, 0);
    const auto s = io::read_dense(dir / "l.edrd");
    ASSERT_EQ(s.frames.size(), 8u);
    for (std::uint32_t t = 0; t < 8; ++t) {
        for (float v : s.frames[t].on(0)) EXPECT_EQ(v, t == 5 ? 1.0f : 0.0f);
    }
}

TEST_F(CliTest, TracePrintsCsvAndSummary) {
    synth({"--pattern", "impulse", "--width", "4", "--height", "4", "--n-frames", "20"});
    auto r = edr({"trace", "--frames", path("frames"), "--x", "1", "--y", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("frame,intensity,ema_0,ema_1,", 0), 0u);
    r = edr({"trace", "--frames", path("frames"), "--x", "1", "--y", "2", "--out", path("t.csv")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("peak_return_frame=5"), std::string::npos) << r.out;
    EXPECT_EQ(edr({"trace", "--frames", path("frames"), "--x", "4", "--y", "0"}).code, 4);
}

TEST_F(CliTest, BenchSmokeRun) {
    const auto r = edr({"bench", "--width", "160", "--height", "120", "--n-frames", "500", "--out", path("b.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto pos = r.out.find("fps=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GT(std::stod(r.out.substr(pos + 4)), 0.0);
    const auto csv = io::read_file_bytes(dir / "b.csv");
    EXPECT_EQ(std::string(csv.begin(), csv.begin() + 45), "repr,width,height,threads,frames,seconds,fps\n");
    EXPECT_EQ(edr({"bench", "--width", "16", "--height", "16", "--n-frames", "50"}).code, 4);
}

TEST_F(CliTest, SynthIsDeterministic) {
    synth({"--pattern", "global_gain", "--width", "9", "--height", "7", "--n-frames", "6", "--seed", "3"}, "a");
    synth({"--pattern", "global_gain", "--width", "9", "--height", "7", "--n-frames", "6", "--seed", "3"}, "b");
    for (int t = 0; t < 6; ++t) {
        const std::string name = "frame_0000" + std::to_string(t) + ".pgm";
        EXPECT_EQ(io::read_file_bytes(dir / "a" / name), io::read_file_bytes(dir / "b" / name));
    }
    EXPECT_EQ(edr({"synth", "--pattern", "moving_square", "--width", "8", "--height", "8", "--square-size", "8",
                   "--out-dir", path("c")}).code, 4);
}

}  // namespace
}  // namespace edr::cli
