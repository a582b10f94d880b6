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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "edr/analysis/bench.hpp"
#include "edr/analysis/csv.hpp"
#include "edr/analysis/sparsity.hpp"
#include "edr/analysis/synth.hpp"
#include "edr/analysis/trace.hpp"
#include "edr/baselines.hpp"
#include "edr/edr.hpp"
#include "edr/error.hpp"
#include "edr/io/event_file.hpp"
#include "edr/io/frames.hpp"
#include "edr/io/render.hpp"
#include "run_config.hpp"

namespace edr::cli {

namespace {

namespace fs = std::filesystem;
using analysis::format_real;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputFlags {
    std::string frames;
    std::string raw;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t channels = 1;

    void add_to(CLI::App* app) {
        app->add_option("--frames", frames, "Directory of PGM/PPM frames or a wildcard pattern");
        app->add_option("--raw", raw, "Headerless interleaved 8-bit frame stream");
        app->add_option("--width", width, "Raw frame width")->check(CLI::Range(1u, 65535u));
        app->add_option("--height", height, "Raw frame height")->check(CLI::Range(1u, 65535u));
        app->add_option("--channels", channels, "Raw frame channels")->check(CLI::Range(1u, 3u));
    }

    void validate() const {
        if (frames.empty() == raw.empty()) throw UsageError("give exactly one of --frames or --raw");
        if (!raw.empty() && (width == 0 || height == 0)) throw UsageError("--raw needs --width and --height");
    }

    std::vector<IntensityFrame> load(const io::IngestOptions& ingest) const {
        auto out = raw.empty() ? io::read_frames(frames, ingest)
                               : io::read_raw_frames(raw, {width, height, channels}, ingest);
        if (out.empty()) throw ParseError("input '" + (raw.empty() ? frames : raw) + "' holds no frames", 0);
        return out;
    }
};

struct ConfigFlags {
    std::string config;
    std::string preset;
    unsigned threads = 1;
    std::string isa = "auto";

    void add_to(CLI::App* app, bool with_threads = true) {
        auto* c = app->add_option("--config", config, "JSON run configuration");
        auto* p = app->add_option("--preset", preset, "Built-in configuration: fast-slow or fast")
                      ->check(CLI::IsMember({"fast-slow", "fast"}));
        c->excludes(p);
        if (with_threads) app->add_option("--threads", threads, "Row tiles processed in parallel")->check(CLI::Range(1u, 256u));
        app->add_option("--isa", isa, "Kernel table: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    }

    EdrConfig load() const {
        if (!config.empty()) return load_run_config(config);
        return preset_config(preset.empty() ? "fast-slow" : preset);
    }
    kernels::Isa kernel_isa() const { return kernels::parse_isa(isa); }
};

io::IngestOptions ingest_for(const EdrConfig& config) { return {config.color_mode, config.epsilon}; }

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    return f;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::string numbered(const char* fmt, std::uint32_t a, std::uint32_t b = 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    return buf;
}

// ---------------------------------------------------------------- transform

struct TransformCmd {
    InputFlags input;
    ConfigFlags cfg;
    std::string dense;
    std::string sparse;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("transform", "Convert frames to EDR event streams");
        input.add_to(sub);
        cfg.add_to(sub);
        sub->add_option("--dense", dense, "Write an EDRD dense event file");
        sub->add_option("--sparse", sparse, "Write an EDRS sparse event file");
    }

    int run(std::ostream& out) const {
        input.validate();
        if (dense.empty() && sparse.empty()) throw UsageError("transform needs --dense and/or --sparse");
        const EdrConfig config = cfg.load();
        const auto frames = input.load(ingest_for(config));

        ProcessorOptions popt;
        popt.threads = cfg.threads;
        popt.isa = cfg.kernel_isa();
        const auto& first = frames.front();
        EdrProcessor proc(config, first.width(), first.height(), first.channels(), popt);
        const io::StreamGeometry geometry{first.width(), first.height(), proc.event_timescales()};

        std::optional<io::DenseWriter> dw;
        std::optional<io::SparseWriter> sw;
        if (!dense.empty()) dw.emplace(dense, geometry);
        if (!sparse.empty()) sw.emplace(sparse, geometry);

        analysis::SparsityAccumulator acc(popt.isa);
        EventFrame events;
        for (const auto& frame : frames) {
            proc.process_into(frame, events);
            acc.add(events);
            if (dw) dw->write(events);
            if (sw) sw->write(events);
        }
        if (dw) dw->finish();
        if (sw) sw->finish();

        out << "frames=" << acc.frames() << " events=" << acc.total_events()
            << " density=" << format_real(acc.density()) << " width=" << geometry.width
            << " height=" << geometry.height << " K=" << geometry.timescales << " kernels="
            << proc.kernel_table().name << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- render

struct RenderCmd {
    std::string dense;
    std::string out_dir;
    std::optional<std::uint32_t> frame;
    std::optional<std::uint32_t> timescale;
    double max_mag = 1.0;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("render", "Render ON/OFF channels of an EDRD file as PGM images");
        sub->add_option("--dense", dense, "EDRD input file")->required();
        sub->add_option("--out-dir", out_dir, "Output directory")->required();
        sub->add_option("--frame", frame, "Only this frame index");
        sub->add_option("--timescale", timescale, "Only this timescale");
        sub->add_option("--max-mag", max_mag, "Magnitude mapped to white")->check(CLI::PositiveNumber);
    }

    int run(std::ostream& out) const {
        const auto stream = io::read_dense(dense);
        const auto K = stream.geometry.timescales;
        if (timescale && *timescale >= K) {
            throw DomainError("timescale " + std::to_string(*timescale) + " out of range for K=" + std::to_string(K));
        }
        std::vector<const EventFrame*> selected;
        for (const auto& f : stream.frames) {
            if (!frame || f.frame_idx == *frame) selected.push_back(&f);
        }
        if (frame && selected.empty()) {
            throw DomainError("frame " + std::to_string(*frame) + " not present in '" + dense + "' (" +
                              std::to_string(stream.frames.size()) + " frames)");
        }
        ensure_dir(out_dir);
        std::size_t written = 0;
        for (const auto* f : selected) {
            for (std::uint32_t k = 0; k < K; ++k) {
                if (timescale && k != *timescale) continue;
                const auto images = io::render_event_frame(*f, k, max_mag);
                io::write_netpbm(fs::path(out_dir) / numbered("frame_%06u_k%u_on.pgm", f->frame_idx, k), images.on);
                io::write_netpbm(fs::path(out_dir) / numbered("frame_%06u_k%u_off.pgm", f->frame_idx, k), images.off);
                written += 2;
            }
        }
        out << "images=" << written << " dir=" << out_dir << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- trace

struct TraceCmd {
    InputFlags input;
    ConfigFlags cfg;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t channel = 0;
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("trace", "Per-frame EMA, return and event series at one pixel");
        input.add_to(sub);
        cfg.add_to(sub, false);
        sub->add_option("--x", x, "Pixel column")->required();
        sub->add_option("--y", y, "Pixel row")->required();
        sub->add_option("--channel", channel, "EDR channel (per-channel colour mode)");
        sub->add_option("--out", out_path, "CSV output (default: standard output)");
    }

    int run(std::ostream& out) const {
        input.validate();
        const EdrConfig config = cfg.load();
        const auto frames = input.load(ingest_for(config));
        const auto trace = analysis::pixel_trace(frames, config, x, y, channel, cfg.kernel_isa());
        if (out_path.empty()) {
            analysis::write_trace_csv(out, trace);
            return kExitOk;
        }
        auto f = open_out(out_path);
        analysis::write_trace_csv(f, trace);
        if (!f) throw IoError("failed writing '" + out_path + "'");

        std::size_t peak = 0;
        for (std::size_t t = 1; t < trace.frames(); ++t) {
            if (trace.returns[0][t] > trace.returns[0][peak]) peak = t;
        }
        out << "frames=" << trace.frames() << " pixel=(" << x << "," << y << ") peak_return_frame=" << peak
            << " peak_return=" << format_real(trace.returns[0][peak]) << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- stats

struct StatsCmd {
    std::string dense;
    std::string sparse;
    std::optional<std::uint32_t> num_frames;
    std::size_t bins = analysis::kDefaultHistogramBins;
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("stats", "Event density and magnitude statistics");
        auto* d = sub->add_option("--dense", dense, "EDRD input file");
        auto* s = sub->add_option("--sparse", sparse, "EDRS input file");
        d->excludes(s);
        sub->add_option("--num-frames", num_frames, "Frame count for sparse input (default: last event frame + 1)");
        sub->add_option("--bins", bins, "Histogram bins")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
        sub->add_option("--out", out_path, "CSV output (default: standard output)");
    }

    int run(std::ostream& out) const {
        if (dense.empty() == sparse.empty()) throw UsageError("give exactly one of --dense or --sparse");
        std::vector<EventFrame> frames;
        if (!dense.empty()) {
            frames = io::read_dense(dense).frames;
        } else {
            const auto stream = io::read_sparse(sparse);
            std::uint32_t n = num_frames.value_or(stream.records.empty() ? 1 : stream.records.back().frame_idx + 1);
            frames = io::densify(stream, n);
        }
        const auto report = analysis::sparsity_stats(frames, bins);
        if (out_path.empty()) {
            analysis::write_stats_csv(out, report);
            return kExitOk;
        }
        auto f = open_out(out_path);
        analysis::write_stats_csv(f, report);
        if (!f) throw IoError("failed writing '" + out_path + "'");
        out << "frames=" << report.frames << " channels=" << report.channels << " events=" << report.total_events
            << " density=" << format_real(report.overall_density) << '\n';
        for (std::uint32_t c = 0; c < report.channels; ++c) {
            out << "  channel " << c << ": density=" << format_real(report.channel_density[c])
                << " mean_magnitude=" << format_real(report.channel_mean_magnitude[c]) << '\n';
        }
        return kExitOk;
    }
};

// ---------------------------------------------------------------- bench

struct BenchCmd {
    ConfigFlags cfg;
    std::string repr = "edr";
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t n_frames = 500;
    std::uint32_t runs = 5;
    std::uint32_t warmup = 20;
    std::uint32_t input_ring = 2;
    double theta = baselines::kDefaultDvsTheta;
    std::string out_path;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("bench", "Steady-state transform throughput on synthetic input");
        cfg.add_to(sub);
        sub->add_option("--repr", repr, "edr, graydiff, rgbdiff, logdiff, noop or all")
            ->check(CLI::IsMember({"edr", "graydiff", "rgbdiff", "logdiff", "noop", "all"}));
        sub->add_option("--width", width, "Frame width")->required()->check(CLI::Range(1u, 65535u));
        sub->add_option("--height", height, "Frame height")->required()->check(CLI::Range(1u, 65535u));
        sub->add_option("--n-frames", n_frames, "Frames per run, warmup included");
        sub->add_option("--input-ring", input_ring, "Distinct synthetic input frames cycled per run")
            ->check(CLI::Range(2u, 4096u));
        sub->add_option("--runs", runs, "Timed runs; the median is reported")->check(CLI::Range(1u, 1000u));
        sub->add_option("--warmup", warmup, "Untimed frames at the start of each run");
        sub->add_option("--theta", theta, "Log-diff threshold")->check(CLI::PositiveNumber);
        sub->add_option("--out", out_path, "CSV output (default: standard output)");
    }

    int run(std::ostream& out) const {
        analysis::BenchOptions o;
        o.width = width;
        o.height = height;
        o.n_frames = n_frames;
        o.runs = runs;
        o.warmup = warmup;
        o.input_ring = input_ring;
        o.theta = theta;
        o.config = cfg.load();
        o.isa = cfg.kernel_isa();

        std::vector<analysis::Representation> reprs;
        if (repr == "all") {
            reprs = {analysis::Representation::Edr, analysis::Representation::GrayDiff,
                     analysis::Representation::RgbDiff, analysis::Representation::LogDiffEvents};
        } else {
            reprs = {analysis::parse_representation(repr)};
        }
        std::vector<analysis::BenchReport> reports;
        for (auto r : reprs) {
            o.representation = r;
            o.threads = 1;
            reports.push_back(analysis::throughput_bench(o));
            if (r == analysis::Representation::Edr && cfg.threads > 1) {
                o.threads = cfg.threads;
                reports.push_back(analysis::throughput_bench(o));
            }
        }
        if (out_path.empty()) {
            analysis::write_bench_csv(out, reports);
        } else {
            auto f = open_out(out_path);
            analysis::write_bench_csv(f, reports);
            if (!f) throw IoError("failed writing '" + out_path + "'");
        }
        for (const auto& r : reports) {
            out << r.representation << " " << r.width << "x" << r.height << " threads=" << r.threads
                << " kernels=" << r.isa << " fps=" << format_real(r.fps) << '\n';
        }
        return kExitOk;
    }
};

// ---------------------------------------------------------------- diff

struct DiffCmd {
    InputFlags input;
    std::string mode = "gray";
    double theta = baselines::kDefaultDvsTheta;
    float epsilon = kDefaultEpsilon;
    std::string out_path;
    std::string dense;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("diff", "Frame-difference and DVS-style baselines");
        input.add_to(sub);
        sub->add_option("--mode", mode, "gray, rgb or logdiff")->check(CLI::IsMember({"gray", "rgb", "logdiff"}));
        sub->add_option("--theta", theta, "Log-intensity threshold for logdiff")->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", epsilon, "Intensity clamp floor")->check(CLI::Range(1e-9, 0.999999));
        sub->add_option("--out", out_path, "CSV of per-frame statistics (default: standard output)");
        sub->add_option("--dense", dense, "EDRD output of logdiff events");
    }

    int run(std::ostream& out) const {
        input.validate();
        if (!dense.empty() && mode != "logdiff") throw UsageError("--dense is only available with --mode logdiff");
        const io::IngestOptions ingest{mode == "rgb" ? ColorMode::PerChannel : ColorMode::Luma, epsilon};
        const auto frames = input.load(ingest);
        if (mode == "rgb" && frames.front().channels() != 3) throw ShapeError("--mode rgb needs 3-channel input");

        std::ostringstream csv;
        std::uint64_t nonzero_total = 0;
        if (mode == "logdiff") {
            const auto& table = kernels::select();
            const auto& first = frames.front();
            std::optional<io::DenseWriter> dw;
            if (!dense.empty()) dw.emplace(dense, io::StreamGeometry{first.width(), first.height(), 1});
            csv << "frame,channel,nonzero\n";
            EventFrame events(0, first.width(), first.height(), 1);
            for (std::size_t t = 0; t < frames.size(); ++t) {
                if (t > 0) baselines::log_diff_events_into(frames[t - 1], frames[t], theta, events, table);
                events.frame_idx = static_cast<std::uint32_t>(t);
                for (std::uint32_t c = 0; c < 2; ++c) {
                    const auto plane = events.plane(c);
                    const auto nz = table.count_nonzero(plane.data(), plane.size());
                    nonzero_total += nz;
                    csv << t << ',' << c << ',' << nz << '\n';
                }
                if (dw) dw->write(events);
            }
            if (dw) dw->finish();
        } else {
            baselines::FrameDiffer differ;
            csv << "frame,channel,nonzero,min,max,mean_abs\n";
            for (std::size_t t = 0; t < frames.size(); ++t) {
                const auto d = differ.push(frames[t]);
                for (std::uint32_t c = 0; c < d.channels(); ++c) {
                    std::uint64_t nz = 0;
                    float lo = 0.0f, hi = 0.0f;
                    double abs_sum = 0.0;
                    for (float v : d.plane(c)) {
                        nz += v != 0.0f;
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                        abs_sum += std::abs(v);
                    }
                    nonzero_total += nz;
                    csv << t << ',' << c << ',' << nz << ',' << format_real(lo) << ',' << format_real(hi) << ','
                        << format_real(abs_sum / static_cast<double>(d.pixels())) << '\n';
                }
            }
        }
        if (out_path.empty()) {
            out << csv.str();
            return kExitOk;
        }
        auto f = open_out(out_path);
        f << csv.str();
        if (!f) throw IoError("failed writing '" + out_path + "'");
        out << "mode=" << mode << " frames=" << frames.size() << " nonzero=" << nonzero_total << '\n';
        return kExitOk;
    }
};

// ---------------------------------------------------------------- synth

struct SynthCmd {
    std::string pattern = "moving_square";
    std::uint32_t width = 64;
    std::uint32_t height = 64;
    std::uint32_t n_frames = 30;
    analysis::SynthParams params;
    std::string out_dir;
    std::string raw_out;

    void add(CLI::App& app) {
        auto* sub = app.add_subcommand("synth", "Generate a synthetic test video");
        sub->add_option("--pattern", pattern, "constant, impulse, step, moving_square or global_gain")
            ->check(CLI::IsMember({"constant", "impulse", "step", "moving_square", "global_gain"}));
        sub->add_option("--width", width)->check(CLI::Range(1u, 65535u));
        sub->add_option("--height", height)->check(CLI::Range(1u, 65535u));
        sub->add_option("--n-frames", n_frames)->check(CLI::Range(1u, 1000000u));
        sub->add_option("--background", params.background, "Baseline intensity");
        sub->add_option("--amplitude", params.amplitude, "Impulse/step/square contrast");
        sub->add_option("--onset", params.onset, "Frame of the impulse, step or gain change");
        sub->add_option("--square-size", params.square_size);
        sub->add_option("--start-x", params.start_x);
        sub->add_option("--start-y", params.start_y);
        sub->add_option("--vx", params.velocity_x, "Square velocity, pixels per frame");
        sub->add_option("--vy", params.velocity_y);
        sub->add_option("--gain", params.gain, "global_gain multiplier");
        sub->add_option("--seed", params.seed);
        sub->add_option("--channels", params.channels, "1 writes PGM, 3 writes PPM")->check(CLI::IsMember({1u, 3u}));
        sub->add_option("--out-dir", out_dir, "Directory for numbered PGM/PPM frames");
        sub->add_option("--raw-out", raw_out, "Also write a headerless 8-bit stream");
    }

    int run(std::ostream& out) const {
        if (out_dir.empty() && raw_out.empty()) throw UsageError("synth needs --out-dir and/or --raw-out");
        const auto frames = analysis::synth_video(analysis::parse_pattern(pattern), params, width, height, n_frames);
        std::vector<std::uint8_t> raw;
        if (!out_dir.empty()) ensure_dir(out_dir);
        const char* fmt = params.channels == 1 ? "frame_%05u.pgm" : "frame_%05u.ppm";
        for (std::uint32_t t = 0; t < frames.size(); ++t) {
            const auto image = io::to_netpbm(frames[t]);
            if (!out_dir.empty()) io::write_netpbm(fs::path(out_dir) / numbered(fmt, t), image);
            if (!raw_out.empty()) raw.insert(raw.end(), image.samples.begin(), image.samples.end());
        }
        if (!raw_out.empty()) io::write_file_bytes(raw_out, raw);
        out << "pattern=" << pattern << " frames=" << frames.size() << " size=" << width << "x" << height << '\n';
        return kExitOk;
    }
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::Format:
        case ErrorKind::Validation: return kExitParse;
        case ErrorKind::Domain:
        case ErrorKind::Shape: return kExitDomain;
        case ErrorKind::Io: return kExitIo;
    }
    return kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Event-driven representations of frame video"};
    app.require_subcommand(1);
    app.name(args.empty() ? "edr" : fs::path(args.front()).filename().string());

    TransformCmd transform;
    RenderCmd render;
    TraceCmd trace;
    StatsCmd stats;
    BenchCmd bench;
    DiffCmd diff;
    SynthCmd synth;
    transform.add(app);
    render.add(app);
    trace.add(app);
    stats.add(app);
    bench.add(app);
    diff.add(app);
    synth.add(app);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();  // program name
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand("transform")) return transform.run(out);
        if (app.got_subcommand("render")) return render.run(out);
        if (app.got_subcommand("trace")) return trace.run(out);
        if (app.got_subcommand("stats")) return stats.run(out);
        if (app.got_subcommand("bench")) return bench.run(out);
        if (app.got_subcommand("diff")) return diff.run(out);
        if (app.got_subcommand("synth")) return synth.run(out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace edr::cli
