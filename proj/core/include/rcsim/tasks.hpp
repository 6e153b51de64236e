#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rcsim/csv.hpp"
#include "rcsim/device.hpp"
#include "rcsim/glyphs.hpp"
#include "rcsim/metrics.hpp"
#include "rcsim/reservoir.hpp"
#include "rcsim/signals.hpp"
#include "rcsim/topology.hpp"

namespace rcsim {

/// Outcome of one benchmark run: metrics, scalar diagnostics, and the time
/// series a caller may dump as CSV. Bit-reproducible from (config, seed).
struct TaskReport {
    std::string task;
    std::uint64_t seed = 0;
    MetricReport metrics;
    std::map<std::string, double> extra;                // scalar diagnostics
    std::vector<std::pair<std::string, Table>> traces;  // file stem -> series
};

/// JSON rendering of everything except the traces (which go to CSV).
std::string summary_json(const TaskReport& report);

/// Signal inversion: drive the reservoir with a scalar waveform and train
/// the readout to emit its negative. No feedback path.
struct InverterConfig {
    TopologyGen topology;        // inputs/outputs forced to 1 by the task
    ReservoirParams reservoir;
    DeviceParams device;
    SignalSpec signal;           // square wave by default
    long train_len = 1000;
    long test_len = 400;
    double ridge = 1e-8;
    double target_sign = -1.0;   // -1: inversion; +1 turns it into identity
    int trace_neurons = 5;

    InverterConfig() {
        topology.n = 25;
        signal.kind = SignalKind::square;
        signal.period = 40;
    }
    void validate() const;
};

TaskReport task_inverter(const InverterConfig& cfg, std::uint64_t seed);

/// Video restoration: glyph frames pass through a noisy nonlinear channel;
/// the reservoir + readout reconstruct the clean frames.
struct VideoFilterConfig {
    TopologyGen topology;        // inputs/outputs forced to pixel count
    ReservoirParams reservoir;
    DeviceParams device;
    std::vector<std::string> glyphs = {"I", "7"};
    std::string glyph_dir;       // empty: use built-in bitmaps
    long frames_per_glyph = 8;
    long train_frames = 480;
    long test_frames = 240;
    DistortionParams distortion;
    double ridge = 1e-6;
    double pixel_thresh = 0.95;  // per-frame agreement for "recovered"

    VideoFilterConfig() {
        topology.n = 200;
        topology.input_scale = 0.1;
        reservoir.washout = 32;
    }
    void validate() const;
};

TaskReport task_video_filter(const VideoFilterConfig& cfg, std::uint64_t seed);

/// Temporal autoencoder: teach the reservoir a waveform through its feedback
/// path, then let it free-run on its own output and measure how long the
/// generated trajectory tracks the reference.
struct AutoencoderConfig {
    TopologyGen topology;        // inputs forced to 0, outputs to 1
    ReservoirParams reservoir;
    DeviceParams device;
    SignalSpec signal;           // double sinusoid by default
    long teach_len = 2000;
    long free_len = 600;
    double ridge = 1e-8;
    long nrmse_window = 300;     // free-run scoring window
    double epsilon = 0.3;        // divergence tolerance on |ref - out|
    long hold = 10;              // sustained steps defining divergence
    long inject_len = 20;        // corrective teacher steps after divergence
    long post_window = 100;      // scoring window after injection

    AutoencoderConfig() {
        // Free-running generation is much less forgiving than driven tasks:
        // the loop must sit well inside the contractive regime, and any noise
        // during teaching ends up as a floor on the readout fit that the
        // closed loop then amplifies. Hence the quieter, tamer defaults here.
        topology.n = 100;
        topology.fb_scale = 1.0;
        topology.spectral_radius = 0.6;
        signal.kind = SignalKind::double_sinusoid;
        reservoir.noise_gain = 0.0;
        reservoir.washout = 200;
    }
    void validate() const;
};

TaskReport task_autoencoder(const AutoencoderConfig& cfg, std::uint64_t seed);

/// Autoencoder on a caller-supplied series (must cover teach+free windows
/// plus washout; task_autoencoder generates it from cfg.signal).
TaskReport autoencoder_on_series(const AutoencoderConfig& cfg, const std::vector<double>& series,
                                 std::uint64_t seed);

}  // namespace rcsim
