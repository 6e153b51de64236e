#include "pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "rcsim/glyphs.hpp"
#include "rcsim/metrics.hpp"
#include "rcsim/random.hpp"
#include "rcsim/readout.hpp"
#include "rcsim/reservoir.hpp"
#include "rcsim/signals.hpp"

namespace rcsim::cli {

namespace {

long pixel_count(const VideoFilterConfig& cfg) {
    const Frame g = cfg.glyph_dir.empty()
                        ? builtin_glyph(cfg.glyphs.at(0))
                        : load_glyph(cfg.glyph_dir + "/" + cfg.glyphs.at(0) + ".txt");
    return g.size();
}

std::vector<Frame> task_glyphs(const VideoFilterConfig& cfg) {
    std::vector<Frame> glyphs;
    for (const std::string& name : cfg.glyphs)
        glyphs.push_back(cfg.glyph_dir.empty() ? builtin_glyph(name)
                                               : load_glyph(cfg.glyph_dir + "/" + name + ".txt"));
    return glyphs;
}

Eigen::MatrixXd signal_inputs(const SignalSpec& spec) {
    const std::vector<double> u = gen_signal(spec);
    Eigen::MatrixXd inputs(1, spec.length);
    for (long t = 0; t < spec.length; ++t) inputs(0, t) = u[static_cast<std::size_t>(t)];
    return inputs;
}

GlyphVideo task_video(const VideoFilterConfig& cfg, long total_frames, std::uint64_t seed) {
    GlyphVideoSpec vs;
    vs.glyphs = task_glyphs(cfg);
    vs.frames_per_glyph = cfg.frames_per_glyph;
    vs.total_frames = total_frames;
    vs.distortion = cfg.distortion;
    vs.seed = seed;
    return make_video(vs);
}

Eigen::MatrixXd flatten_video(const std::vector<Frame>& frames, long from, long count) {
    Eigen::MatrixXd m(frames.at(static_cast<std::size_t>(from)).size(), count);
    for (long k = 0; k < count; ++k)
        m.col(k) = flatten_frame(frames[static_cast<std::size_t>(from + k)]);
    return m;
}

/// Teacher-force a feedback-only reservoir along `series` and return the
/// states for steps [washout, washout+count).
Eigen::MatrixXd teacher_states(const ReservoirEngine& engine, const std::vector<double>& series,
                               long washout, long count, RandomStream& rng,
                               ReservoirState& state) {
    const Eigen::VectorXd no_input(0);
    Eigen::VectorXd y_prev(1);
    Eigen::MatrixXd states(state.size(), count);
    for (long t = 0; t < washout + count; ++t) {
        y_prev(0) = t == 0 ? 0.0 : series[static_cast<std::size_t>(t - 1)];
        engine.step(state, no_input, y_prev, rng);
        if (t >= washout) states.col(t - washout) = state.current();
    }
    return states;
}

}  // namespace

ModelFile gen_model(const RunConfig& cfg, std::uint64_t seed) {
    ModelFile model;
    TopologyGen gen = cfg.model.topology;
    model.device = cfg.model.device;
    model.reservoir = cfg.model.reservoir;
    if (cfg.task == "inverter") {
        gen = cfg.inverter.topology;
        gen.inputs = 1;
        gen.outputs = 1;
        model.device = cfg.inverter.device;
        model.reservoir = cfg.inverter.reservoir;
    } else if (cfg.task == "video") {
        gen = cfg.video.topology;
        gen.inputs = static_cast<int>(pixel_count(cfg.video));
        gen.outputs = gen.inputs;
        model.device = cfg.video.device;
        model.reservoir = cfg.video.reservoir;
    } else if (cfg.task == "autoencoder") {
        gen = cfg.autoencoder.topology;
        gen.inputs = 0;
        gen.outputs = 1;
        model.device = cfg.autoencoder.device;
        model.reservoir = cfg.autoencoder.reservoir;
    }
    model.topology = generate_topology(gen, derive_seed(seed, "topology"));
    return model;
}

void train_model(ModelFile& model, const RunConfig& cfg, std::uint64_t seed) {
    model.validate();
    const ReservoirEngine engine(model.topology, model.reservoir, model.device);
    const long washout = model.reservoir.washout;

    if (cfg.task == "inverter") {
        if (model.topology.inputs != 1 || model.topology.outputs != 1)
            throw std::runtime_error("train: inverter needs a 1-input 1-output model");
        SignalSpec spec = cfg.inverter.signal;
        spec.length = washout + cfg.inverter.train_len;
        const Eigen::MatrixXd inputs = signal_inputs(spec);
        const RunResult rr = engine.run(inputs, NoFeedback{}, derive_seed(seed, "dynamics"));
        Eigen::MatrixXd targets(1, cfg.inverter.train_len);
        for (long k = 0; k < cfg.inverter.train_len; ++k)
            targets(0, k) = cfg.inverter.target_sign * inputs(0, washout + k);
        model.readout = train_readout(rr.states, targets, cfg.inverter.ridge, seed);
    } else if (cfg.task == "video") {
        const long px = pixel_count(cfg.video);
        if (model.topology.inputs != px || model.topology.outputs != px)
            throw std::runtime_error("train: video model dimensions do not match the glyphs");
        const long total = washout + cfg.video.train_frames;
        const GlyphVideo video = task_video(cfg.video, total, derive_seed(seed, "video"));
        const Eigen::MatrixXd inputs = flatten_video(video.distorted, 0, total);
        const RunResult rr = engine.run(inputs, NoFeedback{}, derive_seed(seed, "dynamics"));
        const Eigen::MatrixXd targets =
            flatten_video(video.clean, washout, cfg.video.train_frames);
        model.readout = train_readout(rr.states, targets, cfg.video.ridge, seed);
    } else if (cfg.task == "autoencoder") {
        if (model.topology.inputs != 0 || model.topology.outputs != 1)
            throw std::runtime_error("train: autoencoder needs a feedback-only 1-output model");
        SignalSpec spec = cfg.autoencoder.signal;
        spec.length = washout + cfg.autoencoder.teach_len;
        const std::vector<double> series = gen_signal(spec);
        ReservoirState state = engine.make_state();
        RandomStream rng(derive_seed(seed, "dynamics"));
        const Eigen::MatrixXd states =
            teacher_states(engine, series, washout, cfg.autoencoder.teach_len, rng, state);
        Eigen::MatrixXd targets(1, cfg.autoencoder.teach_len);
        for (long k = 0; k < cfg.autoencoder.teach_len; ++k)
            targets(0, k) = series[static_cast<std::size_t>(washout + k)];
        model.readout = train_readout(states, targets, cfg.autoencoder.ridge, seed);
    } else {
        throw std::runtime_error("train: unknown task '" + cfg.task + "'");
    }
}

Table run_model(const ModelFile& model, const RunConfig& cfg, std::uint64_t seed, long steps) {
    model.validate();
    const ReservoirEngine engine(model.topology, model.reservoir, model.device);
    const long washout = model.reservoir.washout;
    Table table;

    if (cfg.task == "inverter") {
        if (steps <= 0) steps = cfg.inverter.test_len;
        SignalSpec spec = cfg.inverter.signal;
        spec.length = washout + steps;
        const Eigen::MatrixXd inputs = signal_inputs(spec);
        NoFeedback mode;
        if (model.readout) mode.w_out = *model.readout;
        const RunResult rr = engine.run(inputs, mode, derive_seed(seed, "dynamics"));
        table.columns = {"input", "output"};
        table.data.resize(steps, 2);
        for (long k = 0; k < steps; ++k) {
            table.data(k, 0) = inputs(0, washout + k);
            table.data(k, 1) = rr.outputs(0, k);
        }
    } else if (cfg.task == "video") {
        if (steps <= 0) steps = cfg.video.test_frames;
        const long total = washout + steps;
        const GlyphVideo video = task_video(cfg.video, total, derive_seed(seed, "video"));
        const Eigen::MatrixXd inputs = flatten_video(video.distorted, 0, total);
        NoFeedback mode;
        if (model.readout) mode.w_out = *model.readout;
        const RunResult rr = engine.run(inputs, mode, derive_seed(seed, "dynamics"));
        table.columns.reserve(static_cast<std::size_t>(rr.outputs.rows()));
        for (long p = 0; p < rr.outputs.rows(); ++p)
            table.columns.push_back("pixel_" + std::to_string(p));
        table.data = rr.outputs.transpose();
    } else if (cfg.task == "autoencoder") {
        if (!model.readout)
            throw std::runtime_error("run: closed-loop run needs a trained readout");
        if (steps <= 0) steps = cfg.autoencoder.free_len;
        // Warm along the reference signal, then let the loop run free.
        const long warm = washout + std::min<long>(cfg.autoencoder.teach_len, 500);
        SignalSpec spec = cfg.autoencoder.signal;
        spec.length = warm + steps;
        const std::vector<double> series = gen_signal(spec);
        ReservoirState state = engine.make_state();
        RandomStream rng(derive_seed(seed, "dynamics"));
        const Eigen::VectorXd no_input(0);
        Eigen::VectorXd y_prev(1);
        for (long t = 0; t < warm; ++t) {
            y_prev(0) = t == 0 ? 0.0 : series[static_cast<std::size_t>(t - 1)];
            engine.step(state, no_input, y_prev, rng);
        }
        table.columns = {"reference", "output"};
        table.data.resize(steps, 2);
        for (long k = 0; k < steps; ++k) {
            y_prev(0) = (model.readout->w_out * state.current())(0);
            engine.step(state, no_input, y_prev, rng);
            table.data(k, 0) = series[static_cast<std::size_t>(warm + k)];
            table.data(k, 1) = (model.readout->w_out * state.current())(0);
        }
    } else {
        throw std::runtime_error("run: unknown task '" + cfg.task + "'");
    }
    return table;
}

TaskReport eval_model(const ModelFile& model, const RunConfig& cfg, std::uint64_t seed) {
    model.validate();
    if (!model.readout) throw std::runtime_error("eval: model has no trained readout");
    const ReservoirEngine engine(model.topology, model.reservoir, model.device);
    const long washout = model.reservoir.washout;

    TaskReport rep;
    rep.seed = seed;

    if (cfg.task == "inverter") {
        rep.task = "inverter";
        // Score on the continuation past the training window.
        SignalSpec spec = cfg.inverter.signal;
        spec.length = washout + cfg.inverter.train_len + cfg.inverter.test_len;
        const Eigen::MatrixXd inputs = signal_inputs(spec);
        NoFeedback mode;
        mode.w_out = *model.readout;
        const RunResult rr = engine.run(inputs, mode, derive_seed(seed, "dynamics"));
        std::vector<double> ref(static_cast<std::size_t>(cfg.inverter.test_len));
        std::vector<double> out(static_cast<std::size_t>(cfg.inverter.test_len));
        const long start = cfg.inverter.train_len;
        for (long k = 0; k < cfg.inverter.test_len; ++k) {
            ref[static_cast<std::size_t>(k)] =
                cfg.inverter.target_sign * inputs(0, washout + start + k);
            out[static_cast<std::size_t>(k)] = rr.outputs(0, start + k);
        }
        rep.metrics.nrmse = robust_nrmse(ref, out);
        rep.metrics.sign_agreement = sign_agreement(ref, out);
    } else if (cfg.task == "video") {
        rep.task = "video";
        const long total = washout + cfg.video.test_frames;
        const GlyphVideo video = task_video(cfg.video, total, derive_seed(seed, "video-eval"));
        const Eigen::MatrixXd inputs = flatten_video(video.distorted, 0, total);
        NoFeedback mode;
        mode.w_out = *model.readout;
        const RunResult rr = engine.run(inputs, mode, derive_seed(seed, "dynamics"));
        const long h = video.clean.front().rows();
        const long w0 = video.clean.front().cols();
        std::vector<Frame> truth, recovered;
        for (long k = 0; k < cfg.video.test_frames; ++k) {
            truth.push_back(video.clean[static_cast<std::size_t>(washout + k)]);
            recovered.push_back(unflatten_frame(rr.outputs.col(k), h, w0));
        }
        rep.metrics.recovery_rate = recovery_rate(truth, recovered, cfg.video.pixel_thresh);
    } else if (cfg.task == "autoencoder") {
        rep.task = "autoencoder";
        SignalSpec spec = cfg.autoencoder.signal;
        spec.length = washout + cfg.autoencoder.teach_len + cfg.autoencoder.free_len;
        const std::vector<double> series = gen_signal(spec);
        ReservoirState state = engine.make_state();
        RandomStream rng(derive_seed(seed, "dynamics"));
        teacher_states(engine, series, washout, cfg.autoencoder.teach_len, rng, state);
        const long t_teach = washout + cfg.autoencoder.teach_len;
        const Eigen::VectorXd no_input(0);
        Eigen::VectorXd y_prev(1);
        std::vector<double> ref(static_cast<std::size_t>(cfg.autoencoder.free_len));
        std::vector<double> out(static_cast<std::size_t>(cfg.autoencoder.free_len));
        for (long k = 0; k < cfg.autoencoder.free_len; ++k) {
            y_prev(0) = (model.readout->w_out * state.current())(0);
            engine.step(state, no_input, y_prev, rng);
            ref[static_cast<std::size_t>(k)] = series[static_cast<std::size_t>(t_teach + k)];
            out[static_cast<std::size_t>(k)] = (model.readout->w_out * state.current())(0);
        }
        const long window = std::min(cfg.autoencoder.nrmse_window, cfg.autoencoder.free_len);
        rep.metrics.nrmse =
            robust_nrmse(std::vector<double>(ref.begin(), ref.begin() + window),
                         std::vector<double>(out.begin(), out.begin() + window));
        rep.metrics.divergence_checked = true;
        rep.metrics.divergence_horizon =
            divergence_horizon(ref, out, cfg.autoencoder.epsilon, cfg.autoencoder.hold);
    } else {
        throw std::runtime_error("eval: unknown task '" + cfg.task + "'");
    }
    return rep;
}

TaskReport run_demo(const RunConfig& cfg, const std::string& task, std::uint64_t seed) {
    if (task == "inverter") return task_inverter(cfg.inverter, seed);
    if (task == "video") return task_video_filter(cfg.video, seed);
    if (task == "autoencoder") return task_autoencoder(cfg.autoencoder, seed);
    throw std::runtime_error("demo: unknown task '" + task + "'");
}

void write_report(const TaskReport& report, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    {
        const std::string path = outdir + "/summary.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << summary_json(report);
    }
    for (const auto& [name, table] : report.traces) emit_csv(table, outdir + "/" + name + ".csv");
}

std::string report_line(const TaskReport& report) {
    std::string line = report.task + " seed=" + std::to_string(report.seed);
    if (report.metrics.nrmse) line += " nrmse=" + format_double(*report.metrics.nrmse);
    if (report.metrics.sign_agreement)
        line += " sign_agreement=" + format_double(*report.metrics.sign_agreement);
    if (report.metrics.recovery_rate)
        line += " recovery_rate=" + format_double(*report.metrics.recovery_rate);
    if (report.metrics.divergence_checked) {
        line += " divergence_horizon=";
        line += report.metrics.divergence_horizon
                    ? std::to_string(*report.metrics.divergence_horizon)
                    : std::string("none");
    }
    return line;
}

}  // namespace rcsim::cli
