#include "rcsim/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "rcsim/random.hpp"
#include "rcsim/readout.hpp"

namespace rcsim {

std::string summary_json(const TaskReport& report) {
    nlohmann::json j;
    j["task"] = report.task;
    j["seed"] = report.seed;
    nlohmann::json m = nlohmann::json::object();
    if (report.metrics.nrmse) m["nrmse"] = *report.metrics.nrmse;
    if (report.metrics.sign_agreement) m["sign_agreement"] = *report.metrics.sign_agreement;
    if (report.metrics.recovery_rate) m["recovery_rate"] = *report.metrics.recovery_rate;
    if (report.metrics.divergence_checked) {
        if (report.metrics.divergence_horizon)
            m["divergence_horizon"] = *report.metrics.divergence_horizon;
        else
            m["divergence_horizon"] = nullptr;
    }
    j["metrics"] = std::move(m);
    j["extra"] = report.extra;
    nlohmann::json names = nlohmann::json::array();
    for (const auto& [name, table] : report.traces) names.push_back(name);
    j["traces"] = std::move(names);
    return j.dump(2) + "\n";
}

namespace {

std::vector<double> to_vector(const Eigen::MatrixXd& row) {
    std::vector<double> v(static_cast<std::size_t>(row.cols()));
    for (long k = 0; k < row.cols(); ++k) v[static_cast<std::size_t>(k)] = row(0, k);
    return v;
}

}  // namespace

// ---------------------------------------------------------------- inverter

void InverterConfig::validate() const {
    topology.validate();
    reservoir.validate();
    device.validate();
    signal.validate();
    if (train_len < 2 || test_len < 2)
        throw std::invalid_argument("inverter: train_len and test_len must be >= 2");
    if (ridge < 0.0) throw std::invalid_argument("inverter: ridge must be >= 0");
    if (target_sign == 0.0) throw std::invalid_argument("inverter: target_sign must be nonzero");
    if (trace_neurons < 0) throw std::invalid_argument("inverter: trace_neurons must be >= 0");
}

TaskReport task_inverter(const InverterConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    TopologyGen gen = cfg.topology;
    gen.inputs = 1;
    gen.outputs = 1;
    Topology topo = generate_topology(gen, derive_seed(seed, "topology"));
    ReservoirEngine engine(topo, cfg.reservoir, cfg.device);

    const long washout = cfg.reservoir.washout;
    SignalSpec spec = cfg.signal;
    spec.length = washout + cfg.train_len + cfg.test_len;
    const std::vector<double> u = gen_signal(spec);

    Eigen::MatrixXd inputs(1, spec.length);
    for (long t = 0; t < spec.length; ++t) inputs(0, t) = u[static_cast<std::size_t>(t)];

    const RunResult rr = engine.run(inputs, NoFeedback{}, derive_seed(seed, "dynamics"));
    if (!rr.states.allFinite())
        throw std::runtime_error("inverter: reservoir diverged (non-finite states)");

    // State column k corresponds to input sample washout + k.
    const Eigen::MatrixXd train_states = rr.states.leftCols(cfg.train_len);
    const Eigen::MatrixXd test_states = rr.states.rightCols(cfg.test_len);
    Eigen::MatrixXd train_targets(1, cfg.train_len);
    for (long k = 0; k < cfg.train_len; ++k)
        train_targets(0, k) = cfg.target_sign * u[static_cast<std::size_t>(washout + k)];

    const ReadoutWeights w = train_readout(train_states, train_targets, cfg.ridge, seed);
    const Eigen::MatrixXd train_pred = w.w_out * train_states;
    const Eigen::MatrixXd test_pred = w.w_out * test_states;

    std::vector<double> test_ref(static_cast<std::size_t>(cfg.test_len));
    std::vector<double> test_in(static_cast<std::size_t>(cfg.test_len));
    for (long k = 0; k < cfg.test_len; ++k) {
        const double uk = u[static_cast<std::size_t>(washout + cfg.train_len + k)];
        test_in[static_cast<std::size_t>(k)] = uk;
        test_ref[static_cast<std::size_t>(k)] = cfg.target_sign * uk;
    }
    const std::vector<double> test_out = to_vector(test_pred);

    TaskReport rep;
    rep.task = "inverter";
    rep.seed = seed;
    rep.metrics.nrmse = robust_nrmse(test_ref, test_out);
    rep.metrics.sign_agreement = sign_agreement(test_ref, test_out);
    rep.extra["train_nrmse"] = robust_nrmse(to_vector(train_targets), to_vector(train_pred));
    rep.extra["spectral_radius"] = topo.spectral_radius;

    Table sig;
    sig.columns = {"input", "target", "output"};
    sig.data.resize(cfg.test_len, 3);
    for (long k = 0; k < cfg.test_len; ++k) {
        sig.data(k, 0) = test_in[static_cast<std::size_t>(k)];
        sig.data(k, 1) = test_ref[static_cast<std::size_t>(k)];
        sig.data(k, 2) = test_out[static_cast<std::size_t>(k)];
    }
    rep.traces.emplace_back("signals", std::move(sig));

    const int m = std::min<int>(cfg.trace_neurons, topo.n);
    if (m > 0) {
        // The neurons the trained readout leans on hardest; their responses
        // to the common input differ visibly.
        std::vector<int> order(static_cast<std::size_t>(topo.n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(w.w_out(0, a)) > std::abs(w.w_out(0, b));
        });
        Table neurons;
        neurons.data.resize(cfg.test_len, m);
        for (int c = 0; c < m; ++c) {
            const int idx = order[static_cast<std::size_t>(c)];
            neurons.columns.push_back("neuron_" + std::to_string(idx));
            for (long k = 0; k < cfg.test_len; ++k) neurons.data(k, c) = test_states(idx, k);
        }
        rep.traces.emplace_back("neurons", std::move(neurons));
    }
    return rep;
}

// ------------------------------------------------------------ video filter

void VideoFilterConfig::validate() const {
    topology.validate();
    reservoir.validate();
    device.validate();
    distortion.validate();
    if (glyphs.empty()) throw std::invalid_argument("video: glyph list is empty");
    if (frames_per_glyph < 1) throw std::invalid_argument("video: frames_per_glyph must be >= 1");
    if (train_frames < 2 || test_frames < 2)
        throw std::invalid_argument("video: train_frames and test_frames must be >= 2");
    if (ridge < 0.0) throw std::invalid_argument("video: ridge must be >= 0");
    if (!(pixel_thresh > 0.0 && pixel_thresh <= 1.0))
        throw std::invalid_argument("video: pixel_thresh must lie in (0, 1]");
}

namespace {

double frame_accuracy(const Frame& truth, const Frame& pred) {
    long agree = 0;
    for (long r = 0; r < truth.rows(); ++r)
        for (long c = 0; c < truth.cols(); ++c)
            if ((truth(r, c) > 0.5) == (pred(r, c) > 0.5)) ++agree;
    return static_cast<double>(agree) / static_cast<double>(truth.size());
}

}  // namespace

TaskReport task_video_filter(const VideoFilterConfig& cfg, std::uint64_t seed) {
    cfg.validate();

    std::vector<Frame> glyphs;
    glyphs.reserve(cfg.glyphs.size());
    for (const std::string& name : cfg.glyphs)
        glyphs.push_back(cfg.glyph_dir.empty() ? builtin_glyph(name)
                                                : load_glyph(cfg.glyph_dir + "/" + name + ".txt"));
    const long h = glyphs.front().rows();
    const long w0 = glyphs.front().cols();
    const long px = h * w0;

    TopologyGen gen = cfg.topology;
    gen.inputs = static_cast<int>(px);
    gen.outputs = static_cast<int>(px);
    Topology topo = generate_topology(gen, derive_seed(seed, "topology"));
    ReservoirEngine engine(topo, cfg.reservoir, cfg.device);

    const long washout = cfg.reservoir.washout;
    GlyphVideoSpec vs;
    vs.glyphs = glyphs;
    vs.frames_per_glyph = cfg.frames_per_glyph;
    vs.total_frames = washout + cfg.train_frames + cfg.test_frames;
    vs.distortion = cfg.distortion;
    vs.seed = derive_seed(seed, "video");
    const GlyphVideo video = make_video(vs);

    Eigen::MatrixXd inputs(px, vs.total_frames);
    for (long t = 0; t < vs.total_frames; ++t)
        inputs.col(t) = flatten_frame(video.distorted[static_cast<std::size_t>(t)]);

    const RunResult rr = engine.run(inputs, NoFeedback{}, derive_seed(seed, "dynamics"));
    if (!rr.states.allFinite())
        throw std::runtime_error("video: reservoir diverged (non-finite states)");

    const Eigen::MatrixXd train_states = rr.states.leftCols(cfg.train_frames);
    const Eigen::MatrixXd test_states = rr.states.rightCols(cfg.test_frames);
    Eigen::MatrixXd train_targets(px, cfg.train_frames);
    for (long k = 0; k < cfg.train_frames; ++k)
        train_targets.col(k) = flatten_frame(video.clean[static_cast<std::size_t>(washout + k)]);

    const ReadoutWeights w = train_readout(train_states, train_targets, cfg.ridge, seed);
    const Eigen::MatrixXd pred = w.w_out * test_states;

    const long test_start = washout + cfg.train_frames;
    std::vector<Frame> truth, recovered;
    truth.reserve(static_cast<std::size_t>(cfg.test_frames));
    recovered.reserve(static_cast<std::size_t>(cfg.test_frames));
    for (long k = 0; k < cfg.test_frames; ++k) {
        truth.push_back(video.clean[static_cast<std::size_t>(test_start + k)]);
        recovered.push_back(unflatten_frame(pred.col(k), h, w0));
    }

    TaskReport rep;
    rep.task = "video";
    rep.seed = seed;
    rep.metrics.recovery_rate = recovery_rate(truth, recovered, cfg.pixel_thresh);

    std::vector<double> acc(static_cast<std::size_t>(cfg.test_frames));
    for (long k = 0; k < cfg.test_frames; ++k)
        acc[static_cast<std::size_t>(k)] =
            frame_accuracy(truth[static_cast<std::size_t>(k)], recovered[static_cast<std::size_t>(k)]);
    rep.extra["mean_pixel_accuracy"] =
        std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(cfg.test_frames);

    // Transition lag: frames needed after each glyph change until the frame
    // clears the recovery threshold again.
    double lag_total = 0.0;
    long changes = 0;
    for (long k = 1; k < cfg.test_frames; ++k) {
        const std::size_t t = static_cast<std::size_t>(test_start + k);
        if (video.glyph_index[t] == video.glyph_index[t - 1]) continue;
        ++changes;
        long lag = cfg.frames_per_glyph;
        for (long j = 0; j < cfg.frames_per_glyph && k + j < cfg.test_frames; ++j) {
            if (acc[static_cast<std::size_t>(k + j)] >= cfg.pixel_thresh) {
                lag = j;
                break;
            }
        }
        lag_total += static_cast<double>(lag);
    }
    if (changes > 0) rep.extra["transition_lag_frames"] = lag_total / static_cast<double>(changes);

    Table trace;
    trace.columns = {"glyph", "accuracy", "recovered"};
    trace.data.resize(cfg.test_frames, 3);
    for (long k = 0; k < cfg.test_frames; ++k) {
        trace.data(k, 0) =
            static_cast<double>(video.glyph_index[static_cast<std::size_t>(test_start + k)]);
        trace.data(k, 1) = acc[static_cast<std::size_t>(k)];
        trace.data(k, 2) = acc[static_cast<std::size_t>(k)] >= cfg.pixel_thresh ? 1.0 : 0.0;
    }
    rep.traces.emplace_back("recovery", std::move(trace));
    return rep;
}

// ------------------------------------------------------------- autoencoder

void AutoencoderConfig::validate() const {
    topology.validate();
    reservoir.validate();
    device.validate();
    signal.validate();
    if (!(topology.fb_scale > 0.0))
        throw std::invalid_argument("autoencoder: fb_scale must be > 0 (feedback path required)");
    if (teach_len < 2) throw std::invalid_argument("autoencoder: teach_len must be >= 2");
    if (free_len < 2) throw std::invalid_argument("autoencoder: free_len must be >= 2");
    if (ridge < 0.0) throw std::invalid_argument("autoencoder: ridge must be >= 0");
    if (nrmse_window < 2) throw std::invalid_argument("autoencoder: nrmse_window must be >= 2");
    if (!(epsilon > 0.0)) throw std::invalid_argument("autoencoder: epsilon must be > 0");
    if (hold < 1) throw std::invalid_argument("autoencoder: hold must be >= 1");
    if (inject_len < 1) throw std::invalid_argument("autoencoder: inject_len must be >= 1");
    if (post_window < 2) throw std::invalid_argument("autoencoder: post_window must be >= 2");
}

TaskReport autoencoder_on_series(const AutoencoderConfig& cfg, const std::vector<double>& series,
                                 std::uint64_t seed) {
    cfg.validate();
    const long washout = cfg.reservoir.washout;
    const long t_teach = washout + cfg.teach_len;
    if (static_cast<long>(series.size()) < t_teach + cfg.free_len)
        throw std::invalid_argument("autoencoder: series shorter than washout+teach+free");

    TopologyGen gen = cfg.topology;
    gen.inputs = 0;
    gen.outputs = 1;
    Topology topo = generate_topology(gen, derive_seed(seed, "topology"));
    ReservoirEngine engine(topo, cfg.reservoir, cfg.device);

    const Eigen::VectorXd no_input(0);
    Eigen::VectorXd y_prev(1);

    // Phase 1: teacher forcing through the feedback path, no external input.
    ReservoirState state = engine.make_state();
    RandomStream rng(derive_seed(seed, "dynamics"));
    Eigen::MatrixXd states(topo.n, cfg.teach_len);
    for (long t = 0; t < t_teach; ++t) {
        y_prev(0) = t == 0 ? 0.0 : series[static_cast<std::size_t>(t - 1)];
        engine.step(state, no_input, y_prev, rng);
        if (t >= washout) states.col(t - washout) = state.current();
    }
    if (!states.allFinite())
        throw std::runtime_error("autoencoder: reservoir diverged during teaching");

    Eigen::MatrixXd targets(1, cfg.teach_len);
    for (long k = 0; k < cfg.teach_len; ++k)
        targets(0, k) = series[static_cast<std::size_t>(washout + k)];
    const ReadoutWeights w = train_readout(states, targets, cfg.ridge, seed);
    const Eigen::MatrixXd teach_pred = w.w_out * states;

    // Snapshot so the free run and the injection experiment replay the same
    // trajectory (state history and noise stream included).
    const ReservoirState snap = state;
    const RandomStream snap_rng = rng;

    // Phase 2: closed loop on its own output.
    std::vector<double> pred(static_cast<std::size_t>(cfg.free_len));
    std::vector<double> ref(static_cast<std::size_t>(cfg.free_len));
    {
        ReservoirState s = snap;
        RandomStream r = snap_rng;
        for (long k = 0; k < cfg.free_len; ++k) {
            y_prev(0) = (w.w_out * s.current())(0);
            engine.step(s, no_input, y_prev, r);
            pred[static_cast<std::size_t>(k)] = (w.w_out * s.current())(0);
            ref[static_cast<std::size_t>(k)] = series[static_cast<std::size_t>(t_teach + k)];
        }
    }

    TaskReport rep;
    rep.task = "autoencoder";
    rep.seed = seed;
    const long window = std::min(cfg.nrmse_window, cfg.free_len);
    rep.metrics.nrmse = robust_nrmse(
        std::vector<double>(ref.begin(), ref.begin() + window),
        std::vector<double>(pred.begin(), pred.begin() + window));
    rep.metrics.divergence_checked = true;
    rep.metrics.divergence_horizon = divergence_horizon(ref, pred, cfg.epsilon, cfg.hold);
    rep.extra["teach_nrmse"] = robust_nrmse(to_vector(targets), to_vector(teach_pred));
    rep.extra["spectral_radius"] = topo.spectral_radius;

    // Corrective injection: replay up to the confirmed divergence, force the
    // true signal back in briefly, then score a fresh free-running window.
    if (rep.metrics.divergence_horizon) {
        const long t_inj = *rep.metrics.divergence_horizon + cfg.hold;
        const long last_needed = t_teach + t_inj + cfg.inject_len + cfg.post_window;
        if (last_needed <= static_cast<long>(series.size())) {
            ReservoirState s = snap;
            RandomStream r = snap_rng;
            for (long k = 0; k < t_inj; ++k) {
                y_prev(0) = (w.w_out * s.current())(0);
                engine.step(s, no_input, y_prev, r);
            }
            for (long m = 0; m < cfg.inject_len; ++m) {
                y_prev(0) = series[static_cast<std::size_t>(t_teach + t_inj + m - 1)];
                engine.step(s, no_input, y_prev, r);
            }
            std::vector<double> post_pred(static_cast<std::size_t>(cfg.post_window));
            std::vector<double> post_ref(static_cast<std::size_t>(cfg.post_window));
            for (long m = 0; m < cfg.post_window; ++m) {
                y_prev(0) = (w.w_out * s.current())(0);
                engine.step(s, no_input, y_prev, r);
                post_pred[static_cast<std::size_t>(m)] = (w.w_out * s.current())(0);
                post_ref[static_cast<std::size_t>(m)] =
                    series[static_cast<std::size_t>(t_teach + t_inj + cfg.inject_len + m)];
            }
            rep.extra["injection_at"] = static_cast<double>(t_inj);
            rep.extra["post_injection_nrmse"] = robust_nrmse(post_ref, post_pred);
        }
    }

    Table trace;
    trace.columns = {"reference", "output"};
    trace.data.resize(cfg.free_len, 2);
    for (long k = 0; k < cfg.free_len; ++k) {
        trace.data(k, 0) = ref[static_cast<std::size_t>(k)];
        trace.data(k, 1) = pred[static_cast<std::size_t>(k)];
    }
    rep.traces.emplace_back("freerun", std::move(trace));
    return rep;
}

TaskReport task_autoencoder(const AutoencoderConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    SignalSpec spec = cfg.signal;
    // Room for the free run plus a worst-case injection replay.
    spec.length = cfg.reservoir.washout + cfg.teach_len + cfg.free_len + cfg.hold +
                  cfg.inject_len + cfg.post_window + 50;
    return autoencoder_on_series(cfg, gen_signal(spec), seed);
}

}  // namespace rcsim
