#include "rcsim/reservoir.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rcsim {

const char* to_string(ActivationBackend b) {
    switch (b) {
        case ActivationBackend::ideal: return "ideal";
        case ActivationBackend::asn: return "asn";
    }
    throw std::logic_error("ActivationBackend: unknown value");
}

ActivationBackend backend_from_string(const std::string& s) {
    if (s == "ideal") return ActivationBackend::ideal;
    if (s == "asn") return ActivationBackend::asn;
    throw std::invalid_argument("ActivationBackend: unknown name '" + s + "'");
}

void ReservoirParams::validate() const {
    if (!(activation_gain > 0.0))
        throw std::invalid_argument("ReservoirParams: activation_gain must be > 0");
    if (!(noise_gain >= 0.0)) throw std::invalid_argument("ReservoirParams: noise_gain must be >= 0");
    if (!(decay >= 0.0 && decay <= 1.0))
        throw std::invalid_argument("ReservoirParams: decay must be in [0, 1]");
    if (step != 1.0) throw std::invalid_argument("ReservoirParams: step is fixed at 1");
    if (washout < 0) throw std::invalid_argument("ReservoirParams: washout must be >= 0");
    if (backend == ActivationBackend::asn && !(voltage_scale > 0.0))
        throw std::invalid_argument("ReservoirParams: voltage_scale must be > 0 for asn backend");
}

ReservoirState::ReservoirState(int n, int capacity)
    : ReservoirState(n, capacity, Eigen::VectorXd::Zero(n)) {}

ReservoirState::ReservoirState(int n, int capacity, const Eigen::VectorXd& x0) : n_(n) {
    if (n < 1) throw std::invalid_argument("ReservoirState: n must be >= 1");
    if (capacity < 1) throw std::invalid_argument("ReservoirState: capacity must be >= 1");
    if (x0.size() != n) throw std::invalid_argument("ReservoirState: x0 has wrong dimension");
    ring_.assign(capacity, Eigen::VectorXd::Zero(n));
    head_ = 0;
    ring_[head_] = x0;
}

const Eigen::VectorXd& ReservoirState::tap(int delay) const {
    if (delay < 0 || delay >= capacity())
        throw std::out_of_range("ReservoirState::tap: delay outside history");
    return ring_[(head_ + capacity() - delay) % capacity()];
}

void ReservoirState::push(const Eigen::VectorXd& x) {
    if (x.size() != n_) throw std::invalid_argument("ReservoirState::push: wrong dimension");
    head_ = (head_ + 1) % capacity();
    ring_[head_] = x;
    ++t_;
}

ReservoirEngine::ReservoirEngine(Topology topo, ReservoirParams params, DeviceParams device)
    : topo_(std::move(topo)), params_(params), device_(device) {
    topo_.validate();
    params_.validate();
    device_.validate();
    history_capacity_ = topo_.max_delay() + 1;

    std::map<int, std::vector<Eigen::Triplet<double>>> buckets;
    for (int i = 0; i < topo_.n; ++i)
        for (int j = 0; j < topo_.n; ++j)
            if (topo_.w_self(i, j) != 0.0)
                buckets[topo_.delays(i, j)].emplace_back(i, j, topo_.w_self(i, j));
    for (auto& [delay, triplets] : buckets) {
        Eigen::SparseMatrix<double> w(topo_.n, topo_.n);
        w.setFromTriplets(triplets.begin(), triplets.end());
        w.makeCompressed();
        delay_buckets_.emplace_back(delay, std::move(w));
    }
}

ReservoirState ReservoirEngine::make_state() const {
    return ReservoirState(topo_.n, history_capacity_);
}

ReservoirState ReservoirEngine::make_state(const Eigen::VectorXd& x0) const {
    return ReservoirState(topo_.n, history_capacity_, x0);
}

void ReservoirEngine::apply_activation(const Eigen::VectorXd& pre, Eigen::VectorXd& out,
                                       RandomStream& rng) const {
    const double gain = params_.activation_gain;
    if (params_.backend == ActivationBackend::ideal) {
        Eigen::VectorXd noisy = pre;
        for (int i = 0; i < noisy.size(); ++i) noisy(i) += params_.noise_gain * rng.normal();
        out = gain * noisy.array().tanh();
    } else {
        // Device units: preactivation mapped to volts, response mapped back
        // so that a noise-free cell with voltage_scale*slope_beta == 1
        // reproduces the ideal tanh exactly.
        const double to_units = 2.0 * gain / device_.v_dd;
        out.resize(pre.size());
        for (int i = 0; i < pre.size(); ++i)
            out(i) = to_units * asn_response(params_.voltage_scale * pre(i), device_, rng);
    }
}

void ReservoirEngine::step(ReservoirState& state, const Eigen::VectorXd& u_next,
                           const Eigen::VectorXd& y_prev, RandomStream& rng) const {
    if (state.size() != topo_.n || state.capacity() < history_capacity_)
        throw std::invalid_argument("step: state does not match topology");
    if (u_next.size() != topo_.inputs) throw std::invalid_argument("step: input dimension mismatch");
    if (y_prev.size() != topo_.outputs)
        throw std::invalid_argument("step: feedback dimension mismatch");

    Eigen::VectorXd pre = -params_.decay * state.current();
    if (topo_.inputs > 0) pre.noalias() += topo_.w_in * u_next;
    if (topo_.outputs > 0) pre.noalias() += topo_.w_fb * y_prev;
    for (const auto& [delay, w] : delay_buckets_) pre.noalias() += w * state.tap(delay);

    Eigen::VectorXd x_next;
    apply_activation(pre, x_next, rng);
    state.push(x_next);
}

RunResult ReservoirEngine::run(const Eigen::MatrixXd& inputs, const RunMode& mode,
                               std::uint64_t seed) const {
    ReservoirState state = make_state();
    RandomStream rng(seed);
    return run(inputs, static_cast<int>(inputs.cols()), mode, state, rng, params_.washout);
}

RunResult ReservoirEngine::run(const Eigen::MatrixXd& inputs, int steps, const RunMode& mode,
                               ReservoirState& state, RandomStream& rng, int washout) const {
    const int T = inputs.cols() > 0 ? static_cast<int>(inputs.cols()) : steps;
    if (T < 0) throw std::invalid_argument("run: negative step count");
    if (inputs.cols() > 0 && inputs.rows() != topo_.inputs)
        throw std::invalid_argument("run: input dimension mismatch");
    if (inputs.cols() > 0 && steps != T) throw std::invalid_argument("run: steps != inputs.cols()");
    if (washout < 0) washout = 0;

    const int p = topo_.outputs;
    if (const auto* open = std::get_if<OpenLoop>(&mode)) {
        if (open->teacher.cols() != T)
            throw std::invalid_argument("run: teacher length must equal run length");
        if (open->teacher.rows() != p)
            throw std::invalid_argument("run: teacher dimension mismatch");
        if (open->y0.size() != 0 && open->y0.size() != p)
            throw std::invalid_argument("run: y0 dimension mismatch");
    } else if (const auto* closed = std::get_if<ClosedLoop>(&mode)) {
        if (closed->w_out.empty())
            throw std::invalid_argument("run: closed loop requires trained readout weights");
        if (closed->w_out.w_out.rows() != p || closed->w_out.w_out.cols() != topo_.n)
            throw std::invalid_argument("run: readout shape does not match reservoir");
    } else if (const auto* nofb = std::get_if<NoFeedback>(&mode)) {
        if (nofb->w_out && !nofb->w_out->empty() &&
            (nofb->w_out->w_out.rows() != p || nofb->w_out->w_out.cols() != topo_.n))
            throw std::invalid_argument("run: readout shape does not match reservoir");
    }

    const int kept = std::max(0, T - washout);
    RunResult result;
    result.states.resize(topo_.n, kept);
    result.outputs.resize(p, kept);

    const Eigen::VectorXd zero_u = Eigen::VectorXd::Zero(topo_.inputs);
    const Eigen::VectorXd zero_y = Eigen::VectorXd::Zero(p);

    for (int k = 0; k < T; ++k) {
        const Eigen::VectorXd u = inputs.cols() > 0 ? inputs.col(k).eval() : zero_u;

        Eigen::VectorXd y_prev = zero_y;
        if (const auto* open = std::get_if<OpenLoop>(&mode)) {
            if (k == 0) {
                if (open->y0.size() > 0) y_prev = open->y0;
            } else {
                y_prev = open->teacher.col(k - 1);
            }
        } else if (const auto* closed = std::get_if<ClosedLoop>(&mode)) {
            y_prev = closed->w_out.w_out * state.current();
        }

        step(state, u, y_prev, rng);

        if (k >= washout) {
            const int col = k - washout;
            result.states.col(col) = state.current();
            if (const auto* open = std::get_if<OpenLoop>(&mode)) {
                result.outputs.col(col) = open->teacher.col(k);
            } else if (const auto* closed = std::get_if<ClosedLoop>(&mode)) {
                result.outputs.col(col) = closed->w_out.w_out * state.current();
            } else {
                const auto& nofb = std::get<NoFeedback>(mode);
                result.outputs.col(col) = (nofb.w_out && !nofb.w_out->empty())
                                              ? (nofb.w_out->w_out * state.current()).eval()
                                              : zero_y;
            }
        }
    }
    return result;
}

EchoStateReport ReservoirEngine::echo_state_check(int trials, int horizon, double tol,
                                                  std::uint64_t seed,
                                                  double drive_amplitude) const {
    if (trials < 1) throw std::invalid_argument("echo_state_check: trials must be >= 1");
    if (horizon < 1) throw std::invalid_argument("echo_state_check: horizon must be >= 1");

    // Noise off for the diagnostic; this probes the deterministic contraction.
    ReservoirParams quiet = params_;
    quiet.noise_gain = 0.0;
    DeviceParams quiet_dev = device_;
    quiet_dev.noise_amp_alpha = 0.0;
    ReservoirEngine probe(topo_, quiet, quiet_dev);

    EchoStateReport report;
    report.trials = trials;
    const double g = params_.activation_gain;
    const Eigen::VectorXd zero_y = Eigen::VectorXd::Zero(topo_.outputs);

    for (int trial = 0; trial < trials; ++trial) {
        RandomStream init_rng(derive_seed(seed, "esc-init", trial));
        Eigen::VectorXd xa(topo_.n), xb(topo_.n);
        for (int i = 0; i < topo_.n; ++i) xa(i) = init_rng.uniform(-g, g);
        for (int i = 0; i < topo_.n; ++i) xb(i) = init_rng.uniform(-g, g);

        RandomStream drive_rng(derive_seed(seed, "esc-drive", trial));
        ReservoirState sa = probe.make_state(xa);
        ReservoirState sb = probe.make_state(xb);
        // Streams are consumed but unused with noise off; one per trajectory
        // keeps them independent of each other.
        RandomStream na(derive_seed(seed, "esc-noise-a", trial));
        RandomStream nb(derive_seed(seed, "esc-noise-b", trial));

        // Converged means the gap is still below tol at the END of the
        // horizon. An instantaneous dip does not count: with decay 0 the very
        // first step depends only on the shared drive and the zero
        // pre-history, so the gap momentarily collapses before the initial
        // conditions re-enter through the delayed taps.
        double gap = (xa - xb).lpNorm<Eigen::Infinity>();
        Eigen::VectorXd u(topo_.inputs);
        for (int k = 0; k < horizon; ++k) {
            for (int i = 0; i < topo_.inputs; ++i)
                u(i) = drive_rng.uniform(-drive_amplitude, drive_amplitude);
            probe.step(sa, u, zero_y, na);
            probe.step(sb, u, zero_y, nb);
            gap = (sa.current() - sb.current()).lpNorm<Eigen::Infinity>();
        }
        if (gap < tol) ++report.converged_trials;
        report.final_gap = std::max(report.final_gap, gap);
    }
    report.converged = report.converged_trials == trials;
    return report;
}

}  // namespace rcsim
