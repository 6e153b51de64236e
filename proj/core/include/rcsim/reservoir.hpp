#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rcsim/device.hpp"
#include "rcsim/readout.hpp"
#include "rcsim/topology.hpp"

namespace rcsim {

enum class ActivationBackend { ideal, asn };

const char* to_string(ActivationBackend b);
ActivationBackend backend_from_string(const std::string& s);

/// Dynamics constants of one reservoir. The discrete update is, per neuron,
///   x[t+1] = A( w_in*u[t+1] + sum_d W_d*x[t-d] + w_fb*y[t] - decay*x[t] + noise_gain*v )
/// with v a fresh standard-normal draw each step and A either
/// activation_gain*tanh (ideal) or the scaled device response (asn, which
/// carries its own noise; the noise_gain term is then dropped).
struct ReservoirParams {
    double activation_gain = 1.0;
    double noise_gain = 0.05;
    double decay = 0.3;
    double step = 1.0;  ///< logical step; fixed at 1
    int washout = 50;

    ActivationBackend backend = ActivationBackend::ideal;
    double voltage_scale = 0.2;  ///< volts per unit preactivation (asn backend)

    void validate() const;
};

/// Activation history ring: the current vector x[t] plus enough past vectors
/// to serve every delayed tap. Pre-history (entries before the first push)
/// reads as zero.
class ReservoirState {
public:
    ReservoirState() = default;
    ReservoirState(int n, int capacity);
    ReservoirState(int n, int capacity, const Eigen::VectorXd& x0);

    const Eigen::VectorXd& current() const { return ring_[head_]; }
    /// x[t - delay]; delay in [0, capacity-1].
    const Eigen::VectorXd& tap(int delay) const;
    void push(const Eigen::VectorXd& x);

    long t() const { return t_; }
    int size() const { return n_; }
    int capacity() const { return static_cast<int>(ring_.size()); }

private:
    std::vector<Eigen::VectorXd> ring_;
    int head_ = 0;
    int n_ = 0;
    long t_ = 0;
};

/// Feedback handling for a simulation run.
struct OpenLoop {
    Eigen::MatrixXd teacher;  ///< p x T, forced into the feedback path
    Eigen::VectorXd y0;       ///< feedback for the first step; zero if empty
};
struct ClosedLoop {
    ReadoutWeights w_out;  ///< y[t] = w_out * x[t], fed back each step
};
struct NoFeedback {
    std::optional<ReadoutWeights> w_out;  ///< outputs computed when present
};
using RunMode = std::variant<OpenLoop, ClosedLoop, NoFeedback>;

struct RunResult {
    Eigen::MatrixXd states;   ///< n x kept, kept = steps - washout
    Eigen::MatrixXd outputs;  ///< p x kept, aligned with states
};

struct EchoStateReport {
    bool converged = false;  ///< all trials converged
    double final_gap = 0.0;  ///< worst final max-norm gap across trials
    int converged_trials = 0;
    int trials = 0;
};

/// Immutable stepping engine binding one topology to one parameter set.
/// Recurrent edges are grouped by delay into sparse matrices at
/// construction, so a step is a handful of sparse mat-vecs.
class ReservoirEngine {
public:
    ReservoirEngine(Topology topo, ReservoirParams params, DeviceParams device = {});

    const Topology& topology() const { return topo_; }
    const ReservoirParams& params() const { return params_; }
    const DeviceParams& device() const { return device_; }

    ReservoirState make_state() const;
    ReservoirState make_state(const Eigen::VectorXd& x0) const;

    /// Advance one step. Consumes exactly n normal draws from the stream
    /// regardless of backend or noise gain, so trajectories with different
    /// noise settings stay aligned on the same stream.
    void step(ReservoirState& state, const Eigen::VectorXd& u_next,
              const Eigen::VectorXd& y_prev, RandomStream& rng) const;

    /// Run from a fresh zero state with a fresh stream; washout from params.
    RunResult run(const Eigen::MatrixXd& inputs, const RunMode& mode, std::uint64_t seed) const;

    /// Continuation form: advances `state` in place using `rng`. When
    /// `inputs` has zero columns, `steps` zero-input steps are taken;
    /// otherwise steps = inputs.cols(). The first `washout` steps are
    /// dropped from the harvested result.
    RunResult run(const Eigen::MatrixXd& inputs, int steps, const RunMode& mode,
                  ReservoirState& state, RandomStream& rng, int washout) const;

    /// Fading-memory diagnostic: per trial, two random initial states are
    /// stepped under an identical random input drive with all noise off;
    /// a trial converges when the state gap max-norm falls below tol
    /// within `horizon` steps.
    EchoStateReport echo_state_check(int trials, int horizon, double tol, std::uint64_t seed,
                                     double drive_amplitude = 1.0) const;

private:
    Topology topo_;
    ReservoirParams params_;
    DeviceParams device_;
    int history_capacity_ = 1;
    // (delay, weights-at-that-delay) buckets, ascending delay.
    std::vector<std::pair<int, Eigen::SparseMatrix<double>>> delay_buckets_;

    void apply_activation(const Eigen::VectorXd& pre, Eigen::VectorXd& out,
                          RandomStream& rng) const;
};

}  // namespace rcsim
