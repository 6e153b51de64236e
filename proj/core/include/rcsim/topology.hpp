#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace rcsim {

/// Fixed wiring of one reservoir: input, recurrent and feedback weights plus
/// the integer transport delay (in steps) of every recurrent edge.
///
/// delays(i, j) is meaningful only where w_self(i, j) != 0 and lies in
/// [1, d_max] there; absent edges carry delay 0.
struct Topology {
    int n = 0;        ///< neuron count
    int inputs = 0;   ///< input dimension m
    int outputs = 0;  ///< feedback/output dimension p
    int d_max = 10;   ///< delay clamp used at generation time

    Eigen::MatrixXd w_in;    ///< n x m
    Eigen::MatrixXd w_self;  ///< n x n, sparsity set by connectivity
    Eigen::MatrixXd w_fb;    ///< n x p
    Eigen::MatrixXi delays;  ///< n x n, steps

    double spectral_radius = 0.0;  ///< measured on w_self after rescaling
    std::uint64_t seed = 0;        ///< seed the topology was generated from

    int max_delay() const;
    void validate() const;  ///< throws std::invalid_argument on inconsistency
};

/// Generation knobs for a random reservoir wiring.
struct TopologyGen {
    int n = 25;
    int inputs = 1;
    int outputs = 1;
    double connectivity = 0.2;     ///< probability of each recurrent edge
    double spectral_radius = 0.9;  ///< target after rescaling
    double input_scale = 0.5;      ///< w_in ~ U[-input_scale, input_scale]
    double fb_scale = 0.0;         ///< w_fb ~ U[-fb_scale, fb_scale]
    double tau0 = 1.0;             ///< delay of the strongest edge, in steps
    int d_max = 10;                ///< delay clamp

    void validate() const;
};

/// Largest eigenvalue modulus of a square matrix.
double spectral_radius_of(const Eigen::MatrixXd& m);

/// Per-edge transport delays from connection strength: a weaker connection
/// means a higher-impedance line and a longer delay,
///   delay(i,j) = clamp(round(tau0 * w_max / |w(i,j)|), 1, d_max)
/// on nonzero edges, 0 elsewhere.
Eigen::MatrixXi compute_delays(const Eigen::MatrixXd& w_self, double tau0, int d_max);

/// Draw a random topology, reproducible from the seed. Recurrent entries are
/// nonzero with probability `connectivity`, uniform in [-1, 1], then rescaled
/// so the measured spectral radius equals the target. An all-zero (or
/// nilpotent) draw is redrawn a bounded number of times before failing.
Topology generate_topology(const TopologyGen& gen, std::uint64_t seed);

}  // namespace rcsim
