#include "rcsim/topology.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "rcsim/random.hpp"

namespace rcsim {

int Topology::max_delay() const {
    int d = 0;
    for (int i = 0; i < delays.rows(); ++i)
        for (int j = 0; j < delays.cols(); ++j) d = std::max(d, delays(i, j));
    return d;
}

void Topology::validate() const {
    if (n < 1) throw std::invalid_argument("Topology: n must be >= 1");
    if (inputs < 0 || outputs < 0) throw std::invalid_argument("Topology: negative dimension");
    if (w_self.rows() != n || w_self.cols() != n)
        throw std::invalid_argument("Topology: w_self must be n x n");
    if (w_in.rows() != n || w_in.cols() != inputs)
        throw std::invalid_argument("Topology: w_in must be n x inputs");
    if (w_fb.rows() != n || w_fb.cols() != outputs)
        throw std::invalid_argument("Topology: w_fb must be n x outputs");
    if (delays.rows() != n || delays.cols() != n)
        throw std::invalid_argument("Topology: delays must be n x n");
    if (!w_self.allFinite() || !w_in.allFinite() || !w_fb.allFinite())
        throw std::invalid_argument("Topology: non-finite weight");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int d = delays(i, j);
            if (w_self(i, j) != 0.0) {
                if (d < 1 || d > d_max)
                    throw std::invalid_argument("Topology: edge delay outside [1, d_max]");
            } else if (d != 0) {
                throw std::invalid_argument("Topology: delay on absent edge");
            }
        }
    if (!std::isfinite(spectral_radius))
        throw std::invalid_argument("Topology: non-finite spectral radius");
}

void TopologyGen::validate() const {
    if (n < 1) throw std::invalid_argument("TopologyGen: n must be >= 1");
    if (inputs < 0 || outputs < 0) throw std::invalid_argument("TopologyGen: negative dimension");
    if (!(connectivity > 0.0 && connectivity <= 1.0))
        throw std::invalid_argument("TopologyGen: connectivity must be in (0, 1]");
    if (!(spectral_radius > 0.0))
        throw std::invalid_argument("TopologyGen: spectral_radius must be > 0");
    if (!(tau0 > 0.0)) throw std::invalid_argument("TopologyGen: tau0 must be > 0");
    if (d_max < 1) throw std::invalid_argument("TopologyGen: d_max must be >= 1");
    if (input_scale < 0.0 || fb_scale < 0.0)
        throw std::invalid_argument("TopologyGen: negative scale");
}

double spectral_radius_of(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius_of: square matrix");
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXi compute_delays(const Eigen::MatrixXd& w_self, double tau0, int d_max) {
    if (!(tau0 > 0.0)) throw std::invalid_argument("compute_delays: tau0 must be > 0");
    if (d_max < 1) throw std::invalid_argument("compute_delays: d_max must be >= 1");

    Eigen::MatrixXi delays = Eigen::MatrixXi::Zero(w_self.rows(), w_self.cols());
    double w_max = 0.0;
    for (int i = 0; i < w_self.rows(); ++i)
        for (int j = 0; j < w_self.cols(); ++j) w_max = std::max(w_max, std::abs(w_self(i, j)));
    if (w_max == 0.0) return delays;

    for (int i = 0; i < w_self.rows(); ++i)
        for (int j = 0; j < w_self.cols(); ++j) {
            const double w = std::abs(w_self(i, j));
            if (w == 0.0) continue;
            const double raw = std::round(tau0 * w_max / w);
            delays(i, j) = static_cast<int>(std::clamp(raw, 1.0, static_cast<double>(d_max)));
        }
    return delays;
}

Topology generate_topology(const TopologyGen& gen, std::uint64_t seed) {
    gen.validate();
    RandomStream rng(seed);

    Topology topo;
    topo.n = gen.n;
    topo.inputs = gen.inputs;
    topo.outputs = gen.outputs;
    topo.d_max = gen.d_max;
    topo.seed = seed;

    // Recurrent weights: redrawn when the draw has no usable spectral radius
    // (all-zero or nilpotent pattern), which rescaling cannot fix.
    constexpr int kMaxRedraws = 8;
    double rho = 0.0;
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        topo.w_self = Eigen::MatrixXd::Zero(gen.n, gen.n);
        for (int i = 0; i < gen.n; ++i)
            for (int j = 0; j < gen.n; ++j)
                if (rng.uniform() < gen.connectivity) topo.w_self(i, j) = rng.uniform(-1.0, 1.0);
        rho = spectral_radius_of(topo.w_self);
        if (rho > 1e-12) break;
    }
    if (rho <= 1e-12)
        throw std::runtime_error("generate_topology: could not draw w_self with nonzero spectral radius");

    topo.w_self *= gen.spectral_radius / rho;
    topo.spectral_radius = spectral_radius_of(topo.w_self);

    topo.w_in = Eigen::MatrixXd::Zero(gen.n, gen.inputs);
    for (int i = 0; i < gen.n; ++i)
        for (int j = 0; j < gen.inputs; ++j)
            topo.w_in(i, j) = rng.uniform(-gen.input_scale, gen.input_scale);

    topo.w_fb = Eigen::MatrixXd::Zero(gen.n, gen.outputs);
    for (int i = 0; i < gen.n; ++i)
        for (int j = 0; j < gen.outputs; ++j)
            topo.w_fb(i, j) = rng.uniform(-gen.fb_scale, gen.fb_scale);

    topo.delays = compute_delays(topo.w_self, gen.tau0, gen.d_max);
    topo.validate();
    return topo;
}

}  // namespace rcsim
