#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace rcsim {

/// Trained linear sampling matrix plus provenance of the fit.
struct ReadoutWeights {
    Eigen::MatrixXd w_out;  ///< p x n

    struct TrainedOn {
        long samples = 0;
        double ridge = 0.0;
        std::uint64_t seed = 0;
    } trained_on;

    bool empty() const { return w_out.size() == 0; }
};

/// y = w_out * x. Throws on dimension mismatch.
Eigen::VectorXd readout(const ReadoutWeights& w, const Eigen::VectorXd& x);

/// Moore-Penrose pseudo-inverse via SVD. Singular values at or below
/// rel_tol * sigma_max are treated as zero; a negative rel_tol selects the
/// conventional default max(rows, cols) * machine-epsilon.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& m, double rel_tol = -1.0);

/// One-shot readout fit on harvested states X (n x T) and targets Y (p x T).
///   ridge == 0:  w_out = Y * pinv(X)
///   ridge > 0:   w_out = Y X^T (X X^T + ridge*I)^-1
/// `seed` is recorded as metadata only.
ReadoutWeights train_readout(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets,
                             double ridge = 0.0, std::uint64_t seed = 0);

}  // namespace rcsim
