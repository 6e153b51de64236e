#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace rcsim {

/// Quantitative outcome of one task run. Fields are filled only where the
/// task defines them; divergence_horizon is null when the run never
/// diverged (distinct from the check not having been made).
struct MetricReport {
    std::optional<double> nrmse;
    std::optional<double> sign_agreement;
    std::optional<double> recovery_rate;
    bool divergence_checked = false;
    std::optional<long> divergence_horizon;
};

/// Root-mean-square error normalized by the target's population variance.
/// Throws on length mismatch, fewer than 2 samples, or zero-variance target.
double nrmse(const std::vector<double>& y_true, const std::vector<double>& y_pred);

/// nrmse, except that for (near-)constant targets — where the variance
/// normalization is undefined — it falls back to RMS error over the
/// target's RMS level, so tracking a constant still scores near 0.
double robust_nrmse(const std::vector<double>& y_true, const std::vector<double>& y_pred);

/// Fraction of steps where prediction and target agree in sign. Steps with
/// an exactly-zero target are excluded from the denominator.
double sign_agreement(const std::vector<double>& y_true, const std::vector<double>& y_pred);

/// Fraction of frames whose recovery, binarized at 0.5, matches the true
/// frame on at least `pixel_thresh` of its pixels.
double recovery_rate(const std::vector<Eigen::MatrixXd>& truth,
                     const std::vector<Eigen::MatrixXd>& recovered, double pixel_thresh);

/// First index where |y_true - y_pred| exceeds epsilon for `hold`
/// consecutive steps; nullopt when that never happens.
std::optional<long> divergence_horizon(const std::vector<double>& y_true,
                                       const std::vector<double>& y_pred, double epsilon,
                                       long hold);

}  // namespace rcsim
