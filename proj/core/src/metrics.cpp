#include "rcsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace rcsim {

double nrmse(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size()) throw std::invalid_argument("nrmse: length mismatch");
    if (y_true.size() < 2) throw std::invalid_argument("nrmse: need at least 2 samples");

    const double n = static_cast<double>(y_true.size());
    double mean = 0.0;
    for (double v : y_true) mean += v;
    mean /= n;

    double var = 0.0, mse = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        var += (y_true[i] - mean) * (y_true[i] - mean);
        mse += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    }
    var /= n;
    mse /= n;
    if (var <= 0.0) throw std::invalid_argument("nrmse: zero-variance target");
    return std::sqrt(mse / var);
}

double robust_nrmse(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("robust_nrmse: length mismatch");
    if (y_true.size() < 2) throw std::invalid_argument("robust_nrmse: need at least 2 samples");

    const double n = static_cast<double>(y_true.size());
    double mean = 0.0, power = 0.0;
    for (double v : y_true) {
        mean += v;
        power += v * v;
    }
    mean /= n;
    power /= n;

    double var = 0.0, mse = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        var += (y_true[i] - mean) * (y_true[i] - mean);
        mse += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    }
    var /= n;
    mse /= n;
    // Treat the target as constant when its variance is negligible against
    // its power; normalize by RMS level instead of standard deviation then.
    const double tiny = 1e-12;
    if (var > tiny * std::max(power, 1.0)) return std::sqrt(mse / var);
    return std::sqrt(mse) / std::max(std::sqrt(power), tiny);
}

double sign_agreement(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("sign_agreement: length mismatch");
    long counted = 0, agreed = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 0.0) continue;
        ++counted;
        if (y_true[i] * y_pred[i] > 0.0) ++agreed;
    }
    if (counted == 0) throw std::invalid_argument("sign_agreement: all targets are zero");
    return static_cast<double>(agreed) / static_cast<double>(counted);
}

double recovery_rate(const std::vector<Eigen::MatrixXd>& truth,
                     const std::vector<Eigen::MatrixXd>& recovered, double pixel_thresh) {
    if (truth.size() != recovered.size())
        throw std::invalid_argument("recovery_rate: frame count mismatch");
    if (truth.empty()) throw std::invalid_argument("recovery_rate: no frames");

    long hits = 0;
    for (std::size_t f = 0; f < truth.size(); ++f) {
        const auto& a = truth[f];
        const auto& b = recovered[f];
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("recovery_rate: frame shape mismatch");
        long match = 0;
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                if ((a(i, j) > 0.5) == (b(i, j) > 0.5)) ++match;
        const double frac = static_cast<double>(match) / static_cast<double>(a.size());
        if (frac >= pixel_thresh) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::optional<long> divergence_horizon(const std::vector<double>& y_true,
                                       const std::vector<double>& y_pred, double epsilon,
                                       long hold) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("divergence_horizon: length mismatch");
    if (hold < 1) throw std::invalid_argument("divergence_horizon: hold must be >= 1");

    long streak = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (std::abs(y_true[i] - y_pred[i]) > epsilon) {
            ++streak;
            if (streak >= hold) return static_cast<long>(i) - hold + 1;
        } else {
            streak = 0;
        }
    }
    return std::nullopt;
}

}  // namespace rcsim
