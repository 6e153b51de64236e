#include "rcsim/readout.hpp"

#include <Eigen/SVD>
#include <limits>
#include <stdexcept>

namespace rcsim {

Eigen::VectorXd readout(const ReadoutWeights& w, const Eigen::VectorXd& x) {
    if (w.w_out.cols() != x.size())
        throw std::invalid_argument("readout: state dimension does not match w_out");
    return w.w_out * x;
}

Eigen::MatrixXd pinv(const Eigen::MatrixXd& m, double rel_tol) {
    if (!m.allFinite()) throw std::invalid_argument("pinv: non-finite input");
    if (m.size() == 0) return Eigen::MatrixXd(m.cols(), m.rows());

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (rel_tol < 0.0)
        rel_tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                  std::numeric_limits<double>::epsilon();

    const auto& sv = svd.singularValues();
    const double cutoff = rel_tol * (sv.size() > 0 ? sv(0) : 0.0);

    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(i) > 0.0) inv_sv(i) = 1.0 / sv(i);

    return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

ReadoutWeights train_readout(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets,
                             double ridge, std::uint64_t seed) {
    if (states.cols() != targets.cols())
        throw std::invalid_argument("train_readout: states and targets must have equal columns");
    if (states.cols() < 1) throw std::invalid_argument("train_readout: no training samples");
    if (ridge < 0.0) throw std::invalid_argument("train_readout: ridge must be >= 0");

    ReadoutWeights w;
    if (ridge == 0.0) {
        w.w_out = targets * pinv(states);
    } else {
        const long n = states.rows();
        Eigen::MatrixXd gram = states * states.transpose();
        gram.diagonal().array() += ridge;
        // (X X^T + ridge I) is symmetric positive definite for ridge > 0.
        w.w_out = gram.ldlt().solve(states * targets.transpose()).transpose();
        if (w.w_out.rows() != targets.rows() || w.w_out.cols() != n)
            throw std::runtime_error("train_readout: ridge solve produced wrong shape");
    }
    w.trained_on.samples = static_cast<long>(states.cols());
    w.trained_on.ridge = ridge;
    w.trained_on.seed = seed;
    return w;
}

}  // namespace rcsim
