#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "rcsim/random.hpp"
#include "rcsim/readout.hpp"
#include "test_support.hpp"

using namespace rcsim;

namespace {

Eigen::MatrixXd random_matrix(long rows, long cols, RandomStream& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (long i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
    return m;
}

}  // namespace

TEST_SUITE("readout") {

TEST_CASE("pseudo-inverse of simple matrices") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(4, 4);
    CHECK((pinv(eye) - eye).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
    d(0, 0) = 2.0;
    d(2, 2) = 0.5;  // singular: middle direction has no inverse image
    const Eigen::MatrixXd p = pinv(d);
    CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p(1, 1) == 0.0);
    CHECK(p(2, 2) == doctest::Approx(2.0).epsilon(1e-14));

    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 5);
    const Eigen::MatrixXd pz = pinv(z);
    CHECK(pz.rows() == 5);
    CHECK(pz.cols() == 2);
    CHECK(pz.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pseudo-inverse satisfies all four defining conditions") {
    RandomStream rng(42);
    for (int rep = 0; rep < 40; ++rep) {
        const long rows = 2 + rng.uniform_int(0, 18);
        const long cols = 2 + rng.uniform_int(0, 58);
        Eigen::MatrixXd m;
        if (rep % 3 == 2) {
            // force a rank deficiency through a thin factorization
            const long inner = 1 + rng.uniform_int(0, int(std::min(rows, cols)) - 2);
            m = random_matrix(rows, inner, rng) * random_matrix(inner, cols, rng);
        } else {
            m = random_matrix(rows, cols, rng);
        }
        CHECK(oracle::penrose_violation(m, pinv(m)) < 1e-8);
    }
}

TEST_CASE("pseudo-inverse agrees with the normal-equations form when full rank") {
    RandomStream rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::MatrixXd m = random_matrix(10, 30, rng);
        const Eigen::MatrixXd expect = oracle::pinv_normal_equations(m);
        CHECK((pinv(m) - expect).norm() / expect.norm() < 1e-10);

        const Eigen::MatrixXd tall = random_matrix(25, 6, rng);
        const Eigen::MatrixXd expect_tall = oracle::pinv_normal_equations(tall);
        CHECK((pinv(tall) - expect_tall).norm() / expect_tall.norm() < 1e-10);
    }
}

TEST_CASE("exact fit recovers a planted readout") {
    RandomStream rng(11);
    const Eigen::MatrixXd states = random_matrix(20, 200, rng);
    const Eigen::MatrixXd planted = random_matrix(3, 20, rng);
    const Eigen::MatrixXd targets = planted * states;
    const ReadoutWeights w = train_readout(states, targets, 0.0, 99);
    CHECK((w.w_out - planted).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(w.trained_on.samples == 200);
    CHECK(w.trained_on.ridge == 0.0);
    CHECK(w.trained_on.seed == 99);
}

TEST_CASE("ridge matches its closed form and shrinks the solution") {
    RandomStream rng(13);
    const Eigen::MatrixXd states = random_matrix(15, 120, rng);
    const Eigen::MatrixXd targets = random_matrix(2, 120, rng);

    double prev_norm = 1e300;
    for (double ridge : {1e-8, 1e-4, 1e-1, 10.0}) {
        const ReadoutWeights w = train_readout(states, targets, ridge);
        const Eigen::MatrixXd gram =
            states * states.transpose() +
            ridge * Eigen::MatrixXd::Identity(states.rows(), states.rows());
        const Eigen::MatrixXd expect = targets * states.transpose() * gram.fullPivLu().inverse();
        CHECK((w.w_out - expect).norm() / expect.norm() < 1e-9);
        CHECK(w.w_out.norm() < prev_norm);
        prev_norm = w.w_out.norm();
    }
}

TEST_CASE("readout application and dimension checks") {
    ReadoutWeights w;
    w.w_out = Eigen::MatrixXd::Zero(2, 3);
    w.w_out << 1, 0, -1, 0, 2, 0;
    Eigen::VectorXd x(3);
    x << 3, 4, 5;
    const Eigen::VectorXd y = readout(w, x);
    CHECK(y(0) == -2.0);
    CHECK(y(1) == 8.0);

    Eigen::VectorXd wrong(4);
    wrong.setZero();
    CHECK_THROWS_AS(readout(w, wrong), std::invalid_argument);

    const Eigen::MatrixXd states = Eigen::MatrixXd::Zero(3, 10);
    const Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(2, 9);
    CHECK_THROWS_AS(train_readout(states, targets), std::invalid_argument);
    CHECK_THROWS_AS(train_readout(states, Eigen::MatrixXd::Zero(2, 10), -1.0),
                    std::invalid_argument);
}

}  // TEST_SUITE
