#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "rcsim/metrics.hpp"
#include "rcsim/random.hpp"
#include "test_support.hpp"

using namespace rcsim;
using oracle::vec;

TEST_SUITE("metrics") {

TEST_CASE("nrmse: exact prediction scores 0, predicting the mean scores 1") {
    const std::vector<double> y = vec({1.0, 2.0, 3.0, 4.0});
    CHECK(nrmse(y, y) == 0.0);
    const std::vector<double> mean_only(4, 2.5);
    CHECK(nrmse(y, mean_only) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nrmse(vec({1, -1, 1, -1}), vec({0, 0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nrmse rejects degenerate input") {
    CHECK_THROWS_AS(nrmse(vec({1, 1, 1}), vec({1, 1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(nrmse(vec({1, 2}), vec({1})), std::invalid_argument);
    CHECK_THROWS_AS(nrmse(vec({1}), vec({1})), std::invalid_argument);
}

TEST_CASE("nrmse is invariant under affine maps of both series") {
    RandomStream rng(3);
    std::vector<double> y(200), p(200);
    for (int i = 0; i < 200; ++i) {
        y[i] = rng.normal();
        p[i] = y[i] + 0.3 * rng.normal();
    }
    const double base = nrmse(y, p);
    for (double a : {2.0, -0.5, 10.0}) {
        for (double b : {0.0, 3.0, -7.0}) {
            std::vector<double> ya(y), pa(p);
            for (int i = 0; i < 200; ++i) {
                ya[i] = a * y[i] + b;
                pa[i] = a * p[i] + b;
            }
            CHECK(nrmse(ya, pa) == doctest::Approx(base).epsilon(1e-10));
        }
    }
}

TEST_CASE("robust variant falls back to an RMS scale on constant targets") {
    const std::vector<double> c(500, 2.0);
    std::vector<double> close(500, 2.0);
    close[10] = 2.01;
    CHECK(robust_nrmse(c, close) < 0.05);
    CHECK(robust_nrmse(c, c) == 0.0);
    // on a varying target it is plain nrmse
    const std::vector<double> y = vec({1.0, 2.0, 3.0, 4.0});
    const std::vector<double> p = vec({1.1, 2.2, 2.9, 3.7});
    CHECK(robust_nrmse(y, p) == nrmse(y, p));
}

TEST_CASE("sign agreement counts matching signs, skipping zero targets") {
    CHECK(sign_agreement(vec({1, -2, 3, -4}), vec({2, -1, 0.5, -9})) == 1.0);
    CHECK(sign_agreement(vec({1, -2, 3, -4}), vec({-2, 1, -0.5, 9})) == 0.0);
    CHECK(sign_agreement(vec({1, -1, 1, -1}), vec({1, -1, -1, 1})) == 0.5);
    // zero targets leave the denominator
    CHECK(sign_agreement(vec({0, 1, 0, -1}), vec({5, 2, -5, -2})) == 1.0);
}

TEST_CASE("recovery rate by per-frame pixel agreement") {
    std::vector<Eigen::MatrixXd> truth, rec;
    for (int k = 0; k < 4; ++k) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(4, 4);
        f(k, k) = 1.0;
        truth.push_back(f);
        rec.push_back(f);
    }
    CHECK(recovery_rate(truth, rec, 0.95) == 1.0);

    std::vector<Eigen::MatrixXd> inverted;
    for (const auto& f : truth) inverted.push_back(Eigen::MatrixXd::Ones(4, 4) - f);
    CHECK(recovery_rate(truth, inverted, 0.95) == 0.0);

    std::vector<Eigen::MatrixXd> half = truth;
    half[2].topRows(2) = Eigen::MatrixXd::Ones(2, 4) - half[2].topRows(2);
    CHECK(recovery_rate(truth, half, 0.95) == 0.75);

    // recoveries are binarized at 0.5 before comparison
    std::vector<Eigen::MatrixXd> analog;
    for (const auto& f : truth) analog.push_back(0.3 * Eigen::MatrixXd::Ones(4, 4) + 0.6 * f);
    CHECK(recovery_rate(truth, analog, 0.95) == 1.0);
}

TEST_CASE("recovery rate is invariant under a shared pixel permutation") {
    RandomStream rng(8);
    std::vector<Eigen::MatrixXd> truth, rec;
    for (int k = 0; k < 6; ++k) {
        Eigen::MatrixXd t(3, 3), r(3, 3);
        for (long i = 0; i < 9; ++i) {
            t.data()[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
            r.data()[i] = rng.uniform() < 0.8 ? t.data()[i] : 1.0 - t.data()[i];
        }
        truth.push_back(t);
        rec.push_back(r);
    }
    const double base = recovery_rate(truth, rec, 0.9);
    // one fixed shuffle of the 9 pixel slots, applied to both sides
    const int perm[9] = {4, 7, 0, 8, 2, 3, 6, 1, 5};
    std::vector<Eigen::MatrixXd> truth_p = truth, rec_p = rec;
    for (int k = 0; k < 6; ++k)
        for (long i = 0; i < 9; ++i) {
            truth_p[k].data()[perm[i]] = truth[k].data()[i];
            rec_p[k].data()[perm[i]] = rec[k].data()[i];
        }
    CHECK(recovery_rate(truth_p, rec_p, 0.9) == base);
}

TEST_CASE("divergence horizon finds the first sustained excursion") {
    std::vector<double> y(100, 0.0), p(100, 0.0);
    CHECK(!divergence_horizon(y, p, 0.3, 5).has_value());

    // ramp crossing the tolerance at index 37 and staying out
    for (int i = 37; i < 100; ++i) p[i] = 0.4 + 0.01 * (i - 37);
    const auto h = divergence_horizon(y, p, 0.3, 5);
    REQUIRE(h.has_value());
    CHECK(*h == 37);

    // a single spike is not divergence
    std::fill(p.begin(), p.end(), 0.0);
    p[50] = 10.0;
    CHECK(!divergence_horizon(y, p, 0.3, 5).has_value());

    // a spike exactly hold-long is
    for (int i = 60; i < 65; ++i) p[i] = 1.0;
    const auto h2 = divergence_horizon(y, p, 0.3, 5);
    REQUIRE(h2.has_value());
    CHECK(*h2 == 60);
}

TEST_CASE("divergence horizon is monotone in the tolerance") {
    RandomStream rng(12);
    std::vector<double> y(400, 0.0), p(400);
    double drift = 0.0;
    for (int i = 0; i < 400; ++i) {
        drift += 0.003 * std::abs(rng.normal());
        p[i] = drift + 0.05 * rng.normal();
    }
    long prev = -1;
    bool gone = false;  // once no tolerance is exceeded, larger ones cannot be either
    for (double eps : {0.1, 0.2, 0.4, 0.8}) {
        const auto h = divergence_horizon(y, p, eps, 10);
        if (gone) {
            CHECK(!h.has_value());
            continue;
        }
        if (!h.has_value()) {
            gone = true;
            continue;
        }
        CHECK(*h >= prev);
        prev = *h;
    }
}

}  // TEST_SUITE
