#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rcsim/tasks.hpp"
#include "test_support.hpp"

using namespace rcsim;

TEST_SUITE("tasks") {

TEST_CASE("inverter: a noiseless sine is inverted almost exactly") {
    InverterConfig cfg;
    cfg.reservoir.noise_gain = 0.0;
    cfg.signal.kind = SignalKind::sine;
    const TaskReport rep = task_inverter(cfg, 1);
    REQUIRE(rep.metrics.nrmse.has_value());
    REQUIRE(rep.metrics.sign_agreement.has_value());
    CHECK(*rep.metrics.nrmse <= 0.05);
    // the only misses a clean fit can make are at the zero crossings
    CHECK(*rep.metrics.sign_agreement >= 0.95);
}

TEST_CASE("inverter: plain reproduction is no harder than inversion") {
    InverterConfig invert;
    invert.reservoir.noise_gain = 0.0;
    invert.signal.kind = SignalKind::sine;
    InverterConfig copy = invert;
    copy.target_sign = +1.0;
    const double inv_err = *task_inverter(invert, 2).metrics.nrmse;
    const double copy_err = *task_inverter(copy, 2).metrics.nrmse;
    CHECK(copy_err <= inv_err + 1e-12);
}

TEST_CASE("inverter: mirrored targets give bitwise-identical fit quality") {
    // the readout solve is linear in the target, so flipping the target's
    // sign negates the trained weights exactly; squared errors and sign
    // agreement are blind to that joint flip
    for (std::uint64_t seed : {1, 2, 3}) {
        InverterConfig a;  // target_sign -1
        InverterConfig b = a;
        b.target_sign = +1.0;
        const TaskReport ra = task_inverter(a, seed);
        const TaskReport rb = task_inverter(b, seed);
        CHECK(*ra.metrics.nrmse == *rb.metrics.nrmse);
        CHECK(*ra.metrics.sign_agreement == *rb.metrics.sign_agreement);
    }
}

TEST_CASE("inverter: report carries traces and diagnostics") {
    InverterConfig cfg;
    cfg.trace_neurons = 3;
    const TaskReport rep = task_inverter(cfg, 7);
    CHECK(rep.task == "inverter");
    CHECK(rep.extra.count("train_nrmse") == 1);
    CHECK(rep.extra.count("spectral_radius") == 1);
    REQUIRE(rep.traces.size() == 2);
    CHECK(rep.traces[0].first == "signals");
    CHECK(rep.traces[0].second.columns ==
          std::vector<std::string>{"input", "target", "output"});
    CHECK(rep.traces[0].second.data.rows() == cfg.test_len);
    CHECK(rep.traces[1].first == "neurons");
    CHECK(rep.traces[1].second.columns.size() == 3);
}

TEST_CASE("video filter: accuracy dips at glyph changes but recovers in time") {
    VideoFilterConfig cfg;
    const TaskReport rep = task_video_filter(cfg, 3);
    REQUIRE(rep.metrics.recovery_rate.has_value());
    CHECK(*rep.metrics.recovery_rate >= 0.85);
    REQUIRE(rep.extra.count("transition_lag_frames") == 1);
    CHECK(rep.extra.at("transition_lag_frames") < double(cfg.frames_per_glyph));
}

TEST_CASE("video filter: zero-jitter channel is undone perfectly") {
    VideoFilterConfig cfg;
    cfg.distortion.gain_jitter = 0.0;
    cfg.distortion.offset_jitter = 0.0;
    cfg.distortion.pixel_noise = 0.0;
    const TaskReport rep = task_video_filter(cfg, 5);
    CHECK(*rep.metrics.recovery_rate == 1.0);
}

TEST_CASE("video filter: recovery degrades monotonically with pixel noise") {
    std::vector<double> medians;
    for (double noise : {0.0, 0.1, 0.3, 0.6}) {
        std::vector<double> rates;
        for (std::uint64_t seed : {1, 2, 3}) {
            VideoFilterConfig cfg;
            cfg.distortion.pixel_noise = noise;
            rates.push_back(*task_video_filter(cfg, seed).metrics.recovery_rate);
        }
        medians.push_back(oracle::median(rates));
    }
    for (std::size_t k = 1; k < medians.size(); ++k) CHECK(medians[k] <= medians[k - 1] + 1e-12);
}

TEST_CASE("autoencoder: a constant line is held indefinitely") {
    AutoencoderConfig cfg;
    cfg.teach_len = 500;
    cfg.free_len = 500;
    cfg.nrmse_window = 500;
    cfg.reservoir.washout = 100;
    const std::vector<double> series(1200, 0.5);
    const TaskReport rep = autoencoder_on_series(cfg, series, 4);
    REQUIRE(rep.metrics.nrmse.has_value());
    CHECK(*rep.metrics.nrmse <= 0.05);
    CHECK(rep.metrics.divergence_checked);
    CHECK(!rep.metrics.divergence_horizon.has_value());
}

TEST_CASE("autoencoder: free run tracks the double sinusoid") {
    AutoencoderConfig cfg;
    const TaskReport rep = task_autoencoder(cfg, 1);
    CHECK(*rep.metrics.nrmse < 0.1);
    REQUIRE(!rep.traces.empty());
    CHECK(rep.traces[0].first == "freerun");
}

TEST_CASE("autoencoder: reinserting the teacher pulls a diverged loop back") {
    AutoencoderConfig cfg;
    cfg.reservoir.noise_gain = 1e-4;  // guarantees an eventual excursion
    cfg.epsilon = 0.1;                // catch the drift while it is small
    cfg.free_len = 2000;
    for (std::uint64_t seed : {1, 3}) {
        const TaskReport rep = task_autoencoder(cfg, seed);
        REQUIRE(rep.metrics.divergence_horizon.has_value());
        REQUIRE(rep.extra.count("post_injection_nrmse") == 1);
        CHECK(rep.extra.at("post_injection_nrmse") < 0.25);
    }
}

TEST_CASE("task reports are bit-reproducible and summarize as valid JSON") {
    InverterConfig cfg;
    cfg.train_len = 300;
    cfg.test_len = 100;
    const std::string a = summary_json(task_inverter(cfg, 11));
    const std::string b = summary_json(task_inverter(cfg, 11));
    CHECK(a == b);

    const nlohmann::json j = nlohmann::json::parse(a);
    CHECK(j["task"] == "inverter");
    CHECK(j["seed"] == 11);
    CHECK(j["metrics"].contains("nrmse"));
    CHECK(j["metrics"].contains("sign_agreement"));
    CHECK(j.contains("extra"));
    CHECK(j.contains("traces"));
}

}  // TEST_SUITE
