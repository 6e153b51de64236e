#pragma once

#include <cstdint>
#include <string>

#include "rcsim/config.hpp"
#include "rcsim/model_io.hpp"
#include "rcsim/tasks.hpp"

namespace rcsim::cli {

/// Build an untrained model for the config's task: topology dimensions are
/// forced by the task (inverter 1->1, video pixels->pixels, autoencoder
/// feedback-only).
ModelFile gen_model(const RunConfig& cfg, std::uint64_t seed);

/// Harvest states for the config's task and fit the readout into `model`.
void train_model(ModelFile& model, const RunConfig& cfg, std::uint64_t seed);

/// Drive the model for `steps` steps (0: the task's test length) and return
/// the emitted series.
Table run_model(const ModelFile& model, const RunConfig& cfg, std::uint64_t seed, long steps);

/// Score the model on held-out task data.
TaskReport eval_model(const ModelFile& model, const RunConfig& cfg, std::uint64_t seed);

/// Run the full pipeline for one task in one call (topology + training +
/// held-out scoring), as used by `demo`.
TaskReport run_demo(const RunConfig& cfg, const std::string& task, std::uint64_t seed);

/// Write summary.json plus one <name>.csv per trace into `outdir`
/// (created if missing).
void write_report(const TaskReport& report, const std::string& outdir);

/// One-line human summary of a report's metrics.
std::string report_line(const TaskReport& report);

}  // namespace rcsim::cli
