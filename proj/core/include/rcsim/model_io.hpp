#pragma once

#include <optional>
#include <string>

#include "rcsim/device.hpp"
#include "rcsim/readout.hpp"
#include "rcsim/reservoir.hpp"
#include "rcsim/topology.hpp"

namespace rcsim {

/// Everything needed to rebuild a simulator: device constants, dynamics
/// parameters, wiring, and (after training) the readout. Stored as JSON
/// with sorted keys and round-trip-exact numbers, so save -> load -> save
/// reproduces the file byte for byte.
struct ModelFile {
    static constexpr int kFormatVersion = 1;

    int format_version = kFormatVersion;
    DeviceParams device;
    ReservoirParams reservoir;
    Topology topology;
    std::optional<ReadoutWeights> readout;

    void validate() const;
};

/// Serialize to JSON text (no trailing newline is added by callers' concern;
/// the string itself ends with '\n').
std::string model_json(const ModelFile& model);

void save_model(const ModelFile& model, const std::string& path);

/// Load and validate. Rejects other format versions and dimension
/// inconsistencies; ignores unrecognized keys so files written by later
/// minor revisions still load.
ModelFile load_model(const std::string& path);

}  // namespace rcsim
