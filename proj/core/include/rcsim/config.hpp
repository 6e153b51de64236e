#pragma once

#include <cstdint>
#include <string>

#include "rcsim/device.hpp"
#include "rcsim/reservoir.hpp"
#include "rcsim/tasks.hpp"
#include "rcsim/topology.hpp"

namespace rcsim {

/// Parameters for building a bare (untrained) model file.
struct ModelConfig {
    DeviceParams device;
    ReservoirParams reservoir;
    TopologyGen topology;
};

/// Every tunable of the pipeline in one document. All fields have defaults;
/// a config file only needs the keys it overrides. Unknown keys anywhere in
/// the document are rejected, as are values of the wrong type.
struct RunConfig {
    std::string task = "inverter";  // inverter | video | autoencoder
    std::uint64_t seed = 1;
    ModelConfig model;
    InverterConfig inverter;
    VideoFilterConfig video;
    AutoencoderConfig autoencoder;
};

/// Render a config (e.g. the defaults) as a complete JSON document.
std::string config_json(const RunConfig& cfg);

/// Parse JSON text over the defaults. Throws on unknown keys, type
/// mismatches, or malformed JSON.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

}  // namespace rcsim
