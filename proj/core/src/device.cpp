#include "rcsim/device.hpp"

#include <cmath>
#include <stdexcept>

namespace rcsim {

void DeviceParams::validate() const {
    if (!(v_dd > 0.0)) throw std::invalid_argument("DeviceParams: v_dd must be > 0");
    if (!(slope_beta > 0.0)) throw std::invalid_argument("DeviceParams: slope_beta must be > 0");
    if (!(noise_amp_alpha >= 0.0))
        throw std::invalid_argument("DeviceParams: noise_amp_alpha must be >= 0");
}

void MagnetParams::validate() const {
    if (gyromagnetic_ratio < 0.0 || saturation_magnetization < 0.0 || anisotropy_field < 0.0 ||
        volume < 0.0)
        throw std::invalid_argument("MagnetParams: all fields must be >= 0");
}

double noise_sigma(double v_in, const DeviceParams& p) {
    const double th = std::tanh(p.slope_beta * v_in);
    return p.noise_amp_alpha * (1.0 - th * th);
}

double asn_mean(double v_in, const DeviceParams& p) {
    return 0.5 * p.v_dd * std::tanh(p.slope_beta * v_in);
}

double asn_response(double v_in, const DeviceParams& p, RandomStream& rng) {
    return asn_mean(v_in, p) + rng.normal() * noise_sigma(v_in, p);
}

double energy_barrier(const MagnetParams& m) {
    return 0.5 * m.gyromagnetic_ratio * m.saturation_magnetization * m.anisotropy_field *
           m.volume;
}

double energy_barrier_kt(const MagnetParams& m, double temperature_k) {
    return energy_barrier(m) / (kBoltzmann * temperature_k);
}

BarrierClass classify_barrier(double u_over_kt) {
    if (u_over_kt < 5.0) return BarrierClass::low_barrier;
    if (u_over_kt < 40.0) return BarrierClass::intermediate;
    if (u_over_kt <= 60.0) return BarrierClass::storage_class;
    return BarrierClass::high_barrier;
}

const char* to_string(BarrierClass c) {
    switch (c) {
        case BarrierClass::low_barrier: return "low-barrier";
        case BarrierClass::intermediate: return "intermediate";
        case BarrierClass::storage_class: return "storage-class";
        case BarrierClass::high_barrier: return "high-barrier";
    }
    return "unknown";
}

}  // namespace rcsim
