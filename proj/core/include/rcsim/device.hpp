#pragma once

#include "rcsim/random.hpp"

namespace rcsim {

/// Transfer-model constants of the analog stochastic neuron cell.
/// The cell output is a noisy sigmoid: a deterministic (v_dd/2)*tanh(beta*v)
/// mean with a Gaussian noise envelope that peaks at zero input and dies
/// out at saturation.
struct DeviceParams {
    double v_dd = 0.8;              ///< full supply [V]; output swings +-v_dd/2
    double slope_beta = 5.0;        ///< sigmoid steepness [1/V]
    double noise_amp_alpha = 0.02;  ///< noise std at zero input [V]

    void validate() const;  ///< throws std::invalid_argument
};

/// Magnet material/geometry constants for the energy-barrier helper.
struct MagnetParams {
    double gyromagnetic_ratio = 1.76e11;      ///< rad/(s*T)
    double saturation_magnetization = 8.0e5;  ///< M_s [A/m]
    double anisotropy_field = 4.0e4;          ///< H_k [A/m]
    double volume = 2.9e-42;                  ///< m^3 (default lands near 2 kT)

    void validate() const;
};

/// Std of the device noise at input v_in:
///   sigma(v) = noise_amp_alpha * (1 - tanh^2(slope_beta * v)).
/// Nonincreasing in |v|; equals noise_amp_alpha only at v = 0.
double noise_sigma(double v_in, const DeviceParams& p);

/// Deterministic part of the cell response: (v_dd/2) * tanh(slope_beta * v).
double asn_mean(double v_in, const DeviceParams& p);

/// One sampled cell response: asn_mean + eta * noise_sigma, eta ~ N(0,1).
/// Consumes exactly one normal draw from the stream.
double asn_response(double v_in, const DeviceParams& p, RandomStream& rng);

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

/// Magnet energy barrier, gyro-prefactor form: U = gamma*M_s*H_k*volume / 2.
double energy_barrier(const MagnetParams& m);

/// Barrier in units of kT at the given temperature.
double energy_barrier_kt(const MagnetParams& m, double temperature_k = 300.0);

/// Retention class by barrier height.
///   below 5 kT: fluctuates on ~ns scales (the neuron regime)
///   40-60 kT:   storage-class, decade-scale retention
enum class BarrierClass { low_barrier, intermediate, storage_class, high_barrier };

BarrierClass classify_barrier(double u_over_kt);
const char* to_string(BarrierClass c);

}  // namespace rcsim
