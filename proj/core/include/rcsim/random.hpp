#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rcsim {

/// Seedable stream of uniform and standard-normal draws.
///
/// The engine is std::mt19937_64, whose output sequence is fully specified
/// by the standard. The normal transform is a fixed Box-Muller variant
/// (two engine draws per call, no cached spare), so a given seed produces
/// the same sequence on every standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// One standard-normal draw. Always consumes exactly two engine draws.
    double normal();

    /// Uniform integer in [lo, hi], both inclusive.
    int uniform_int(int lo, int hi);

private:
    std::mt19937_64 engine_;
};

/// FNV-1a 64-bit hash; stable across platforms.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derive a per-component seed from a master seed. The component name is
/// hashed into the stream, so adding a new component never shifts the
/// seeds of existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component) noexcept;

/// Indexed variant for per-trial / per-frame streams.
std::uint64_t derive_seed(std::uint64_t master, std::string_view component,
                          std::uint64_t index) noexcept;

}  // namespace rcsim
