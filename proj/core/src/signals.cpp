#include "rcsim/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rcsim {

void SignalSpec::validate() const {
    if (length < 1) throw std::invalid_argument("signal: length must be >= 1");
    if (!(amplitude > 0.0)) throw std::invalid_argument("signal: amplitude must be > 0");
    switch (kind) {
        case SignalKind::square:
        case SignalKind::triangle:
            if (period < 2) throw std::invalid_argument("signal: period must be >= 2");
            break;
        case SignalKind::sine:
            if (!(freq > 0.0 && freq < 0.5))
                throw std::invalid_argument("signal: freq must lie in (0, 0.5) cycles/step");
            break;
        case SignalKind::double_sinusoid:
            if (!(f1 > 0.0 && f1 < 0.5) || !(f2 > 0.0 && f2 < 0.5))
                throw std::invalid_argument("signal: f1 and f2 must lie in (0, 0.5) cycles/step");
            break;
        case SignalKind::mackey_glass:
            if (mg_tau < 1) throw std::invalid_argument("signal: mg_tau must be >= 1");
            if (!(mg_a > 0.0) || !(mg_b > 0.0) || !(mg_p > 0.0))
                throw std::invalid_argument("signal: mackey-glass coefficients must be > 0");
            break;
    }
}

namespace {

constexpr long kMackeyGlassDiscard = 500;
constexpr double kMackeyGlassInit = 1.2;

std::vector<double> gen_mackey_glass(const SignalSpec& s) {
    const long tau = s.mg_tau;
    const long total = kMackeyGlassDiscard + s.length;
    // history[k] holds x at time k - tau .. so we just keep the whole series.
    std::vector<double> x(static_cast<std::size_t>(total + tau), kMackeyGlassInit);
    for (long k = tau; k + 1 < total + tau; ++k) {
        const double xd = x[static_cast<std::size_t>(k - tau)];
        const double xk = x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(k + 1)] =
            xk + s.mg_a * xd / (1.0 + std::pow(xd, s.mg_p)) - s.mg_b * xk;
    }
    std::vector<double> out(x.begin() + tau + kMackeyGlassDiscard, x.end());
    // Affine map of the retained window onto [-amplitude, amplitude].
    auto [mn_it, mx_it] = std::minmax_element(out.begin(), out.end());
    const double mn = *mn_it, mx = *mx_it;
    const double span = mx - mn;
    if (!(span > 0.0)) throw std::runtime_error("signal: mackey-glass window is constant");
    for (double& v : out) v = s.amplitude * (2.0 * (v - mn) / span - 1.0);
    return out;
}

}  // namespace

std::vector<double> gen_signal(const SignalSpec& spec) {
    spec.validate();
    std::vector<double> out(static_cast<std::size_t>(spec.length));
    const double two_pi = 2.0 * std::numbers::pi;
    switch (spec.kind) {
        case SignalKind::square:
            for (long t = 0; t < spec.length; ++t)
                out[static_cast<std::size_t>(t)] =
                    (static_cast<double>(t % spec.period) < static_cast<double>(spec.period) / 2.0)
                        ? spec.amplitude
                        : -spec.amplitude;
            break;
        case SignalKind::sine:
            for (long t = 0; t < spec.length; ++t)
                out[static_cast<std::size_t>(t)] =
                    spec.amplitude * std::sin(two_pi * spec.freq * static_cast<double>(t));
            break;
        case SignalKind::triangle:
            // Linear ramp up over the first half period, down over the second.
            for (long t = 0; t < spec.length; ++t) {
                const double phase =
                    static_cast<double>(t % spec.period) / static_cast<double>(spec.period);
                const double tri = phase < 0.5 ? 4.0 * phase - 1.0 : 3.0 - 4.0 * phase;
                out[static_cast<std::size_t>(t)] = spec.amplitude * tri;
            }
            break;
        case SignalKind::double_sinusoid:
            for (long t = 0; t < spec.length; ++t) {
                const double td = static_cast<double>(t);
                out[static_cast<std::size_t>(t)] = spec.amplitude *
                                                   std::sin(two_pi * spec.f1 * td) *
                                                   std::sin(two_pi * spec.f2 * td);
            }
            break;
        case SignalKind::mackey_glass:
            out = gen_mackey_glass(spec);
            break;
    }
    return out;
}

const char* to_string(SignalKind k) {
    switch (k) {
        case SignalKind::square: return "square";
        case SignalKind::sine: return "sine";
        case SignalKind::triangle: return "triangle";
        case SignalKind::double_sinusoid: return "double_sinusoid";
        case SignalKind::mackey_glass: return "mackey_glass";
    }
    throw std::logic_error("signal: unknown kind");
}

SignalKind signal_kind_from_string(const std::string& s) {
    if (s == "square") return SignalKind::square;
    if (s == "sine") return SignalKind::sine;
    if (s == "triangle") return SignalKind::triangle;
    if (s == "double_sinusoid") return SignalKind::double_sinusoid;
    if (s == "mackey_glass") return SignalKind::mackey_glass;
    throw std::invalid_argument("signal: unknown kind '" + s + "'");
}

}  // namespace rcsim
