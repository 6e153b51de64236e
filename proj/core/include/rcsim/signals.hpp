#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rcsim {

enum class SignalKind { square, sine, triangle, double_sinusoid, mackey_glass };

/// One scalar benchmark signal. Frequencies are in cycles per step; periods
/// in steps. Every kind here is deterministic; the seed field is carried
/// for forward compatibility of stochastic sources.
struct SignalSpec {
    SignalKind kind = SignalKind::square;
    double amplitude = 1.0;
    long length = 1000;
    std::uint64_t seed = 0;

    long period = 40;     // square, triangle
    double freq = 0.025;  // sine

    double f1 = 0.0211;  // double sinusoid: sin(2*pi*f1*t) * sin(2*pi*f2*t)
    double f2 = 0.0034;

    // Mackey-Glass, Euler-integrated with unit step:
    //   x[k+1] = x[k] + a*x[k-tau]/(1 + x[k-tau]^p) - b*x[k]
    double mg_a = 0.2;
    double mg_b = 0.1;
    double mg_p = 10.0;
    long mg_tau = 17;

    void validate() const;
};

/// Generate `length` samples of the spec'd signal. Mackey-Glass starts from
/// a constant history of 1.2, drops the first 500 transient steps and is
/// then rescaled affinely to [-amplitude, amplitude].
std::vector<double> gen_signal(const SignalSpec& spec);

const char* to_string(SignalKind k);
SignalKind signal_kind_from_string(const std::string& s);

}  // namespace rcsim
