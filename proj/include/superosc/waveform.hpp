#pragma once

#include <optional>
#include <string>
#include <variant>

#include "superosc/envelope.hpp"
#include "superosc/euler.hpp"
#include "superosc/signal.hpp"

namespace superosc::waveform {

using ZeroSource = std::variant<euler::CosineZeroParams, euler::ZeroSet>;

// Full recipe for h(t) = [envelope](t) * [truncated product](t).
struct WaveformSpec {
    envelope::EnvelopeSpec env;
    ZeroSource zeros = euler::CosineZeroParams{};
    std::string label;

    bool has_cosine_zeros() const { return std::holds_alternative<euler::CosineZeroParams>(zeros); }
    const euler::CosineZeroParams& cosine_params() const { return std::get<euler::CosineZeroParams>(zeros); }
    int polynomial_degree() const;  // 2N for cosine zeros, ZeroSet degree otherwise
};

struct ValidityReport {
    bool pass = false;
    // Number of everywhere-continuous spectrum derivatives before delta
    // functions appear; infinity for the bump family.
    double smoothness_degree = 0.0;
    int polynomial_degree = 0;
    // Power-law exponent of the tail, degree - nu*(alpha+1); meaningful only
    // when the tail is not stretched-exponential.
    double tail_order = 0.0;
    bool stretched_exponential_tail = false;
    bool superoscillatory = false;  // f0 exceeds the envelope band edge
    std::string limiting_condition;
};

ValidityReport validate(const WaveformSpec& spec);

// h(t) in log-domain; the envelope and the Euler product routinely sit 40+
// decades apart. Cosine zero sets go through the O(1) gamma form with a
// direct-product fallback at its poles.
LogSigned eval(const WaveformSpec& spec, double t);

// Uniform grid materialization. count >= 2; grid endpoints inclusive.
SampledSignal sample(const WaveformSpec& spec, double t_min, double t_max, std::size_t count);

// Max of |h(t_k)| / |h(0)| over the cosine extrema t_k = k/(2 f0) inside the
// superoscillation interval |t| <= sqrt(N)/(4 f0). Requires cosine zeros.
double so_fidelity(const WaveformSpec& spec);

struct WaveformDiagnostics {
    double so_interval = 0.0;   // sqrt(N)/(4 f0)
    double outer_zero = 0.0;    // N/(2 f0)
    double h_at_zero = 0.0;
    double log10_h_max = 0.0;
    double t_of_h_max = 0.0;
};

// Scans |t| <= scan_t_max (default: 8x the outer zero) on a grid resolving
// 1/f0 and reports the headline numbers.
WaveformDiagnostics diagnostics(const WaveformSpec& spec, std::optional<double> scan_t_max = std::nullopt);

}  // namespace superosc::waveform
