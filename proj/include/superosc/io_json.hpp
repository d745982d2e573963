#pragma once

#include <iosfwd>
#include <string>

#include "superosc/signal.hpp"
#include "superosc/spectral.hpp"
#include "superosc/waveform.hpp"
#include "superosc/zero_ops.hpp"

namespace superosc::io {

// Full waveform recipe as JSON. Schema:
// {
//   "label": "...",
//   "envelope": {"family": "sinc|poly_spectrum|gegenbauer_spectrum|
//                           cos_power_spectrum|bump_spectrum",
//                "kappa": 0.0, "m": 1, "n": 1, "power": 1, "freq_scale": 1.0},
//   "zeros": {"type": "cosine", "f0": 50.0, "N": 10} |
//            {"type": "explicit", "symmetric": true,
//             "zeros": [{"t": 0.25, "multiplicity": 1}, ...]} | null,
//   "zero_ops": [{"op": "add", "t0": 1.0},
//                {"op": "remove", "t1": 1.0, "multiplicity": 1},
//                {"op": "shift", "t1": 1.0, "t0": 2.0}, ...]
// }
// "zeros": null (or absent) means the artifact is the (possibly
// zero-manipulated) envelope alone.
struct LoadedSpec {
    bool has_waveform = false;           // true when a zero source is present
    waveform::WaveformSpec wave;         // valid when has_waveform
    zero_ops::ZeroLedger ledger;         // envelope + applied zero ops
    bool has_zero_ops = false;
    std::string label;
};

LoadedSpec load_spec(const std::string& path);
LoadedSpec parse_spec(const std::string& json_text);
std::string spec_to_json(const LoadedSpec& spec);

std::string zero_set_to_json(const euler::ZeroSet& zs);
euler::ZeroSet zero_set_from_json(const std::string& text);

// CSV of a sampled signal: header comment carries the exact grid, columns
// are t, value, log10_abs, sign at full round-trip precision.
void write_signal_csv(std::ostream& os, const SampledSignal& sig);
SampledSignal read_signal_csv(std::istream& is);

// CSV of a spectrum: f, Re H, Im H, |H|^2.
void write_spectrum_csv(std::ostream& os, const spectral::SpectrumEstimate& est);

// CSV of an envelope table: t, g.
void write_envelope_csv(std::ostream& os, const envelope::TabulatedEnvelope& env);

}  // namespace superosc::io
