#include "superosc/io_json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace superosc::io {

using nlohmann::json;

namespace {

envelope::Family family_from_name(const std::string& name) {
    if (name == "sinc") return envelope::Family::Sinc;
    if (name == "poly_spectrum") return envelope::Family::PolySpectrum;
    if (name == "gegenbauer_spectrum") return envelope::Family::GegenbauerSpectrum;
    if (name == "cos_power_spectrum") return envelope::Family::CosPowerSpectrum;
    if (name == "bump_spectrum") return envelope::Family::BumpSpectrum;
    throw std::invalid_argument("unknown envelope family: " + name);
}

std::string family_name(envelope::Family f) {
    switch (f) {
        case envelope::Family::Sinc: return "sinc";
        case envelope::Family::PolySpectrum: return "poly_spectrum";
        case envelope::Family::GegenbauerSpectrum: return "gegenbauer_spectrum";
        case envelope::Family::CosPowerSpectrum: return "cos_power_spectrum";
        case envelope::Family::BumpSpectrum: return "bump_spectrum";
    }
    return "sinc";
}

envelope::EnvelopeSpec envelope_from_json(const json& j) {
    envelope::EnvelopeSpec env;
    env.family = family_from_name(j.at("family").get<std::string>());
    env.kappa = j.value("kappa", 0.0);
    env.bump_m = j.value("m", 1);
    env.bump_n = j.value("n", 1);
    env.power = j.value("power", 1);
    env.freq_scale = j.value("freq_scale", 1.0);
    env.validate();
    return env;
}

json envelope_to_json(const envelope::EnvelopeSpec& env) {
    json j;
    j["family"] = family_name(env.family);
    j["power"] = env.power;
    j["freq_scale"] = env.freq_scale;
    if (env.family == envelope::Family::GegenbauerSpectrum ||
        env.family == envelope::Family::CosPowerSpectrum)
        j["kappa"] = env.kappa;
    if (env.family == envelope::Family::BumpSpectrum) {
        j["m"] = env.bump_m;
        j["n"] = env.bump_n;
    }
    return j;
}

json zero_set_to_json_obj(const euler::ZeroSet& zs) {
    json arr = json::array();
    for (const auto& z : zs.zeros) arr.push_back({{"t", z.location}, {"multiplicity", z.multiplicity}});
    return json{{"type", "explicit"}, {"symmetric", zs.symmetric}, {"zeros", arr}};
}

euler::ZeroSet zero_set_from_json_obj(const json& j) {
    std::vector<euler::Zero> zs;
    for (const auto& e : j.at("zeros"))
        zs.push_back({e.at("t").get<double>(), e.value("multiplicity", 1)});
    return euler::ZeroSet::make(std::move(zs), j.value("symmetric", false));
}

}  // namespace

LoadedSpec parse_spec(const std::string& text) {
    const json j = json::parse(text);
    LoadedSpec out;
    out.label = j.value("label", std::string{});

    const envelope::EnvelopeSpec env = envelope_from_json(j.at("envelope"));
    out.ledger = zero_ops::make_ledger(env);
    const bool wants_ops = j.contains("zero_ops") && !j["zero_ops"].is_null() && !j["zero_ops"].empty();

    if (j.contains("zeros") && !j["zeros"].is_null()) {
        if (wants_ops)
            throw std::invalid_argument("zero_ops apply to envelopes; drop the zero source or the ops");
        out.has_waveform = true;
        out.wave.env = env;
        out.wave.label = out.label;
        const json& z = j["zeros"];
        const std::string type = z.at("type").get<std::string>();
        if (type == "cosine") {
            euler::CosineZeroParams p;
            p.f0 = z.at("f0").get<double>();
            p.truncation = z.at("N").get<int>();
            p.validate();
            out.wave.zeros = p;
        } else if (type == "explicit") {
            out.wave.zeros = zero_set_from_json_obj(z);
        } else {
            throw std::invalid_argument("unknown zero source type: " + type);
        }
        return out;
    }

    if (wants_ops) {
        out.has_zero_ops = true;
        for (const auto& op : j["zero_ops"]) {
            const std::string kind = op.at("op").get<std::string>();
            if (kind == "add")
                out.ledger = zero_ops::add_zero(out.ledger, op.at("t0").get<double>());
            else if (kind == "remove")
                out.ledger = zero_ops::remove_zero(out.ledger, op.at("t1").get<double>(),
                                                   op.value("multiplicity", 1));
            else if (kind == "shift")
                out.ledger = zero_ops::shift_zero(out.ledger, op.at("t1").get<double>(),
                                                  op.at("t0").get<double>());
            else
                throw std::invalid_argument("unknown zero op: " + kind);
        }
    }
    return out;
}

LoadedSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string spec_to_json(const LoadedSpec& spec) {
    json j;
    j["label"] = spec.label;
    j["envelope"] = envelope_to_json(spec.ledger.base);
    if (spec.has_waveform) {
        if (spec.wave.has_cosine_zeros()) {
            const auto& p = spec.wave.cosine_params();
            j["zeros"] = {{"type", "cosine"}, {"f0", p.f0}, {"N", p.truncation}};
        } else {
            j["zeros"] = zero_set_to_json_obj(std::get<euler::ZeroSet>(spec.wave.zeros));
        }
    } else {
        j["zeros"] = nullptr;
    }
    json ops = json::array();
    for (const auto& a : spec.ledger.added)
        for (int k = 0; k < a.multiplicity; ++k) ops.push_back({{"op", "add"}, {"t0", a.location}});
    for (const auto& r : spec.ledger.removed)
        ops.push_back({{"op", "remove"}, {"t1", r.location}, {"multiplicity", r.multiplicity}});
    j["zero_ops"] = ops;
    return j.dump(2);
}

std::string zero_set_to_json(const euler::ZeroSet& zs) { return zero_set_to_json_obj(zs).dump(2); }

euler::ZeroSet zero_set_from_json(const std::string& text) {
    return zero_set_from_json_obj(json::parse(text));
}

void write_signal_csv(std::ostream& os, const SampledSignal& sig) {
    os << "# t0=" << std::setprecision(17) << sig.t0 << " dt=" << sig.dt << " n=" << sig.size() << "\n";
    os << "t,value,log10_abs,sign\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        os << sig.time_at(i) << ',' << (sig.native_ok[i] ? sig.values[i] : 0.0) << ','
           << sig.log10_mag[i] << ',' << static_cast<int>(sig.log_sign[i]) << '\n';
    }
}

SampledSignal read_signal_csv(std::istream& is) {
    std::string line;
    SampledSignal sig;
    bool have_grid = false;
    std::vector<double> l10;
    std::vector<int> signs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto t0_pos = line.find("t0=");
            const auto dt_pos = line.find("dt=");
            if (t0_pos != std::string::npos && dt_pos != std::string::npos) {
                sig.t0 = std::stod(line.substr(t0_pos + 3));
                sig.dt = std::stod(line.substr(dt_pos + 3));
                have_grid = true;
            }
            continue;
        }
        if (line[0] == 't') continue;  // column header
        std::istringstream ls(line);
        std::string cell;
        double cols[4] = {0, 0, 0, 0};
        int c = 0;
        while (std::getline(ls, cell, ',') && c < 4) cols[c++] = std::stod(cell);
        if (c < 4) throw std::runtime_error("signal csv: malformed row");
        sig.values.push_back(cols[1]);
        l10.push_back(cols[2]);
        signs.push_back(static_cast<int>(cols[3]));
    }
    if (!have_grid) throw std::runtime_error("signal csv: missing grid header");
    for (std::size_t i = 0; i < sig.values.size(); ++i) {
        sig.log10_mag.push_back(l10[i]);
        sig.log_sign.push_back(static_cast<signed char>(signs[i]));
        const bool native = std::fabs(l10[i]) <= SampledSignal::kNativeLog10Limit ||
                            signs[i] == 0;
        sig.native_ok.push_back(native ? 1 : 0);
    }
    return sig;
}

void write_spectrum_csv(std::ostream& os, const spectral::SpectrumEstimate& est) {
    os << "# df=" << std::setprecision(17) << est.df << " nyquist=" << est.nyquist << "\n";
    os << "f,re,im,power\n";
    os << std::setprecision(17);
    for (std::size_t k = 0; k < est.size(); ++k) {
        const auto& a = est.amplitudes[k];
        os << est.freq_at(k) << ',' << a.real() << ',' << a.imag() << ',' << std::norm(a) << '\n';
    }
}

void write_envelope_csv(std::ostream& os, const envelope::TabulatedEnvelope& env) {
    os << "t,g\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < env.size(); ++i) os << env.time_at(i) << ',' << env.values[i] << '\n';
}

}  // namespace superosc::io
