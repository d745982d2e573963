#include "superosc/cli_main.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "superosc/io_json.hpp"
#include "superosc/spectral.hpp"
#include "superosc/waveform.hpp"
#include "superosc/yield_bound.hpp"

namespace superosc::cli {

namespace {

// Report scalars go out with 12 significant digits, deterministically.
std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class Report {
public:
    void add(const std::string& key, double v) { rows_.emplace_back(key, num12(v)); }
    void add(const std::string& key, const std::string& v) { rows_.emplace_back(key, '"' + v + '"'); }
    void add(const std::string& key, bool v) { rows_.emplace_back(key, v ? "true" : "false"); }
    void write(std::ostream& os) const {
        os << "{\n";
        for (std::size_t i = 0; i < rows_.size(); ++i)
            os << "  \"" << rows_[i].first << "\": " << rows_[i].second
               << (i + 1 < rows_.size() ? ",\n" : "\n");
        os << "}\n";
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

struct GridArgs {
    double t_min = 0.0, t_max = 0.0;
    std::size_t count = 0;
    double rate = 0.0;

    std::size_t resolve_count() const {
        if (count >= 2) return count;
        if (rate > 0.0) {
            const double n = (t_max - t_min) * rate;
            return static_cast<std::size_t>(std::llround(n)) + 1;
        }
        throw std::runtime_error("need --count or --rate");
    }
};

SampledSignal sample_loaded(const io::LoadedSpec& spec, const GridArgs& g) {
    const std::size_t n = g.resolve_count();
    if (spec.has_waveform) return waveform::sample(spec.wave, g.t_min, g.t_max, n);
    return zero_ops::sample(spec.ledger, g.t_min, g.t_max, n);
}

int cmd_build(const std::string& spec_path, std::optional<double> scan_t_max,
              const std::string& out_path, std::ostream& out) {
    const io::LoadedSpec spec = io::load_spec(spec_path);
    Report rep;
    int code = 0;
    if (spec.has_waveform) {
        const auto v = waveform::validate(spec.wave);
        rep.add("pass", v.pass);
        rep.add("limiting_condition", v.limiting_condition);
        rep.add("polynomial_degree", static_cast<double>(v.polynomial_degree));
        if (!v.stretched_exponential_tail) rep.add("tail_order", v.tail_order);
        rep.add("stretched_exponential_tail", v.stretched_exponential_tail);
        rep.add("superoscillatory", v.superoscillatory);
        if (v.pass) {
            const auto d = waveform::diagnostics(spec.wave, scan_t_max);
            rep.add("so_interval", d.so_interval);
            rep.add("outer_zero", d.outer_zero);
            rep.add("h_at_zero", d.h_at_zero);
            rep.add("log10_h_max", d.log10_h_max);
            rep.add("t_of_h_max", d.t_of_h_max);
        } else {
            code = 2;
        }
    } else {
        rep.add("pass", true);
        rep.add("band_halfwidth", spec.ledger.base.band_halfwidth());
        rep.add("tail_order", spec.ledger.effective_tail_order());
        rep.add("net_decay_delta", static_cast<double>(spec.ledger.net_decay_delta()));
        rep.add("condition_diagnostic", zero_ops::condition_diagnostic(spec.ledger));
    }
    rep.write(out);
    if (!out_path.empty()) {
        auto f = open_out(out_path);
        rep.write(f);
    }
    return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"band-limited superoscillating waveform toolkit"};
    app.require_subcommand(1);

    std::string spec_path, out_path, in_path, format = "csv", window = "none";
    GridArgs grid;
    double fmax = 0.0, fs = 0.0, tau_s = 0.0, a_s = 1.0, t0_win = 0.0;
    std::optional<double> scan_t_max;
    int bump_m = 1, bump_n = 1;
    double oversample = 4.0, t_tab = 0.0;
    double op_t0 = 0.0, op_t1 = 0.0;
    int op_mult = 1;

    auto add_grid = [&](CLI::App* c, bool required) {
        auto* a = c->add_option("--t-min", grid.t_min, "grid start (s)");
        auto* b = c->add_option("--t-max", grid.t_max, "grid end (s)");
        c->add_option("--count", grid.count, "number of samples");
        c->add_option("--rate", grid.rate, "samples per second");
        if (required) {
            a->required();
            b->required();
        }
    };

    auto* build = app.add_subcommand("build", "validate a spec and print diagnostics");
    build->add_option("--spec", spec_path, "waveform spec JSON")->required();
    double scan_opt = 0.0;
    auto* scan_flag = build->add_option("--t-max", scan_opt, "diagnostic scan half-range (s)");
    build->add_option("--out", out_path, "also write the report here");

    auto* sample = app.add_subcommand("sample", "materialize a uniform grid");
    sample->add_option("--spec", spec_path, "waveform spec JSON")->required();
    sample->add_option("--out", out_path, "output CSV path")->required();
    sample->add_option("--format", format, "csv or json");
    add_grid(sample, true);

    auto* spectrum = app.add_subcommand("spectrum", "DFT analysis of a signal");
    spectrum->add_option("--spec", spec_path, "waveform spec JSON (sampled on the grid flags)");
    spectrum->add_option("--in", in_path, "signal CSV from the sample command");
    spectrum->add_option("--out", out_path, "spectrum CSV path")->required();
    spectrum->add_option("--window", window, "none or taper");
    spectrum->add_option("--fmax", fmax, "band edge for the out-of-band report (Hz)");
    add_grid(spectrum, false);

    auto* yield = app.add_subcommand("yield", "yield bound and optional empirical yield");
    yield->add_option("--fmax", fmax, "host bandwidth (Hz)")->required();
    yield->add_option("--fs", fs, "superoscillation frequency (Hz)")->required();
    yield->add_option("--tau-s", tau_s, "superoscillation duration (s)")->required();
    yield->add_option("--as", a_s, "superoscillation amplitude");
    yield->add_option("--t0", t0_win, "superoscillation window start (s)");
    yield->add_option("--spec", spec_path, "optional spec for the empirical measurement");
    yield->add_option("--out", out_path, "also write the report here");
    add_grid(yield, false);

    auto* zeros = app.add_subcommand("zeros", "manipulate envelope zeros");
    zeros->fallthrough();  // --spec/--out may follow the add/remove/shift verb
    auto* zadd = zeros->add_subcommand("add", "multiply by (1 - t/t0)");
    zadd->add_option("--t0", op_t0, "new zero location")->required();
    auto* zremove = zeros->add_subcommand("remove", "divide by (1 - t/t1)^k");
    zremove->add_option("--t1", op_t1, "zero to remove")->required();
    zremove->add_option("--multiplicity", op_mult, "k");
    auto* zshift = zeros->add_subcommand("shift", "move a zero from t1 to t0");
    zshift->add_option("--t1", op_t1, "zero to move")->required();
    zshift->add_option("--t0", op_t0, "destination")->required();
    zeros->require_subcommand(1);
    zeros->add_option("--spec", spec_path, "envelope spec JSON")->required();
    zeros->add_option("--out", out_path, "updated spec JSON path");

    auto* tailfit = app.add_subcommand("tailfit", "fit the stretched-exponential tail of a bump envelope");
    tailfit->add_option("--m", bump_m, "bump exponent m");
    tailfit->add_option("--n", bump_n, "bump exponent n");
    tailfit->add_option("--t-min", grid.t_min, "fit range start")->required();
    tailfit->add_option("--t-max", grid.t_max, "fit range end")->required();
    tailfit->add_option("--t-tab", t_tab, "tabulation half-range (default: t-max)");
    tailfit->add_option("--oversample", oversample, "table samples per unit time");
    tailfit->add_option("--out", out_path, "envelope table CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (build->parsed()) {
            if (scan_flag->count() > 0) scan_t_max = scan_opt;
            return cmd_build(spec_path, scan_t_max, out_path, out);
        }

        if (sample->parsed()) {
            const io::LoadedSpec spec = io::load_spec(spec_path);
            const SampledSignal sig = sample_loaded(spec, grid);
            auto f = open_out(out_path);
            if (format == "csv") {
                io::write_signal_csv(f, sig);
            } else if (format == "json") {
                f << "{ \"t0\": " << num12(sig.t0) << ", \"dt\": " << num12(sig.dt)
                  << ", \"values\": [";
                for (std::size_t i = 0; i < sig.size(); ++i)
                    f << (i ? "," : "") << num12(sig.values[i]);
                f << "] }\n";
            } else {
                throw std::runtime_error("unknown format: " + format);
            }
            if (sig.rate_warning)
                err << "warning: fewer than 8 samples per superoscillation period\n";
            return 0;
        }

        if (spectrum->parsed()) {
            SampledSignal sig;
            if (!in_path.empty()) {
                std::ifstream f(in_path);
                if (!f) throw std::runtime_error("cannot open signal csv: " + in_path);
                sig = io::read_signal_csv(f);
            } else if (!spec_path.empty()) {
                sig = sample_loaded(io::load_spec(spec_path), grid);
            } else {
                throw std::runtime_error("spectrum: need --in or --spec");
            }
            const auto win = window == "taper" ? spectral::Window::Taper : spectral::Window::None;
            const auto est = spectral::spectrum(sig, win);
            auto f = open_out(out_path);
            io::write_spectrum_csv(f, est);
            Report rep;
            rep.add("df", est.df);
            rep.add("nyquist", est.nyquist);
            rep.add("total_energy", est.total_energy);
            if (fmax > 0.0) {
                const auto oob = spectral::out_of_band_report(est, sig, fmax);
                rep.add("out_of_band_fraction", oob.fraction);
                rep.add("truncation_floor", oob.truncation_floor);
            }
            rep.write(out);
            return 0;
        }

        if (yield->parsed()) {
            yield_bound::SoProfile prof;
            prof.a_s = a_s;
            prof.f_s = fs;
            prof.tau_s = tau_s;
            prof.t0 = t0_win;
            prof.f_max = fmax;
            const auto opt = yield_bound::optimize_bound(prof);
            Report rep;
            rep.add("tau_star", opt.tau_star);
            rep.add("bound_star", opt.bound_star);
            rep.add("bound_star_unrounded", yield_bound::yield_bound_unrounded(prof, opt.tau_star));
            rep.add("bound_star_exact_qhat", yield_bound::yield_bound_exact_qhat(prof, opt.tau_star));
            yield_bound::FilterSpec filt{opt.tau_star, fs, 0.0};
            rep.add("eq7_energy", yield_bound::window_energy(filt, prof));
            if (!prof.well_conditioned())
                rep.add("few_cycles_warning", true);  // f_s tau_s < 10
            if (!spec_path.empty()) {
                const SampledSignal sig = sample_loaded(io::load_spec(spec_path), grid);
                const auto meas = yield_bound::empirical_yield(sig, prof, filt);
                rep.add("measured_yield", meas.direct_ratio);
                rep.add("filter_output_energy_conv", meas.conv_energy);
                rep.add("filter_output_energy_spectral", meas.spectral_energy);
                rep.add("eq8_tail_bound", meas.eq8_tail_bound);
            }
            rep.write(out);
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                rep.write(f);
            }
            return 0;
        }

        if (zeros->parsed()) {
            io::LoadedSpec spec = io::load_spec(spec_path);
            if (spec.has_waveform)
                throw std::runtime_error("zeros: spec must be envelope-only (zeros: null)");
            if (zadd->parsed())
                spec.ledger = zero_ops::add_zero(spec.ledger, op_t0);
            else if (zremove->parsed())
                spec.ledger = zero_ops::remove_zero(spec.ledger, op_t1, op_mult);
            else if (zshift->parsed())
                spec.ledger = zero_ops::shift_zero(spec.ledger, op_t1, op_t0);
            spec.has_zero_ops = true;
            const std::string text = io::spec_to_json(spec);
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                f << text << "\n";
            } else {
                out << text << "\n";
            }
            return 0;
        }

        if (tailfit->parsed()) {
            envelope::EnvelopeSpec env;
            env.family = envelope::Family::BumpSpectrum;
            env.bump_m = bump_m;
            env.bump_n = bump_n;
            const double tab_range = t_tab > 0.0 ? t_tab : grid.t_max;
            const auto table = envelope::tabulate_bump(env, tab_range, oversample);
            const auto fit = envelope::fit_tail_decay(table, grid.t_min, grid.t_max);
            Report rep;
            rep.add("a", fit.a);
            rep.add("b", fit.b);
            rep.add("p", fit.p);
            rep.add("points_used", static_cast<double>(fit.points_used));
            rep.add("rms_residual", fit.rms_residual);
            rep.write(out);
            if (!out_path.empty()) {
                auto f = open_out(out_path);
                io::write_envelope_csv(f, table);
            }
            return 0;
        }
    } catch (const zero_ops::GuardError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace superosc::cli
