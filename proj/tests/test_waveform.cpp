#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "superosc/specfun.hpp"
#include "superosc/waveform.hpp"

using namespace superosc;
namespace wf = superosc::waveform;

namespace {

wf::WaveformSpec sinc_family(int nu, double f0, int n) {
    wf::WaveformSpec s;
    s.env.family = envelope::Family::Sinc;
    s.env.power = nu;
    s.zeros = euler::CosineZeroParams{f0, n};
    return s;
}

wf::WaveformSpec fig2_spec() {
    wf::WaveformSpec s;
    s.env.family = envelope::Family::BumpSpectrum;
    s.env.power = 5;
    s.zeros = euler::CosineZeroParams{50.0, 10};
    return s;
}

}  // namespace

TEST_CASE("validity rules for the sinc family") {
    const auto fail = wf::validate(sinc_family(5, 50.0, 10));
    CHECK_FALSE(fail.pass);
    CHECK(fail.polynomial_degree == 20);

    const auto edge = wf::validate(sinc_family(20, 50.0, 10));  // nu = 2N still fails
    CHECK_FALSE(edge.pass);

    const auto pass = wf::validate(sinc_family(21, 50.0, 10));
    CHECK(pass.pass);
    CHECK(pass.tail_order == doctest::Approx(-1.0));

    const auto pass2 = wf::validate(sinc_family(22, 50.0, 10));
    CHECK(pass2.pass);
    CHECK(pass2.tail_order == doctest::Approx(-2.0));
}

TEST_CASE("bump envelopes validate with nu = 1 at any N") {
    wf::WaveformSpec s;
    s.env.family = envelope::Family::BumpSpectrum;
    s.env.power = 1;
    s.zeros = euler::CosineZeroParams{50.0, 10000};
    const auto rep = wf::validate(s);
    CHECK(rep.pass);
    CHECK(rep.stretched_exponential_tail);
    CHECK(rep.superoscillatory);  // f0 = 50 > band halfwidth 1
}

TEST_CASE("poly/gegenbauer edge bookkeeping") {
    wf::WaveformSpec s;
    s.env.family = envelope::Family::PolySpectrum;
    s.env.power = 3;  // smoothness degree 2*3-1 = 5
    s.zeros = euler::CosineZeroParams{10.0, 2};  // polynomial degree 4
    CHECK(wf::validate(s).pass);
    s.zeros = euler::CosineZeroParams{10.0, 3};  // degree 6 > 5
    CHECK_FALSE(wf::validate(s).pass);
}

TEST_CASE("explicit zero sets use their own degree") {
    wf::WaveformSpec s;
    s.env.family = envelope::Family::Sinc;
    s.env.power = 4;  // smoothness degree 3
    s.zeros = euler::ZeroSet::make({{-1.0, 1}, {0.5, 2}}, false);
    CHECK(s.polynomial_degree() == 3);
    CHECK(wf::validate(s).pass);
    s.zeros = euler::ZeroSet::make({{-1.0, 2}, {0.5, 2}}, false);
    CHECK_FALSE(wf::validate(s).pass);
}

TEST_CASE("eval at zero returns the envelope peak") {
    const auto spec = fig2_spec();
    const double h0 = wf::eval(spec, 0.0).value();
    CHECK(h0 == doctest::Approx(std::pow(0.443993816168079, 5)).epsilon(1e-9));
    // headline value: within 5% of 0.0165
    CHECK(h0 == doctest::Approx(0.0165).epsilon(0.05));
}

TEST_CASE("eval falls back to the direct product at gamma poles") {
    wf::WaveformSpec s = sinc_family(21, 1.0, 4);
    const double t = (4.0 + 0.5) / 2.0;  // gamma-form pole
    const LogSigned v = wf::eval(s, t);
    const LogSigned expected =
        envelope::time_value_log(s.env, t) * euler::product_direct(euler::cosine_zeros({1.0, 4}), t);
    CHECK(v.sign == expected.sign);
    CHECK(v.log_mag == doctest::Approx(expected.log_mag).epsilon(1e-10));
}

TEST_CASE("sample grids") {
    const auto spec = sinc_family(21, 1.0, 4);
    const auto two = wf::sample(spec, -1.0, 1.0, 2);
    REQUIRE(two.size() == 2);
    CHECK(two.time_at(0) == -1.0);
    CHECK(two.time_at(1) == 1.0);
    CHECK_THROWS_AS(wf::sample(spec, -1.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(wf::sample(spec, 1.0, -1.0, 16), std::invalid_argument);

    // parity for symmetric zeros and even envelope
    const auto sig = wf::sample(spec, -3.0, 3.0, 481);
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const std::size_t j = sig.size() - 1 - i;
        CHECK(sig.log_sign[i] == sig.log_sign[j]);
        if (sig.log_sign[i] == 0) continue;  // exact zeros on both sides
        CHECK(sig.log10_mag[i] == doctest::Approx(sig.log10_mag[j]).epsilon(1e-10));
    }

    // rate warning below 8 samples per 1/f0
    const auto coarse = wf::sample(sinc_family(21, 50.0, 4), -1.0, 1.0, 100);
    CHECK(coarse.rate_warning);
    const auto fine = wf::sample(sinc_family(21, 50.0, 4), -1.0, 1.0, 2000);
    CHECK_FALSE(fine.rate_warning);
}

TEST_CASE("Fig 2(b) midsection mimics the target cosine") {
    const auto spec = fig2_spec();
    const auto& p = spec.cosine_params();
    const auto sig = wf::sample(spec, -0.016, 0.016, 4097);
    const double h0 = wf::eval(spec, 0.0).value();

    // at cosine extrema the ratio to h(0) cos stays within the amplitude band
    for (int k = -1; k <= 1; ++k) {
        const double t = k / (2.0 * p.f0);
        const double want = h0 * specfun::cos_pi(2.0 * p.f0 * t);
        const double got = wf::eval(spec, t).value();
        CHECK(got / want >= 0.99);
        CHECK(got / want <= 1.30);
    }

    // sign changes within one grid step of every Euler zero in range
    const auto zs = euler::cosine_zeros(p);
    for (const auto& z : zs.zeros) {
        if (z.location < sig.time_at(0) || z.location > sig.t_end()) continue;
        const auto idx = static_cast<std::size_t>((z.location - sig.t0) / sig.dt);
        bool flip = false;
        for (std::size_t j = (idx > 0 ? idx - 1 : 0); j + 1 < sig.size() && j <= idx + 1; ++j)
            if (sig.log_sign[j] * sig.log_sign[j + 1] <= 0) flip = true;
        CHECK(flip);
    }
}

TEST_CASE("so_fidelity") {
    CHECK(wf::so_fidelity(sinc_family(3, 1.0, 1)) == doctest::Approx(1.0));
    CHECK(wf::so_fidelity(fig2_spec()) <= 1.30);
    // large-N sinc family: bounded by e^{1/4} times envelope flatness
    CHECK(wf::so_fidelity(sinc_family(2001, 1.0, 1000)) <= std::exp(0.25) * 1.01);
    wf::WaveformSpec explicit_zeros = sinc_family(3, 1.0, 1);
    explicit_zeros.zeros = euler::ZeroSet::make({{-0.25, 1}, {0.25, 1}}, true);
    CHECK_THROWS_AS(wf::so_fidelity(explicit_zeros), std::invalid_argument);
}

TEST_CASE("diagnostics reproduce the headline plot numbers") {
    const auto d = wf::diagnostics(fig2_spec(), 80.0);
    CHECK(d.so_interval == doctest::Approx(std::sqrt(10.0) / 200.0));
    CHECK(d.outer_zero == doctest::Approx(0.1));
    CHECK(d.h_at_zero == doctest::Approx(0.0165).epsilon(0.05));
    CHECK(d.log10_h_max == doctest::Approx(40.6).epsilon(0.0125));  // +-0.5 decades
    CHECK(std::fabs(d.t_of_h_max) < 80.0);
    CHECK(std::fabs(d.t_of_h_max) > d.outer_zero);  // growth peaks outside the outer zero
}

TEST_CASE("growth-then-decay shape for a valid spec") {
    // |h| reaches its global max outside the outer zero, then the upper
    // envelope decays
    const auto spec = sinc_family(22, 1.0, 5);
    const auto sig = wf::sample(spec, 0.0, 400.0, 32001);
    std::size_t best = 0;
    for (std::size_t i = 0; i < sig.size(); ++i)
        if (sig.log10_mag[i] > sig.log10_mag[best]) best = i;
    const double outer = 5.0 / 2.0;
    CHECK(sig.time_at(best) > outer);
    // upper envelope beyond the max: compare decade maxima
    auto decade_max = [&](double lo, double hi) {
        double m = -1e300;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            const double t = sig.time_at(i);
            if (t >= lo && t <= hi) m = std::max(m, sig.log10_mag[i]);
        }
        return m;
    };
    const double t_peak = sig.time_at(best);
    const double m1 = decade_max(t_peak, 2.0 * t_peak);
    const double m2 = decade_max(4.0 * t_peak, 8.0 * t_peak);
    CHECK(m2 < m1);
}
