#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "superosc/euler.hpp"
#include "superosc/specfun.hpp"

using namespace superosc;
namespace eu = superosc::euler;

TEST_CASE("cosine_zeros layout") {
    const auto zs1 = eu::cosine_zeros({50.0, 1});
    REQUIRE(zs1.zeros.size() == 2);
    CHECK(zs1.zeros[0].location == doctest::Approx(-1.0 / 200.0));
    CHECK(zs1.zeros[1].location == doctest::Approx(1.0 / 200.0));
    CHECK(zs1.symmetric);

    const auto zs = eu::cosine_zeros({50.0, 40000});
    CHECK(zs.zeros.size() == 2 * 40000);
    CHECK(zs.degree() == 80000);
    CHECK(zs.zeros.back().location == doctest::Approx(79999.0 / 200.0));  // ~399.995 s
    CHECK(zs.zeros.front().location == doctest::Approx(-79999.0 / 200.0));
    CHECK(zs.zeros.back().location < 40000.0 / (2.0 * 50.0));
}

TEST_CASE("product_direct basics") {
    const auto zs = eu::cosine_zeros({50.0, 100});
    CHECK(eu::product_direct(zs, 0.0).value() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(eu::product_direct(zs, 1.0 / 200.0).is_zero());  // first zero

    // zero at the origin contributes the factor t
    const auto with_origin = eu::ZeroSet::make({{0.0, 1}, {1.0, 1}, {-1.0, 1}}, true);
    CHECK(with_origin.degree() == 3);
    CHECK(eu::product_direct(with_origin, 0.0).is_zero());
    CHECK(eu::product_direct(with_origin, 2.0).value() ==
          doctest::Approx(2.0 * (1.0 - 2.0) * (1.0 + 2.0)).epsilon(1e-13));
}

TEST_CASE("gamma form agrees with the direct product") {
    const eu::CosineZeroParams p{1.0, 10000};
    const auto zs = eu::cosine_zeros(p);
    const LogSigned d = eu::product_direct(zs, 0.3);
    const LogSigned g = eu::product_gamma_form(p, 0.3);
    CHECK(d.sign == g.sign);
    CHECK(std::fabs(d.log_mag - g.log_mag) < 1e-8);

    CHECK(eu::product_gamma_form(p, 0.0).value() == doctest::Approx(1.0).epsilon(1e-13));

    const eu::CosineZeroParams big{50.0, 40000};
    const LogSigned d2 = eu::product_direct(eu::cosine_zeros(big), 0.75);
    const LogSigned g2 = eu::product_gamma_form(big, 0.75);
    CHECK(d2.sign == g2.sign);
    CHECK(std::fabs(d2.log_mag - g2.log_mag) < 1e-8);
}

TEST_CASE("gamma form: random cross-oracle sweep") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> f0_dist(0.5, 60.0);
    std::uniform_int_distribution<int> n_dist(10, 10000);
    std::uniform_real_distribution<double> u_dist(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double f0 = f0_dist(rng);
        const int n = n_dist(rng);
        const double t = u_dist(rng) * n / (4.0 * f0);
        const eu::CosineZeroParams p{f0, n};
        const LogSigned d = eu::product_direct(eu::cosine_zeros(p), t);
        const LogSigned g = eu::product_gamma_form(p, t);
        if (d.is_zero() || g.is_zero()) {
            CHECK(d.is_zero() == g.is_zero());
            continue;
        }
        CHECK(d.sign == g.sign);
        CHECK(std::fabs(d.log_mag - g.log_mag) < 1e-8);
    }
}

TEST_CASE("gamma form sign flips exactly at the zeros") {
    const eu::CosineZeroParams p{50.0, 40000};
    for (int n : {1, 2, 17, 399, 40000}) {
        const double tz = (2.0 * n - 1.0) / (4.0 * p.f0);
        CHECK(eu::product_gamma_form(p, tz).is_zero());
        const double eps = 1e-7 * tz;
        const LogSigned before = eu::product_gamma_form(p, tz - eps);
        const LogSigned after = eu::product_gamma_form(p, tz + eps);
        CHECK(before.sign == -after.sign);
    }
}

TEST_CASE("gamma form throws on its poles, direct product covers them") {
    // |2 f0 t| >= N + 1/2 at half-integer alignment
    const eu::CosineZeroParams p{1.0, 4};
    const double t = (4.0 + 0.5) / 2.0;  // 2 f0 t = 4.5 -> Gamma(0)
    CHECK_THROWS_AS(eu::product_gamma_form(p, t), eu::GammaPoleError);
    const LogSigned d = eu::product_direct(eu::cosine_zeros(p), t);
    CHECK(!d.is_zero());
}

TEST_CASE("asymptotic form") {
    const eu::CosineZeroParams p{1.0, 10000};
    CHECK(eu::product_asymptotic(p, 0.0).value.value() == doctest::Approx(1.0));
    CHECK(eu::product_asymptotic(p, 0.0).in_validity_range);

    // relative error vs the gamma form at f0 t = 10
    const double t = 10.0;
    const LogSigned a = eu::product_asymptotic(p, t).value;
    const LogSigned g = eu::product_gamma_form(p, t);
    CHECK(a.sign == g.sign);
    CHECK(std::fabs(std::expm1(a.log_mag - g.log_mag)) < 1e-3);

    // amplitude at the edge of the superoscillation interval
    const double t_edge = std::sqrt(static_cast<double>(p.truncation)) / 4.0;
    const double factor = std::exp(eu::product_asymptotic(p, t_edge).value.log_mag -
                                   std::log(std::fabs(specfun::cos_pi(2.0 * t_edge))));
    CHECK(factor == doctest::Approx(std::exp(0.25)).epsilon(1e-3));

    CHECK_FALSE(eu::product_asymptotic({1.0, 10}, 5.0).in_validity_range);
}

TEST_CASE("amplitude stays in [1, e^(1/4)] inside the superoscillation interval") {
    const eu::CosineZeroParams p{1.0, 1000};
    const double so = std::sqrt(1000.0) / 4.0;
    for (int k = 0; k <= static_cast<int>(so * 2.0); ++k) {
        const double t = 0.5 * k;  // cosine extrema: |cos(2 pi t)| = 1
        if (t > so) break;
        const LogSigned g = eu::product_gamma_form(p, t);
        const double ratio = std::exp(g.log_mag);
        CHECK(ratio >= 1.0 - 1e-12);
        CHECK(ratio <= std::exp(0.25) * 1.01);
    }
}

TEST_CASE("polynomial growth |t|^2N far outside the zeros") {
    const eu::CosineZeroParams p{1.0, 100};
    const auto zs = eu::cosine_zeros(p);
    const double outer = p.truncation / (2.0 * p.f0);
    const double t1 = 4.0 * outer, t2 = 40.0 * outer;
    const double slope = (eu::product_direct(zs, t2).log_mag - eu::product_direct(zs, t1).log_mag) /
                         (std::log(t2) - std::log(t1));
    CHECK(slope == doctest::Approx(2.0 * p.truncation).epsilon(0.01));
}

TEST_CASE("arbitrary zero sets vanish exactly at their zeros and nowhere else") {
    const auto zs = eu::ZeroSet::make({{-2.5, 1}, {-1.0, 2}, {0.5, 1}, {3.25, 3}}, false);
    CHECK(zs.degree() == 7);
    for (const auto& z : zs.zeros) CHECK(eu::product_direct(zs, z.location).is_zero());
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = dist(rng);
        bool near = false;
        for (const auto& z : zs.zeros)
            if (std::fabs(t - z.location) < 1e-9) near = true;
        if (!near) CHECK(!eu::product_direct(zs, t).is_zero());
    }
}

TEST_CASE("zero set validation") {
    CHECK_THROWS_AS(eu::ZeroSet::make({{1.0, 0}}, false), std::invalid_argument);
    std::vector<eu::Zero> dup{{1.0, 1}, {1.0, 1}};
    CHECK_THROWS_AS(eu::ZeroSet::make(std::move(dup), false), std::invalid_argument);
    CHECK_THROWS_AS(eu::ZeroSet::make({{1.0, 1}}, true), std::invalid_argument);  // no -1 partner
    CHECK_THROWS_AS(eu::cosine_zeros({-1.0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(eu::cosine_zeros({1.0, 0}), std::invalid_argument);
}
