#include <doctest.h>

#include <cmath>
#include <complex>

#include "hardedge/ensembles.hpp"
#include "hardedge/mellin.hpp"

using namespace hardedge;
namespace mel = hardedge::mellin;
namespace ens = hardedge::ensembles;

namespace {
double rel_gap(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}
}  // namespace

TEST_CASE("eval_mellin gamma-product values") {
    // Laguerre M=1, a=0 normalized: M[w](s) = Gamma(s)
    auto w = ens::laguerre_product_weight<double>({0.0});
    CHECK(rel_gap(w.eval({2.0, 0.0}).real(), 1.0) < 1e-13);
    CHECK(rel_gap(w.eval({5.0, 0.0}).real(), 24.0) < 1e-13);
    // normalized mass at s = 1 for a general parameter
    auto w2 = ens::laguerre_product_weight<double>({1.7});
    CHECK(rel_gap(w2.eval({1.0, 0.0}).real(), 1.0) < 1e-13);
    // MB weight, theta=2, a=0: Gamma(2(s-1)+1); at s=2 -> Gamma(3) = 2
    auto wmb = ens::mb_laguerre_weight<double>(0.0, 2.0);
    CHECK(rel_gap(wmb.eval({2.0, 0.0}).real(), 2.0) < 1e-13);
    // pole detection names the factor
    CHECK_THROWS_AS(w.eval({0.0, 0.0}), pole_error);
}

TEST_CASE("strip bookkeeping per family") {
    auto w = ens::laguerre_product_weight<double>({0.5, 1.5});
    CHECK(w.strip_lo == doctest::Approx(-0.5));
    CHECK(w.strip_hi > 1e20);
    auto wmb = ens::mb_laguerre_weight<double>(0.0, 2.0);
    CHECK(wmb.strip_lo == doctest::Approx(0.5));  // Gamma(2s-1) pole at s = 1/2
    auto wi = ens::laguerre_inverse_product_weight<double>({1.0}, {1.0}, 4);
    CHECK(wi.strip_lo == doctest::Approx(-1.0));
    CHECK(wi.strip_hi == doctest::Approx(6.0));  // b + N + 1
}

TEST_CASE("inverse_mellin recovers the Laguerre weight") {
    auto w = ens::laguerre_product_weight<double>({0.0});
    CHECK(rel_gap(mel::inverse_mellin(w, 1.0), std::exp(-1.0)) < 1e-11);
    CHECK(rel_gap(mel::inverse_mellin(w, 0.5), std::exp(-0.5)) < 1e-11);
    // dual polynomial at n = 0 is the weight itself
    auto wq0 = w.with_dual_polynomial(0);
    CHECK(rel_gap(mel::inverse_mellin(wq0, 0.5), std::exp(-0.5)) < 1e-11);
    // n = 1 has the closed form (1-x) e^{-x}  (zero at x = 1)
    auto wq1 = w.with_dual_polynomial(1);
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(std::abs(mel::inverse_mellin(wq1, x) - (1.0 - x) * std::exp(-x)) < 1e-10);
    }
    // closed form for the two-factor product weight: 2 e^{-2 sqrt(x)}
    auto wp = ens::laguerre_product_weight<double>({0.0, 0.5});
    for (double x : {0.3, 1.7}) {
        CHECK(rel_gap(mel::inverse_mellin(wp, x), 2.0 * std::exp(-2.0 * std::sqrt(x))) < 1e-10);
    }
}

TEST_CASE("inverse_mellin saddle contour handles bulk-scale arguments") {
    // e^{-x} at x = 200 is ~1e-87; a fixed near-strip contour could never
    // resolve it in double precision, the saddle abscissa can.
    auto w = ens::laguerre_product_weight<double>({0.0});
    const double got = mel::inverse_mellin(w, 200.0);
    CHECK(rel_gap(got, std::exp(-200.0)) < 1e-8);
    // product of two Laguerre factors: w(x) = 2 K_0(2 sqrt(x)); spot value at
    // x = 900 via the Bessel asymptotic series oracle
    auto w2 = ens::laguerre_product_weight<double>({0.0, 0.0});
    // K_0(z) ~ sqrt(pi/(2z)) e^{-z} (1 - 1/(8z) + 9/(128 z^2) - 225/(3072 z^3))
    const double z = 60.0;
    const double k0 = std::sqrt(pi_v<double>() / (2 * z)) * std::exp(-z) *
                      (1.0 - 1.0 / (8 * z) + 9.0 / (128 * z * z) - 225.0 / (3072 * z * z * z));
    CHECK(rel_gap(mel::inverse_mellin(w2, 900.0), 2.0 * k0) < 1e-7);
}

TEST_CASE("inverse_mellin node-doubling and contour-shift stability") {
    auto w = ens::laguerre_product_weight<double>({0.0, 1.5});
    const double x = 0.8;
    mel::ContourSpec<double> spec{0.5, 40.0, 4001};
    const double v1 = mel::inverse_mellin_at(w, x, spec);
    spec.node_count = 8001;
    const double v2 = mel::inverse_mellin_at(w, x, spec);
    CHECK(std::abs(v2 - v1) < 1e-10);
    // abscissa independence within the strip
    for (double dc : {-0.25, 0.25}) {
        mel::ContourSpec<double> shifted{0.5 + dc, 40.0, 8001};
        CHECK(std::abs(mel::inverse_mellin_at(w, x, shifted) - v2) < 1e-10);
    }
    // decay precheck fires when the window is far too short
    CHECK_THROWS_AS(mel::inverse_mellin_at(w, x, mel::ContourSpec<double>{0.5, 0.5, 11}),
                    decay_error);
}

TEST_CASE("residue series matches the contour on generic parameters") {
    auto w1 = ens::laguerre_product_weight<double>({0.0});
    CHECK(rel_gap(mel::residue_series(w1, 1.0), std::exp(-1.0)) < 1e-12);
    auto w2 = ens::laguerre_product_weight<double>({0.0, 0.5});
    CHECK(std::abs(mel::residue_series(w2, 0.3) - mel::inverse_mellin(w2, 0.3)) < 1e-9);
    auto wmb = ens::mb_laguerre_weight<double>(0.5, 2.0);
    for (double x : {0.2, 1.0, 3.0}) {
        CHECK(std::abs(mel::residue_series(wmb, x) - mel::inverse_mellin(wmb, x)) < 1e-9);
    }
    // dual-polynomial integrands participate in the same equivalence
    auto wq = w2.with_dual_polynomial(2);
    CHECK(std::abs(mel::residue_series(wq, 0.7) - mel::inverse_mellin(wq, 0.7)) < 1e-9);
}

TEST_CASE("residue series leading power at the origin") {
    auto w = ens::laguerre_product_weight<double>({0.5, 1.25});
    // f(x) ~ c x^{min a} as x -> 0+
    const double r1 = mel::residue_series(w, 1e-6) / std::pow(1e-6, 0.5);
    const double r2 = mel::residue_series(w, 1e-8) / std::pow(1e-8, 0.5);
    CHECK(rel_gap(r1, r2) < 1e-3);
}

TEST_CASE("residue series refuses coincident pole ladders") {
    auto w = ens::laguerre_product_weight<double>({0.0, 1.0});  // a_j - a_k integer
    CHECK_THROWS_AS(mel::residue_series(w, 0.5), coincident_pole_error);
    // but the contour handles it fine: w(x) = G-function with equal-spaced poles
    CHECK(mel::inverse_mellin(w, 0.5) > 0.0);
}

TEST_CASE("inverse_mellin extended precision smoke") {
    auto w = ens::laguerre_product_weight<ext_real>({ext_real(0)});
    const ext_real got = mel::inverse_mellin(w, ext_real(1), mel::ContourOptions{1e-32, 80.0, 1601, 4000000, 2e5});
    CHECK(to_double(abs(got - exp(ext_real(-1)))) < 1e-28);
}
