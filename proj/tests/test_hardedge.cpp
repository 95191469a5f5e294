#include <doctest.h>

#include <cmath>

#include "hardedge/hardedge.hpp"

using namespace hardedge;
namespace hl = hardedge::hardlimit;
namespace ens = hardedge::ensembles;
namespace sf = hardedge::specfun;

namespace {
ens::EnsembleSpec product_spec(std::vector<double> a, int n) {
    ens::EnsembleSpec s;
    s.family = ens::Family::LaguerreProduct;
    s.m_count = static_cast<int>(a.size());
    s.a_params = std::move(a);
    s.matrix_dim = n;
    return s;
}
}  // namespace

TEST_CASE("bessel kernel special values and symmetry") {
    CHECK(hl::bessel_kernel(0.0, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-11));
    CHECK(hl::bessel_kernel(0.0, 0.0, 1.5) == doctest::Approx(0.0));
    CHECK(hl::bessel_kernel(2.0, 5.0, 1.0) ==
          doctest::Approx(hl::bessel_kernel(5.0, 2.0, 1.0)).epsilon(1e-11));
}

TEST_CASE("bessel kernel closed form agrees with the quadrature route") {
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
        for (double x : {0.3, 2.0, 6.5}) {
            for (double y : {0.3, 2.0, 6.5, 7.9}) {
                const double q = hl::bessel_kernel(x, y, a);
                const double c = hl::bessel_kernel_closed(x, y, a);
                CHECK(std::abs(q - c) < 1e-10 * std::max(1.0, std::abs(q)));
            }
        }
    }
}

TEST_CASE("bessel kernel scaling identity") {
    // (x d_x + y d_y + 1) K_hard = (1/4) J_a(sqrt x) J_a(sqrt y)
    for (double a : {0.0, 1.0}) {
        for (auto [x, y] : {std::pair{1.0, 2.0}, {3.0, 0.7}}) {
            const double h = 1e-4;
            auto kx = [&](double u) { return hl::bessel_kernel(u, y, a); };
            auto ky = [&](double v) { return hl::bessel_kernel(x, v, a); };
            const double dx = (kx(x + h) - kx(x - h)) / (2 * h);
            const double dy = (ky(y + h) - ky(y - h)) / (2 * h);
            const double lhs = x * dx + y * dy + hl::bessel_kernel(x, y, a);
            const double rhs =
                0.25 * sf::bessel_j(a, std::sqrt(x)) * sf::bessel_j(a, std::sqrt(y));
            CHECK(std::abs(lhs - rhs) < 1e-6);
        }
    }
}

TEST_CASE("limit functions F and G") {
    hl::LimitModel<double> m1(product_spec({0.0}, 10));
    CHECK(m1.limit_f(0.0) == doctest::Approx(1.0));
    // M = 1, a = 0: G(1) = F(1) = J_0(2)
    CHECK(m1.limit_g(1.0) == doctest::Approx(m1.limit_f(1.0)).epsilon(1e-10));
    CHECK(m1.limit_f(1.0) == doctest::Approx(sf::bessel_j(0.0, 2.0)).epsilon(1e-12));

    // M = 1 general a: G(x) = x^a F(x) / Gamma(a+1)^2 for the normalized
    // transform (the mass normalization fixes the constant)
    hl::LimitModel<double> m2(product_spec({1.3}, 10));
    for (double x : {0.4, 1.7}) {
        const double want = std::pow(x, 1.3) * m2.limit_f(x) /
                            std::pow(std::exp(sf::log_gamma_real(2.3)), 2);
        CHECK(m2.limit_g(x) == doctest::Approx(want).epsilon(1e-9));
    }

    // dual-path oracle for G at generic parameters
    hl::LimitModel<double> m3(product_spec({0.0, 0.5}, 10));
    for (double x : {0.4, 2.0}) {
        auto integrand = m3.weight_transform().over_gamma_one_minus_s();
        CHECK(std::abs(m3.limit_g(x) - mellin::residue_series(integrand, x)) < 1e-9);
    }
}

TEST_CASE("limit kernel reduces to the Bessel kernel for M = 1") {
    // int_0^1 F(xt) G(yt) dt = (y/x)^{a/2} * 4 K_hard(4x, 4y)
    for (double a : {0.0, 1.0}) {
        hl::LimitModel<double> m(product_spec({a}, 10));
        for (auto [x, y] : {std::pair{0.5, 0.5}, {0.3, 1.2}}) {
            const double lhs = m.limit_kernel(x, y);
            const double rhs =
                std::pow(y / x, a / 2) * 4.0 * hl::bessel_kernel(4 * x, 4 * y, a);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("correction symmetrization identities") {
    // the antisymmetric derivative part cancels under the swap; the
    // inverse-product b-term symmetrizes to 2 (sum b) F(x) F(y)
    auto ftilde = [](double a, double x) { return sf::bessel_j(a, 2.0 * std::sqrt(x)); };
    auto ftilde_euler = [](double a, double x) {
        const double z = std::sqrt(x);
        const double jp = (a / (2 * z)) * sf::bessel_j(a, 2 * z) - sf::bessel_j(a + 1, 2 * z);
        return z * jp;  // x d/dx J_a(2 sqrt x) = sqrt(x) J_a'(2 sqrt x)
    };
    const double a = 1.0, b = 1.0, x = 1.3, y = 2.6;
    auto corr = [&](double c_deriv, double beta, double u, double v) {
        return -c_deriv * (ftilde_euler(a, u) * ftilde(a, v) - ftilde(a, u) * ftilde_euler(a, v)) +
               beta * ftilde(a, u) * ftilde(a, v);
    };
    // pure products: swap-sum vanishes identically
    CHECK(std::abs(corr(0.5, 0.0, x, y) + corr(0.5, 0.0, y, x)) < 1e-14);
    // inverse products: swap-sum = 2 (a+b omitted) beta F F
    const double beta = a + b;
    CHECK(corr(1.0, beta, x, y) + corr(1.0, beta, y, x) ==
          doctest::Approx(2 * beta * ftilde(a, x) * ftilde(a, y)).epsilon(1e-13));
}

TEST_CASE("generic ladder: products M=1 decay orders (smoke scale)") {
    hl::LadderOptions opt;
    opt.ladder = {12, 24, 48};
    opt.grid = {4.0, 3};
    opt.kernel_tol = 1e-11;

    opt.subtract_correction = false;
    const auto unsub = hl::generic_ladder(product_spec({0.5}, 1), opt);
    CHECK(unsub.fitted_order > 0.75);
    CHECK(unsub.fitted_order < 1.3);

    opt.subtract_correction = true;
    const auto sub = hl::generic_ladder(product_spec({0.5}, 1), opt);
    CHECK(sub.fitted_order > 1.6);
}

TEST_CASE("bessel ladder: LUE optimal scaling (smoke scale)") {
    hl::BesselLadderOptions opt;
    opt.ladder = {10, 20, 40};
    opt.grid = {6.0, 3};

    opt.scaling = hl::Scaling::Plain;
    opt.subtract_correction = false;
    const auto plain = hl::bessel_ladder(hl::BesselFamily::Laguerre, 1.0, 0.0, opt);
    CHECK(plain.fitted_order > 0.75);
    CHECK(plain.fitted_order < 1.3);

    opt.scaling = hl::Scaling::Optimal;
    const auto optimal = hl::bessel_ladder(hl::BesselFamily::Laguerre, 1.0, 0.0, opt);
    CHECK(optimal.fitted_order > 1.7);

    opt.scaling = hl::Scaling::Plain;
    opt.subtract_correction = true;
    const auto sub = hl::bessel_ladder(hl::BesselFamily::Laguerre, 1.0, 0.0, opt);
    CHECK(sub.fitted_order > 1.7);
}

TEST_CASE("grid evaluation: serial and parallel paths agree exactly") {
    hl::GridSpec grid{5.0, 4};
    ens::EnsembleSpec spec = product_spec({0.0}, 12);
    hl::ScaledKernel<double> kn(spec, 12);
    kn.prepare(grid.max);
    auto fn = [&](double x, double y) { return kn(x, y); };
    const auto a = hl::grid_eval_serial(grid, fn);
    const auto b = hl::grid_eval_parallel(grid, fn);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[i][j] == b[i][j]);
}

TEST_CASE("convergence fit recovers synthetic power laws") {
    std::vector<int> ladder{25, 50, 100, 200};
    std::vector<double> r1, r2;
    for (int n : ladder) {
        r1.push_back(3.7 / n);
        r2.push_back(0.9 / double(n) / n);
    }
    const auto f1 = fit_decay(ladder, r1);
    CHECK(f1.fitted_order == doctest::Approx(1.0).epsilon(0.01));
    CHECK(f1.fitted_coefficient == doctest::Approx(3.7).epsilon(0.01));
    const auto f2 = fit_decay(ladder, r2);
    CHECK(f2.fitted_order == doctest::Approx(2.0).epsilon(0.01));
    // noise-floor guard
    std::vector<double> tiny{1e-12, 1e-12, 1e-12, 1e-12};
    CHECK_THROWS_AS(fit_decay(ladder, tiny), convergence_error);
}
