#pragma once

// Hard-edge limit machinery: the limit functions F and G, the Bessel
// kernel, the per-family first-order corrections, scaled finite-N kernels
// (generic and Bessel-normalized), and the residual ladders whose decay
// orders are the artifact's main verification currency.
//
// Conventions.  For the generic families the finite-N statement checked is
//
//   (1/N^g) K_N(x/N^g, y/N^g) = int_0^1 F(xt) G(yt) dt + (1/N) corr(x, y) + O(1/N^2)
//
// with g the family scale power, F(x) = sum_j (-x)^j / (j! W(j+1)) and
// G = InvMellin[ W(s)/Gamma(1-s) ], where W is the N-free normalized
// weight transform (for inverse products: the same product transform with
// the b-dependent factors dropped).  Corrections:
//
//   products / MB:     corr = -(1/2) [ x F'(x) G(y) - F(x) y G'(y) ]
//   inverse products:  corr = -((M+1)/2) [ same ] + (sum b_l) F(x) G(y)
//
// For the M = 1 Laguerre and Jacobi cases the Bessel-normalized symmetric
// kernels are used instead, scaled by 1/(4N), 1/(4N+2a), 1/(4N^2) or
// 1/(4(N+(a+b)/2)^2), and compared against the Bessel hard-edge kernel.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardedge/convergence.hpp"
#include "hardedge/ensembles.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/mellin.hpp"
#include "hardedge/polya.hpp"
#include "hardedge/quadrature.hpp"
#include "hardedge/specfun.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace hardedge::hardlimit {

// ---- Bessel hard-edge kernel ----

// (1/4) int_0^1 J_a(sqrt(xt)) J_a(sqrt(yt)) dt by adaptive quadrature.
template <class T>
T bessel_kernel(const T& x, const T& y, const T& a, double rel_tol = 1e-12) {
    using std::sqrt;
    if (x < T(0) || y < T(0)) throw domain_error("bessel_kernel: x, y must be >= 0");
    if (!(a > T(-1))) throw domain_error("bessel_kernel: need a > -1");
    auto f = [&](const T& t) {
        return specfun::bessel_j(a, sqrt(x * t)) * specfun::bessel_j(a, sqrt(y * t));
    };
    // J_a(sqrt(xt)) ~ t^{a/2} at t = 0: integrable but not smooth for
    // fractional a; map t = u^2 so the integrand is J_a(u sqrt(x))-smooth.
    auto f_sub = [&](const T& u) {
        return T(2) * u * specfun::bessel_j(a, u * sqrt(x)) * specfun::bessel_j(a, u * sqrt(y));
    };
    (void)f;
    return quadrature::integrate_adaptive(f_sub, T(0), T(1), rel_tol, 32, 4096) / T(4);
}

// Standard closed ratio form; kept as the cross-oracle of the quadrature
// route (the two must agree, which the test suite asserts on a grid).
template <class T>
T bessel_kernel_closed(const T& x, const T& y, const T& a) {
    using std::abs;
    using std::sqrt;
    auto jp = [&](const T& z) {  // J_a'(z) = (a/z) J_a(z) - J_{a+1}(z)
        return (a / z) * specfun::bessel_j(a, z) - specfun::bessel_j(a + T(1), z);
    };
    const T sx = sqrt(x), sy = sqrt(y);
    if (abs(x - y) <= T(1e-7) * (x + y + T(1))) {
        const T z = (sx + sy) / T(2);
        if (z == T(0)) return a == T(0) ? T(0.25) : T(0);
        const T ja = specfun::bessel_j(a, z);
        const T jb = specfun::bessel_j(a + T(1), z);
        // confluent form of the ratio expression
        return (ja * ja + jb * jb - (T(2) * a / z) * ja * jb) / T(4);
    }
    return (specfun::bessel_j(a, sx) * sy * jp(sy) - sx * jp(sx) * specfun::bessel_j(a, sy)) /
           (T(2) * (x - y));
}

// ---- generic limit model ----

template <class T>
class LimitModel {
  public:
    explicit LimitModel(const ensembles::EnsembleSpec& spec)
        : spec_(spec),
          winf_(limit_weight(spec)),
          g_bank_(winf_.over_gamma_one_minus_s(), 1e-12),
          g_euler_bank_(winf_.over_gamma_one_minus_s().with_euler_derivative(), 1e-12) {}

    const ensembles::EnsembleSpec& spec() const { return spec_; }
    const mellin::MellinWeight<T>& weight_transform() const { return winf_; }
    double scale_power() const { return ensembles::hard_edge_scale_power(spec_); }

    // F(x) = sum_j (-x)^j / (j! W(j+1)); euler = x F'(x) by term-wise
    // differentiation.
    T limit_f(const T& x) const { return f_series(x, 0); }
    T limit_f_euler(const T& x) const { return f_series(x, 1); }

    T limit_g(const T& x) { return g_eval(g_bank_, x, 0); }
    T limit_g_euler(const T& x) { return g_eval(g_euler_bank_, x, 1); }

    // int_0^1 F(xt) G(yt) dt
    T limit_kernel(const T& x, const T& y, double rel_tol = 1e-11) {
        const int k = polya::substitution_power(winf_);
        const T floor_arg = T(1e-30);
        auto f = [&](const T& u) {
            T t(1), du(k);
            for (int i = 0; i < k; ++i) t *= u;
            for (int i = 0; i < k - 1; ++i) du *= u;
            if (y * t < floor_arg) return T(0);
            return du * limit_f(x * t) * limit_g(y * t);
        };
        return quadrature::integrate_adaptive(f, T(0), T(1), rel_tol, 64, 8192);
    }

    // Family first-order correction in the generic-limit convention.  The
    // euler helpers already carry the x d/dx factors.
    T correction(const T& x, const T& y) {
        const T d = limit_f_euler_cached(x) * limit_g(y) - limit_f(x) * limit_g_euler(y);
        switch (spec_.family) {
            case ensembles::Family::LaguerreProduct:
            case ensembles::Family::MuttalibBorodinLaguerre:
                return -d / T(2);
            case ensembles::Family::LaguerreInverseProduct:
            case ensembles::Family::JacobiUnitary: {
                T bsum(0);
                for (double b : spec_.b_params) bsum += T(b);
                return -T(spec_.m_count + 1) / T(2) * d + bsum * limit_f(x) * limit_g(y);
            }
        }
        throw domain_error("correction: unknown family");
    }

  private:
    ensembles::EnsembleSpec spec_;
    mellin::MellinWeight<T> winf_;
    mellin::ContourBank<T> g_bank_;
    mellin::ContourBank<T> g_euler_bank_;
    mutable std::vector<T> log_mom_;
    bool g_residue_refused_ = false;

    static mellin::MellinWeight<T> limit_weight(const ensembles::EnsembleSpec& spec) {
        std::vector<T> a(spec.a_params.begin(), spec.a_params.end());
        switch (spec.family) {
            case ensembles::Family::LaguerreProduct:
            case ensembles::Family::LaguerreInverseProduct:
            case ensembles::Family::JacobiUnitary:
                // the b-dependent factors scale out of the hard-edge limit
                return ensembles::laguerre_product_weight<T>(a);
            case ensembles::Family::MuttalibBorodinLaguerre:
                return ensembles::mb_laguerre_weight<T>(a.at(0), T(spec.theta));
        }
        throw domain_error("limit_weight: unknown family");
    }

    // x d/dx F has the same series cost as F; a micro-cache would be noise.
    T limit_f_euler_cached(const T& x) const { return f_series(x, 1); }

    T log_moment(int j) const {
        while (static_cast<int>(log_mom_.size()) <= j) {
            const int k = static_cast<int>(log_mom_.size());
            T acc = winf_.log_prefactor;
            for (const auto& f : winf_.factors) {
                const T arg = f.slope * T(k + 1) + f.offset;
                const T lg = specfun::log_gamma_real(arg);
                acc += (f.side == mellin::FactorSide::Numerator) ? lg : -lg;
            }
            log_mom_.push_back(acc);
        }
        return log_mom_[j];
    }

    T f_series(const T& x, int euler) const {
        using std::abs;
        using std::exp;
        T term = exp(-log_moment(0));
        T sum = (euler == 0) ? term : T(0);
        T peak = abs(term);
        for (int j = 1; j <= 500; ++j) {
            term *= -x / T(j) * exp(log_moment(j - 1) - log_moment(j));
            const T contrib = (euler == 0) ? term : T(j) * term;
            sum += contrib;
            peak = std::max(peak, abs(contrib));
            if (abs(term) <= eps_v<T>() * peak * T(0.01) && j > 6) return sum;
        }
        throw convergence_error("LimitModel: F series cap reached");
    }

    // G primarily through the left-pole residue expansion: the limit
    // integrand W(s)/Gamma(1-s) has its numerator gamma decay exactly
    // cancelled by the denominator reflection for M = 1, so a vertical
    // line decays only polynomially there (and not at all for MB with
    // theta < 1).  Non-generic parameters (integer-separated pole
    // ladders) refuse the residue route and fall back to the contour
    // bank, which decays exponentially precisely in those M >= 2 cases.
    T g_eval(mellin::ContourBank<T>& bank, const T& x, int euler) {
        (void)euler;
        if (!g_residue_refused_) {
            try {
                return mellin::residue_series(bank.integrand(), x);
            } catch (const coincident_pole_error&) {
                g_residue_refused_ = true;
            }
        }
        return bank(x);
    }
};

// ---- scaled finite-N kernels ----

enum class Scaling { Plain, Optimal };

// Generic hard-edge window: s K_N(s x, s y) with s = N^{-g}; optimal
// scaling is only defined for the Bessel-normalized M = 1 families below.
template <class T>
class ScaledKernel {
  public:
    ScaledKernel(const ensembles::EnsembleSpec& spec, int n_dim)
        : spec_(ensembles::with_dim(spec, n_dim)),
          ev_(ensembles::build_ensemble<T>(spec_)),
          scale_(compute_scale(spec_, n_dim)) {}

    const polya::BiorthogonalEvaluator<T>& evaluator() const { return ev_; }
    T scale() const { return scale_; }

    // Prepare the shared dual-function table for a grid whose scaled
    // arguments stay below y_max (original coordinates).
    void prepare(const T& y_max, double rel_tol = 1e-11) {
        mellin::ContourOptions opt;
        opt.rel_tol = rel_tol;
        const T hi = y_max * scale_;
        const T lo_factor = T(polya::substitution_power(ev_.weight()) == 4 ? 1e-32 : 1e-18);
        table_ = ev_.prepare_q(ev_.dim(), hi * lo_factor, hi, opt);
    }

    // s K_N(s x, s y), unsymmetrized (the generic-limit convention).
    T operator()(const T& x, const T& y, double rel_tol = 1e-11) const {
        return scale_ * ev_.kernel_from(table_, x * scale_, y * scale_, rel_tol);
    }

    // Symmetrized value sqrt(w(sx)/w(sy)) s K_N(sx, sy); the weight ratio
    // is evaluated in log space from the ensemble's Mellin data.
    T symmetrized(const T& x, const T& y, double rel_tol = 1e-11) const {
        return weight_ratio_sqrt(x * scale_, y * scale_) * (*this)(x, y, rel_tol);
    }

  private:
    ensembles::EnsembleSpec spec_;
    polya::BiorthogonalEvaluator<T> ev_;
    T scale_;
    typename polya::BiorthogonalEvaluator<T>::QTable table_;

    static T compute_scale(const ensembles::EnsembleSpec& spec, int n_dim) {
        using std::pow;
        return pow(T(n_dim), T(-ensembles::hard_edge_scale_power(spec)));
    }

    T weight_ratio_sqrt(const T& u, const T& v) const {
        using std::exp;
        using std::log;
        using std::log1p;
        switch (spec_.family) {
            case ensembles::Family::LaguerreProduct: {
                if (spec_.m_count != 1)
                    throw domain_error("symmetrized kernel: M = 1 families only");
                const T a = T(spec_.a_params[0]);
                return exp(T(0.5) * (a * (log(u) - log(v)) - (u - v)));
            }
            case ensembles::Family::LaguerreInverseProduct:
            case ensembles::Family::JacobiUnitary: {
                if (spec_.m_count != 1)
                    throw domain_error("symmetrized kernel: M = 1 families only");
                const T a = T(spec_.a_params[0]);
                const T expo = T(spec_.a_params[0] + spec_.b_params[0] + spec_.matrix_dim + 1);
                return exp(T(0.5) * (a * (log(u) - log(v)) - expo * (log1p(u) - log1p(v))));
            }
            default:
                throw domain_error("symmetrized kernel: Laguerre/Jacobi families only");
        }
    }
};

// Bessel-normalized window for the M = 1 Laguerre family:
// (1/d) K^sym_N(X/d, Y/d) with denominator d = 4N (plain) or 4N+2a
// (optimal).
template <class T>
class LaguerreBesselWindow {
  public:
    LaguerreBesselWindow(const T& a, int n_dim, Scaling scaling)
        : a_(a), denom_(scaling == Scaling::Plain ? T(4 * n_dim) : T(4 * n_dim) + T(2) * a) {
        ensembles::EnsembleSpec spec;
        spec.family = ensembles::Family::LaguerreProduct;
        spec.m_count = 1;
        spec.a_params = {to_double(a)};
        spec.matrix_dim = n_dim;
        ev_.emplace(ensembles::build_ensemble<T>(spec));
    }

    void prepare(const T& y_max, double rel_tol = 1e-11) {
        mellin::ContourOptions opt;
        opt.rel_tol = rel_tol;
        const T hi = y_max / denom_;
        const T lo_factor = T(polya::substitution_power(ev_->weight()) == 4 ? 1e-32 : 1e-18);
        table_ = ev_->prepare_q(ev_->dim(), hi * lo_factor, hi, opt);
    }

    T operator()(const T& x, const T& y, double rel_tol = 1e-11) const {
        using std::exp;
        using std::log;
        const T u = x / denom_, v = y / denom_;
        const T ratio = exp(T(0.5) * (a_ * (log(u) - log(v)) - (u - v)));
        return ratio * ev_->kernel_from(table_, u, v, rel_tol) / denom_;
    }

  private:
    T a_;
    T denom_;
    std::optional<polya::BiorthogonalEvaluator<T>> ev_;
    typename polya::BiorthogonalEvaluator<T>::QTable table_;
};

// Bessel-normalized window for the Jacobi ensemble through the M = 1
// inverse-product route: (1/d) K^J_sym(X/d, Y/d), d = 4N^2 (plain) or
// 4(N+(a+b)/2)^2 (optimal), with the change of variables x = y/(1-y) and
// the symmetric Jacobian convention.
template <class T>
class JacobiBesselWindow {
  public:
    JacobiBesselWindow(const T& a, const T& b, int n_dim, Scaling scaling, bool map_to_jacobi)
        : a_(a), b_(b), n_(n_dim), map_(map_to_jacobi) {
        const T nt = (scaling == Scaling::Plain) ? T(n_dim) : T(n_dim) + (a + b) / T(2);
        denom_ = T(4) * nt * nt;
        ensembles::EnsembleSpec spec;
        spec.family = ensembles::Family::LaguerreInverseProduct;
        spec.m_count = 1;
        spec.a_params = {to_double(a)};
        spec.b_params = {to_double(b)};
        spec.matrix_dim = n_dim;
        ev_.emplace(ensembles::build_ensemble<T>(spec));
    }

    void prepare(const T& y_max, double rel_tol = 1e-11) {
        mellin::ContourOptions opt;
        opt.rel_tol = rel_tol;
        T hi = y_max / denom_;
        if (map_) hi = ensembles::jacobi_to_halfline(hi);
        const T lo_factor = T(polya::substitution_power(ev_->weight()) == 4 ? 1e-32 : 1e-18);
        table_ = ev_->prepare_q(ev_->dim(), hi * lo_factor, hi, opt);
    }

    T operator()(const T& x, const T& y, double rel_tol = 1e-11) const {
        using std::exp;
        using std::log;
        using std::log1p;
        using std::sqrt;
        T u = x / denom_, v = y / denom_;
        T jac(1);
        if (map_) {
            // Jacobi coordinates: evaluate the half-line kernel at the
            // mapped points with the symmetric Jacobian factor.
            jac = sqrt(ensembles::jacobi_map_derivative(u) * ensembles::jacobi_map_derivative(v));
            u = ensembles::jacobi_to_halfline(u);
            v = ensembles::jacobi_to_halfline(v);
        }
        const T expo = a_ + b_ + T(n_ + 1);
        const T ratio = exp(T(0.5) * (a_ * (log(u) - log(v)) - expo * (log1p(u) - log1p(v))));
        return jac * ratio * ev_->kernel_from(table_, u, v, rel_tol) / denom_;
    }

  private:
    T a_, b_;
    int n_;
    bool map_;
    T denom_;
    std::optional<polya::BiorthogonalEvaluator<T>> ev_;
    typename polya::BiorthogonalEvaluator<T>::QTable table_;
};

// ---- residual grids and ladders ----

struct GridSpec {
    double max = 6.0;
    int points = 5;  // tensor grid at (k/points)*max, k = 1..points
    std::vector<double> axis() const {
        std::vector<double> v(points);
        for (int k = 1; k <= points; ++k) v[k - 1] = max * k / points;
        return v;
    }
};

// Evaluate fn over the tensor grid.  The OpenMP path and the serial
// reference must produce identical output (each cell is independent and
// written to its own slot); tests assert the equality and the benchmark
// target compares their throughput.
template <class F>
std::vector<std::vector<double>> grid_eval_serial(const GridSpec& grid, const F& fn) {
    const auto ax = grid.axis();
    const int n = static_cast<int>(ax.size());
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = fn(ax[i], ax[j]);
    return out;
}

template <class F>
std::vector<std::vector<double>> grid_eval_parallel(const GridSpec& grid, const F& fn) {
    const auto ax = grid.axis();
    const int n = static_cast<int>(ax.size());
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
#if defined(_OPENMP)
#pragma omp parallel for collapse(2) schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = fn(ax[i], ax[j]);
    return out;
}

template <class F>
std::vector<std::vector<double>> grid_eval(const GridSpec& grid, const F& fn, bool parallel) {
    return parallel ? grid_eval_parallel(grid, fn) : grid_eval_serial(grid, fn);
}

struct LadderOptions {
    std::vector<int> ladder{25, 50, 100, 200};
    GridSpec grid{6.0, 5};
    bool subtract_correction = true;
    bool parallel = true;
    double kernel_tol = 1e-11;
};

// Generic-family ladder: residuals of s K_N(sx, sy) against the limit
// kernel (optionally minus the first-order correction).
inline ConvergenceReport generic_ladder(const ensembles::EnsembleSpec& base,
                                        const LadderOptions& opt) {
    LimitModel<double> model(base);
    const auto ax = opt.grid.axis();
    const int n = static_cast<int>(ax.size());
    // limit surface and correction surface are N-independent
    std::vector<std::vector<double>> limit(n, std::vector<double>(n));
    std::vector<std::vector<double>> corr(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            limit[i][j] = model.limit_kernel(ax[i], ax[j]);
            corr[i][j] = opt.subtract_correction ? model.correction(ax[i], ax[j]) : 0.0;
        }
    }
    ConvergenceReport rep;
    rep.n_ladder = opt.ladder;
    for (int n_dim : opt.ladder) {
        ScaledKernel<double> kn(base, n_dim);
        kn.prepare(opt.grid.max, opt.kernel_tol);
        auto resid = grid_eval(
            opt.grid,
            [&](double x, double y) {
                const int i = static_cast<int>(std::lround(x / opt.grid.max * opt.grid.points)) - 1;
                const int j = static_cast<int>(std::lround(y / opt.grid.max * opt.grid.points)) - 1;
                return std::abs(kn(x, y, opt.kernel_tol) - limit[i][j] - corr[i][j] / n_dim);
            },
            opt.parallel);
        double sup = 0.0;
        std::vector<double> flat;
        flat.reserve(n * n);
        for (const auto& row : resid)
            for (double r : row) {
                sup = std::max(sup, r);
                flat.push_back(r);
            }
        rep.residual_sup.push_back(sup);
        rep.per_point.push_back(std::move(flat));
    }
    const auto fitted = fit_decay(rep.n_ladder, rep.residual_sup);
    rep.fitted_order = fitted.fitted_order;
    rep.fitted_coefficient = fitted.fitted_coefficient;
    return rep;
}

enum class BesselFamily { Laguerre, JacobiMapped, InverseHalfline };

struct BesselLadderOptions {
    std::vector<int> ladder{25, 50, 100, 200};
    GridSpec grid{8.0, 5};
    Scaling scaling = Scaling::Plain;
    bool subtract_correction = false;
    bool parallel = true;
    double kernel_tol = 1e-11;
};

// Bessel-window ladder for the M = 1 Laguerre / Jacobi / inverse-product
// families: residuals against K_hard (optionally minus the predicted
// (coef) J_a(sqrt X) J_a(sqrt Y) / N term).
inline ConvergenceReport bessel_ladder(BesselFamily fam, double a, double b,
                                       const BesselLadderOptions& opt) {
    const auto ax = opt.grid.axis();
    const int n = static_cast<int>(ax.size());
    std::vector<std::vector<double>> hard(n, std::vector<double>(n));
    std::vector<std::vector<double>> jj(n, std::vector<double>(n));
    std::vector<double> jvals(n);
    for (int i = 0; i < n; ++i) jvals[i] = specfun::bessel_j(a, std::sqrt(ax[i]));
    double coef = 0.0;
    if (opt.subtract_correction) {
        // Laguerre: (a/8) J J per the first-order expansion; the Jacobi
        // coefficient is fixed by the scaling identity at (a+b)/4 and is
        // re-fitted (not assumed) by the acceptance checks.
        coef = (fam == BesselFamily::Laguerre) ? a / 8.0 : (a + b) / 4.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            hard[i][j] = bessel_kernel(ax[i], ax[j], a);
            jj[i][j] = jvals[i] * jvals[j];
        }
    }
    ConvergenceReport rep;
    rep.n_ladder = opt.ladder;
    for (int n_dim : opt.ladder) {
        std::function<double(double, double)> window;
        std::optional<LaguerreBesselWindow<double>> lw;
        std::optional<JacobiBesselWindow<double>> jw;
        if (fam == BesselFamily::Laguerre) {
            lw.emplace(a, n_dim, opt.scaling);
            lw->prepare(opt.grid.max, opt.kernel_tol);
            window = [&](double x, double y) { return (*lw)(x, y, opt.kernel_tol); };
        } else {
            jw.emplace(a, b, n_dim, opt.scaling, fam == BesselFamily::JacobiMapped);
            jw->prepare(opt.grid.max, opt.kernel_tol);
            window = [&](double x, double y) { return (*jw)(x, y, opt.kernel_tol); };
        }
        auto resid = grid_eval(
            opt.grid,
            [&](double x, double y) {
                const int i = static_cast<int>(std::lround(x / opt.grid.max * opt.grid.points)) - 1;
                const int j = static_cast<int>(std::lround(y / opt.grid.max * opt.grid.points)) - 1;
                return std::abs(window(x, y) - hard[i][j] - coef * jj[i][j] / n_dim);
            },
            opt.parallel);
        double sup = 0.0;
        std::vector<double> flat;
        flat.reserve(n * n);
        for (const auto& row : resid)
            for (double r : row) {
                sup = std::max(sup, r);
                flat.push_back(r);
            }
        rep.residual_sup.push_back(sup);
        rep.per_point.push_back(std::move(flat));
    }
    const auto fitted = fit_decay(rep.n_ladder, rep.residual_sup);
    rep.fitted_order = fitted.fitted_order;
    rep.fitted_coefficient = fitted.fitted_coefficient;
    return rep;
}

// Sup over the grid of |coef J_a J_a|: the predicted first-order
// coefficient that an unsubtracted ladder fit should reproduce.
inline double correction_sup(double coef, double a, const GridSpec& grid) {
    double sup = 0.0;
    for (double x : grid.axis()) {
        for (double y : grid.axis()) {
            sup = std::max(sup, std::abs(coef * specfun::bessel_j(a, std::sqrt(x)) *
                                         specfun::bessel_j(a, std::sqrt(y))));
        }
    }
    return sup;
}

}  // namespace hardedge::hardlimit
