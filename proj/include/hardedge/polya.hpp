#pragma once

// Generic Polya-ensemble layer: the biorthogonal pair (p_n, q_n), the
// correlation kernel, their differential recurrences, and the
// biorthogonality checks, parameterized only by a MellinWeight.
//
// Internally everything runs on the normalized pair
//
//   pbar_n(x) = sum_{j<=n} [n!/(n-j)!] (-x)^j / (j! M(j+1)),   p_n = (-1)^n M(n+1) pbar_n
//   qbar_n(x) = InvMellin[ M(s) prod_{k=1..n}(k-s) / n! ](x),  q_n = (-1)^n qbar_n / M(n+1)
//
// so that the kernel takes the well-scaled form
//
//   K_N(x, y) = N int_0^1 pbar_{N-1}(x t) qbar_N(y t) dt
//
// with no factorially large prefactors anywhere.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/mellin.hpp"
#include "hardedge/quadrature.hpp"
#include "hardedge/scalar.hpp"

namespace hardedge::polya {

template <class T>
struct PolyaEnsemble {
    int matrix_dim = 0;  // N
    mellin::MellinWeight<T> weight;
};

// The kernel integrals carry an integrable endpoint factor t^{e0} at t = 0
// with e0 = -strip_lo.  A power substitution t = u^k turns it into
// u^{k(e0+1)-1}; choose k in {2, 4} so that exponent is (near-)integral and
// the integrand becomes smooth for Gauss-Legendre.
template <class T>
int substitution_power(const mellin::MellinWeight<T>& w) {
    const double e0 = -to_double(w.strip_lo);
    auto near_int = [](double v) { return std::abs(v - std::round(v)) < 1e-9; };
    if (near_int(2.0 * (e0 + 1.0) - 1.0)) return 2;
    if (near_int(4.0 * (e0 + 1.0) - 1.0)) return 4;
    return 2;
}

namespace detail {

template <class T, class F>
std::pair<T, T> richardson_pair(const F& f, const T& x, const T& h) {
    auto central = [&](const T& step) { return (f(x + step) - f(x - step)) / (T(2) * step); };
    auto level = [&](const T& step) {
        return (T(4) * central(step / T(2)) - central(step)) / T(3);
    };
    return {level(h), level(h / T(2))};
}

}  // namespace detail

template <class T>
class BiorthogonalEvaluator {
  public:
    explicit BiorthogonalEvaluator(PolyaEnsemble<T> ens) : ens_(std::move(ens)) {
        const int n = ens_.matrix_dim;
        if (n < 1) throw domain_error("BiorthogonalEvaluator: N must be >= 1");
        log_mom_.resize(n + 1);
        for (int k = 0; k <= n; ++k) log_mom_[k] = log_moment_direct(k);
    }

    int dim() const { return ens_.matrix_dim; }
    const mellin::MellinWeight<T>& weight() const { return ens_.weight; }
    const PolyaEnsemble<T>& ensemble() const { return ens_; }

    // log M[w](k+1), cached for k = 0..N.
    T log_moment(int k) const { return log_mom_.at(k); }
    T moment(int k) const {
        using std::exp;
        return exp(log_mom_.at(k));
    }
    // M[w](i+1) / M[w](j+1)
    T moment_ratio(int i, int j) const {
        using std::exp;
        return exp(log_mom_.at(i) - log_mom_.at(j));
    }

    // ---- normalized pair ----

    T pbar(int n, const T& x) const { return pbar_series(n, x, 0); }
    // x d/dx pbar_n, by exact term-wise differentiation.
    T pbar_euler(int n, const T& x) const { return pbar_series(n, x, 1); }

    mellin::MellinWeight<T> dual_integrand(int n, int euler_power = 0) const {
        auto w = ens_.weight.with_dual_polynomial(n);
        if (euler_power > 0) w = w.with_euler_derivative(euler_power);
        return w;
    }

    T qbar(int n, const T& x) const { return mellin::inverse_mellin(dual_integrand(n), x); }
    // x d/dx qbar_n via the (-s) factor under the inversion.
    T qbar_euler(int n, const T& x) const {
        return mellin::inverse_mellin(dual_integrand(n, 1), x);
    }

    // ---- literal pair (overflow-prone at large n by construction) ----

    T p(int n, const T& x) const {
        using std::exp;
        const T sgn = (n % 2 == 0) ? T(1) : T(-1);
        return sgn * exp(log_mom_.at(n)) * pbar(n, x);
    }
    T q(int n, const T& x) const {
        using std::exp;
        const T sgn = (n % 2 == 0) ? T(1) : T(-1);
        return sgn * exp(-log_mom_.at(n)) * qbar(n, x);
    }

    // ---- shared-contour batched q evaluation ----

    struct QTable {
        mellin::PreparedContour<T> pc;
        int n = 0;
    };

    QTable prepare_q(int n, const T& x_min, const T& x_max,
                     const mellin::ContourOptions& opt = {}) const {
        using std::log;
        const auto w = dual_integrand(n);
        // Abscissa balanced at the log-midpoint of the argument range: the
        // trapezoid noise grows like x^{-c} at the small end while the
        // cancellation grows with x at the large end.
        const T c = mellin::choose_abscissa(w, (log(x_min) + log(x_max)) / T(2));
        return QTable{mellin::prepare_contour(w, c, log(x_min), log(x_max), opt), n};
    }

    T qbar_from(const QTable& table, const T& x) const { return table.pc.eval(x); }

    // ---- kernels ----

    // Direct sum K_N = sum_{j<N} p_j(x) q_j(y) = sum_j pbar_j(x) qbar_j(y).
    // Cross-check scale only.
    T kernel_sum(const T& x, const T& y) const {
        if (dim() > 12) throw domain_error("kernel_sum: guarded to N <= 12");
        T sum(0);
        for (int j = 0; j < dim(); ++j) sum += pbar(j, x) * qbar(j, y);
        return sum;
    }

    // Integral form, adaptive Gauss-Legendre with order doubling.  A
    // t = u^2 substitution absorbs the integrable singularity at t = 0
    // when the weight diverges at the origin.
    T kernel(const T& x, const T& y, double rel_tol = 1e-11) const {
        using std::log;
        if (!(y > T(0))) throw domain_error("kernel: y must be positive");
        const T x_hi = y;
        const T x_lo = y * T(substitution_power(ens_.weight) == 4 ? 1e-32 : 1e-16);
        QTable table = prepare_q(dim(), x_lo, x_hi);
        return kernel_from(table, x, y, rel_tol);
    }

    T kernel_from(const QTable& table, const T& x, const T& y, double rel_tol = 1e-11) const {
        if (table.n != dim()) throw domain_error("kernel_from: table order mismatch");
        const int k = substitution_power(ens_.weight);
        const T floor_arg = T(1e-32);
        auto integrand = [&](const T& u) {
            T t(1), du(k);
            for (int i = 0; i < k; ++i) t *= u;
            for (int i = 0; i < k - 1; ++i) du *= u;
            if (y * t < floor_arg) return T(0);
            return du * pbar(dim() - 1, x * t) * qbar_from(table, y * t);
        };
        const T val = quadrature::integrate_adaptive(integrand, T(0), T(1), rel_tol, 64, 8192);
        return T(dim()) * val;
    }

    // ---- differential recurrences (residuals of the exact identities) ----

    // | x p_n' - n p_n - n (M(n+1)/M(n)) p_{n-1} |, with p_n' by exact
    // term-wise series differentiation.
    T recurrence_residual_p(int n, const T& x) const {
        using std::abs;
        using std::exp;
        if (n < 1 || n > dim()) throw domain_error("recurrence_residual_p: need 1 <= n <= N");
        const T norm = abs(pbar_euler(n, x) - T(n) * (pbar(n, x) - pbar(n - 1, x)));
        return exp(log_mom_.at(n)) * norm;
    }

    // | x q_n' + (n+1) q_n + ((n+1) M(n+2)/M(n+1)) q_{n+1} |, with q_n' by
    // centered differences plus Richardson extrapolation.  The analytic
    // Euler-derivative route (contour integrand times -s) is exposed
    // separately as qbar_euler and must agree.
    T recurrence_residual_q(int n, const T& x, double fd_agreement = 1e-7) const {
        using std::abs;
        using std::exp;
        if (n < 0 || n + 1 > dim()) throw domain_error("recurrence_residual_q: need 0 <= n <= N-1");
        const T h = T(1e-4) * std::max(T(1), abs(x));
        auto qn = [&](const T& u) { return qbar(n, u); };
        auto [d1, d2] = detail::richardson_pair(qn, x, h);
        if (abs(d1 - d2) > T(fd_agreement) * std::max(T(1), abs(d2)))
            throw convergence_error("recurrence_residual_q: Richardson levels disagree");
        const T norm = abs(x * d2 - T(n + 1) * (qbar(n + 1, x) - qbar(n, x)));
        return exp(-log_mom_.at(n)) * norm;
    }

    // | (x d_x + y d_y + 1) K_N + N (M(N+1)/M(N)) p_{N-1}(x) q_N(y) |,
    // partials by Richardson differences of the kernel integral.
    T differential_identity_residual(const T& x, const T& y, double fd_agreement = 1e-6) const {
        using std::abs;
        const int n = dim();
        auto kx = [&](const T& u) { return kernel(u, y); };
        auto ky = [&](const T& v) { return kernel(x, v); };
        const T hx = T(1e-4) * std::max(T(1), abs(x));
        const T hy = T(1e-4) * std::max(T(1), abs(y));
        auto [dx1, dx2] = detail::richardson_pair(kx, x, hx);
        auto [dy1, dy2] = detail::richardson_pair(ky, y, hy);
        if (abs(dx1 - dx2) > T(fd_agreement) * std::max(T(1), abs(dx2)) ||
            abs(dy1 - dy2) > T(fd_agreement) * std::max(T(1), abs(dy2)))
            throw convergence_error("differential_identity_residual: Richardson disagreement");
        const T lhs = x * dx2 + y * dy2 + kernel(x, y);
        const T rhs = T(n) * pbar(n - 1, x) * qbar(n, y);
        return abs(lhs - rhs);
    }

    // d/dt [ t K_N(tx, ty) ] - N (prefactor) p_{N-1}(tx) q_N(ty), at fixed t.
    T scaled_identity_residual(const T& x, const T& y, const T& t) const {
        using std::abs;
        const int n = dim();
        auto f = [&](const T& u) { return u * kernel(u * x, u * y); };
        auto [d1, d2] = detail::richardson_pair(f, t, T(1e-4));
        (void)d1;
        const T rhs = T(n) * pbar(n - 1, t * x) * qbar(n, t * y);
        return abs(d2 - rhs);
    }

  private:
    PolyaEnsemble<T> ens_;
    std::vector<T> log_mom_;

    T log_moment_direct(int k) const {
        // throws pole_error if s = k+1 leaves the fundamental strip
        T acc = ens_.weight.log_prefactor;
        for (const auto& f : ens_.weight.factors) {
            const T arg = f.slope * T(k + 1) + f.offset;
            if (!(arg > T(0)))
                throw pole_error("PolyaEnsemble: Mellin moment outside the fundamental strip");
            const T lg = specfun::log_gamma_real(arg);
            acc += (f.side == mellin::FactorSide::Numerator) ? lg : -lg;
        }
        return acc;
    }

    // pbar_n or its Euler derivative (x d/dx), term-wise.
    T pbar_series(int n, const T& x, int euler) const {
        using std::abs;
        using std::exp;
        T term(1);  // j = 0 term of pbar; M(1) = 1 for normalized weights
        term = exp(-log_mom_.at(0));
        T sum = (euler == 0) ? term : T(0);
        T peak = abs(term);
        for (int j = 1; j <= n; ++j) {
            term *= T(n - j + 1) * (-x) / T(j) * exp(log_mom_.at(j - 1) - log_mom_.at(j));
            const T contrib = (euler == 0) ? term : T(j) * term;
            sum += contrib;
            peak = std::max(peak, abs(contrib));
            if (abs(term) < eps_v<T>() * peak * T(0.01) && j > 4 && abs(x) * T(n - j) < T(j * j))
                break;
        }
        return sum;
    }
};

// Prepared-contour bank for qbar_n, shared across argument scales.
template <class T>
class DualFunctionBank : public mellin::ContourBank<T> {
  public:
    DualFunctionBank(const BiorthogonalEvaluator<T>& ev, int n, double rel_tol = 1e-12)
        : mellin::ContourBank<T>(ev.dual_integrand(n), rel_tol) {}
};

// Kernel evaluation through a bank, valid at any argument scale.  Outside
// the spectrum the inner integral cancels exponentially relative to its
// integrand amplitude, so callers integrating tails pass an absolute
// tolerance floor alongside the relative one.
template <class T>
T kernel_banked(const BiorthogonalEvaluator<T>& ev, DualFunctionBank<T>& bank, const T& x,
                const T& y, double rel_tol = 1e-10, const T& abs_tol = T(0)) {
    const int n = ev.dim();
    const int k = substitution_power(ev.weight());
    const T floor_arg = T(1e-30);
    const T hint = abs_tol / T(rel_tol * n);
    auto integrand = [&](const T& u) {
        T t(1), du(k);
        for (int i = 0; i < k; ++i) t *= u;
        for (int i = 0; i < k - 1; ++i) du *= u;
        if (y * t < floor_arg) return T(0);
        return du * ev.pbar(n - 1, x * t) * bank(y * t);
    };
    const T val =
        quadrature::integrate_adaptive(integrand, T(0), T(1), rel_tol, 64, 8192, hint, 1e-7);
    return T(n) * val;
}

// Entries int_0^inf p_m(x) q_n(x) dx for m, n <= m_max; contract: identity
// matrix.  The weight can carry fractional powers and x log x terms at the
// origin (closely spaced or higher-order Mellin poles), which bias a plain
// panel rule, so the first unit is covered by a geometric ladder; panels
// whose contribution bound is negligible are skipped outright.
template <class T>
std::vector<std::vector<T>> biorthogonality_matrix(const BiorthogonalEvaluator<T>& ev, int m_max,
                                                   double rel_tol = 1e-11) {
    using std::abs;
    using std::exp;
    if (m_max > 8) throw domain_error("biorthogonality_matrix: guarded to m_max <= 8");
    if (m_max >= ev.dim()) throw domain_error("biorthogonality_matrix: m_max must be < N");
    std::vector<std::vector<T>> mat(m_max + 1, std::vector<T>(m_max + 1, T(0)));
    std::vector<std::pair<T, T>> panels;
    {
        T edge = T(1e-30);
        while (edge < T(1)) {
            const T next = std::min(T(1), edge * T(8));
            panels.emplace_back(edge, next);
            edge = next;
        }
        T lo(1), width(3);
        for (int p = 0; p < 40; ++p) {
            panels.emplace_back(lo, lo + width);
            lo += width;
            width *= T(1.6);
        }
    }
    for (int n = 0; n <= m_max; ++n) {
        DualFunctionBank<T> bank(ev, n, 1e-13);
        std::vector<T> acc(m_max + 1, T(0));
        bool tail_reached = false;
        int negligible_run = 0;
        for (const auto& [lo, hi] : panels) {
            const bool deep = hi <= T(1);
            // Bound the panel by probing three points; a single probe can
            // land on a zero of q_n and silently drop a live panel.
            T bound(0);
            for (const T& u : {lo, (lo + hi) / T(2), hi}) {
                for (int m = 0; m <= m_max; ++m)
                    bound = std::max(bound, abs(ev.pbar(m, u) * bank(u)));
            }
            if (bound * (hi - lo) < T(1e-16)) {
                if (!deep && ++negligible_run >= 2) {
                    tail_reached = true;
                    break;
                }
                continue;  // negligible panel
            }
            negligible_run = 0;
            for (int m = 0; m <= m_max; ++m) {
                auto f = [&](const T& u) { return ev.pbar(m, u) * bank(u); };
                // entries are O(1)-normalized; anchor the panel tolerance
                // there rather than at tiny panel values
                acc[m] += quadrature::integrate_adaptive(f, lo, hi, rel_tol, 24, 1536, T(1));
            }
        }
        if (!tail_reached)
            throw convergence_error("biorthogonality_matrix: truncation tail not reached");
        for (int m = 0; m <= m_max; ++m) {
            const T sgn = ((m + n) % 2 == 0) ? T(1) : T(-1);
            mat[m][n] = sgn * exp(ev.log_moment(m) - ev.log_moment(n)) * acc[m];
        }
    }
    return mat;
}

// int_0^infty t^k K_N(t,t) dt, by growing panels with a banked kernel.
// Panels stop once their contribution is negligible against the running
// total; the far tail is cancellation-noise-limited, so both the kernel
// tolerance and the stop rule are anchored to the accumulated value.
template <class T>
T diagonal_moment(const BiorthogonalEvaluator<T>& ev, int k_power, double rel_tol = 1e-8) {
    using std::abs;
    using std::sqrt;
    DualFunctionBank<T> bank(ev, ev.dim());
    T total(0);
    auto f = [&](const T& t) {
        if (!(t > T(0))) return T(0);
        T tk(1);
        for (int i = 0; i < k_power; ++i) tk *= t;
        const T abs_floor = T(1e-10) * std::max(T(1), abs(total)) / std::max(T(1), tk);
        return tk * kernel_banked(ev, bank, t, t, 1e-9, abs_floor);
    };
    const bool substitute = ev.weight().strip_lo > T(1e-12);
    T lo(0), width(4);
    int small_panels = 0;
    for (int panel = 0; panel < 60; ++panel) {
        const T hi = lo + width;
        T piece;
        if (panel == 0 && substitute) {
            auto f_sub = [&](const T& u) { return T(2) * u * f(u * u); };
            piece = quadrature::integrate_adaptive(f_sub, T(0), sqrt(hi), rel_tol, 32, 2048,
                                                   T(0), 3e-7);
        } else {
            piece = quadrature::integrate_adaptive(f, lo, hi, rel_tol, 32, 2048,
                                                   std::max(T(1), abs(total)), 3e-7);
        }
        total += piece;
        if (abs(piece) < T(3e-8) * std::max(T(1), abs(total))) {
            if (++small_panels >= 2) return total;
        } else {
            small_panels = 0;
        }
        lo = hi;
        width *= T(1.6);
    }
    throw convergence_error("diagonal_moment: tail bound not reached");
}

}  // namespace hardedge::polya
