#pragma once
#include <type_traits>

// Gauss-Legendre rules (nodes by Newton iteration on the recurrence) plus
// the adaptive drivers used throughout: order-doubling on [0,1]-type
// integrals and tail-growing truncation for integrals over [0, infinity).

#include <functional>
#include <utility>
#include <map>
#include <mutex>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/scalar.hpp"

namespace hardedge::quadrature {

template <class T>
struct QuadratureRule {
    std::vector<T> nodes;    // strictly increasing, in (-1, 1)
    std::vector<T> weights;  // positive, sum to 2
    int order = 0;
};

namespace detail {

// Legendre P_n(x) and its derivative via the three-term recurrence.
template <class T>
std::pair<T, T> legendre_pd(int n, const T& x) {
    T p0(1), p1 = x;
    for (int k = 2; k <= n; ++k) {
        T p2 = ((T(2 * k - 1) * x * p1) - T(k - 1) * p0) / T(k);
        p0 = p1;
        p1 = p2;
    }
    T d = T(n) * (x * p1 - p0) / (x * x - T(1));
    return {p1, d};
}

}  // namespace detail

template <class T>
QuadratureRule<T> compute_gauss_legendre(int order) {
    using std::abs;
    using std::cos;
    if (order < 1) throw domain_error("gauss_legendre: order must be >= 1");
    QuadratureRule<T> rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const T pi = pi_v<T>();
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton.
        T x = cos(pi * (T(i) + T(0.75)) / (T(order) + T(0.5)));
        T dx(1);
        for (int it = 0; it < 200; ++it) {
            auto [p, d] = detail::legendre_pd(order, x);
            dx = p / d;
            x -= dx;
            if (abs(dx) <= T(4) * eps_v<T>() * (T(1) + abs(x))) break;
        }
        auto [p, d] = detail::legendre_pd(order, x);
        (void)p;
        const T w = T(2) / ((T(1) - x * x) * d * d);
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = T(0);
    return rule;
}

// Cached access; rules are immutable after construction.
template <class T>
const QuadratureRule<T>& gauss_legendre(int order) {
    static std::map<int, QuadratureRule<T>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre<T>(order)).first;
    return it->second;
}

// integral_a^b f(x) dx with a fixed rule.
template <class T, class F>
T integrate(const QuadratureRule<T>& rule, const F& f, const T& a, const T& b) {
    const T half = (b - a) / T(2);
    const T mid = (a + b) / T(2);
    T sum(0);
    for (int i = 0; i < rule.order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

template <class T, class F>
std::pair<T, T> integrate_with_peak(const QuadratureRule<T>& rule, const F& f, const T& a,
                                    const T& b) {
    using std::abs;
    const T half = (b - a) / T(2);
    const T mid = (a + b) / T(2);
    T sum(0), peak(0);
    for (int i = 0; i < rule.order; ++i) {
        const T v = f(mid + half * rule.nodes[i]);
        sum += rule.weights[i] * v;
        peak = std::max(peak, abs(v));
    }
    return {sum * half, peak};
}

// Order-doubling Gauss-Legendre on [a,b] until two successive levels agree
// to rel_tol, measured against max(|result|, scale_hint).  Callers
// integrating a tiny tail panel of a larger quantity pass the running
// total as the hint so the tolerance does not chase zero; callers whose
// integrand carries an evaluation noise floor (contour-based values in the
// oscillatory bulk) pass noise_rel so the stop criterion allows
// noise_rel * sup|f| * (b-a) of irreducible wobble.
template <class T, class F>
T integrate_adaptive(const F& f, const T& a, const T& b, double rel_tol, int order0 = 64,
                     int max_order = 4096, const T& scale_hint = T(0), double noise_rel = 0.0) {
    using std::abs;
    using std::max;
    auto [prev, peak0] = integrate_with_peak(gauss_legendre<T>(order0), f, a, b);
    T peak = peak0;
    for (int order = 2 * order0; order <= max_order; order *= 2) {
        auto [cur, pk] = integrate_with_peak(gauss_legendre<T>(order), f, a, b);
        peak = max(peak, pk);
        const T noise_floor = T(noise_rel) * peak * (b - a);
        if (abs(cur - prev) <= T(rel_tol) * max(abs(cur) + T(1e-300), scale_hint) + noise_floor)
            return cur;
        prev = cur;
    }
    throw convergence_error("integrate_adaptive: max order reached without convergence");
}

// integral_0^inf f dx truncated at T_max grown until the integrand is below
// abs_floor and decreasing at the frontier.  Each panel is integrated
// adaptively; panels grow geometrically.
template <class F, class T = std::invoke_result_t<F, double>>
T integrate_to_infinity(const F& f, double rel_tol, double abs_floor = 1e-14,
                        const T& first_panel = T(1), int max_panels = 60) {
    using std::abs;
    T total(0);
    T lo(0), width = first_panel;
    for (int p = 0; p < max_panels; ++p) {
        const T hi = lo + width;
        total += integrate_adaptive(f, lo, hi, rel_tol, 32, 2048, abs(total));
        const T fh = abs(f(hi));
        const T fh2 = abs(f(hi + width * T(0.37)));
        if (to_double(fh) < abs_floor && fh2 <= fh) return total;
        lo = hi;
        width *= T(1.7);
    }
    throw convergence_error("integrate_to_infinity: tail bound not reached");
}

}  // namespace hardedge::quadrature
