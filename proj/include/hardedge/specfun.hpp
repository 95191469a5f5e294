#pragma once

// Scalar special functions: log-gamma (real and complex), gamma ratios,
// Pochhammer symbols, the 0FM / 1FM hypergeometric series, Bessel J of
// real order, and the Gauss 2F1 series.  Everything is templated on the
// real scalar type; the same code paths serve double and the extended
// precision mode.

#include <cstdint>
#include <type_traits>
#include <sstream>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>

#include "hardedge/errors.hpp"
#include "hardedge/scalar.hpp"

namespace hardedge::specfun {

namespace detail {

// Stirling parameters per precision: the asymptotic series with `terms`
// Bernoulli terms is accurate to the type's epsilon once |z| >= shift_min.
template <class T>
struct stirling_params {
    static constexpr int terms = 13;
    static constexpr double shift_min = 13.0;
};
template <>
struct stirling_params<ext_real> {
    static constexpr int terms = 34;
    static constexpr double shift_min = 76.0;
};

// log sin(pi z) without overflow for large |Im z|.  Branch offsets of
// 2*pi*i are irrelevant to the callers (results are exponentiated or used
// through their real part).
template <class T>
complex_t<T> log_sin_pi(const complex_t<T>& z) {
    using C = complex_t<T>;
    using std::exp;
    using std::log;
    const T pi = pi_v<T>();
    const C ipiz = C(-pi * z.imag(), pi * z.real());
    const C log2i = C(log(T(2)), pi / 2);
    if (z.imag() >= T(0)) {
        // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2i)
        return ipiz + log(C(1) - exp(C(-2) * ipiz)) - log2i;
    }
    return -ipiz + log(exp(C(2) * ipiz) - C(1)) - log2i;
}

template <class T>
complex_t<T> log_gamma_stirling(const complex_t<T>& z) {
    using C = complex_t<T>;
    using std::log;
    static const T half_log_2pi = log(T(2) * pi_v<T>()) / T(2);
    C sum = (z - C(T(0.5))) * log(z) - z + C(half_log_2pi);
    const C z2 = z * z;
    C zpow = z;
    for (int k = 1; k <= stirling_params<T>::terms; ++k) {
        const T b2k = boost::math::bernoulli_b2n<T>(k);
        sum += C(b2k / (T(2 * k) * T(2 * k - 1))) / zpow;
        zpow *= z2;
    }
    return sum;
}

}  // namespace detail

inline bool is_nonpositive_integer(double x, double tol = 1e-12) {
    if (x > 0.5) return false;
    const double r = std::round(x);
    return std::abs(x - r) <= tol;
}
inline bool is_nonpositive_integer(const ext_real& x, double tol = 1e-12) {
    return is_nonpositive_integer(to_double(x), tol);
}

// Complex log-gamma by the Stirling series with upward recurrence, and the
// reflection formula for Re z < 1/2.  Continuous branch, real on the
// positive axis; relative accuracy tracks the type's epsilon.
template <class T>
complex_t<T> log_gamma(complex_t<T> z) {
    using C = complex_t<T>;
    using std::abs;
    using std::log;
    if (z.imag() == T(0) && is_nonpositive_integer(z.real())) {
        std::ostringstream os;
        os << "log_gamma: pole at z = " << to_double(z.real());
        throw pole_error(os.str());
    }
    if (z.real() < T(0.5)) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const T pi = pi_v<T>();
        return log(C(pi)) - detail::log_sin_pi<T>(z) - log_gamma<T>(C(1) - z);
    }
    const T shift_min = T(detail::stirling_params<T>::shift_min);
    C acc(0);
    while (abs(z) < shift_min) {
        acc += log(z);
        z += C(1);
    }
    return detail::log_gamma_stirling<T>(z) - acc;
}

template <class T>
T log_gamma_real(const T& x) {
    if (x <= T(0) && is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "log_gamma: pole at x = " << to_double(x);
        throw pole_error(os.str());
    }
    if (x > T(0)) return log_gamma<T>(complex_t<T>(x, T(0))).real();
    // Negative non-pole argument: magnitude only (callers track the sign
    // via gamma_sign when they need it).
    using std::abs;
    using std::log;
    using std::sin;
    const T pi = pi_v<T>();
    return log(pi) - log(abs(sin(pi * x))) - log_gamma_real<T>(T(1) - x);
}

// Sign of Gamma(x) for real non-pole x: negative exactly on the intervals
// (-2k-1, -2k), e.g. Gamma(-0.5) < 0, Gamma(-1.5) > 0.
template <class T>
int gamma_sign(const T& x) {
    if (x > T(0)) return 1;
    const long long k = static_cast<long long>(std::floor(to_double(x)));
    return (k % 2 == 0) ? 1 : -1;
}

template <class T>
T tgamma_real(const T& x) {
    using std::exp;
    return T(gamma_sign(x)) * exp(log_gamma_real(x));
}

// Gamma(z+a) / Gamma(z+b) via log-gamma differencing.
template <class T>
T gamma_ratio(const T& z, const T& a, const T& b) {
    using std::exp;
    const T za = z + a, zb = z + b;
    if (is_nonpositive_integer(za) || is_nonpositive_integer(zb)) {
        std::ostringstream os;
        os << "gamma_ratio: pole at z+a = " << to_double(za) << " or z+b = " << to_double(zb);
        throw pole_error(os.str());
    }
    const T mag = exp(log_gamma_real(za) - log_gamma_real(zb));
    return T(gamma_sign(za) * gamma_sign(zb)) * mag;
}

// (u)_alpha = u (u+1) ... (u+alpha-1); product form, valid for any real u.
template <class T>
T pochhammer(const T& u, int alpha) {
    T prod(1);
    for (int j = 0; j < alpha; ++j) prod *= u + T(j);
    return prod;
}

// 0FM(; a_1+1, ..., a_M+1; -x) = sum_j (-x)^j / (j! prod_s (a_s+1)_j).
// The series is entire; we sum to relative machine tolerance with a hard
// term cap.
template <class T>
T hyp_0FM(const std::vector<T>& a, const T& x, int term_cap = 500) {
    using std::abs;
    for (const T& as : a) {
        if (is_nonpositive_integer(as + T(1)))
            throw domain_error("hyp_0FM: parameter a <= -1 at a negative integer");
    }
    T sum(1), term(1);
    const T tol = T(16) * eps_v<T>();
    for (int j = 1; j <= term_cap; ++j) {
        T denom = T(j);
        for (const T& as : a) denom *= as + T(j);
        term *= -x / denom;
        sum += term;
        if (abs(term) <= tol * (abs(sum) + T(1))) return sum;
    }
    throw convergence_error("hyp_0FM: term cap reached before tolerance");
}

// Terminating 1FM(-n; a_1+1, ..., a_M+1; x) = sum_{j<=n} (-n)_j x^j / (j! prod (a_l+1)_j).
template <class T>
T hyp_1FM(int n, const std::vector<T>& a, const T& x) {
    T sum(1), term(1);
    for (int j = 1; j <= n; ++j) {
        T denom = T(j);
        for (const T& as : a) denom *= as + T(j);
        term *= (T(-n) + T(j - 1)) * x / denom;
        sum += term;
    }
    return sum;
}

// Bessel J_a(x) by the ascending series, a > -1, 0 <= x <= 40.  The series
// alternates with peak terms ~ (x/2)^{2k}/(k!)^2, so beyond x ~ 12 the
// double-precision sum cannot reach the 1e-12 contract; the working type is
// promoted to the extended scalar there and rounded back.
template <class T>
T bessel_j(const T& a, const T& x, int term_cap = 500) {
    using std::abs;
    using std::exp;
    using std::log;
    if (x < T(0)) throw domain_error("bessel_j: x must be >= 0");
    if (x == T(0)) {
        if (a == T(0)) return T(1);
        return T(0);  // a > 0; a in (-1,0) diverges at 0 but is never requested there
    }
    if constexpr (std::is_same_v<T, double>) {
        if (x > 12.0) {
            return to_double(bessel_j<ext_real>(ext_real(a), ext_real(x), term_cap));
        }
    }
    const T xh = x / T(2);
    // (x/2)^a / Gamma(a+1) as the j=0 term, then recurse.
    T term = exp(a * log(xh) - log_gamma_real(a + T(1)));
    T sum = term;
    const T tol = T(16) * eps_v<T>();
    const T xh2 = xh * xh;
    for (int k = 1; k <= term_cap; ++k) {
        term *= -xh2 / (T(k) * (a + T(k)));
        sum += term;
        if (abs(term) <= tol * (abs(sum) + eps_v<T>())) return sum;
    }
    throw convergence_error("bessel_j: term cap reached before tolerance");
}

// Gauss 2F1(p, q; r; z).  Terminates when p or q is a non-positive integer;
// otherwise requires |z| < 1.
template <class T>
T gauss_2f1(const T& p, const T& q, const T& r, const T& z, int term_cap = 100000) {
    using std::abs;
    if (is_nonpositive_integer(r)) throw domain_error("gauss_2f1: r is a non-positive integer");
    long terminate_at = -1;
    if (is_nonpositive_integer(p)) terminate_at = std::lround(-to_double(p));
    if (is_nonpositive_integer(q)) {
        const long tq = std::lround(-to_double(q));
        if (terminate_at < 0 || tq < terminate_at) terminate_at = tq;
    }
    if (terminate_at < 0 && abs(z) >= T(1))
        throw convergence_error("gauss_2f1: |z| >= 1 and series does not terminate");
    T sum(1), term(1);
    const T tol = T(16) * eps_v<T>();
    for (long k = 0;; ++k) {
        if (terminate_at >= 0 && k >= terminate_at) return sum;
        term *= (p + T(k)) * (q + T(k)) / ((r + T(k)) * T(k + 1)) * z;
        sum += term;
        if (terminate_at < 0 && abs(term) <= tol * (abs(sum) + T(1))) return sum;
        if (k > term_cap) throw convergence_error("gauss_2f1: term cap reached");
    }
}

inline double factorial(int n) {
    double f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace hardedge::specfun
