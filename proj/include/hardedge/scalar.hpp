#pragma once

// Scalar layer: the library is templated on a real scalar type so every
// evaluator can run either in double or in a software extended-precision
// mode (~50 significant digits).  The extended types come from
// Boost.Multiprecision with expression templates disabled so that complex
// and real arithmetic compose without surprises.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace hardedge {

using ext_complex = boost::multiprecision::cpp_complex_50;
using ext_real = ext_complex::value_type;

template <class T>
struct complex_of {
    using type = std::complex<T>;
};
template <>
struct complex_of<ext_real> {
    using type = ext_complex;
};
template <class T>
using complex_t = typename complex_of<T>::type;

template <class T>
inline T pi_v() {
    using std::acos;
    static const T value = acos(T(-1));
    return value;
}

template <class T>
inline T eps_v() {
    return std::numeric_limits<T>::epsilon();
}

inline double to_double(double x) { return x; }
inline double to_double(const ext_real& x) { return static_cast<double>(x); }

template <class T>
inline bool is_finite(const T& x) {
    using std::isfinite;
    return isfinite(x);
}

template <class T>
inline complex_t<T> make_polar(const T& r, const T& theta) {
    using std::cos;
    using std::sin;
    return complex_t<T>(r * cos(theta), r * sin(theta));
}

// exp(z) that saturates instead of overflowing; used when assembling
// log-space products where a few node values may underflow to zero.
template <class C>
inline C exp_clamped(const C& z) {
    using std::exp;
    using T = decltype(z.real());
    const T lim = T(0.8) * static_cast<T>(std::numeric_limits<double>::max_exponent) * T(0.6931471805599453);
    if (z.real() > lim) return C(std::numeric_limits<double>::infinity(), 0);
    if (z.real() < -lim) return C(0, 0);
    return exp(z);
}

enum class Precision { Double, Extended };

inline const char* precision_name(Precision p) {
    return p == Precision::Double ? "double" : "extended";
}

}  // namespace hardedge
