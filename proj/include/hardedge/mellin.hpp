#pragma once

// Mellin-transform descriptors and numerical inversion.
//
// A MellinWeight represents  prefactor * prod Gamma(slope*s + offset)^{+-1}
// optionally times a real polynomial  prod_k (root_k - s), all kept in log
// space.  Inversion is the vertical-line integral
//
//     f(x) = (1/2 pi i) int_{c-iT}^{c+iT} Phi(s) x^{-s} ds,
//
// evaluated by a symmetric trapezoid rule.  The abscissa is placed near the
// real-axis saddle of |Phi(s) x^{-s}| (clamped to the fundamental strip),
// which keeps the cancellation ratio of the sum close to one even for
// arguments deep in the spectral bulk.  A second evaluation route sums the
// residues over the left pole ladders; the two must agree and are used as
// mutual oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <limits>
#include <sstream>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/scalar.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge::mellin {

enum class FactorSide { Numerator, Denominator };

template <class T>
struct GammaFactor {
    T slope;   // nonzero
    T offset;
    FactorSide side = FactorSide::Numerator;
};

template <class T>
struct MellinWeight {
    T log_prefactor = T(0);
    std::vector<GammaFactor<T>> factors;
    std::vector<T> poly_roots;  // polynomial part prod_k (root_k - s)
    T strip_lo = T(0);
    T strip_hi = T(0);  // +inf encoded as huge()

    static T huge() { return T(1e30); }

    // Fundamental strip implied by the numerator gamma factors.
    void recompute_strip() {
        strip_lo = -huge();
        strip_hi = huge();
        for (const auto& f : factors) {
            if (f.side != FactorSide::Numerator) continue;
            if (f.slope > T(0))
                strip_lo = std::max(strip_lo, -f.offset / f.slope);
            else
                strip_hi = std::min(strip_hi, f.offset / (-f.slope));
        }
    }

    complex_t<T> log_eval(const complex_t<T>& s) const {
        using C = complex_t<T>;
        using std::log;
        C acc(log_prefactor);
        for (const auto& f : factors) {
            const C arg = C(f.slope) * s + C(f.offset);
            const C lg = specfun::log_gamma<T>(arg);
            acc += (f.side == FactorSide::Numerator) ? lg : -lg;
        }
        for (const T& r : poly_roots) acc += log(C(r) - s);
        return acc;
    }

    // exp(log_eval), with a pole-proximity check that names the factor.
    complex_t<T> eval(const complex_t<T>& s) const {
        using std::abs;
        int idx = 0;
        for (const auto& f : factors) {
            const complex_t<T> arg = complex_t<T>(f.slope) * s + complex_t<T>(f.offset);
            if (abs(arg.imag()) < T(1e-12) && specfun::is_nonpositive_integer(arg.real(), 1e-9)) {
                std::ostringstream os;
                os << "eval_mellin: factor " << idx << " (slope " << to_double(f.slope)
                   << ", offset " << to_double(f.offset) << ") at a gamma pole, s = ("
                   << to_double(s.real()) << ", " << to_double(s.imag()) << ")";
                throw pole_error(os.str());
            }
            ++idx;
        }
        return exp_clamped(log_eval(s));
    }

    // Positive real evaluation for s strictly inside the strip (all gamma
    // arguments positive); used for the Mellin moment cache.
    T eval_positive(const T& s) const {
        using std::exp;
        T acc = log_prefactor;
        T sign(1);
        for (const auto& f : factors) {
            const T arg = f.slope * s + f.offset;
            if (arg <= T(0)) throw pole_error("eval_positive: argument outside the strip");
            const T lg = specfun::log_gamma_real(arg);
            acc += (f.side == FactorSide::Numerator) ? lg : -lg;
        }
        for (const T& r : poly_roots) {
            using std::abs;
            using std::log;
            acc += log(abs(r - s));
            if (r - s < T(0)) sign = -sign;
        }
        return sign * exp(acc);
    }

    // Real-axis log magnitude (branch-free); -inf dips at polynomial roots.
    T log_abs_on_line(const T& c, const T& t) const {
        return log_eval(complex_t<T>(c, t)).real();
    }

    // ---- derived integrands ----

    // Multiply by prod_{k=1}^{n} (k - s) / n!   (the Rodrigues polynomial of
    // the n-th dual function, in normalized form).
    MellinWeight with_dual_polynomial(int n) const {
        MellinWeight w = *this;
        for (int k = 1; k <= n; ++k) w.poly_roots.push_back(T(k));
        w.log_prefactor -= specfun::log_gamma_real(T(n) + T(1));
        return w;
    }

    // Multiply by (-s)^p  (each application of x d/dx under the inversion).
    MellinWeight with_euler_derivative(int p = 1) const {
        MellinWeight w = *this;
        for (int k = 0; k < p; ++k) w.poly_roots.push_back(T(0));
        return w;
    }

    // Divide by Gamma(1 - s): the hard-edge limit integrand shape.
    MellinWeight over_gamma_one_minus_s() const {
        MellinWeight w = *this;
        w.factors.push_back({T(-1), T(1), FactorSide::Denominator});
        return w;
    }

    // Scale log_prefactor so that eval(1) == 1 (unit mass).
    MellinWeight& normalize_mass() {
        log_prefactor = T(0);
        T acc(0);
        for (const auto& f : factors) {
            const T arg = f.slope + f.offset;
            const T lg = specfun::log_gamma_real(arg);
            acc += (f.side == FactorSide::Numerator) ? lg : -lg;
        }
        log_prefactor = -acc;
        return *this;
    }
};

template <class T>
struct ContourSpec {
    T abscissa;
    T half_height;
    int node_count;  // odd, symmetric trapezoid
};

namespace detail {

// Pseudo-peak of the log integrand along the vertical line at c: the max of
// a few samples near the real axis, which irons out the -inf notches at
// polynomial roots.
template <class T>
T line_level(const MellinWeight<T>& w, const T& c) {
    using std::max;
    T m = w.log_abs_on_line(c, T(1));
    m = max(m, w.log_abs_on_line(c, T(3)));
    m = max(m, w.log_abs_on_line(c, T(0.3)));
    return m;
}

}  // namespace detail

// Abscissa near the real-axis saddle of |Phi(s) x^{-s}|, clamped to the
// fundamental strip.  ln_x is the log of the (smallest-magnitude) argument
// the contour will serve.
template <class T>
T choose_abscissa(const MellinWeight<T>& w, const T& ln_x, const T& c_cap = T(2000)) {
    using std::min;
    const T margin = T(0.5);
    T lo = w.strip_lo + margin * T(0.5);
    T hi = min(w.strip_hi - margin * T(0.5), w.strip_lo + c_cap);
    if (!(hi > lo)) return (w.strip_lo + w.strip_hi) / T(2);
    const T preferred = w.strip_lo + margin;
    auto g = [&](const T& c) { return detail::line_level(w, c) - c * ln_x; };
    // Coarse grid, then two refinement rounds.
    const int grid = 48;
    T best_c = preferred <= hi && preferred >= lo ? preferred : (lo + hi) / T(2);
    T best_g = g(best_c);
    T a = lo, b = hi;
    for (int round = 0; round < 3; ++round) {
        const T step = (b - a) / T(grid);
        if (!(step > T(0))) break;
        for (int i = 0; i <= grid; ++i) {
            const T c = a + step * T(i);
            const T v = g(c);
            if (v < best_g) {
                best_g = v;
                best_c = c;
            }
        }
        a = std::max(lo, best_c - step);
        b = std::min(hi, best_c + step);
    }
    return best_c;
}

// A prepared vertical-line trapezoid: nodes, premultiplied integrand values
// and the scale offset.  Immutable after construction; evaluations for any
// argument in the prepared log-range share it (the integrand magnitude on
// the line does not depend on x).
template <class T>
struct PreparedContour {
    T c = T(0);
    T h = T(0);          // node spacing
    int m = 0;           // nodes at t = 0, h, ..., m*h
    T log_peak = T(0);
    // Defect of the conjugate symmetry Phi(conj s) = conj Phi(s), sampled at
    // build time.  The t < 0 half-line is folded through this symmetry, so
    // the imaginary residue of the full integral is bounded by the defect.
    T conj_defect = T(0);
    std::vector<complex_t<T>> vals;  // exp(logPhi - log_peak) at the nodes

    T eval(const T& x) const {
        using C = complex_t<T>;
        using std::abs;
        using std::cos;
        using std::exp;
        using std::log;
        using std::sin;
        const T lnx = log(x);
        const T ang = -h * lnx;  // phase step of x^{-i t}
        const C rot_step(cos(ang), sin(ang));
        C rot(1);
        C sum = vals[0] * C(T(0.5));
        T abs_sum = abs(vals[0]) * T(0.5);
        for (int j = 1; j <= m; ++j) {
            if ((j & 511) == 0) {
                const T a = ang * T(j);
                rot = C(cos(a), sin(a));
            } else {
                rot *= rot_step;
            }
            sum += vals[j] * rot;
            abs_sum += abs(vals[j]);
        }
        // The t < 0 half of the line is the conjugate of the t > 0 half, so
        // the full symmetric sum is 2 Re(sum).
        (void)abs_sum;
        return (h / pi_v<T>()) * sum.real() * exp_scale(lnx);
    }

    T exp_scale(const T& lnx) const {
        using std::exp;
        const T e = log_peak - c * lnx;
        return exp(e);
    }
};

struct ContourOptions {
    double rel_tol = 1e-11;
    double tail_drop = 37.0;  // ln(1/1e-16): endpoint modulus vs peak
    int initial_nodes = 801;  // total (odd); per side (n-1)/2
    int max_nodes = 4000000;  // total across both sides
    double t_cap = 2e5;
};

// Build a contour shared by all arguments with ln|x| in [lnx_a, lnx_b].
template <class T>
PreparedContour<T> prepare_contour(const MellinWeight<T>& w, const T& c, T lnx_a, T lnx_b,
                                   const ContourOptions& opt = {}) {
    using std::abs;
    using std::conj;
    using std::exp;
    using std::max;
    using std::swap;
    if (lnx_a > lnx_b) swap(lnx_a, lnx_b);

    // Find the tail height: peak of the line magnitude and the t beyond
    // which the integrand has dropped by tail_drop.
    T peak = w.log_abs_on_line(c, T(0.3));
    T t_end = T(4);
    {
        T t = T(0.5);
        T level_prev = peak;
        int rises = 0;
        while (true) {
            const T level = w.log_abs_on_line(c, t);
            peak = max(peak, level);
            if (level < peak - T(opt.tail_drop)) {
                t_end = t;
                break;
            }
            if (level > level_prev) ++rises;
            level_prev = level;
            if (to_double(t) > opt.t_cap) {
                throw decay_error(
                    "inverse_mellin: integrand does not decay along the contour "
                    "(endpoint modulus above the tolerance of the peak)");
            }
            t *= T(1.25);
        }
        (void)rises;
    }

    PreparedContour<T> pc;
    pc.c = c;
    pc.log_peak = peak;

    auto build = [&](int side_nodes) {
        pc.m = side_nodes;
        pc.h = t_end / T(side_nodes);
        pc.vals.assign(side_nodes + 1, complex_t<T>(0));
        for (int j = 0; j <= side_nodes; ++j) {
            const complex_t<T> lg = w.log_eval(complex_t<T>(c, pc.h * T(j)));
            pc.vals[j] = exp_clamped(complex_t<T>(lg.real() - peak, lg.imag()));
        }
    };

    int side = std::max(8, (opt.initial_nodes - 1) / 2);
    build(side);
    T va = pc.eval(exp(lnx_a));
    T vb = pc.eval(exp(lnx_b));
    while (true) {
        if (2 * side > opt.max_nodes) throw convergence_error("inverse_mellin: node cap reached");
        side *= 2;
        build(side);
        const T wa = pc.eval(exp(lnx_a));
        const T wb = pc.eval(exp(lnx_b));
        const T sa = pc.exp_scale(lnx_a), sb = pc.exp_scale(lnx_b);
        const T fl = T(64) * eps_v<T>();
        const bool ok_a = abs(wa - va) <= T(opt.rel_tol) * abs(wa) + fl * sa;
        const bool ok_b = abs(wb - vb) <= T(opt.rel_tol) * abs(wb) + fl * sb;
        if (ok_a && ok_b) break;
        va = wa;
        vb = wb;
    }
    // Sample the conjugate-symmetry defect that the folded evaluation relies on.
    for (int j : {1, pc.m / 3, (2 * pc.m) / 3}) {
        if (j < 1) continue;
        const complex_t<T> up = w.log_eval(complex_t<T>(c, pc.h * T(j)));
        const complex_t<T> dn = w.log_eval(complex_t<T>(c, -pc.h * T(j)));
        const complex_t<T> vu = exp_clamped(complex_t<T>(up.real() - pc.log_peak, up.imag()));
        const complex_t<T> vd = exp_clamped(complex_t<T>(dn.real() - pc.log_peak, dn.imag()));
        const T d = abs(vd - conj(vu)) / (abs(vu) + eps_v<T>());
        pc.conj_defect = std::max(pc.conj_defect, d);
    }
    return pc;
}

// One-off inversion at a single argument with automatic abscissa.
template <class T>
T inverse_mellin(const MellinWeight<T>& w, const T& x, const ContourOptions& opt = {}) {
    using std::log;
    if (!(x > T(0))) throw domain_error("inverse_mellin: x must be positive");
    const T lnx = log(x);
    const T c = choose_abscissa(w, lnx);
    const PreparedContour<T> pc = prepare_contour(w, c, lnx, lnx, opt);
    if (to_double(pc.conj_defect) > 1e-8)
        throw convergence_error("inverse_mellin: imaginary residue above 1e-8 "
                                "(conjugate symmetry defect)");
    return pc.eval(x);
}

// Pinned-contour inversion (contract tests: contour independence, explicit
// node counts).
template <class T>
T inverse_mellin_at(const MellinWeight<T>& w, const T& x, const ContourSpec<T>& spec) {
    using C = complex_t<T>;
    using std::abs;
    using std::exp;
    using std::log;
    if (!(x > T(0))) throw domain_error("inverse_mellin: x must be positive");
    if (spec.node_count < 3 || spec.node_count % 2 == 0)
        throw domain_error("inverse_mellin: node_count must be odd and >= 3");
    if (!(spec.abscissa > w.strip_lo && spec.abscissa < w.strip_hi))
        throw domain_error("inverse_mellin: abscissa outside the fundamental strip");
    const int side = (spec.node_count - 1) / 2;
    const T h = spec.half_height / T(side);
    // Decay precheck at the truncation endpoints.
    const T peak = detail::line_level(w, spec.abscissa);
    const T end_level = w.log_abs_on_line(spec.abscissa, spec.half_height);
    if (end_level > peak - T(30))
        throw decay_error("inverse_mellin: endpoint modulus too large for the requested contour");
    const T lnx = log(x);
    C sum = exp_clamped(w.log_eval(C(spec.abscissa, T(0))) - C(peak)) * C(T(0.5));
    for (int j = 1; j <= side; ++j) {
        const T t = h * T(j);
        const C lg = w.log_eval(C(spec.abscissa, t)) - C(peak) - C(T(0), t * lnx);
        sum += exp_clamped(lg);
    }
    const T scale = exp(peak - spec.abscissa * lnx);
    return (h / pi_v<T>()) * sum.real() * scale;
}

// Lazily built family of prepared contours for one integrand, banked by
// the magnitude of the argument.  A single vertical line cannot serve
// arguments across many decades: deep in the spectral bulk the abscissa
// must track the saddle (roughly x^{1/M}) and the trapezoid cancellation
// grows intolerable once the abscissa is off by more than a modest factor,
// while near the origin the noise grows like x^{-c}.  Slots are one
// ln-unit wide up to ln x = 3 and a quarter unit beyond; everything below
// ln x = -7 shares one near-strip line.
template <class T>
class ContourBank {
  public:
    explicit ContourBank(mellin::MellinWeight<T> integrand, double rel_tol = 1e-12)
        : integrand_(std::move(integrand)), rel_tol_(rel_tol) {}

    const MellinWeight<T>& integrand() const { return integrand_; }

    T operator()(const T& x) {
        using std::log;
        if (!(x > T(0))) throw domain_error("ContourBank: x must be positive");
        const double lnx = to_double(log(x));
        int key;
        double lo, hi;
        if (lnx < -7.0) {
            key = -1000000;
            lo = -80.0;
            hi = -7.0;
        } else if (lnx < 3.0) {
            key = static_cast<int>(std::floor(lnx));
            lo = key;
            hi = key + 1.0;
        } else {
            const int cell = static_cast<int>(std::floor(lnx * 4.0));
            key = 1000000 + cell;
            lo = cell / 4.0;
            hi = lo + 0.25;
        }
        auto it = slots_.find(key);
        if (it == slots_.end()) {
            ContourOptions opt;
            opt.rel_tol = rel_tol_;
            const T c = choose_abscissa(integrand_, T((lo + hi) / 2));
            it = slots_.emplace(key, prepare_contour(integrand_, c, T(lo), T(hi), opt)).first;
        }
        return it->second.eval(x);
    }

  private:
    MellinWeight<T> integrand_;
    double rel_tol_;
    std::map<int, PreparedContour<T>> slots_;
};

// Sum over the left pole ladders of the numerator gamma factors (simple
// poles only).  Valid for integrands whose numerator factors all have
// positive slope; agrees with inverse_mellin where both converge.
template <class T>
T residue_series(const MellinWeight<T>& w, const T& x, double rel_tol = 1e-13,
                 int m_cap = 600) {
    using std::abs;
    using std::exp;
    using std::log;
    if (!(x > T(0))) throw domain_error("residue_series: x must be positive");
    std::vector<int> ladders;
    for (std::size_t i = 0; i < w.factors.size(); ++i) {
        const auto& f = w.factors[i];
        if (f.side == FactorSide::Numerator) {
            if (f.slope < T(0))
                throw coincident_pole_error(
                    "residue_series: negative-slope numerator factor (right pole ladder) "
                    "is not supported; use inverse_mellin");
            ladders.push_back(static_cast<int>(i));
        }
    }
    if (ladders.empty()) throw domain_error("residue_series: no numerator gamma factors");

    const T lnx = log(x);
    T sum(0);
    T max_mag(0);
    // Interleave the ladders by increasing |pole| so truncation is by size.
    std::vector<int> m_next(ladders.size(), 0);
    int consecutive_small = 0;
    for (int step = 0; step < m_cap * static_cast<int>(ladders.size()); ++step) {
        // pick the ladder whose next pole is right-most (closest to the strip)
        int pick = -1;
        T best_pole = -MellinWeight<T>::huge();
        for (std::size_t li = 0; li < ladders.size(); ++li) {
            const auto& f = w.factors[ladders[li]];
            const T pole = -(f.offset + T(m_next[li])) / f.slope;
            if (pole > best_pole) {
                best_pole = pole;
                pick = static_cast<int>(li);
            }
        }
        const auto& f = w.factors[ladders[pick]];
        const int m = m_next[pick]++;
        const T s0 = -(f.offset + T(m)) / f.slope;

        // Simple-pole precondition: distance to every other ladder pole.
        for (std::size_t li = 0; li < ladders.size(); ++li) {
            if (static_cast<int>(li) == pick) continue;
            const auto& g = w.factors[ladders[li]];
            const T d = (g.slope * s0 + g.offset);
            // pole of g at d = -k
            const T frac = d - T(std::round(to_double(d)));
            if (to_double(d) < 0.5 && abs(frac) < T(1e-6)) {
                throw coincident_pole_error(
                    "residue_series: coincident or near-coincident poles between gamma "
                    "factors; fall back to inverse_mellin");
            }
        }

        // Residue: [(-1)^m / (m! slope)] * rest(s0) * x^{-s0}
        T log_mag = w.log_prefactor - specfun::log_gamma_real(T(m) + T(1)) - log(f.slope) -
                    s0 * lnx;
        int sign = (m % 2 == 0) ? 1 : -1;
        for (std::size_t i = 0; i < w.factors.size(); ++i) {
            if (static_cast<int>(i) == ladders[pick]) continue;
            const auto& g = w.factors[i];
            const T arg = g.slope * s0 + g.offset;
            if (specfun::is_nonpositive_integer(arg, 1e-9)) {
                if (g.side == FactorSide::Denominator) {
                    // 1/Gamma at a pole: the residue term vanishes.
                    sign = 0;
                    break;
                }
                throw coincident_pole_error("residue_series: secondary factor at a pole");
            }
            const T lg = specfun::log_gamma_real(arg);
            log_mag += (g.side == FactorSide::Numerator) ? lg : -lg;
            sign *= specfun::gamma_sign(arg);
        }
        if (sign != 0) {
            for (const T& r : w.poly_roots) {
                const T v = r - s0;
                log_mag += log(abs(v));
                if (v < T(0)) sign = -sign;
            }
        }
        const T term = (sign == 0) ? T(0) : T(sign) * exp(log_mag);
        sum += term;
        max_mag = std::max(max_mag, abs(term));
        if (abs(term) <= T(rel_tol) * (abs(sum) + T(1e-300)) && step > 4) {
            if (++consecutive_small >= 4 + 2 * static_cast<int>(ladders.size())) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw convergence_error("residue_series: pole cap reached before tolerance");
}

}  // namespace hardedge::mellin
