#pragma once

// Spectral-moment identities: the q-weighted integral identity relating
// k * int t^k K_N(t,t) dt to the (p_{N-1}, q_N) cross moment, the
// fixed-depth recurrence coefficients for Laguerre products, the lattice
// path / generating function route to the limiting scaled moments, and
// the Fuss-Catalan numbers they converge to.

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hardedge/convergence.hpp"
#include "hardedge/ensembles.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/polya.hpp"
#include "hardedge/quadrature.hpp"

namespace hardedge::moments {

using bigint = boost::multiprecision::cpp_int;

inline bigint binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    bigint r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// k-th Fuss-Catalan number with index M: binom(k(M+1), k) / (kM + 1).
// Exact integer arithmetic throughout; cpp_int covers k(M+1) > 60.
inline bigint fuss_catalan(int k, int m) {
    if (k < 1 || m < 1) throw domain_error("fuss_catalan: need k, M >= 1");
    return binomial(k * (m + 1), k) / bigint(k * m + 1);
}

// Fixed-depth recurrence data: t P_{N-i}(t) ~ N^r sum_{s=-r..1} alpha_s P_{N-i+s}
// in the large-N normalized form.
struct RecurrenceCoefficients {
    int depth = 1;                   // r
    std::vector<bigint> hat_alpha;   // indexed by 1 - s, s = 1, 0, ..., -r
    double hat_r_exponent = 1.0;     // N^{r_hat} growth of t P

    const bigint& alpha(int s) const { return hat_alpha.at(1 - s); }
};

// Laguerre-product recurrence: depth M with alpha_s = binom(M+1, 1-s).
inline RecurrenceCoefficients laguerre_product_recurrence(int m) {
    if (m < 1) throw domain_error("laguerre_product_recurrence: need M >= 1");
    RecurrenceCoefficients rc;
    rc.depth = m;
    rc.hat_r_exponent = m;
    rc.hat_alpha.resize(m + 2);
    for (int s = 1; s >= -m; --s) rc.hat_alpha[1 - s] = binomial(m + 1, 1 - s);
    return rc;
}

// Sum over non-negative (a_1, a_0, ..., a_{-r}) with sum a_s = k and
// sum s a_s = 1 of multinomial(k; a_...) prod alpha_s^{a_s}, by depth-first
// enumeration of the constrained compositions with bound pruning.
inline bigint lattice_path_sum(int k, const RecurrenceCoefficients& rc) {
    if (k < 1) throw domain_error("lattice_path_sum: need k >= 1");
    bigint k_factorial = 1;
    for (int i = 2; i <= k; ++i) k_factorial *= i;
    const int r = rc.depth;
    bigint total = 0;
    std::function<void(int, int, int, bigint, bigint)> rec =
        [&](int s, int used, int height, bigint weight, bigint denom) {
            if (s < -r) {
                if (used == k && height == 1) total += k_factorial / denom * weight;
                return;
            }
            for (int c = 0; c <= k - used; ++c) {
                const int h = height + c * s;
                const int rem = k - used - c;
                // remaining step sizes lie in [-r, s-1]
                if (s - 1 < -r) {
                    if (rem != 0 || h != 1) continue;
                } else if (h + rem * (s - 1) < 1 || h + rem * (-r) > 1) {
                    continue;
                }
                bigint w = weight;
                for (int i = 0; i < c; ++i) w *= rc.alpha(s);
                bigint d = denom;
                for (int i = 2; i <= c; ++i) d *= i;
                rec(s - 1, used + c, h, w, d);
            }
        };
    rec(1, 0, 0, bigint(1), bigint(1));
    return total;
}

// Coefficient of u^1 in (sum_s alpha_s u^s)^k, by exact Laurent-polynomial
// powers.
inline bigint generating_function_coefficient(int k, const RecurrenceCoefficients& rc) {
    if (k < 1) throw domain_error("generating_function_coefficient: need k >= 1");
    // Laurent polynomial on exponents [-r, 1], stored with offset r.
    const int r = rc.depth;
    std::vector<bigint> poly(r + 2);
    for (int s = 1; s >= -r; --s) poly[s + r] = rc.alpha(s);
    std::vector<bigint> acc{1};  // exponent offset 0
    int acc_low = 0;             // exponent of acc[0]
    for (int step = 0; step < k; ++step) {
        std::vector<bigint> next(acc.size() + poly.size() - 1);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; j < poly.size(); ++j) next[i + j] += acc[i] * poly[j];
        }
        acc = std::move(next);
        acc_low += -r;
    }
    const int idx = 1 - acc_low;
    if (idx < 0 || idx >= static_cast<int>(acc.size())) return 0;
    return acc[idx];
}

// Both sides of the moment identity
//   k int_0^inf t^k K_N(t,t) dt  =  N (M(N+1)/M(N)) int_0^inf t^k p_{N-1} q_N dt,
// each by its own quadrature; the contract is relative agreement.
struct MomentIdentity {
    double lhs;
    double rhs;
};

template <class T>
MomentIdentity spectral_moment(const polya::BiorthogonalEvaluator<T>& ev, int k_power) {
    using std::abs;
    if (k_power > 4) throw domain_error("spectral_moment: guarded to k <= 4");
    if (ev.dim() > 60) throw domain_error("spectral_moment: guarded to N <= 60");
    const T lhs = T(k_power) * polya::diagonal_moment(ev, k_power);

    // rhs = -N int t^k pbar_{N-1}(t) qbar_N(t) dt in normalized form
    const int n = ev.dim();
    polya::DualFunctionBank<T> bank(ev, n, 1e-12);
    T total(0);
    T lo(0), width(4);
    int small_panels = 0;
    for (int panel = 0; panel < 60; ++panel) {
        const T hi = lo + width;
        auto f = [&](const T& t) {
            if (!(t > T(0))) return T(0);
            T tk(1);
            for (int i = 0; i < k_power; ++i) tk *= t;
            return tk * ev.pbar(n - 1, t) * bank(t);
        };
        const T piece = quadrature::integrate_adaptive(f, lo, hi, 1e-9, 32, 2048,
                                                       std::max(T(1), abs(total)), 3e-7);
        total += piece;
        if (abs(piece) < T(3e-8) * std::max(T(1), abs(total))) {
            if (++small_panels >= 2) break;
        } else {
            small_panels = 0;
        }
        lo = hi;
        width *= T(1.6);
        if (panel == 59) throw convergence_error("spectral_moment: tail not reached");
    }
    const T rhs = -T(n) * total;
    return MomentIdentity{to_double(lhs), to_double(rhs)};
}

// Scaled moment (1/N^{kM+1}) int t^k K_N(t,t) dt against the Fuss-Catalan
// target, per ladder rung.
struct ScaledMomentRow {
    int k;
    int m;
    int n_dim;
    double scaled_moment;
    double target;
};

inline ScaledMomentRow scaled_moment_vs_fuss_catalan(const ensembles::EnsembleSpec& base, int k) {
    if (base.family != ensembles::Family::LaguerreProduct)
        throw domain_error("scaled moments: Laguerre products only");
    auto ev = ensembles::make_evaluator<double>(base);
    const double mom = polya::diagonal_moment(ev, k, 1e-7);
    const int m = base.m_count;
    const double scale = std::pow(double(base.matrix_dim), double(k * m + 1));
    ScaledMomentRow row;
    row.k = k;
    row.m = m;
    row.n_dim = base.matrix_dim;
    row.scaled_moment = mom / scale;
    row.target = static_cast<double>(fuss_catalan(k, m));
    return row;
}

}  // namespace hardedge::moments
