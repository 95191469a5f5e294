#pragma once

// Concrete ensemble constructors: each family maps to a MellinWeight plus
// hard-edge metadata.  The inverse-product weight depends on the matrix
// dimension, so its weight is rebuilt whenever N changes; family builders
// take the spec (which carries N) rather than a bare parameter list.

#include <string>
#include <vector>

#include "hardedge/errors.hpp"
#include "hardedge/mellin.hpp"
#include "hardedge/polya.hpp"

namespace hardedge::ensembles {

enum class Family {
    LaguerreProduct,
    MuttalibBorodinLaguerre,
    LaguerreInverseProduct,
    JacobiUnitary,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct EnsembleSpec {
    Family family = Family::LaguerreProduct;
    int m_count = 1;                // M
    std::vector<double> a_params;   // length M
    std::vector<double> b_params;   // length M (inverse product / Jacobi)
    double theta = 1.0;             // Muttalib-Borodin exponent
    int matrix_dim = 0;             // N

    void validate() const;
};

// JSON document {"family":..., "M":..., "a":[...], "b":[...], "theta":..., "N":...}
EnsembleSpec ensemble_from_json(const std::string& text);
std::string ensemble_to_json(const EnsembleSpec& spec);

// Hard-edge scale: arguments are scaled by 1 / N^power for the generic
// limit checks (products and MB: 1; inverse products: M+1).  The
// Bessel-normalized conventions for the Laguerre and Jacobi cases (4N,
// 4N + 2a, 4N^2, 4(N + (a+b)/2)^2) live in the hardedge module.
inline double hard_edge_scale_power(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::LaguerreProduct:
        case Family::MuttalibBorodinLaguerre:
            return 1.0;
        case Family::LaguerreInverseProduct:
        case Family::JacobiUnitary:
            return spec.m_count + 1.0;
    }
    throw domain_error("hard_edge_scale_power: unknown family");
}

template <class T>
mellin::MellinWeight<T> laguerre_product_weight(const std::vector<T>& a) {
    if (a.empty()) throw domain_error("laguerre_product_weight: need M >= 1 parameters");
    mellin::MellinWeight<T> w;
    for (const T& aj : a) {
        if (!(aj > T(-1))) throw domain_error("laguerre_product_weight: need a_j > -1");
        w.factors.push_back({T(1), aj, mellin::FactorSide::Numerator});
    }
    w.normalize_mass();
    w.recompute_strip();
    return w;
}

template <class T>
mellin::MellinWeight<T> mb_laguerre_weight(const T& a, const T& theta) {
    if (!(a > T(-1))) throw domain_error("mb_laguerre_weight: need a > -1");
    if (!(theta > T(0))) throw domain_error("mb_laguerre_weight: need theta > 0");
    mellin::MellinWeight<T> w;
    // Gamma(theta (s-1) + a + 1) = Gamma(theta s + (a + 1 - theta))
    w.factors.push_back({theta, a + T(1) - theta, mellin::FactorSide::Numerator});
    w.normalize_mass();
    w.recompute_strip();
    return w;
}

template <class T>
mellin::MellinWeight<T> laguerre_inverse_product_weight(const std::vector<T>& a,
                                                        const std::vector<T>& b, int n_dim) {
    if (a.empty() || a.size() != b.size())
        throw domain_error("laguerre_inverse_product_weight: a and b must both have length M");
    mellin::MellinWeight<T> w;
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (!(a[l] > T(-1))) throw domain_error("laguerre_inverse_product_weight: need a_l > -1");
        if (!(b[l] >= T(0))) throw domain_error("laguerre_inverse_product_weight: need b_l >= 0");
        w.factors.push_back({T(1), a[l], mellin::FactorSide::Numerator});
        w.factors.push_back({T(-1), b[l] + T(n_dim) + T(1), mellin::FactorSide::Numerator});
    }
    w.normalize_mass();
    w.recompute_strip();
    return w;
}

template <class T>
polya::PolyaEnsemble<T> build_ensemble(const EnsembleSpec& spec) {
    spec.validate();
    std::vector<T> a(spec.a_params.begin(), spec.a_params.end());
    std::vector<T> b(spec.b_params.begin(), spec.b_params.end());
    polya::PolyaEnsemble<T> ens;
    ens.matrix_dim = spec.matrix_dim;
    switch (spec.family) {
        case Family::LaguerreProduct:
            ens.weight = laguerre_product_weight<T>(a);
            break;
        case Family::MuttalibBorodinLaguerre:
            ens.weight = mb_laguerre_weight<T>(a.at(0), T(spec.theta));
            break;
        case Family::LaguerreInverseProduct:
        case Family::JacobiUnitary:
            // The Jacobi unitary ensemble is the M = 1 inverse product seen
            // through the change of variables x = y / (1 - y).
            ens.weight = laguerre_inverse_product_weight<T>(a, b, spec.matrix_dim);
            break;
    }
    return ens;
}

template <class T>
polya::BiorthogonalEvaluator<T> make_evaluator(const EnsembleSpec& spec) {
    return polya::BiorthogonalEvaluator<T>(build_ensemble<T>(spec));
}

// Jacobi <-> half-line variable map and its derivative.
template <class T>
T jacobi_to_halfline(const T& y) {
    if (!(y > T(0) && y < T(1))) throw domain_error("jacobi_to_halfline: need y in (0,1)");
    return y / (T(1) - y);
}
template <class T>
T jacobi_map_derivative(const T& y) {
    const T d = T(1) - y;
    return T(1) / (d * d);
}

// EnsembleSpec with the same parameters but a different N (the inverse
// product weight is N-dependent, so evaluators must be rebuilt per rung).
inline EnsembleSpec with_dim(EnsembleSpec spec, int n_dim) {
    spec.matrix_dim = n_dim;
    return spec;
}

}  // namespace hardedge::ensembles
