#pragma once

// Stalk support over H x Sigma_C: the splitting h = -tau h1 + h2, invertibility
// of characters at a point, and the fixed-point descriptor of (h1, h2).

#include <cmath>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ellkit/modular.hpp"

namespace ellkit {

struct RationalComplex {
    Rational re = 0;
    Rational im = 0;
};

/// h1 = -Im h / Im tau, h2 = Re h - Re tau Im h / Im tau, exactly.
inline std::pair<RationalCartanVector, RationalCartanVector> decompose(const RationalComplex& tau,
                                                                       const std::vector<RationalComplex>& h) {
    require(tau.im != 0, ErrorKind::domain, "tau must not be real");
    RationalCartanVector h1 = RationalCartanVector::zero(h.size());
    RationalCartanVector h2 = RationalCartanVector::zero(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        h1[i] = -h[i].im / tau.im;
        h2[i] = h[i].re - tau.re * h[i].im / tau.im;
    }
    return {h1, h2};
}

/// -tau h1 + h2.
inline std::vector<RationalComplex> reconstruct(const RationalComplex& tau, const RationalCartanVector& h1,
                                                const RationalCartanVector& h2) {
    std::vector<RationalComplex> h(h1.size());
    for (std::size_t i = 0; i < h1.size(); ++i) h[i] = {-tau.re * h1[i] + h2[i], -tau.im * h1[i]};
    return h;
}

inline std::pair<std::vector<double>, std::vector<double>> decompose(const UpperHalfPoint& tau, const SigmaCPoint& h) {
    const double t = tau.tau.imag();
    std::vector<double> h1, h2;
    for (const auto& x : h.h) {
        h1.push_back(-x.imag() / t);
        h2.push_back(x.real() - tau.tau.real() * x.imag() / t);
    }
    return {h1, h2};
}

/// Recovers p/q with q <= max_den within 1e-12, otherwise the input counts as irrational.
inline Rational rationalize(double x, Int max_den = 1024) {
    require(std::isfinite(x), ErrorKind::unsupported_input, "non-finite coordinate");
    for (Int q = 1; q <= max_den; ++q) {
        const double p = std::round(x * static_cast<double>(q));
        if (std::abs(p / static_cast<double>(q) - x) < 1e-12) return make_rational(static_cast<Int>(p), q);
    }
    fail(ErrorKind::unsupported_input, "coordinate " + std::to_string(x) + " is not a small-denominator rational");
}

/// The character q^m e^{alpha_bar}.
struct AffineCharacter {
    Int m = 0;
    Weight alpha;

    friend bool operator==(const AffineCharacter& a, const AffineCharacter& b) { return a.m == b.m && a.alpha == b.alpha; }
    friend bool operator<(const AffineCharacter& a, const AffineCharacter& b) {
        if (a.m != b.m) return a.m < b.m;
        return a.alpha < b.alpha;
    }
};

inline bool invertible_character(const AffineCharacter& a, const RationalCartanVector& h1,
                                 const RationalCartanVector& h2) {
    return pairing(a.alpha, h1) != a.m || !is_integer(pairing(a.alpha, h2));
}

struct SupportDescriptor {
    RationalCartanVector h1;
    RationalCartanVector h2;
    AlcovePoint folded;  // fold of -h1
    std::vector<int> walls;
    Integer order2 = 1;  // least n >= 1 with n h2 in the coroot lattice
    Integer denom1 = 1;  // least d >= 1 with d h1 in the coroot lattice
    std::vector<AffineCharacter> vanishing_roots;
};

namespace detail {

inline Integer denominator_lcm(const RationalCartanVector& h) {
    Integer l = 1;
    for (const auto& x : h.coords) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

} // namespace detail

inline SupportDescriptor support_descriptor(const RootDatum& d, const RationalCartanVector& h1,
                                            const RationalCartanVector& h2) {
    require(h1.size() == d.dim() && h2.size() == d.dim(), ErrorKind::domain, "support point has wrong dimension");
    SupportDescriptor s;
    s.h1 = h1;
    s.h2 = h2;
    s.folded = fold_to_alcove(d, -h1).point;
    s.walls = s.folded.walls;
    s.order2 = detail::denominator_lcm(h2);
    s.denom1 = detail::denominator_lcm(h1);
    // alpha_bar(h1) = m pins m, so the search over |m| <= max |alpha_bar(h1)| is complete.
    for (const auto& a : all_roots(d)) {
        const Rational x = pairing(a, h1);
        if (!is_integer(x) || !is_integer(pairing(a, h2))) continue;
        s.vanishing_roots.push_back({to_int(x), a});
    }
    std::sort(s.vanishing_roots.begin(), s.vanishing_roots.end());
    return s;
}

/// Descriptor of (tau, h) for h = -tau h1 + h2 given with exact rational parts.
inline SupportDescriptor support_descriptor(const RootDatum& d, const RationalComplex& tau,
                                            const std::vector<RationalComplex>& h) {
    auto [h1, h2] = decompose(tau, h);
    return support_descriptor(d, h1, h2);
}

/// Floating-point input is accepted only when every coordinate is recognizably rational.
inline SupportDescriptor support_descriptor(const RootDatum& d, const UpperHalfPoint& tau, const SigmaCPoint& h) {
    auto [a, b] = decompose(tau, h);
    RationalCartanVector h1 = RationalCartanVector::zero(a.size()), h2 = RationalCartanVector::zero(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        h1[i] = rationalize(a[i]);
        h2[i] = rationalize(b[i]);
    }
    return support_descriptor(d, h1, h2);
}

inline bool free_space_support(const RationalCartanVector& h1, const RationalCartanVector& h2) {
    return to_coroot(h1).has_value() && to_coroot(h2).has_value();
}

/// (h1, h2) under g = (beta1 + beta2) w: h1 -> w h1 - beta1, h2 -> w h2 + beta2.
inline std::pair<RationalCartanVector, RationalCartanVector> transform_parts(const NElement& g,
                                                                               const RationalCartanVector& h1,
                                                                               const RationalCartanVector& h2) {
    return {apply(g.w, h1) - to_cartan(g.beta1), apply(g.w, h2) + to_cartan(g.beta2)};
}

/// The character matching a under g: (m, a) -> (m - (w a)(beta1), w a).
inline AffineCharacter transform_character(const NElement& g, const AffineCharacter& a) {
    const Weight wa = apply(g.w, a.alpha);
    return {checked::sub(a.m, pairing(wa, g.beta1)), wa};
}

} // namespace ellkit
