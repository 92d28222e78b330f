#pragma once

// Level-k theta series as exact truncated q-series, Weyl (anti)symmetrization,
// Euler-theta components and divisibility certificates for Bruhat covers.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellkit/char_ring.hpp"

namespace ellkit {

struct LevelKCharacter {
    Weight lambda_bar;
    Int level = 1;
    Rational energy = 0;

    CharacterMonomial monomial() const { return {level, energy, lambda_bar}; }
};

struct ThetaSeries {
    CharacterSeries series;
    LevelKCharacter source;
};

namespace detail {

// Decomposition G = U^T D U with U unit upper triangular, so that
// x^T G x = sum_i D_i (x_i + sum_{j>i} U_ij x_j)^2.
struct QuadraticDecomposition {
    RationalVector diag;
    RationalMatrix upper;
};

inline QuadraticDecomposition decompose_form(const RationalMatrix& g) {
    const std::size_t n = g.size();
    QuadraticDecomposition q{RationalVector(n), RationalMatrix(n, RationalVector(n, Rational(0)))};
    RationalMatrix a = g;
    for (std::size_t i = 0; i < n; ++i) {
        require(a[i][i] > 0, ErrorKind::consistency, "quadratic form is not positive definite");
        q.diag[i] = a[i][i];
        q.upper[i][i] = 1;
        for (std::size_t j = i + 1; j < n; ++j) q.upper[i][j] = a[i][j] / a[i][i];
        for (std::size_t r = i + 1; r < n; ++r)
            for (std::size_t c = i + 1; c < n; ++c) a[r][c] -= q.upper[i][r] * a[i][c];
    }
    return q;
}

} // namespace detail

/// Every integer x with (x + c)^T G (x + c) <= radius, by exact branch and bound.
inline std::vector<IntVector> enumerate_ellipsoid(const RationalMatrix& gram, const RationalVector& center,
                                                 const Rational& radius) {
    const std::size_t n = gram.size();
    std::vector<IntVector> out;
    if (radius < 0) return out;
    const auto q = detail::decompose_form(gram);
    IntVector x(n, 0);

    // Level i sees the partial sum from coordinates above i.
    std::function<void(std::size_t, Rational)> recurse = [&](std::size_t level, Rational remaining) {
        const std::size_t i = level - 1;
        Rational shift = center[i];
        for (std::size_t j = i + 1; j < n; ++j) shift += q.upper[i][j] * (to_rational(x[j]) + center[j]);
        auto fits = [&](Int t) {
            Rational y = to_rational(t) + shift;
            return q.diag[i] * y * y <= remaining;
        };
        const double mid = -shift.get_d();
        const double r = std::sqrt(std::max(0.0, Rational(remaining / q.diag[i]).get_d()));
        Int lo = static_cast<Int>(std::floor(mid - r)) - 1;
        Int hi = static_cast<Int>(std::ceil(mid + r)) + 1;
        while (lo <= hi && !fits(lo)) ++lo;
        while (hi >= lo && !fits(hi)) --hi;
        if (lo > hi) {
            const Int guess = static_cast<Int>(std::llround(mid));
            if (!fits(guess)) return;
            lo = hi = guess;
        }
        while (fits(lo - 1)) --lo;
        while (fits(hi + 1)) ++hi;
        for (Int t = lo; t <= hi; ++t) {
            x[i] = t;
            Rational y = to_rational(t) + shift;
            Rational rest = remaining - q.diag[i] * y * y;
            if (i == 0)
                out.push_back(x);
            else
                recurse(i, rest);
        }
        x[i] = 0;
    };
    if (n == 0) return out;
    recurse(n, radius);
    return out;
}

/// Energy of beta * e^lambda: n + lambda_bar(beta) + (k/2) <beta, beta>.
inline Rational translated_energy(const RootDatum& d, const LevelKCharacter& lam, const CorootVector& beta) {
    return lam.energy + to_rational(pairing(lam.lambda_bar, beta)) +
           to_rational(lam.level) * basic_form(d, beta, beta) / 2;
}

namespace detail {

struct EnergyCenter {
    RationalVector c; // E(beta) = n + (k/2)|beta + c|^2 - (k/2)|c|^2
    Rational cgc;     // |c|^2
};

inline EnergyCenter energy_center(const RootDatum& d, const LevelKCharacter& lam) {
    const Rational k = to_rational(lam.level);
    EnergyCenter e{RationalVector(d.dim(), Rational(0)), 0};
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) e.c[i] += d.gram_inverse[i][j] * to_rational(lam.lambda_bar[j]) / k;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) e.cgc += e.c[i] * d.gram[i][j] * e.c[j];
    return e;
}

// lo <= sqrt(x) <= hi, x >= 0, to within 2^-40.
inline std::pair<Rational, Rational> sqrt_bounds(const Rational& x) {
    const Integer scale = Integer(1) << 40;
    const Integer den = x.get_den() * scale;
    const Integer root = sqrt(Integer(x.get_num() * x.get_den() * scale * scale));
    return {Rational(root, den), Rational(root + 1, den)};
}

} // namespace detail

/// All beta in the coroot lattice with translated energy <= n_max.
inline std::vector<CorootVector> theta_support(const RootDatum& d, const LevelKCharacter& lam, const Rational& n_max) {
    require(lam.level > 0, ErrorKind::domain, "theta series needs positive level");
    require(lam.lambda_bar.size() == d.dim(), ErrorKind::domain, "weight rank mismatch");
    const Rational k = to_rational(lam.level);
    const auto [c, cgc] = detail::energy_center(d, lam);
    const Rational radius = 2 * (n_max - lam.energy) / k + cgc;
    std::vector<CorootVector> out;
    for (auto& x : enumerate_ellipsoid(d.gram, c, radius)) {
        CorootVector beta(std::move(x));
        if (translated_energy(d, lam, beta) <= n_max) out.push_back(std::move(beta));
    }
    return out;
}

/// theta_lambda = sum over beta of beta * e^lambda, every term of energy <= n_max.
inline ThetaSeries theta_lambda(const RootDatum& d, const LevelKCharacter& lam, const Rational& n_max) {
    CharacterSeries s(d.dim(), n_max);
    for (const auto& beta : theta_support(d, lam, n_max)) s.add_term(lattice_translate(d, beta, lam.monomial()), 1);
    return {std::move(s), lam};
}

/// Energy order up to which lattice_translate(beta, theta) provably agrees with theta.
/// Missing terms lie outside the ball |gamma + c| <= R; translating moves them by |beta|.
inline Rational translation_validity(const RootDatum& d, const ThetaSeries& t, const CorootVector& beta) {
    require(t.series.truncation().has_value(), ErrorKind::domain, "exact theta series has no validity order");
    const LevelKCharacter& lam = t.source;
    const Rational k = to_rational(lam.level);
    const auto [c, cgc] = detail::energy_center(d, lam);
    const Rational floor_energy = lam.energy - k * cgc / 2;
    const Rational r2 = 2 * (*t.series.truncation() - lam.energy) / k + cgc;
    if (r2 <= 0) return floor_energy - 1;
    const Rational r = detail::sqrt_bounds(r2).first;
    const Rational b = detail::sqrt_bounds(basic_form(d, beta, beta)).second;
    if (r <= b) return floor_energy - 1;
    return floor_energy + k * (r - b) * (r - b) / 2;
}

/// The first `count` nonzero norm shells of the coroot lattice, by increasing norm.
inline std::vector<std::vector<CorootVector>> lattice_shells(const RootDatum& d, int count) {
    require(count >= 0, ErrorKind::domain, "shell count must be nonnegative");
    const RationalVector zero(d.dim(), Rational(0));
    Rational radius = 2;
    for (;;) {
        std::map<Rational, std::vector<CorootVector>> shells;
        for (auto& x : enumerate_ellipsoid(d.gram, zero, radius)) {
            CorootVector beta(std::move(x));
            if (beta.is_zero()) continue;
            shells[basic_form(d, beta, beta)].push_back(std::move(beta));
        }
        if (static_cast<int>(shells.size()) >= count) {
            std::vector<std::vector<CorootVector>> out;
            for (auto& [norm, vs] : shells) {
                if (static_cast<int>(out.size()) == count) break;
                std::sort(vs.begin(), vs.end());
                out.push_back(std::move(vs));
            }
            return out;
        }
        radius *= 2;
    }
}

/// Dominant weights with lambda(theta^v) <= k, in lexicographic order.
inline std::vector<Weight> enumerate_level_k(const RootDatum& d, Int k) {
    require(k >= 0, ErrorKind::domain, "level must be nonnegative");
    std::vector<Weight> out;
    Weight lambda = Weight::zero(d.dim());
    std::function<void(std::size_t, Int)> recurse = [&](std::size_t i, Int budget) {
        if (i == d.dim()) {
            out.push_back(lambda);
            return;
        }
        const Int mark = d.highest_coroot[i];
        for (Int x = 0; x * mark <= budget; ++x) {
            lambda[i] = x;
            recurse(i + 1, budget - x * mark);
        }
        lambda[i] = 0;
    };
    recurse(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

inline CharacterSeries weyl_invariantize(const RootDatum& d, const CharacterSeries& s) {
    CharacterSeries out(s.rank(), s.truncation());
    for (const auto& w : enumerate_finite_weyl(d)) out = add(out, finite_weyl_act(w, s));
    return out;
}

inline CharacterSeries antisymmetrize(const RootDatum& d, const CharacterSeries& s) {
    CharacterSeries out(s.rank(), s.truncation());
    for (const auto& w : enumerate_finite_weyl(d)) out = add(out, scale(finite_weyl_act(w, s), w.sign()));
    return out;
}

inline CharacterSeries weyl_invariantize(const RootDatum& d, const ThetaSeries& t) {
    return weyl_invariantize(d, t.series);
}

inline CharacterSeries antisymmetrize(const RootDatum& d, const ThetaSeries& t) { return antisymmetrize(d, t.series); }

/// W-indexed components w * theta_lambda.
struct EulerThetaClass {
    LevelKCharacter lambda;
    std::map<FiniteWeylElement, CharacterSeries> components;
};

inline EulerThetaClass euler_theta_class(const RootDatum& d, const LevelKCharacter& lam, const Rational& n_max) {
    const ThetaSeries theta = theta_lambda(d, lam, n_max);
    EulerThetaClass e{lam, {}};
    for (const auto& w : enumerate_finite_weyl(d)) e.components.emplace(w, finite_weyl_act(w, theta.series));
    return e;
}

/// The divisor e^{alpha_bar} q^{-m} - 1 attached to the affine root alpha_bar + m.
///
/// r_alpha multiplies a level-k monomial mu by (e^{-alpha_bar} q^m)^c with
/// c = mu(h_alpha) + 2km / |alpha_bar|^2, so r_alpha mu - mu is a multiple of
/// e^{alpha_bar} q^{-m} - 1.
inline Binomial affine_root_divisor(const AffineRoot& a) { return {a.finite, to_rational(checked::sub(0, a.m))}; }

enum class Verdict { divisible, not_divisible, indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::divisible: return "divisible";
    case Verdict::not_divisible: return "not-divisible";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "unknown";
}

struct DivisibilityCertificate {
    Verdict verdict = Verdict::indeterminate;
    Binomial divisor;
    CharacterSeries difference;
    std::optional<CharacterSeries> quotient;
    bool verified = false;            // quotient * divisor == difference where valid
    std::vector<OpenLine> open_lines; // coset lines whose quotient needs a geometric tail
    std::optional<OpenLine> counterexample;
    std::string note;
};

/// Checks that a triple really is a cover: w = r_alpha v, l(w) = l(v) + 1, alpha > 0.
inline void validate_cover(const RootDatum& d, const BruhatCover& c) {
    require(is_root(d, c.alpha.finite), ErrorKind::domain, "cover root has a non-root finite part");
    require(is_positive(d, c.alpha), ErrorKind::domain, "cover root is not positive");
    require(affine_multiply(d, affine_reflection(d, c.alpha), c.v) == c.w, ErrorKind::domain, "w != r_alpha v");
    require(affine_length(d, c.w) == affine_length(d, c.v) + 1, ErrorKind::domain, "l(w) != l(v) + 1");
}

/// Certificate that w * theta_lambda - v * theta_lambda is divisible by e^alpha - 1.
///
/// theta_lambda is invariant under the lattice, so only the finite parts of w
/// and v act; the translation parts would only move the truncation.
inline DivisibilityCertificate check_cover_divisibility(const RootDatum& d, const LevelKCharacter& lam,
                                                        const BruhatCover& cover, const Rational& n_max) {
    validate_cover(d, cover);
    const ThetaSeries theta = theta_lambda(d, lam, n_max);
    DivisibilityCertificate cert;
    cert.divisor = affine_root_divisor(cover.alpha);
    cert.difference = subtract(finite_weyl_act(cover.w.finite, theta.series), finite_weyl_act(cover.v.finite, theta.series));
    if (theta.series.empty()) {
        cert.verdict = Verdict::indeterminate;
        cert.note = "truncation below the lowest energy of theta_lambda";
        return cert;
    }
    DivisionResult r = divide_by_binomial(cert.difference, cert.divisor);
    cert.open_lines = r.open_lines;
    if (!r.quotient) {
        cert.verdict = Verdict::not_divisible;
        cert.counterexample = r.open_lines.front();
        cert.note = "coset line with nonzero coefficient sum";
        return cert;
    }
    const CharacterSeries back = mul(*r.quotient, to_series(cert.divisor));
    const auto valid = common_truncation(back, cert.difference);
    cert.verified = valid ? agree_up_to(back, cert.difference, *valid) : back.terms() == cert.difference.terms();
    cert.quotient = std::move(r.quotient);
    if (!cert.verified) {
        cert.verdict = Verdict::not_divisible;
        cert.note = "quotient failed the multiply-back check";
        return cert;
    }
    cert.verdict = Verdict::divisible;
    return cert;
}

struct FactorizationReport {
    CharacterSeries lhs;    // w * (beta * e^lambda) - v * (beta * e^lambda)
    CharacterSeries rhs;    // mu ((e^{-alpha_bar} q^m)^c - 1), mu = v * (beta * e^lambda)
    CharacterSeries factor; // rhs / (e^{-alpha_bar} q^m - 1) as a finite geometric sum
    Int exponent = 0;       // c
    bool holds = false;
    std::string mismatch;
};

inline FactorizationReport factorization_witness(const RootDatum& d, const AffineWeylElement& w,
                                                 const AffineWeylElement& v, const LevelKCharacter& lam,
                                                 const AffineRoot& alpha, const CorootVector& beta) {
    require(affine_multiply(d, affine_reflection(d, alpha), v) == w, ErrorKind::domain, "w != r_alpha v");
    const CharacterSeries start = CharacterSeries::monomial(lattice_translate(d, beta, lam.monomial()));
    FactorizationReport rep;
    rep.lhs = subtract(affine_act(d, w, start), affine_act(d, v, start));

    const CharacterSeries mu_series = affine_act(d, v, start);
    const CharacterMonomial mu = mu_series.terms().begin()->first;
    const Rational c = to_rational(pairing(mu.weight, coroot_of(d, alpha.finite))) +
                       2 * to_rational(mu.level) * to_rational(alpha.m) / weight_form(d, alpha.finite, alpha.finite);
    rep.exponent = to_int(c);
    auto x_power = [&](Int i) {
        return CharacterSeries::monomial(
            {mu.level, mu.energy + to_rational(i) * to_rational(alpha.m), mu.weight - i * alpha.finite});
    };
    rep.rhs = subtract(x_power(rep.exponent), mu_series);

    rep.factor = CharacterSeries(d.dim());
    if (rep.exponent > 0)
        for (Int i = 0; i < rep.exponent; ++i) rep.factor = add(rep.factor, x_power(i));
    else
        for (Int i = rep.exponent; i < 0; ++i) rep.factor = subtract(rep.factor, x_power(i));

    const CharacterSeries x_minus_one =
        subtract(CharacterSeries::monomial({0, to_rational(alpha.m), -alpha.finite}), CharacterSeries::one(d.dim()));
    if (rep.lhs != rep.rhs) {
        rep.mismatch = "left side differs from e^mu ((e^-alpha q^m)^c - 1)";
    } else if (mul(rep.factor, x_minus_one) != rep.rhs) {
        rep.mismatch = "geometric factor times (e^-alpha q^m - 1) differs from the right side";
    } else {
        rep.holds = true;
    }
    return rep;
}

} // namespace ellkit
