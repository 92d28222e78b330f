#pragma once

// The group N = (pi1 + pi1) x| W acting on H x Sigma_C, SL2(Z) acting on the
// same space, the double cover M2(Z) with its mu/eta bookkeeping, and numeric
// evaluation of theta sections with rigorous truncation tail bounds.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ellkit/theta.hpp"

namespace ellkit {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct UpperHalfPoint {
    Complex tau;

    UpperHalfPoint() : tau(0.0, 1.0) {}
    explicit UpperHalfPoint(Complex t) : tau(t) {
        require(std::isfinite(t.real()) && std::isfinite(t.imag()) && t.imag() > 0, ErrorKind::domain,
                "tau must lie in the upper half plane");
    }
};

struct SigmaCPoint {
    ComplexVector h;
};

/// A point (tau, h, z) of the line bundle over H x Sigma_C.
struct LinePoint {
    UpperHalfPoint tau;
    SigmaCPoint h;
    Complex z = 1.0;
};

namespace detail {

inline Complex cexp2pi(Complex x) { return std::exp(Complex(0.0, 2.0 * std::numbers::pi) * x); }

inline ComplexVector to_complex(const CorootVector& beta) {
    ComplexVector v;
    for (Int x : beta.coords) v.emplace_back(static_cast<double>(x), 0.0);
    return v;
}

inline ComplexVector to_complex(const RationalCartanVector& h) {
    ComplexVector v;
    for (const auto& x : h.coords) v.emplace_back(x.get_d(), 0.0);
    return v;
}

inline ComplexVector apply_complex(const FiniteWeylElement& w, const ComplexVector& h) {
    ComplexVector r(h.size(), 0.0);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) r[i] += static_cast<double>(w.coroot_matrix[i][j]) * h[j];
    return r;
}

} // namespace detail

/// C-bilinear extension of the basic form.
inline Complex complex_form(const RootDatum& d, const ComplexVector& a, const ComplexVector& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) s += a[i] * d.gram[i][j].get_d() * b[j];
    return s;
}

inline Complex complex_pairing(const Weight& lambda, const ComplexVector& h) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s += static_cast<double>(lambda[i]) * h[i];
    return s;
}

struct NElement {
    CorootVector beta1;
    CorootVector beta2;
    FiniteWeylElement w;

    friend bool operator==(const NElement& a, const NElement& b) {
        return a.beta1 == b.beta1 && a.beta2 == b.beta2 && a.w == b.w;
    }
};

inline NElement n_identity(const RootDatum& d) {
    return {CorootVector::zero(d.dim()), CorootVector::zero(d.dim()), weyl_identity(d)};
}

inline NElement n_multiply(const RootDatum& d, const NElement& a, const NElement& b) {
    return {a.beta1 + apply(a.w, b.beta1), a.beta2 + apply(a.w, b.beta2), weyl_multiply(d, a.w, b.w)};
}

/// (tau, h) -> (tau, w(h) + tau beta1 + beta2).
inline SigmaCPoint n_act(const NElement& g, const UpperHalfPoint& tau, const SigmaCPoint& h) {
    ComplexVector r = detail::apply_complex(g.w, h.h);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += tau.tau * static_cast<double>(g.beta1[i]) + static_cast<double>(g.beta2[i]);
    return {r};
}

/// z -> z exp(2 pi i <beta1, w h> + pi i tau <beta1, beta1>).
inline LinePoint n_act_line(const RootDatum& d, const NElement& g, const LinePoint& x) {
    const ComplexVector wh = detail::apply_complex(g.w, x.h.h);
    const ComplexVector b1 = detail::to_complex(g.beta1);
    const Complex phase = complex_form(d, b1, wh) + x.tau.tau * complex_form(d, b1, b1) / 2.0;
    return {x.tau, n_act(g, x.tau, x.h), x.z * detail::cexp2pi(phase)};
}

struct SL2ZElement {
    Int a = 1, b = 0, c = 0, d = 1;

    SL2ZElement() = default;
    SL2ZElement(Int a_, Int b_, Int c_, Int d_) : a(a_), b(b_), c(c_), d(d_) {
        require(checked::sub(checked::mul(a, d), checked::mul(b, c)) == 1, ErrorKind::domain,
                "SL2(Z) element must have determinant 1");
    }

    friend bool operator==(const SL2ZElement& x, const SL2ZElement& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

inline SL2ZElement sl2_multiply(const SL2ZElement& x, const SL2ZElement& y) {
    using namespace checked;
    return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)), add(mul(x.c, y.a), mul(x.d, y.c)),
            add(mul(x.c, y.b), mul(x.d, y.d))};
}

inline SL2ZElement sl2_inverse(const SL2ZElement& x) {
    return {x.d, checked::sub(0, x.b), checked::sub(0, x.c), x.a};
}

inline SL2ZElement sl2_S() { return {0, -1, 1, 0}; }
inline SL2ZElement sl2_T() { return {1, 1, 0, 1}; }

/// (tau, h) -> ((a tau + b)/(c tau + d), h/(c tau + d)).
inline std::pair<UpperHalfPoint, SigmaCPoint> sl2_act(const SL2ZElement& A, const UpperHalfPoint& tau,
                                                     const SigmaCPoint& h) {
    const Complex den = static_cast<double>(A.c) * tau.tau + static_cast<double>(A.d);
    const Complex t = (static_cast<double>(A.a) * tau.tau + static_cast<double>(A.b)) / den;
    ComplexVector r = h.h;
    for (auto& x : r) x /= den;
    return {UpperHalfPoint(t), SigmaCPoint{r}};
}

/// z -> z exp(-pi i c <h, h> / (c tau + d)).
inline LinePoint sl2_act_line(const RootDatum& d, const SL2ZElement& A, const LinePoint& x) {
    const Complex den = static_cast<double>(A.c) * x.tau.tau + static_cast<double>(A.d);
    const Complex phase = -static_cast<double>(A.c) * complex_form(d, x.h.h, x.h.h) / (2.0 * den);
    auto [t, h] = sl2_act(A, x.tau, x.h);
    return {t, h, x.z * detail::cexp2pi(phase)};
}

/// An integral symmetric form on a lattice; mu(b1, b2) = <b1, b2> mod 2.
struct IntegralForm {
    IntMatrix gram;

    std::size_t dim() const { return gram.size(); }

    Int value(const CorootVector& x, const CorootVector& y) const {
        Int s = 0;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) s = checked::add(s, checked::mul(x[i], checked::mul(gram[i][j], y[j])));
        return s;
    }

    bool is_even() const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (gram[i][i] % 2 != 0) return false;
        return true;
    }
};

inline IntegralForm integral_form(const RootDatum& d) {
    for (const auto& row : d.gram)
        for (const auto& x : row) require(is_integer(x), ErrorKind::normalization, "basic form is not integral on coroots");
    return {d.gram_int};
}

/// A pair beta1 + beta2 of lattice vectors.
struct LatticePair {
    CorootVector beta1;
    CorootVector beta2;

    friend bool operator==(const LatticePair& a, const LatticePair& b) {
        return a.beta1 == b.beta1 && a.beta2 == b.beta2;
    }
};

inline LatticePair operator+(const LatticePair& a, const LatticePair& b) {
    return {a.beta1 + b.beta1, a.beta2 + b.beta2};
}

inline LatticePair apply(const FiniteWeylElement& w, const LatticePair& p) { return {apply(w, p.beta1), apply(w, p.beta2)}; }

/// A * (b1 + b2) = (a b1 + c b2, b b1 + d b2).
inline LatticePair sl2_lattice_act(const SL2ZElement& A, const LatticePair& p) {
    return {A.a * p.beta1 + A.c * p.beta2, A.b * p.beta1 + A.d * p.beta2};
}

inline int mu(const IntegralForm& form, const CorootVector& b1, const CorootVector& b2) {
    return static_cast<int>(floor_mod(form.value(b1, b2), 2));
}

inline int mu(const RootDatum& d, const CorootVector& b1, const CorootVector& b2) {
    const Rational v = basic_form(d, b1, b2);
    require(is_integer(v), ErrorKind::normalization, "pairing of lattice vectors is not integral");
    return static_cast<int>(floor_mod(to_int(v), 2));
}

inline int eta(const IntegralForm& form, const LatticePair& p, const SL2ZElement& A) {
    const LatticePair q = sl2_lattice_act(A, p);
    return static_cast<int>(floor_mod(mu(form, q.beta1, q.beta2) - mu(form, p.beta1, p.beta2), 2));
}

inline int eta(const RootDatum& d, const LatticePair& p, const SL2ZElement& A) {
    return eta(integral_form(d), p, A);
}

/// Normal form sign . (beta1 + beta2) . w . A.
struct M2Element {
    int sign = 0;
    LatticePair lattice;
    FiniteWeylElement w;
    SL2ZElement A;

    friend bool operator==(const M2Element& x, const M2Element& y) {
        return x.sign == y.sign && x.lattice == y.lattice && x.w == y.w && x.A == y.A;
    }
};

inline M2Element m2_identity(const RootDatum& d) {
    return {0, {CorootVector::zero(d.dim()), CorootVector::zero(d.dim())}, weyl_identity(d), SL2ZElement{}};
}

inline M2Element m2_from_n(const NElement& g) { return {0, {g.beta1, g.beta2}, g.w, SL2ZElement{}}; }

inline M2Element m2_from_sl2(const RootDatum& d, const SL2ZElement& A) {
    M2Element g = m2_identity(d);
    g.A = A;
    return g;
}

/// Pushes A1 past the second lattice part using A L = eta(L A^{-1}, A) (L A^{-1}) A.
inline M2Element m2_multiply(const RootDatum& d, const IntegralForm& form, const M2Element& x, const M2Element& y) {
    const SL2ZElement ainv = sl2_inverse(x.A);
    const LatticePair moved = sl2_lattice_act(ainv, y.lattice);
    M2Element r;
    r.sign = (x.sign + y.sign + eta(form, moved, x.A)) % 2;
    r.lattice = x.lattice + apply(x.w, moved);
    r.w = weyl_multiply(d, x.w, y.w);
    r.A = sl2_multiply(x.A, y.A);
    return r;
}

inline M2Element m2_multiply(const RootDatum& d, const M2Element& x, const M2Element& y) {
    return m2_multiply(d, integral_form(d), x, y);
}

inline M2Element m2_inverse(const RootDatum& d, const IntegralForm& form, const M2Element& x) {
    // (s L w A)^{-1} = A^{-1} w^{-1} (-L) s
    const FiniteWeylElement winv = weyl_inverse(d, x.w);
    M2Element a = m2_from_sl2(d, sl2_inverse(x.A));
    M2Element b{0, {-apply(winv, x.lattice.beta1), -apply(winv, x.lattice.beta2)}, winv, SL2ZElement{}};
    M2Element r = m2_multiply(d, form, a, b);
    r.sign = (r.sign + x.sign) % 2;
    return r;
}

/// The element acts by A, then (L, w), then multiplies z by -1 when the sign is set.
inline LinePoint m2_act_line(const RootDatum& d, const M2Element& g, const LinePoint& x) {
    LinePoint y = sl2_act_line(d, g.A, x);
    y = n_act_line(d, {g.lattice.beta1, g.lattice.beta2, g.w}, y);
    if (g.sign) y.z = -y.z;
    return y;
}

struct SectionValue {
    Complex value;
    double tail_bound = 0.0; // bound on the sum of all omitted terms
    std::size_t terms = 0;
};

/// Sum of c z^m exp(2 pi i (tau e + lambda(h))) over the stored terms.
inline Complex evaluate_series(const CharacterSeries& s, const UpperHalfPoint& tau, const SigmaCPoint& h, Complex z) {
    Complex total = 0.0;
    for (const auto& [m, c] : s.terms()) {
        Complex phase = tau.tau * m.energy.get_d() + complex_pairing(m.weight, h.h);
        total += c.get_d() * std::pow(z, static_cast<int>(m.level)) * detail::cexp2pi(phase);
    }
    return total;
}

/// Bound on the omitted part of theta_lambda (energies above the truncation).
///
/// A term of theta_lambda has size |z|^k exp(-2 pi (t n + lambda_bar(y) - k t |c'|^2 / 2))
/// exp(-pi k t |beta + c'|^2) with t = Im tau, y = Im h and c' = G^{-1} lambda_bar / k + y / t.
/// Omitted beta satisfy |beta + c| > rho, c = G^{-1} lambda_bar / k, so |beta + c'| >= rho + j - |y|/t
/// on the j-th unit shell, whose point count is bounded by the enclosing coordinate box.
inline double theta_tail_bound(const RootDatum& d, const ThetaSeries& theta, const UpperHalfPoint& tau,
                               const SigmaCPoint& h, Complex z) {
    const auto n_max = theta.series.truncation();
    if (!n_max) return 0.0;
    const LevelKCharacter& lam = theta.source;
    const double k = static_cast<double>(lam.level);
    const double t = tau.tau.imag();
    const std::size_t r = d.dim();
    std::vector<double> c(r, 0.0), cp(r, 0.0), y(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) y[i] = h.h[i].imag();
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) c[i] += d.gram_inverse[i][j].get_d() * static_cast<double>(lam.lambda_bar[j]) / k;
        cp[i] = c[i] + y[i] / t;
    }
    auto norm2 = [&](const std::vector<double>& v) {
        double s = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) s += v[i] * d.gram[i][j].get_d() * v[j];
        return s;
    };
    const double rho2 = 2.0 * Rational(*n_max - lam.energy).get_d() / k + norm2(c);
    if (rho2 <= 0) return std::numeric_limits<double>::infinity();
    const double rho = std::sqrt(rho2);
    const double s0 = rho - std::sqrt(norm2(y)) / t;
    if (s0 <= 0) return std::numeric_limits<double>::infinity();
    double lambda_y = 0;
    for (std::size_t i = 0; i < r; ++i) lambda_y += static_cast<double>(lam.lambda_bar[i]) * y[i];
    const double log_prefactor = k * std::log(std::abs(z)) -
                                 2.0 * std::numbers::pi * (t * lam.energy.get_d() + lambda_y - k * t * norm2(cp) / 2.0);
    double total = 0.0;
    for (int j = 0; j < 100000; ++j) {
        const double outer = rho + j + 1;
        double count = 1.0;
        for (std::size_t i = 0; i < r; ++i) count *= 2.0 * outer * std::sqrt(d.gram_inverse[i][i].get_d()) + 1.0;
        const double s = s0 + j;
        const double term = std::exp(std::log(count) + log_prefactor - std::numbers::pi * k * t * s * s);
        total += term;
        if (j > 0 && term < 1e-18 * total) break;
        if (term == 0.0 && s > 1.0) break;
    }
    return total;
}

inline SectionValue evaluate_section(const RootDatum& d, const ThetaSeries& theta, const UpperHalfPoint& tau,
                                     const SigmaCPoint& h, Complex z, double tol = 1e-8) {
    require(h.h.size() == d.dim(), ErrorKind::domain, "point has wrong dimension");
    SectionValue v;
    v.value = evaluate_series(theta.series, tau, h, z);
    v.terms = theta.series.size();
    v.tail_bound = theta_tail_bound(d, theta, tau, h, z);
    if (!(v.tail_bound <= tol * std::max(1.0, std::abs(v.value))))
        fail(ErrorKind::insufficient_truncation, "truncation tail bound " + std::to_string(v.tail_bound) +
                                                     " exceeds tolerance; raise the q-order or Im tau");
    return v;
}

struct TransformReport {
    double periodicity_error = 0.0;      // |phi(h + beta) - phi(h)| / |phi(h)|
    double quasi_periodicity_error = 0.0; // against exp(2 pi i k <beta,h> + pi i k tau <beta,beta>) phi(h + tau beta)
    double homogeneity_error = 0.0;      // |phi(2z) - 2^k phi(z)| / |2^k phi(z)|
    double max_tail_bound = 0.0;
    bool pass = false;
};

inline TransformReport verify_section_transform(const RootDatum& d, const ThetaSeries& theta, const UpperHalfPoint& tau,
                                                const SigmaCPoint& h, Complex z, const CorootVector& beta, double tol) {
    const double k = static_cast<double>(theta.source.level);
    auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); };
    auto shifted = [&](Complex factor) {
        SigmaCPoint p = h;
        for (std::size_t i = 0; i < d.dim(); ++i) p.h[i] += factor * static_cast<double>(beta[i]);
        return p;
    };
    TransformReport rep;
    const SectionValue base = evaluate_section(d, theta, tau, h, z, tol);
    const SectionValue periodic = evaluate_section(d, theta, tau, shifted(1.0), z, tol);
    const SectionValue quasi = evaluate_section(d, theta, tau, shifted(tau.tau), z, tol);
    const SectionValue doubled = evaluate_section(d, theta, tau, h, 2.0 * z, tol);
    const ComplexVector b = detail::to_complex(beta);
    const Complex factor =
        detail::cexp2pi(k * complex_form(d, b, h.h) + k * tau.tau * complex_form(d, b, b) / 2.0);
    rep.periodicity_error = rel(base.value, periodic.value);
    rep.quasi_periodicity_error = rel(base.value, factor * quasi.value);
    rep.homogeneity_error = rel(std::pow(2.0, k) * base.value, doubled.value);
    rep.max_tail_bound = std::max({base.tail_bound, periodic.tail_bound, std::abs(factor) * quasi.tail_bound,
                                   doubled.tail_bound / std::pow(2.0, k)});
    rep.pass = rep.periodicity_error <= tol && rep.quasi_periodicity_error <= tol && rep.homogeneity_error <= tol;
    return rep;
}

enum class ProbeStatus { ok, indeterminate };

struct VanishingOrder {
    ProbeStatus status = ProbeStatus::indeterminate;
    int order = 0;
    double slope = 0.0;
    double residual = 0.0; // |slope - order| plus the rms of the fit
};

using Germ = std::function<Complex(const UpperHalfPoint&, const SigmaCPoint&)>;

/// Fits log|f(x0 + t v)| against log t for t in a geometric grid in (0, radius].
inline VanishingOrder vanishing_order_probe(const Germ& f, const UpperHalfPoint& tau0, const SigmaCPoint& h0,
                                            Complex dtau, const ComplexVector& dh, double radius, int samples) {
    require(samples >= 3, ErrorKind::domain, "need at least three samples");
    require(radius > 0, ErrorKind::domain, "radius must be positive");
    std::vector<double> xs, ys;
    for (int i = 0; i < samples; ++i) {
        const double t = radius * std::pow(0.5, i);
        SigmaCPoint h = h0;
        for (std::size_t j = 0; j < h.h.size(); ++j) h.h[j] += t * dh[j];
        const Complex tau = tau0.tau + t * dtau;
        if (tau.imag() <= 0) return {};
        const double a = std::abs(f(UpperHalfPoint(tau), h));
        if (!(a > 0) || !std::isfinite(a)) return {};
        xs.push_back(std::log(t));
        ys.push_back(std::log(a));
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    VanishingOrder out;
    out.slope = sxy / sxx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (my + out.slope * (xs[i] - mx));
        rss += e * e;
    }
    out.order = static_cast<int>(std::lround(out.slope));
    out.residual = std::abs(out.slope - out.order) + std::sqrt(rss / n);
    out.status = out.residual < 0.2 ? ProbeStatus::ok : ProbeStatus::indeterminate;
    return out;
}

} // namespace ellkit
