#pragma once

// Characters sum c u^m q^e e^lambda with integer level m, rational energy e and
// integral weight lambda.  A series may carry a truncation N: every term with
// energy <= N is present and correct, and nothing above N is stored.

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ellkit/affine_weyl.hpp"

namespace ellkit {

struct CharacterMonomial {
    Int level = 0;
    Rational energy = 0;
    Weight weight;

    friend bool operator==(const CharacterMonomial& a, const CharacterMonomial& b) {
        return a.level == b.level && a.energy == b.energy && a.weight == b.weight;
    }
    friend bool operator<(const CharacterMonomial& a, const CharacterMonomial& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        if (a.level != b.level) return a.level < b.level;
        return a.weight < b.weight;
    }
};

class CharacterSeries {
public:
    using Terms = std::map<CharacterMonomial, Integer>;

    CharacterSeries() = default;
    explicit CharacterSeries(std::size_t rank, std::optional<Rational> truncation = std::nullopt)
        : rank_(rank), truncation_(std::move(truncation)) {}

    static CharacterSeries monomial(const CharacterMonomial& mono, const Integer& coeff = 1,
                                    std::optional<Rational> truncation = std::nullopt) {
        CharacterSeries s(mono.weight.size(), std::move(truncation));
        s.add_term(mono, coeff);
        return s;
    }

    /// e^lambda as an exact series.
    static CharacterSeries character(const Weight& lambda, const Integer& coeff = 1) {
        return monomial({0, 0, lambda}, coeff);
    }

    static CharacterSeries one(std::size_t rank) { return character(Weight::zero(rank)); }

    std::size_t rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    const std::optional<Rational>& truncation() const { return truncation_; }
    bool is_exact() const { return !truncation_.has_value(); }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Least stored energy; for an empty series the truncation (or 0 when exact).
    Rational lower_bound() const {
        if (!terms_.empty()) return terms_.begin()->first.energy;
        return truncation_ ? *truncation_ : Rational(0);
    }

    Integer coefficient(const CharacterMonomial& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Adds coeff to the term; terms above the truncation are dropped.
    void add_term(const CharacterMonomial& mono, const Integer& coeff) {
        require(mono.weight.size() == rank_, ErrorKind::domain, "monomial weight has wrong rank");
        if (coeff == 0) return;
        if (truncation_ && mono.energy > *truncation_) return;
        auto [it, inserted] = terms_.try_emplace(mono, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Restricts to energies <= n; the truncation becomes min(current, n).
    CharacterSeries truncated(const Rational& n) const {
        CharacterSeries out(rank_, truncation_ ? std::min(*truncation_, n) : n);
        for (const auto& [m, c] : terms_)
            if (m.energy <= *out.truncation_) out.terms_.emplace(m, c);
        return out;
    }

    bool all_levels_equal(Int k) const {
        for (const auto& [m, c] : terms_)
            if (m.level != k) return false;
        return true;
    }

    friend bool operator==(const CharacterSeries& a, const CharacterSeries& b) {
        return a.rank_ == b.rank_ && a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const CharacterSeries& a, const CharacterSeries& b) { return !(a == b); }

private:
    std::size_t rank_ = 0;
    std::optional<Rational> truncation_;
    Terms terms_;
};

/// Finite support, no truncation.
using LaurentPoly = CharacterSeries;

namespace detail {

inline std::optional<Rational> min_truncation(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace detail

/// Term-by-term equality for energies <= n (both series must be valid there).
inline bool agree_up_to(const CharacterSeries& a, const CharacterSeries& b, const Rational& n) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    auto skip = [&](auto& it, const CharacterSeries& s) {
        return it == s.terms().end() || it->first.energy > n;
    };
    for (;;) {
        const bool ea = skip(ia, a), eb = skip(ib, b);
        if (ea || eb) return ea && eb;
        if (!(ia->first == ib->first) || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
}

/// Common validity range of two series, if any.
inline std::optional<Rational> common_truncation(const CharacterSeries& a, const CharacterSeries& b) {
    return detail::min_truncation(a.truncation(), b.truncation());
}

/// Equality on the common range of validity (exact equality when both are exact).
inline bool equal_where_valid(const CharacterSeries& a, const CharacterSeries& b) {
    auto n = common_truncation(a, b);
    if (!n) return a.terms() == b.terms();
    return agree_up_to(a, b, *n);
}

inline CharacterSeries scale(const CharacterSeries& s, const Integer& c) {
    CharacterSeries out(s.rank(), s.truncation());
    if (c == 0) return out;
    for (const auto& [m, x] : s.terms()) out.add_term(m, x * c);
    return out;
}

inline CharacterSeries add(const CharacterSeries& a, const CharacterSeries& b) {
    require(a.rank() == b.rank(), ErrorKind::domain, "series rank mismatch");
    CharacterSeries out(a.rank(), detail::min_truncation(a.truncation(), b.truncation()));
    for (const auto& [m, c] : a.terms()) out.add_term(m, c);
    for (const auto& [m, c] : b.terms()) out.add_term(m, c);
    return out;
}

inline CharacterSeries subtract(const CharacterSeries& a, const CharacterSeries& b) { return add(a, scale(b, -1)); }

inline CharacterSeries mul(const CharacterSeries& a, const CharacterSeries& b) {
    require(a.rank() == b.rank(), ErrorKind::domain, "series rank mismatch");
    std::optional<Rational> n;
    if (a.is_exact() && b.is_exact()) {
        n = std::nullopt;
    } else if (a.is_exact()) {
        n = a.empty() ? std::optional<Rational>{} : std::optional<Rational>{*b.truncation() + a.lower_bound()};
    } else if (b.is_exact()) {
        n = b.empty() ? std::optional<Rational>{} : std::optional<Rational>{*a.truncation() + b.lower_bound()};
    } else {
        n = std::min(*a.truncation() + b.lower_bound(), *b.truncation() + a.lower_bound());
    }
    CharacterSeries out(a.rank(), n);
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Rational e = ma.energy + mb.energy;
            if (n && e > *n) continue;
            out.add_term({checked::add(ma.level, mb.level), std::move(e), ma.weight + mb.weight}, ca * cb);
        }
    return out;
}

inline CharacterSeries operator+(const CharacterSeries& a, const CharacterSeries& b) { return add(a, b); }
inline CharacterSeries operator-(const CharacterSeries& a, const CharacterSeries& b) { return subtract(a, b); }
inline CharacterSeries operator*(const CharacterSeries& a, const CharacterSeries& b) { return mul(a, b); }

/// beta * (u^m q^e e^lambda) = u^m q^{e + lambda(beta) + m<beta,beta>/2} e^{lambda + m beta*}.
inline CharacterMonomial lattice_translate(const RootDatum& d, const CorootVector& beta, const CharacterMonomial& mono) {
    const Weight dual = dual_weight(d, beta);
    const Rational norm = basic_form(d, beta, beta);
    return {mono.level, mono.energy + to_rational(pairing(mono.weight, beta)) + to_rational(mono.level) * norm / 2,
            mono.weight + mono.level * dual};
}

/// The truncation moves by the least energy shift over stored terms.
inline CharacterSeries lattice_translate(const RootDatum& d, const CorootVector& beta, const CharacterSeries& s) {
    require(beta.size() == d.dim() && s.rank() == d.dim(), ErrorKind::domain, "lattice_translate rank mismatch");
    std::optional<Rational> n = s.truncation();
    if (n && !s.empty()) {
        std::optional<Rational> shift;
        for (const auto& [m, c] : s.terms()) {
            Rational sh = lattice_translate(d, beta, m).energy - m.energy;
            if (!shift || sh < *shift) shift = sh;
        }
        n = *n + *shift;
    }
    CharacterSeries out(s.rank(), n);
    for (const auto& [m, c] : s.terms()) out.add_term(lattice_translate(d, beta, m), c);
    return out;
}

inline CharacterSeries finite_weyl_act(const FiniteWeylElement& w, const CharacterSeries& s) {
    CharacterSeries out(s.rank(), s.truncation());
    for (const auto& [m, c] : s.terms()) out.add_term({m.level, m.energy, apply(w, m.weight)}, c);
    return out;
}

/// Affine element (beta, w) acting on characters: translate(beta) after w.
inline CharacterSeries affine_act(const RootDatum& d, const AffineWeylElement& g, const CharacterSeries& s) {
    return lattice_translate(d, g.translation, finite_weyl_act(g.finite, s));
}

/// The binomial e^weight q^energy - 1.
struct Binomial {
    Weight weight;
    Rational energy = 0;
};

inline CharacterSeries to_series(const Binomial& b) {
    CharacterSeries s = CharacterSeries::monomial({0, b.energy, b.weight});
    s.add_term({0, 0, Weight::zero(b.weight.size())}, -1);
    return s;
}

/// A coset line {rep + j (weight, energy)} whose coefficient sum is nonzero.
struct OpenLine {
    CharacterMonomial representative;
    Integer sum;
};

struct DivisionResult {
    std::optional<CharacterSeries> quotient;
    std::vector<OpenLine> open_lines;
};

namespace detail {

struct LinePosition {
    CharacterMonomial rep;
    Int j = 0;
};

inline LinePosition line_position(const CharacterMonomial& m, const Binomial& b, std::size_t pivot) {
    const Int j = floor_div(m.weight[pivot], b.weight[pivot]);
    return {{m.level, m.energy - to_rational(j) * b.energy, m.weight - j * b.weight}, j};
}

inline CharacterMonomial line_point(const CharacterMonomial& rep, const Binomial& b, Int j) {
    return {rep.level, rep.energy + to_rational(j) * b.energy, rep.weight + j * b.weight};
}

} // namespace detail

/// Division by e^weight q^energy - 1, coset line by coset line.
///
/// Each coset modulo Z(weight, energy) is a line t^j, and the division is the
/// univariate division by t - 1.  An exact input, or a divisor of energy 0, is
/// divisible iff every line sum vanishes.  For a truncated input and nonzero
/// energy the quotient always exists in the energy completion; lines that need
/// an infinite geometric tail are reported in open_lines.
inline DivisionResult divide_by_binomial(const CharacterSeries& f, const Binomial& b) {
    require(b.weight.size() == f.rank(), ErrorKind::domain, "divisor rank mismatch");
    require(!b.weight.is_zero(), ErrorKind::domain, "division by e^0 q^e - 1 is not supported");
    std::size_t pivot = 0;
    while (b.weight[pivot] == 0) ++pivot;

    std::map<CharacterMonomial, std::map<Int, Integer>> lines;
    for (const auto& [m, c] : f.terms()) {
        auto pos = detail::line_position(m, b, pivot);
        lines[pos.rep][pos.j] = c;
    }

    DivisionResult result;
    const bool completion = !f.is_exact() && b.energy != 0;
    std::optional<Rational> n = f.truncation();
    if (completion && b.energy < 0) n = *n - b.energy;
    CharacterSeries g(f.rank(), n);

    for (const auto& [rep, coeffs] : lines) {
        Integer total = 0;
        for (const auto& [j, c] : coeffs) total += c;
        if (total != 0) result.open_lines.push_back({detail::line_point(rep, b, coeffs.begin()->first), total});
        const Int lo = coeffs.begin()->first;
        const Int hi = coeffs.rbegin()->first;
        if (!completion || b.energy > 0) {
            // g_j = -sum_{i <= j} f_i, then the constant tail -T above the support.
            Integer running = 0;
            for (Int j = lo; j < hi; ++j) {
                auto it = coeffs.find(j);
                if (it != coeffs.end()) running += it->second;
                g.add_term(detail::line_point(rep, b, j), -running);
            }
            if (completion && total != 0)
                for (Int j = hi;; ++j) {
                    auto p = detail::line_point(rep, b, j);
                    if (p.energy > *n) break;
                    g.add_term(p, -total);
                }
        } else {
            // g_j = sum_{i > j} f_i, then the constant tail T below the support.
            Integer running = 0;
            for (Int j = hi - 1; j >= lo; --j) {
                auto it = coeffs.find(j + 1);
                if (it != coeffs.end()) running += it->second;
                g.add_term(detail::line_point(rep, b, j), running);
            }
            if (total != 0)
                for (Int j = lo - 1;; --j) {
                    auto p = detail::line_point(rep, b, j);
                    if (p.energy > *n) break;
                    g.add_term(p, total);
                }
        }
    }
    if (completion || result.open_lines.empty()) result.quotient = std::move(g);
    return result;
}

/// g with g (e^alpha - 1) = f for an exact f, if it exists.
inline std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const Weight& alpha) {
    require(!alpha.is_zero(), ErrorKind::domain, "division by e^0 - 1");
    require(f.is_exact(), ErrorKind::domain, "divide_exact expects an exact Laurent polynomial");
    return divide_by_binomial(f, {alpha, 0}).quotient;
}

/// Degreewise division of a truncated series by e^alpha - 1; the truncation is kept.
inline std::optional<CharacterSeries> divide_exact_series(const CharacterSeries& f, const Weight& alpha) {
    require(!alpha.is_zero(), ErrorKind::domain, "division by e^0 - 1");
    return divide_by_binomial(f, {alpha, 0}).quotient;
}

} // namespace ellkit
