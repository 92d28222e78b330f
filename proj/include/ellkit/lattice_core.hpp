#pragma once

// Root data of the simple types up to rank 4, with exact lattice arithmetic.
//
// Coordinates are never converted implicitly:
//   Weight               integer coordinates in the fundamental-weight basis
//   CorootVector         integer coordinates in the simple-coroot basis
//   RationalCartanVector rational coordinates in the simple-coroot basis
//
// The basic form is normalized so that long roots have squared length 2;
// on coroots this gives <a_i^v, a_j^v> = cartan[i][j] * 2 / |a_j|^2.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ellkit/errors.hpp"
#include "ellkit/rational.hpp"

namespace ellkit {

template <class Tag, class Scalar>
struct Coords {
    std::vector<Scalar> coords;

    Coords() = default;
    explicit Coords(std::vector<Scalar> c) : coords(std::move(c)) {}

    static Coords zero(std::size_t rank) { return Coords(std::vector<Scalar>(rank, Scalar(0))); }

    static Coords unit(std::size_t rank, std::size_t i) {
        Coords v = zero(rank);
        v.coords[i] = Scalar(1);
        return v;
    }

    std::size_t size() const { return coords.size(); }
    const Scalar& operator[](std::size_t i) const { return coords[i]; }
    Scalar& operator[](std::size_t i) { return coords[i]; }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Scalar& x) { return x == 0; });
    }

    friend bool operator==(const Coords& a, const Coords& b) { return a.coords == b.coords; }
    friend bool operator!=(const Coords& a, const Coords& b) { return !(a == b); }
    friend bool operator<(const Coords& a, const Coords& b) {
        return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
    }

    Coords& operator+=(const Coords& o) {
        require(o.size() == size(), ErrorKind::domain, "coordinate dimension mismatch");
        for (std::size_t i = 0; i < size(); ++i) {
            if constexpr (std::is_same_v<Scalar, Int>)
                coords[i] = checked::add(coords[i], o.coords[i]);
            else
                coords[i] += o.coords[i];
        }
        return *this;
    }

    Coords& operator-=(const Coords& o) {
        require(o.size() == size(), ErrorKind::domain, "coordinate dimension mismatch");
        for (std::size_t i = 0; i < size(); ++i) {
            if constexpr (std::is_same_v<Scalar, Int>)
                coords[i] = checked::sub(coords[i], o.coords[i]);
            else
                coords[i] -= o.coords[i];
        }
        return *this;
    }

    friend Coords operator+(Coords a, const Coords& b) { return a += b; }
    friend Coords operator-(Coords a, const Coords& b) { return a -= b; }
    friend Coords operator-(Coords a) {
        for (auto& x : a.coords) {
            if constexpr (std::is_same_v<Scalar, Int>)
                x = checked::sub(0, x);
            else
                x = -x;
        }
        return a;
    }
    friend Coords operator*(const Scalar& s, Coords a) {
        for (auto& x : a.coords) {
            if constexpr (std::is_same_v<Scalar, Int>)
                x = checked::mul(s, x);
            else
                x *= s;
        }
        return a;
    }
};

struct WeightTag {};
struct CorootTag {};
struct CartanTag {};

using Weight = Coords<WeightTag, Int>;
using CorootVector = Coords<CorootTag, Int>;
using RationalCartanVector = Coords<CartanTag, Rational>;

inline RationalCartanVector to_cartan(const CorootVector& beta) {
    RationalCartanVector h = RationalCartanVector::zero(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) h[i] = to_rational(beta[i]);
    return h;
}

/// Returns the coroot vector when every coordinate of h is an integer.
inline std::optional<CorootVector> to_coroot(const RationalCartanVector& h) {
    CorootVector beta = CorootVector::zero(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!is_integer(h[i])) return std::nullopt;
        beta[i] = to_int(h[i]);
    }
    return beta;
}

inline RationalCartanVector operator*(const Rational& s, const CorootVector& beta) {
    return s * to_cartan(beta);
}

enum class Family { A, B, C, D, E, F, G };

inline char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

struct RootDatum {
    Family family = Family::A;
    int rank = 0;
    IntMatrix cartan;                       // cartan[i][j] = alpha_j(alpha_i^v)
    std::vector<Weight> simple_roots;       // alpha_j = column j of cartan
    Weight highest_root;
    std::vector<CorootVector> coroot_basis; // unit vectors
    RationalMatrix gram;                    // <alpha_i^v, alpha_j^v>

    // Derived data, filled by build_root_datum.
    IntMatrix gram_int;
    RationalMatrix gram_inverse;
    RationalMatrix cartan_inverse;
    RationalVector root_length_sq;          // |alpha_i|^2, long roots = 2
    std::vector<Weight> positive_roots;     // ordered by height, then lexicographically
    std::vector<IntVector> positive_root_heights; // simple-root coordinates, same order
    CorootVector highest_coroot;            // theta^v in the simple-coroot basis

    std::string name() const { return std::string(1, family_letter(family)) + std::to_string(rank); }
    std::size_t dim() const { return static_cast<std::size_t>(rank); }
};

namespace detail {

inline RationalMatrix invert(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        require(pivot < n, ErrorKind::consistency, "singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline RationalMatrix to_rational_matrix(const IntMatrix& m) {
    RationalMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (Int x : m[i]) r[i].push_back(to_rational(x));
    return r;
}

inline IntMatrix cartan_matrix(Family family, int n) {
    IntMatrix c(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    auto link = [&](int i, int j) { c[i][j] = c[j][i] = -1; };
    switch (family) {
    case Family::A:
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
    case Family::B:
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        c[n - 1][n - 2] = -2; // alpha_n short
        break;
    case Family::C:
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
        c[n - 2][n - 1] = -2; // alpha_n long
        break;
    case Family::D:
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
    case Family::F:
        link(0, 1);
        link(1, 2);
        link(2, 3);
        c[2][1] = -2; // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        break;
    case Family::G:
        link(0, 1);
        c[0][1] = -3; // alpha_1 short
        break;
    case Family::E:
        break;
    }
    return c;
}

} // namespace detail

inline bool is_supported_type(Family family, int rank) {
    switch (family) {
    case Family::A: return rank >= 1 && rank <= 4;
    case Family::B: return rank >= 2 && rank <= 4;
    case Family::C: return rank >= 2 && rank <= 4;
    case Family::D: return rank == 4;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
    case Family::E: return false;
    }
    return false;
}

inline Weight simple_reflect(const RootDatum& d, std::size_t i, const Weight& lambda) {
    Weight r = lambda;
    const Int c = lambda[i];
    if (c == 0) return r;
    for (std::size_t k = 0; k < d.dim(); ++k) r[k] = checked::sub(r[k], checked::mul(c, d.cartan[k][i]));
    return r;
}

/// lambda(beta) for a weight and a coroot vector.
inline Int pairing(const Weight& lambda, const CorootVector& beta) {
    require(lambda.size() == beta.size(), ErrorKind::domain, "pairing dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s = checked::add(s, checked::mul(lambda[i], beta[i]));
    return s;
}

inline Rational pairing(const Weight& lambda, const RationalCartanVector& h) {
    require(lambda.size() == h.size(), ErrorKind::domain, "pairing dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s += to_rational(lambda[i]) * h[i];
    return s;
}

inline Rational basic_form(const RootDatum& d, const RationalCartanVector& a, const RationalCartanVector& b) {
    require(a.size() == d.dim() && b.size() == d.dim(), ErrorKind::domain, "basic_form dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j)
            if (d.gram_int[i][j] != 0) s += a[i] * d.gram[i][j] * b[j];
    return s;
}

inline Rational basic_form(const RootDatum& d, const CorootVector& a, const CorootVector& b) {
    return basic_form(d, to_cartan(a), to_cartan(b));
}

/// Integer value of the basic form on coroot vectors (the form is integral).
inline Int basic_form_int(const RootDatum& d, const CorootVector& a, const CorootVector& b) {
    require(a.size() == d.dim() && b.size() == d.dim(), ErrorKind::domain, "basic_form dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j)
            s = checked::add(s, checked::mul(a[i], checked::mul(d.gram_int[i][j], b[j])));
    return s;
}

/// The weight beta* with beta*(gamma) = <beta, gamma> for every coroot gamma.
inline Weight dual_weight(const RootDatum& d, const CorootVector& beta) {
    require(beta.size() == d.dim(), ErrorKind::domain, "dual_weight dimension mismatch");
    Weight w = Weight::zero(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < d.dim(); ++j) s += d.gram[i][j] * to_rational(beta[j]);
        require(is_integer(s), ErrorKind::consistency, "dual weight is not integral; wrong form normalization");
        w[i] = to_int(s);
    }
    return w;
}

/// The form on weights transported through the identification beta -> beta*.
inline Rational weight_form(const RootDatum& d, const Weight& lambda, const Weight& mu) {
    Rational s = 0;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j)
            s += to_rational(lambda[i]) * d.gram_inverse[i][j] * to_rational(mu[j]);
    return s;
}

/// Simple-root coordinates of a weight (rational in general).
inline RationalVector root_coordinates(const RootDatum& d, const Weight& lambda) {
    RationalVector x(d.dim(), Rational(0));
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) x[i] += d.cartan_inverse[i][j] * to_rational(lambda[j]);
    return x;
}

inline bool is_positive_root(const RootDatum& d, const Weight& alpha) {
    return std::binary_search(d.positive_roots.begin(), d.positive_roots.end(), alpha,
                              [](const Weight& a, const Weight& b) { return a < b; }) ||
           std::find(d.positive_roots.begin(), d.positive_roots.end(), alpha) != d.positive_roots.end();
}

inline bool is_root(const RootDatum& d, const Weight& alpha) {
    return is_positive_root(d, alpha) || is_positive_root(d, -alpha);
}

/// All roots, positive ones first (in positive_roots order) followed by their negatives.
inline std::vector<Weight> all_roots(const RootDatum& d) {
    std::vector<Weight> roots = d.positive_roots;
    for (const auto& a : d.positive_roots) roots.push_back(-a);
    return roots;
}

/// h_alpha = 2 alpha / <alpha, alpha> in the simple-coroot basis.
inline CorootVector coroot_of(const RootDatum& d, const Weight& alpha) {
    require(alpha.size() == d.dim(), ErrorKind::domain, "coroot_of dimension mismatch");
    require(is_root(d, alpha), ErrorKind::domain, "weight is not a root of " + d.name());
    RationalVector x(d.dim(), Rational(0));
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) x[i] += d.gram_inverse[i][j] * to_rational(alpha[j]);
    Rational norm = 0;
    for (std::size_t i = 0; i < d.dim(); ++i) norm += to_rational(alpha[i]) * x[i];
    CorootVector h = CorootVector::zero(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) {
        Rational c = 2 * x[i] / norm;
        require(is_integer(c), ErrorKind::consistency, "coroot is not integral");
        h[i] = to_int(c);
    }
    return h;
}

inline RootDatum build_root_datum(Family family, int rank) {
    require(is_supported_type(family, rank), ErrorKind::configuration,
            std::string("unsupported root system type ") + family_letter(family) + std::to_string(rank) +
                " (supported: A1-A4, B2-B4, C2-C4, D4, F4, G2)");
    RootDatum d;
    d.family = family;
    d.rank = rank;
    d.cartan = detail::cartan_matrix(family, rank);
    const std::size_t n = d.dim();

    for (std::size_t j = 0; j < n; ++j) {
        Weight a = Weight::zero(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = d.cartan[i][j];
        d.simple_roots.push_back(a);
        d.coroot_basis.push_back(CorootVector::unit(n, j));
    }

    // Relative root lengths from |alpha_j|^2 / |alpha_i|^2 = cartan[i][j] / cartan[j][i].
    RationalVector len(n, Rational(0));
    len[0] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (len[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j || d.cartan[i][j] == 0 || len[j] != 0) continue;
                len[j] = len[i] * make_rational(d.cartan[i][j], d.cartan[j][i]);
                changed = true;
            }
        }
    }
    Rational longest = *std::max_element(len.begin(), len.end());
    for (auto& l : len) l = 2 * l / longest;
    d.root_length_sq = len;

    d.gram.assign(n, RationalVector(n, Rational(0)));
    d.gram_int.assign(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            d.gram[i][j] = to_rational(d.cartan[i][j]) * 2 / len[j];
            d.gram_int[i][j] = to_int(d.gram[i][j]);
        }
    d.gram_inverse = detail::invert(d.gram);
    d.cartan_inverse = detail::invert(detail::to_rational_matrix(d.cartan));

    // Roots as the W-orbit of the simple roots, computed in simple-root coordinates.
    std::set<IntVector> seen;
    std::vector<IntVector> frontier;
    for (std::size_t j = 0; j < n; ++j) {
        IntVector e(n, 0);
        e[j] = 1;
        if (seen.insert(e).second) frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<IntVector> next;
        for (const auto& beta : frontier) {
            for (std::size_t i = 0; i < n; ++i) {
                Int coeff = 0; // <beta, alpha_i^v>
                for (std::size_t j = 0; j < n; ++j) coeff = checked::add(coeff, checked::mul(beta[j], d.cartan[i][j]));
                IntVector r = beta;
                r[i] = checked::sub(r[i], coeff);
                if (seen.insert(r).second) next.push_back(r);
            }
        }
        frontier = std::move(next);
    }
    std::vector<std::pair<Int, IntVector>> positive;
    for (const auto& beta : seen) {
        if (std::all_of(beta.begin(), beta.end(), [](Int x) { return x >= 0; })) {
            Int height = 0;
            for (Int x : beta) height += x;
            positive.emplace_back(height, beta);
        }
    }
    std::sort(positive.begin(), positive.end());
    for (const auto& [height, beta] : positive) {
        Weight w = Weight::zero(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i] = checked::add(w[i], checked::mul(d.cartan[i][j], beta[j]));
        d.positive_roots.push_back(w);
        d.positive_root_heights.push_back(beta);
    }
    d.highest_root = d.positive_roots.back();
    d.highest_coroot = coroot_of(d, d.highest_root);
    return d;
}

/// Parses labels such as "A2", "c3" or "G2".
inline RootDatum build_root_datum(const std::string& label) {
    require(label.size() >= 2, ErrorKind::configuration, "malformed root system label '" + label + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    require(letter >= 'A' && letter <= 'G', ErrorKind::configuration, "unknown root system family '" + label + "'");
    const std::string digits = label.substr(1);
    require(detail::all_digits(digits), ErrorKind::configuration, "malformed root system rank in '" + label + "'");
    require(digits.size() <= 3, ErrorKind::configuration, "rank too large in '" + label + "'");
    return build_root_datum(static_cast<Family>(letter - 'A'), std::stoi(digits));
}

/// Height of a root, i.e. the sum of its simple-root coordinates.
inline Int root_height(const RootDatum& d, const Weight& alpha) {
    Rational s = 0;
    for (const auto& x : root_coordinates(d, alpha)) s += x;
    return to_int(s);
}

} // namespace ellkit
