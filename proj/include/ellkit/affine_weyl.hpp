#pragma once

// Finite and affine Weyl groups acting on the Cartan algebra.
//
// A finite element carries its weight-coordinate matrix, its coroot-coordinate
// matrix and the lexicographically least reduced word.  An affine element (b, w)
// acts by h -> w(h) + b.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "ellkit/lattice_core.hpp"

namespace ellkit {

struct FiniteWeylElement {
    std::vector<int> word;   // canonical reduced word, 0-based simple reflection indices
    IntMatrix matrix;        // (w lambda)_i = sum_j matrix[i][j] lambda_j
    IntMatrix coroot_matrix; // (w beta)_i  = sum_j coroot_matrix[i][j] beta_j

    int length() const { return static_cast<int>(word.size()); }
    int sign() const { return word.size() % 2 == 0 ? 1 : -1; }
    bool is_identity() const { return word.empty(); }

    friend bool operator==(const FiniteWeylElement& a, const FiniteWeylElement& b) { return a.matrix == b.matrix; }
    friend bool operator!=(const FiniteWeylElement& a, const FiniteWeylElement& b) { return !(a == b); }
    // Shortlex on canonical words; consistent with == since the word is canonical.
    friend bool operator<(const FiniteWeylElement& a, const FiniteWeylElement& b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    }
};

namespace detail {

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix c(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] = checked::add(c[i][j], checked::mul(a[i][k], b[k][j]));
        }
    return c;
}

inline IntVector matvec(const IntMatrix& a, const IntVector& v) {
    IntVector r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] = checked::add(r[i], checked::mul(a[i][j], v[j]));
    return r;
}

inline IntMatrix simple_weight_matrix(const RootDatum& d, std::size_t i) {
    IntMatrix m = identity_matrix(d.dim());
    for (std::size_t k = 0; k < d.dim(); ++k) m[k][i] -= d.cartan[k][i];
    return m;
}

inline IntMatrix simple_coroot_matrix(const RootDatum& d, std::size_t i) {
    IntMatrix m = identity_matrix(d.dim());
    for (std::size_t j = 0; j < d.dim(); ++j) m[i][j] -= d.cartan[j][i];
    return m;
}

// Greedy left descents on w(rho) give the lexicographically least reduced word.
inline std::vector<int> canonical_word(const RootDatum& d, IntMatrix m) {
    std::vector<int> word;
    const IntVector rho(d.dim(), 1);
    for (;;) {
        IntVector v = matvec(m, rho);
        auto it = std::find_if(v.begin(), v.end(), [](Int x) { return x < 0; });
        if (it == v.end()) break;
        const auto i = static_cast<std::size_t>(it - v.begin());
        word.push_back(static_cast<int>(i));
        m = matmul(simple_weight_matrix(d, i), m);
    }
    return word;
}

} // namespace detail

inline FiniteWeylElement weyl_identity(const RootDatum& d) {
    return {{}, detail::identity_matrix(d.dim()), detail::identity_matrix(d.dim())};
}

inline FiniteWeylElement weyl_from_matrices(const RootDatum& d, IntMatrix matrix, IntMatrix coroot_matrix) {
    FiniteWeylElement w;
    w.word = detail::canonical_word(d, matrix);
    w.matrix = std::move(matrix);
    w.coroot_matrix = std::move(coroot_matrix);
    return w;
}

inline FiniteWeylElement weyl_from_word(const RootDatum& d, const std::vector<int>& word) {
    IntMatrix m = detail::identity_matrix(d.dim());
    IntMatrix c = detail::identity_matrix(d.dim());
    for (int i : word) {
        require(i >= 0 && i < d.rank, ErrorKind::domain, "simple reflection index out of range");
        m = detail::matmul(m, detail::simple_weight_matrix(d, static_cast<std::size_t>(i)));
        c = detail::matmul(c, detail::simple_coroot_matrix(d, static_cast<std::size_t>(i)));
    }
    return weyl_from_matrices(d, std::move(m), std::move(c));
}

inline FiniteWeylElement weyl_simple(const RootDatum& d, int i) { return weyl_from_word(d, {i}); }

inline FiniteWeylElement weyl_multiply(const RootDatum& d, const FiniteWeylElement& a, const FiniteWeylElement& b) {
    return weyl_from_matrices(d, detail::matmul(a.matrix, b.matrix), detail::matmul(a.coroot_matrix, b.coroot_matrix));
}

inline FiniteWeylElement weyl_inverse(const RootDatum& d, const FiniteWeylElement& a) {
    std::vector<int> rev(a.word.rbegin(), a.word.rend());
    return weyl_from_word(d, rev);
}

/// The reflection s_alpha for a root alpha.
inline FiniteWeylElement root_reflection(const RootDatum& d, const Weight& alpha) {
    const CorootVector h = coroot_of(d, alpha);
    const std::size_t n = d.dim();
    IntMatrix m = detail::identity_matrix(n);
    IntMatrix c = detail::identity_matrix(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] = checked::sub(m[k][j], checked::mul(alpha[k], h[j]));
            c[k][j] = checked::sub(c[k][j], checked::mul(h[k], alpha[j]));
        }
    return weyl_from_matrices(d, std::move(m), std::move(c));
}

inline Weight apply(const FiniteWeylElement& w, const Weight& lambda) {
    return Weight(detail::matvec(w.matrix, lambda.coords));
}

inline CorootVector apply(const FiniteWeylElement& w, const CorootVector& beta) {
    return CorootVector(detail::matvec(w.coroot_matrix, beta.coords));
}

inline RationalCartanVector apply(const FiniteWeylElement& w, const RationalCartanVector& h) {
    RationalCartanVector r = RationalCartanVector::zero(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            if (w.coroot_matrix[i][j] != 0) r[i] += to_rational(w.coroot_matrix[i][j]) * h[j];
    return r;
}

inline constexpr std::size_t max_finite_weyl_order = 1152;

inline std::vector<FiniteWeylElement> enumerate_finite_weyl(const RootDatum& d) {
    require(d.rank <= 4, ErrorKind::capacity, "finite Weyl enumeration limited to rank 4");
    std::map<IntMatrix, FiniteWeylElement> seen;
    std::deque<FiniteWeylElement> queue;
    FiniteWeylElement e = weyl_identity(d);
    seen.emplace(e.matrix, e);
    queue.push_back(e);
    while (!queue.empty()) {
        FiniteWeylElement x = queue.front();
        queue.pop_front();
        for (int i = 0; i < d.rank; ++i) {
            FiniteWeylElement y = weyl_from_matrices(
                d, detail::matmul(x.matrix, detail::simple_weight_matrix(d, static_cast<std::size_t>(i))),
                detail::matmul(x.coroot_matrix, detail::simple_coroot_matrix(d, static_cast<std::size_t>(i))));
            if (seen.count(y.matrix)) continue;
            require(seen.size() < max_finite_weyl_order, ErrorKind::capacity, "finite Weyl group too large");
            seen.emplace(y.matrix, y);
            queue.push_back(y);
        }
    }
    std::vector<FiniteWeylElement> out;
    for (auto& [m, w] : seen) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
}

struct AffineWeylElement {
    CorootVector translation;
    FiniteWeylElement finite;

    friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b) {
        return a.translation == b.translation && a.finite == b.finite;
    }
    friend bool operator!=(const AffineWeylElement& a, const AffineWeylElement& b) { return !(a == b); }
    friend bool operator<(const AffineWeylElement& a, const AffineWeylElement& b) {
        if (a.finite != b.finite) return a.finite < b.finite;
        return a.translation < b.translation;
    }
};

inline AffineWeylElement affine_identity(const RootDatum& d) { return {CorootVector::zero(d.dim()), weyl_identity(d)}; }

inline AffineWeylElement affine_translation(const RootDatum& d, const CorootVector& beta) { return {beta, weyl_identity(d)}; }

inline AffineWeylElement affine_multiply(const RootDatum& d, const AffineWeylElement& a, const AffineWeylElement& b) {
    return {a.translation + apply(a.finite, b.translation), weyl_multiply(d, a.finite, b.finite)};
}

inline AffineWeylElement affine_inverse(const RootDatum& d, const AffineWeylElement& a) {
    FiniteWeylElement winv = weyl_inverse(d, a.finite);
    return {-apply(winv, a.translation), winv};
}

/// Simple affine reflections: index 0 is r_{alpha_0} = (theta^v, s_theta), index i >= 1 is s_i.
inline AffineWeylElement affine_simple_reflection(const RootDatum& d, int i) {
    require(i >= 0 && i <= d.rank, ErrorKind::domain, "affine simple reflection index out of range");
    if (i == 0) return {d.highest_coroot, root_reflection(d, d.highest_root)};
    return {CorootVector::zero(d.dim()), weyl_simple(d, i - 1)};
}

inline RationalCartanVector act(const AffineWeylElement& g, const RationalCartanVector& h) {
    return apply(g.finite, h) + to_cartan(g.translation);
}

inline CorootVector act(const AffineWeylElement& g, const CorootVector& beta) {
    return apply(g.finite, beta) + g.translation;
}

/// The affine function h -> finite(h) + m.
struct AffineRoot {
    Weight finite;
    Int m = 0;

    friend bool operator==(const AffineRoot& a, const AffineRoot& b) { return a.finite == b.finite && a.m == b.m; }
    friend bool operator<(const AffineRoot& a, const AffineRoot& b) {
        return std::tie(a.m, a.finite) < std::tie(b.m, b.finite);
    }
};

inline Rational evaluate(const AffineRoot& a, const RationalCartanVector& h) { return pairing(a.finite, h) + a.m; }

inline bool is_positive(const RootDatum& d, const AffineRoot& a) {
    return a.m > 0 || (a.m == 0 && is_positive_root(d, a.finite));
}

inline AffineRoot negate(const AffineRoot& a) { return {-a.finite, checked::sub(0, a.m)}; }

/// Reflection in the zero set of an affine root: h -> h - a(h) h_abar.
inline AffineWeylElement affine_reflection(const RootDatum& d, const AffineRoot& a) {
    const CorootVector h = coroot_of(d, a.finite);
    return {checked::sub(0, a.m) * h, root_reflection(d, a.finite)};
}

/// (g.a)(h) = a(g^{-1} h).
inline AffineRoot act(const RootDatum& d, const AffineWeylElement& g, const AffineRoot& a) {
    const AffineWeylElement ginv = affine_inverse(d, g);
    // a(w'h + b') = (w'^T abar)(h) + abar(b') + m with w' = ginv.finite.
    const Weight image = apply(g.finite, a.finite);
    return {image, checked::add(a.m, pairing(a.finite, ginv.translation))};
}

namespace detail {

// A point in the open fundamental alcove: alpha_i(c) = 1/(1 + ht(theta)) for every i.
inline RationalCartanVector alcove_interior_point(const RootDatum& d) {
    Int height = 0;
    for (Int x : d.positive_root_heights.back()) height += x;
    const Rational t = make_rational(1, height + 1);
    // alpha_i(c) = (C^T c)_i, so c = C^{-T} (t, ..., t).
    RationalCartanVector c = RationalCartanVector::zero(d.dim());
    for (std::size_t j = 0; j < d.dim(); ++j)
        for (std::size_t i = 0; i < d.dim(); ++i) c[j] += d.cartan_inverse[i][j] * t;
    return c;
}

} // namespace detail

/// Number of affine root hyperplanes separating the fundamental alcove from its image.
inline Int affine_length(const RootDatum& d, const AffineWeylElement& g) {
    const RationalCartanVector gc = act(g, detail::alcove_interior_point(d));
    Int total = 0;
    for (const auto& a : d.positive_roots) {
        Integer f = floor(pairing(a, gc));
        total = checked::add(total, to_int(Integer(abs(f))));
    }
    return total;
}

struct AlcovePoint {
    RationalCartanVector point;
    std::vector<int> walls; // sorted, 0 is the affine wall

    friend bool operator==(const AlcovePoint& a, const AlcovePoint& b) {
        return a.point == b.point && a.walls == b.walls;
    }
};

inline std::vector<int> alcove_walls(const RootDatum& d, const RationalCartanVector& h) {
    std::vector<int> walls;
    if (pairing(d.highest_root, h) == 1) walls.push_back(0);
    for (int i = 0; i < d.rank; ++i)
        if (pairing(d.simple_roots[static_cast<std::size_t>(i)], h) == 0) walls.push_back(i + 1);
    return walls;
}

inline bool in_alcove(const RootDatum& d, const RationalCartanVector& h) {
    if (pairing(d.highest_root, h) > 1) return false;
    for (const auto& a : d.simple_roots)
        if (pairing(a, h) < 0) return false;
    return true;
}

struct FoldResult {
    AlcovePoint point;
    AffineWeylElement witness; // act(witness, h) == point.point
};

namespace detail {

// Greedy folding of h = x / den with integer numerators; returns the sequence of reflections applied.
// Throws ErrorKind::overflow when the numerators outgrow Int.
inline std::vector<int> fold_word(const RootDatum& d, IntVector x, Int den) {
    std::vector<int> word;
    const std::size_t r = d.dim();
    for (;;) {
        int worst = -1;
        Int worst_violation = 0;
        const Int v0 = checked::sub(pairing(d.highest_root, CorootVector(x)), den);
        if (v0 > worst_violation) {
            worst = 0;
            worst_violation = v0;
        }
        for (std::size_t i = 0; i < r; ++i) {
            const Int vi = checked::sub(0, pairing(d.simple_roots[i], CorootVector(x)));
            if (vi > worst_violation) {
                worst = static_cast<int>(i) + 1;
                worst_violation = vi;
            }
        }
        if (worst < 0) return word;
        word.push_back(worst);
        // Reflection in the violated wall: x -> x - (alpha(x) - m den) alpha^v
        const Int a = worst == 0 ? checked::add(v0, den) : checked::sub(0, worst_violation);
        const Int shift = worst == 0 ? checked::sub(a, den) : a;
        const CorootVector& cv = worst == 0 ? d.highest_coroot : d.coroot_basis[static_cast<std::size_t>(worst - 1)];
        for (std::size_t j = 0; j < r; ++j) x[j] = checked::sub(x[j], checked::mul(shift, cv[j]));
    }
}

} // namespace detail

inline FoldResult fold_to_alcove(const RootDatum& d, const RationalCartanVector& h) {
    require(h.size() == d.dim(), ErrorKind::domain, "fold_to_alcove dimension mismatch");
    std::vector<int> word;
    bool fast = false;
    Integer den = 1;
    for (const auto& c : h.coords) den = lcm(den, Integer(c.get_den()));
    if (den.fits_slong_p()) {
        IntVector x;
        bool fits = true;
        for (const auto& c : h.coords) {
            const Integer n = c.get_num() * (den / c.get_den());
            fits = fits && n.fits_slong_p();
            x.push_back(fits ? n.get_si() : 0);
        }
        if (fits) {
            try {
                word = detail::fold_word(d, std::move(x), den.get_si());
                fast = true;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::overflow) throw;
            }
        }
    }
    RationalCartanVector p = h;
    IntMatrix m = detail::identity_matrix(d.dim()), c = m;
    CorootVector t = CorootVector::zero(d.dim());
    std::vector<AffineWeylElement> simple;
    for (int i = 0; i <= d.rank; ++i) simple.push_back(affine_simple_reflection(d, i));
    const auto step = [&](int i) {
        const AffineWeylElement& s = simple[static_cast<std::size_t>(i)];
        t = act(s, t);
        m = detail::matmul(s.finite.matrix, m);
        c = detail::matmul(s.finite.coroot_matrix, c);
    };
    if (fast) {
        for (int i : word) step(i);
    } else {
        const Rational zero = 0;
        for (;;) {
            int worst = -1;
            Rational worst_violation = zero;
            const Rational v0 = pairing(d.highest_root, p) - 1;
            if (v0 > worst_violation) {
                worst = 0;
                worst_violation = v0;
            }
            for (int i = 0; i < d.rank; ++i) {
                const Rational vi = -pairing(d.simple_roots[static_cast<std::size_t>(i)], p);
                if (vi > worst_violation) {
                    worst = i + 1;
                    worst_violation = vi;
                }
            }
            if (worst < 0) break;
            p = act(simple[static_cast<std::size_t>(worst)], p);
            step(worst);
        }
    }
    AffineWeylElement g{t, weyl_from_matrices(d, std::move(m), std::move(c))};
    if (fast) p = act(g, h);
    return {{p, alcove_walls(d, p)}, std::move(g)};
}

inline std::vector<int> stabilizer_walls(const AlcovePoint& p) { return p.walls; }

struct BruhatCover {
    AffineWeylElement w;
    AffineWeylElement v;
    AffineRoot alpha; // positive, w = r_alpha v
    Int length_w = 0;
};

inline constexpr int max_bruhat_length = 12;

/// All affine elements of length <= L, grouped by length.
inline std::vector<std::vector<AffineWeylElement>> affine_elements_by_length(const RootDatum& d, int L) {
    require(L >= 0 && L <= max_bruhat_length, ErrorKind::capacity, "length bound must lie in [0, 12]");
    std::vector<std::vector<AffineWeylElement>> levels{{affine_identity(d)}};
    std::set<AffineWeylElement> seen{affine_identity(d)};
    for (int len = 1; len <= L; ++len) {
        std::set<AffineWeylElement> next;
        for (const auto& x : levels.back())
            for (int i = 0; i <= d.rank; ++i) {
                AffineWeylElement y = affine_multiply(d, x, affine_simple_reflection(d, i));
                if (seen.count(y) || next.count(y)) continue;
                if (affine_length(d, y) == len) next.insert(y);
            }
        seen.insert(next.begin(), next.end());
        levels.emplace_back(next.begin(), next.end());
    }
    return levels;
}

/// Covers v < w = r_alpha v with l(w) = l(v) + 1 <= L.
inline std::vector<BruhatCover> bruhat_cover_pairs(const RootDatum& d, int L) {
    const auto levels = affine_elements_by_length(d, L);
    const RationalCartanVector c = detail::alcove_interior_point(d);
    std::vector<BruhatCover> out;
    for (int len = 1; len <= L; ++len) {
        for (const auto& w : levels[static_cast<std::size_t>(len)]) {
            // Reflections lowering w are those whose hyperplane separates c from w c.
            const RationalCartanVector wc = act(w, c);
            std::vector<BruhatCover> found;
            for (const auto& a : d.positive_roots) {
                const Int f = to_int(floor(pairing(a, wc)));
                std::vector<Int> ks;
                if (f > 0)
                    for (Int k = 1; k <= f; ++k) ks.push_back(k);
                else
                    for (Int k = f + 1; k <= 0; ++k) ks.push_back(k);
                for (Int k : ks) {
                    AffineRoot root{a, checked::sub(0, k)};
                    if (!is_positive(d, root)) root = negate(root);
                    const AffineWeylElement r = affine_reflection(d, root);
                    AffineWeylElement v = affine_multiply(d, r, w);
                    if (affine_length(d, v) == len - 1) found.push_back({w, std::move(v), root, len});
                }
            }
            std::sort(found.begin(), found.end(), [](const BruhatCover& x, const BruhatCover& y) { return x.v < y.v; });
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

} // namespace ellkit
