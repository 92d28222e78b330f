#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ellkit;
using namespace std::string_literals;

namespace {

RationalCartanVector rv(std::initializer_list<Rational> xs) { return RationalCartanVector(RationalVector(xs)); }
CorootVector cv(std::initializer_list<Int> xs) { return CorootVector(IntVector(xs)); }

const std::vector<std::string> kTypes = {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4"};

} // namespace

TEST(Act, Examples) {
    const RootDatum d = build_root_datum("A1");
    const RationalCartanVector h = rv({make_rational(2, 7)});
    EXPECT_EQ(act(affine_identity(d), h), h);
    EXPECT_EQ(act(affine_translation(d, cv({1})), rv({0})), rv({1}));
    EXPECT_EQ(act(AffineWeylElement{cv({0}), weyl_simple(d, 0)}, h), -h);
}

TEST(Act, CompositionIsAction) {
    oracle::Random rng(11);
    for (const auto& t : kTypes) {
        const RootDatum d = build_root_datum(t);
        const auto weyl = enumerate_finite_weyl(d);
        for (int s = 0; s < 30; ++s) {
            auto a = rng.affine(d, weyl, 3), b = rng.affine(d, weyl, 3);
            auto h = rng.cartan(d.dim(), 5, 6);
            EXPECT_EQ(act(affine_multiply(d, a, b), h), act(a, act(b, h))) << t;
        }
    }
}

TEST(Group, AssociativityAndInverse) {
    oracle::Random rng(12);
    for (const auto& t : kTypes) {
        const RootDatum d = build_root_datum(t);
        const auto weyl = enumerate_finite_weyl(d);
        for (int s = 0; s < 50; ++s) {
            auto a = rng.affine(d, weyl, 4), b = rng.affine(d, weyl, 4), c = rng.affine(d, weyl, 4);
            EXPECT_EQ(affine_multiply(d, affine_multiply(d, a, b), c), affine_multiply(d, a, affine_multiply(d, b, c)));
            EXPECT_EQ(affine_multiply(d, a, affine_inverse(d, a)), affine_identity(d));
            EXPECT_EQ(affine_multiply(d, affine_inverse(d, a), a), affine_identity(d));
        }
    }
}

TEST(FiniteWeyl, Orders) {
    const std::map<std::string, std::size_t> orders = {{"A1", 2}, {"A2", 6},  {"A3", 24},   {"B2", 8}, {"B3", 48},
                                                       {"C2", 8}, {"C3", 48}, {"D4", 192}, {"G2", 12}, {"F4", 1152}};
    for (const auto& [t, n] : orders) EXPECT_EQ(enumerate_finite_weyl(build_root_datum(t)).size(), n) << t;
}

TEST(FiniteWeyl, ClosedAndDuplicateFree) {
    for (const std::string& t : {"A2"s, "B2"s, "G2"s, "A3"s, "C3"s}) {
        const RootDatum d = build_root_datum(t);
        const auto weyl = enumerate_finite_weyl(d);
        std::set<IntMatrix> mats;
        for (const auto& x : weyl) mats.insert(x.matrix);
        EXPECT_EQ(mats.size(), weyl.size()) << t;
        for (const auto& x : weyl)
            for (const auto& y : weyl) EXPECT_TRUE(mats.count(weyl_multiply(d, x, y).matrix)) << t;
    }
}

TEST(FiniteWeyl, CanonicalWordIsLexLeastReduced) {
    for (const std::string& t : {"A2"s, "B2"s, "G2"s, "A3"s}) {
        const RootDatum d = build_root_datum(t);
        // Words in shortlex order; the first hit for each matrix is the lex-least reduced word.
        std::map<IntMatrix, std::vector<int>> first;
        std::vector<std::vector<int>> layer{{}};
        first[weyl_identity(d).matrix] = {};
        for (int len = 1; len <= 12; ++len) {
            std::vector<std::vector<int>> next;
            for (const auto& wd : layer)
                for (int i = 0; i < d.rank; ++i) {
                    auto x = wd;
                    x.push_back(i);
                    next.push_back(x);
                }
            for (const auto& wd : next) first.emplace(weyl_from_word(d, wd).matrix, wd);
            layer = std::move(next);
            if (first.size() == enumerate_finite_weyl(d).size()) break;
        }
        for (const auto& x : enumerate_finite_weyl(d)) EXPECT_EQ(x.word, first.at(x.matrix)) << t;
    }
}

TEST(FiniteWeyl, MatrixIsProductOfSimpleReflections) {
    const RootDatum d = build_root_datum("B3");
    for (const auto& x : enumerate_finite_weyl(d)) {
        FiniteWeylElement p = weyl_identity(d);
        for (int i : x.word) p = weyl_multiply(d, p, weyl_simple(d, i));
        EXPECT_EQ(p.matrix, x.matrix);
        EXPECT_EQ(p.coroot_matrix, x.coroot_matrix);
    }
}

TEST(Fold, Examples) {
    const RootDatum a1 = build_root_datum("A1");
    auto r = fold_to_alcove(a1, rv({make_rational(7, 10)}));
    EXPECT_EQ(r.point.point, rv({make_rational(3, 10)}));
    EXPECT_TRUE(r.point.walls.empty());

    auto z = fold_to_alcove(a1, rv({0}));
    EXPECT_EQ(z.point.walls, (std::vector<int>{1}));
    const RootDatum a3 = build_root_datum("A3");
    EXPECT_EQ(fold_to_alcove(a3, RationalCartanVector::zero(3)).point.walls, (std::vector<int>{1, 2, 3}));

    EXPECT_EQ(fold_to_alcove(a1, rv({make_rational(1, 2)})).point.walls, (std::vector<int>{0}));
}

TEST(StabilizerWalls, Examples) {
    const RootDatum a1 = build_root_datum("A1");
    EXPECT_TRUE(stabilizer_walls(fold_to_alcove(a1, rv({make_rational(1, 3)})).point).empty());
    EXPECT_EQ(stabilizer_walls(fold_to_alcove(a1, rv({0})).point), (std::vector<int>{1}));
    const RootDatum a2 = build_root_datum("A2");
    const RationalCartanVector h = rv({make_rational(1, 2), make_rational(1, 2)});
    ASSERT_TRUE(in_alcove(a2, h));
    EXPECT_EQ(stabilizer_walls(fold_to_alcove(a2, h).point), (std::vector<int>{0}));
}

TEST(Fold, InvariantIdempotentAndWitnessed) {
    oracle::Random rng(13);
    for (const auto& t : kTypes) {
        const RootDatum d = build_root_datum(t);
        const auto weyl = enumerate_finite_weyl(d);
        for (int s = 0; s < 60; ++s) {
            const auto h = rng.cartan(d.dim(), 9, 8);
            const auto g = rng.affine(d, weyl, 3);
            const FoldResult f = fold_to_alcove(d, h);
            EXPECT_TRUE(in_alcove(d, f.point.point));
            EXPECT_EQ(act(f.witness, h), f.point.point);
            EXPECT_EQ(fold_to_alcove(d, act(g, h)).point, f.point) << t;
            const FoldResult again = fold_to_alcove(d, f.point.point);
            EXPECT_EQ(again.point, f.point);
            EXPECT_EQ(again.witness, affine_identity(d));
            EXPECT_EQ(f.point.walls, alcove_walls(d, f.point.point));
        }
    }
}

// Denominators beyond 64 bits take the exact rational path.
TEST(Fold, HugeDenominators) {
    const Integer q("100000000000000000000000000000000000037");
    for (const std::string& t : {"A2"s, "B3"s, "G2"s}) {
        const RootDatum d = build_root_datum(t);
        const auto weyl = enumerate_finite_weyl(d);
        oracle::Random rng(15);
        for (int s = 0; s < 10; ++s) {
            RationalCartanVector h = rng.cartan(d.dim(), 9, 8);
            for (auto& c : h.coords) c += Rational(Integer(rng.uniform(1, 1000)), q);
            const auto g = rng.affine(d, weyl, 3);
            const FoldResult f = fold_to_alcove(d, h);
            EXPECT_TRUE(in_alcove(d, f.point.point));
            EXPECT_EQ(act(f.witness, h), f.point.point);
            EXPECT_EQ(fold_to_alcove(d, act(g, h)).point, f.point) << t;
        }
        const auto brute = oracle::brute_fold(d, RationalCartanVector(RationalVector(d.dim(), Rational(Integer(3), q))), 4);
        ASSERT_TRUE(brute.has_value());
        EXPECT_EQ(fold_to_alcove(d, RationalCartanVector(RationalVector(d.dim(), Rational(Integer(3), q)))).point.point, *brute);
    }
}

TEST(Fold, AgreesWithBruteForceSearch) {
    oracle::Random rng(14);
    for (const std::string& t : {"A1"s, "A2"s, "B2"s, "G2"s}) {
        const RootDatum d = build_root_datum(t);
        for (int s = 0; s < 40; ++s) {
            const auto h = rng.cartan(d.dim(), 5, 6);
            const auto brute = oracle::brute_fold(d, h, 16);
            ASSERT_TRUE(brute.has_value());
            EXPECT_EQ(fold_to_alcove(d, h).point.point, *brute) << t;
        }
    }
}

TEST(AffineLength, MatchesMinimalWordLength) {
    for (const std::string& t : {"A1"s, "A2"s, "B2"s, "C2"s, "G2"s, "A3"s}) {
        const RootDatum d = build_root_datum(t);
        for (const auto& [g, len] : oracle::word_lengths(d, 5)) EXPECT_EQ(affine_length(d, g), len) << t;
    }
}

TEST(AffineRoots, ActionIsCompatible) {
    oracle::Random rng(15);
    const RootDatum d = build_root_datum("B3");
    const auto weyl = enumerate_finite_weyl(d);
    const auto roots = all_roots(d);
    for (int s = 0; s < 100; ++s) {
        const AffineRoot a{roots[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(roots.size()) - 1))],
                           rng.uniform(-3, 3)};
        const auto g = rng.affine(d, weyl, 3);
        const auto h = rng.cartan(d.dim(), 5, 4);
        EXPECT_EQ(evaluate(act(d, g, a), act(g, h)), evaluate(a, h));
        // The reflection fixes its zero set and negates its root.
        const auto r = affine_reflection(d, a);
        EXPECT_EQ(evaluate(a, act(r, h)), -evaluate(a, h));
        EXPECT_EQ(affine_multiply(d, r, r), affine_identity(d));
    }
}

TEST(Bruhat, SimpleCoversPresentForEveryType) {
    for (const auto& t : kTypes) {
        const RootDatum d = build_root_datum(t);
        const auto covers = bruhat_cover_pairs(d, 1);
        for (int i = 0; i < d.rank; ++i) {
            const AffineWeylElement s{CorootVector::zero(d.dim()), weyl_simple(d, i)};
            bool found = false;
            for (const auto& c : covers)
                found = found || (c.w == s && c.v == affine_identity(d) && c.alpha == AffineRoot{d.simple_roots[i], 0});
            EXPECT_TRUE(found) << t << " s" << i + 1;
        }
        EXPECT_EQ(covers.size(), static_cast<std::size_t>(d.rank + 1)) << t;
    }
}

TEST(Bruhat, A1CoverCounts) {
    const RootDatum d = build_root_datum("A1");
    const auto covers = bruhat_cover_pairs(d, 2);
    EXPECT_EQ(covers.size(), 6u);
    std::size_t top = 0;
    for (const auto& c : covers) top += c.length_w == 2;
    EXPECT_EQ(top, 4u);
    // The translation t_{alpha^v} = s0 s1 has length 2 and covers s1 through alpha_0 = -alpha + delta.
    const AffineWeylElement w = affine_translation(d, CorootVector(IntVector{1}));
    bool found = false;
    for (const auto& c : covers)
        if (c.w == w && c.v == AffineWeylElement{CorootVector(IntVector{0}), weyl_simple(d, 0)}) {
            found = true;
            EXPECT_EQ(c.alpha, (AffineRoot{-d.simple_roots[0], 1}));
        }
    EXPECT_EQ(affine_length(d, w), 2);
    EXPECT_TRUE(found);
}

TEST(Bruhat, TriplesAreValidAndComplete) {
    for (const std::string& t : {"A1"s, "A2"s, "B2"s, "G2"s}) {
        const RootDatum d = build_root_datum(t);
        const int L = 4;
        const auto covers = bruhat_cover_pairs(d, L);
        const auto lengths = oracle::word_lengths(d, L);
        std::set<std::pair<AffineWeylElement, AffineWeylElement>> got;
        for (const auto& c : covers) {
            EXPECT_TRUE(is_positive(d, c.alpha));
            EXPECT_EQ(affine_multiply(d, affine_reflection(d, c.alpha), c.v), c.w);
            EXPECT_EQ(lengths.at(c.w), lengths.at(c.v) + 1);
            EXPECT_EQ(c.length_w, lengths.at(c.w));
            EXPECT_TRUE(got.insert({c.w, c.v}).second) << "duplicate cover";
        }
        // Every reflection lowering some w of length <= L by one must appear.
        std::size_t expected = 0;
        for (const auto& [w, len] : lengths) {
            if (len == 0) continue;
            std::set<AffineWeylElement> below;
            for (const auto& a : d.positive_roots)
                for (Int m = -8; m <= 8; ++m) {
                    const AffineWeylElement v = affine_multiply(d, affine_reflection(d, {a, m}), w);
                    auto it = lengths.find(v);
                    if (it != lengths.end() && it->second == len - 1) below.insert(v);
                }
            for (const auto& v : below) EXPECT_TRUE(got.count({w, v})) << t;
            expected += below.size();
        }
        EXPECT_EQ(covers.size(), expected) << t;
    }
}

TEST(Bruhat, A2CumulativeCounts) {
    const RootDatum d = build_root_datum("A2");
    const std::vector<std::size_t> counts = {3, 15, 39, 81};
    for (int L = 1; L <= 4; ++L) EXPECT_EQ(bruhat_cover_pairs(d, L).size(), counts[L - 1]);
}

TEST(Bruhat, LengthBoundIsCapacityChecked) {
    const RootDatum d = build_root_datum("A1");
    try {
        bruhat_cover_pairs(d, 13);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::capacity);
    }
}
