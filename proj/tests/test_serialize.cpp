#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace ellkit;

TEST(Json, Rationals) {
    for (const Rational& r : {make_rational(3, 7), make_rational(-5, 2), Rational(0), Rational(12)})
        EXPECT_EQ(rational_from_json(rational_json(r)), r);
    EXPECT_EQ(rational_json(make_rational(2, 4)), "1/2");
    EXPECT_EQ(rational_from_json(json(4)), 4);
    EXPECT_THROW(rational_from_json(json(0.5)), Error);
}

TEST(Json, Complex) {
    EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
    EXPECT_EQ(parse_complex("0.5-1.5i"), Complex(0.5, -1.5));
    EXPECT_EQ(parse_complex("i"), Complex(0, 1));
    EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
    EXPECT_EQ(parse_complex("3"), Complex(3, 0));
    EXPECT_EQ(parse_complex("2.5i"), Complex(0, 2.5));
    EXPECT_EQ(parse_complex("1e-3+1e2i"), Complex(1e-3, 1e2));
    EXPECT_THROW(parse_complex("1+2x"), Error);
    EXPECT_THROW(parse_complex(""), Error);
    for (Complex z : {Complex(0.1, -0.3), Complex(-2.0, 1.0 / 3.0), Complex(1e-30, 5e20)})
        EXPECT_EQ(parse_complex(format_complex(z)), z);
}

TEST(Json, Vectors) {
    EXPECT_EQ(parse_rational_vector("1/2, 0"), RationalCartanVector(RationalVector{make_rational(1, 2), Rational(0)}));
    EXPECT_EQ(parse_rational_vector("[1/3,-2]"), RationalCartanVector(RationalVector{make_rational(1, 3), Rational(-2)}));
    EXPECT_EQ(parse_int_vector("1,-2,3"), (IntVector{1, -2, 3}));
    EXPECT_THROW(parse_int_vector("1/2"), Error);
}

TEST(Json, SeriesRoundTrip) {
    oracle::Random rng(71);
    for (int s = 0; s < 50; ++s) {
        const auto x = s % 2 ? rng.series(3, 6) : rng.series(3, 6, make_rational(rng.uniform(1, 20), 3));
        EXPECT_EQ(series_from_json(json::parse(series_json(x).dump())), x);
    }
    CharacterSeries big(1);
    big.add_term({0, 0, Weight(IntVector{1})}, Integer("123456789012345678901234567890"));
    EXPECT_EQ(series_from_json(series_json(big)), big);
}

TEST(Json, GraphAndClassRoundTrip) {
    const RootDatum d = build_root_datum("A2");
    const GkmGraph g = build_flag_gkm(d);
    const GkmGraph back = graph_from_json(json::parse(graph_json(g).dump()));
    EXPECT_EQ(back.vertices, g.vertices);
    EXPECT_EQ(back.order, g.order);
    ASSERT_EQ(back.edges.size(), g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        EXPECT_EQ(back.edges[i].src, g.edges[i].src);
        EXPECT_EQ(back.edges[i].dst, g.edges[i].dst);
        EXPECT_EQ(back.edges[i].weights, g.edges[i].weights);
    }
    const CandidateClass c = restrict_line_bundle(d, g, Weight(IntVector{2, -1}));
    const CandidateClass cb = class_from_json(json::parse(class_json(g, c).dump()), back);
    for (std::size_t i = 0; i < c.values.size(); ++i) EXPECT_EQ(cb.values[i], c.values[i]);
    EXPECT_TRUE(check_membership(back, cb).pass);
}

TEST(Json, GraphErrors) {
    EXPECT_THROW(graph_from_json(json::parse(R"({"vertices":["e"],"edges":[{"src":"e","dst":"x","weights":[[2]]}]})")),
                 Error);
    const GkmGraph g = build_flag_gkm(build_root_datum("A1"));
    EXPECT_THROW(class_from_json(json::parse(R"({"e":{"terms":[]}})"), g), Error);
}

TEST(Json, RootDatumShape) {
    const json j = root_datum_json(build_root_datum("A2"));
    EXPECT_EQ(j["family"], "A");
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["cartan"], json::parse("[[2,-1],[-1,2]]"));
    EXPECT_EQ(j["positive_roots"].size(), 3u);
}
