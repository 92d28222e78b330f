#pragma once

// JSON encodings.  Rationals are strings "p/q", complex numbers "a+bi".

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ellkit/gkm.hpp"
#include "ellkit/stalk.hpp"

namespace ellkit {

using json = nlohmann::json;

inline json rational_json(const Rational& r) { return r.get_str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return to_rational(j.get<Int>());
    fail(ErrorKind::parse, "expected a rational string or integer, got " + j.dump());
}

template <class Tag>
json coords_json(const Coords<Tag, Int>& v) {
    return json(v.coords);
}

inline json coords_json(const RationalCartanVector& v) {
    json a = json::array();
    for (const auto& x : v.coords) a.push_back(rational_json(x));
    return a;
}

inline IntVector int_vector_from_json(const json& j) {
    require(j.is_array(), ErrorKind::parse, "expected an integer array, got " + j.dump());
    IntVector v;
    for (const auto& x : j) {
        require(x.is_number_integer(), ErrorKind::parse, "expected an integer, got " + x.dump());
        v.push_back(x.get<Int>());
    }
    return v;
}

inline Weight weight_from_json(const json& j) { return Weight(int_vector_from_json(j)); }

namespace detail {

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else if (c != '[' && c != ']' && c != '(' && c != ')') {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

} // namespace detail

/// "1/2,0" or "[1/2, 0]" -> exact vector.
inline RationalCartanVector parse_rational_vector(std::string_view s) {
    RationalCartanVector v;
    for (const auto& p : detail::split_list(s)) v.coords.push_back(parse_rational(p));
    return v;
}

inline IntVector parse_int_vector(std::string_view s) {
    IntVector v;
    for (const auto& p : detail::split_list(s)) v.push_back(to_int(detail::parse_integer(p)));
    return v;
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_complex(Complex z) {
    std::string re = format_double(z.real());
    std::string im = format_double(std::abs(z.imag()));
    return re + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

/// Accepts "a+bi", "a-bi", "bi", "a", "i", "-i" with optional exponents.
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail(ErrorKind::parse, "empty complex literal");
    auto number = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "malformed complex literal '" + std::string(text) + "'");
        }
        if (used != t.size()) fail(ErrorKind::parse, "malformed complex literal '" + std::string(text) + "'");
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(s)};
    return {number(s.substr(0, split)), number(s.substr(split))};
}

inline json root_datum_json(const RootDatum& d) {
    json j;
    j["family"] = std::string(1, family_letter(d.family));
    j["rank"] = d.rank;
    j["cartan"] = d.cartan;
    json simple = json::array();
    for (const auto& a : d.simple_roots) simple.push_back(coords_json(a));
    j["simple_roots"] = simple;
    j["highest_root"] = coords_json(d.highest_root);
    j["highest_coroot"] = coords_json(d.highest_coroot);
    json gram = json::array();
    for (const auto& row : d.gram) {
        json r = json::array();
        for (const auto& x : row) r.push_back(rational_json(x));
        gram.push_back(r);
    }
    j["gram"] = gram;
    json lengths = json::array();
    for (const auto& x : d.root_length_sq) lengths.push_back(rational_json(x));
    j["simple_root_lengths"] = lengths;
    json pos = json::array();
    for (const auto& a : d.positive_roots) pos.push_back(coords_json(a));
    j["positive_roots"] = pos;
    return j;
}

inline json series_json(const CharacterSeries& s) {
    json j;
    j["rank"] = s.rank();
    j["truncation"] = s.truncation() ? json(rational_json(*s.truncation())) : json(nullptr);
    json terms = json::array();
    for (const auto& [m, c] : s.terms())
        terms.push_back({{"u", m.level}, {"q", rational_json(m.energy)}, {"weight", coords_json(m.weight)},
                         {"coeff", c.fits_slong_p() ? json(c.get_si()) : json(c.get_str())}});
    j["terms"] = terms;
    return j;
}

inline CharacterSeries series_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt) {
    require(j.is_object(), ErrorKind::parse, "series must be a JSON object");
    std::optional<Rational> n;
    if (j.contains("truncation") && !j["truncation"].is_null()) n = rational_from_json(j["truncation"]);
    const json terms = j.value("terms", json::array());
    if (j.contains("rank")) rank = j["rank"].get<std::size_t>();
    if (!rank && !terms.empty()) rank = terms.front().at("weight").size();
    require(rank.has_value(), ErrorKind::parse, "cannot infer the rank of an empty series");
    CharacterSeries s(*rank, n);
    for (const auto& t : terms) {
        Integer c = t.at("coeff").is_string() ? Integer(t.at("coeff").get<std::string>()) : Integer(t.at("coeff").get<long>());
        s.add_term({t.value("u", Int{0}), t.contains("q") ? rational_from_json(t["q"]) : Rational(0),
                    weight_from_json(t.at("weight"))},
                   c);
    }
    return s;
}

inline json theta_json(const ThetaSeries& t) {
    json j = series_json(t.series);
    j["level"] = t.source.level;
    j["lambda"] = coords_json(t.source.lambda_bar);
    j["energy"] = rational_json(t.source.energy);
    return j;
}

inline json finite_weyl_json(const FiniteWeylElement& w) { return {{"word", w.word}, {"label", weyl_label(w)}}; }

inline json affine_json(const AffineWeylElement& g) {
    return {{"translation", coords_json(g.translation)}, {"word", g.finite.word}};
}

inline json affine_root_json(const AffineRoot& a) { return {{"finite", coords_json(a.finite)}, {"m", a.m}}; }

inline json alcove_json(const AlcovePoint& p) { return {{"point", coords_json(p.point)}, {"walls", p.walls}}; }

inline json cover_json(const BruhatCover& c) {
    return {{"w", affine_json(c.w)}, {"v", affine_json(c.v)}, {"alpha", affine_root_json(c.alpha)}, {"length_w", c.length_w}};
}

inline json monomial_json(const CharacterMonomial& m) {
    return {{"u", m.level}, {"q", rational_json(m.energy)}, {"weight", coords_json(m.weight)}};
}

inline json certificate_json(const DivisibilityCertificate& c, bool include_series) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["divisor"] = {{"weight", coords_json(c.divisor.weight)}, {"q", rational_json(c.divisor.energy)}};
    j["verified"] = c.verified;
    j["open_lines"] = c.open_lines.size();
    if (c.counterexample)
        j["counterexample"] = {{"line", monomial_json(c.counterexample->representative)},
                               {"sum", c.counterexample->sum.get_str()}};
    if (!c.note.empty()) j["note"] = c.note;
    if (c.quotient) {
        j["quotient_terms"] = c.quotient->size();
        if (include_series) j["quotient"] = series_json(*c.quotient);
    }
    if (include_series) j["difference"] = series_json(c.difference);
    return j;
}

inline json graph_json(const GkmGraph& g) {
    json j;
    j["rank"] = g.rank;
    j["vertices"] = g.vertices;
    json edges = json::array();
    for (const auto& e : g.edges) {
        json w = json::array();
        for (const auto& x : e.weights) w.push_back(coords_json(x));
        edges.push_back({{"src", g.vertices[e.src]}, {"dst", g.vertices[e.dst]}, {"weights", w}});
    }
    j["edges"] = edges;
    j["order"] = g.order;
    return j;
}

inline GkmGraph graph_from_json(const json& j) {
    require(j.is_object(), ErrorKind::parse, "graph must be a JSON object");
    GkmGraph g;
    g.vertices = j.at("vertices").get<std::vector<std::string>>();
    if (j.contains("order")) g.order = j["order"].get<std::vector<Int>>();
    std::optional<std::size_t> rank;
    if (j.contains("rank")) rank = j["rank"].get<std::size_t>();
    for (const auto& e : j.value("edges", json::array())) {
        auto src = g.index_of(e.at("src").get<std::string>());
        auto dst = g.index_of(e.at("dst").get<std::string>());
        require(src && dst, ErrorKind::parse, "edge refers to an unknown vertex: " + e.dump());
        GkmEdge edge{*src, *dst, {}};
        for (const auto& w : e.at("weights")) {
            edge.weights.push_back(weight_from_json(w));
            if (!rank) rank = edge.weights.back().size();
            require(edge.weights.back().size() == *rank, ErrorKind::parse, "edge weights of mixed rank");
        }
        g.edges.push_back(std::move(edge));
    }
    g.rank = rank.value_or(0);
    return g;
}

inline json class_json(const GkmGraph& g, const CandidateClass& c) {
    json j = json::object();
    for (std::size_t i = 0; i < g.vertices.size(); ++i) j[g.vertices[i]] = series_json(c.values[i]);
    return j;
}

inline CandidateClass class_from_json(const json& j, const GkmGraph& g) {
    require(j.is_object(), ErrorKind::parse, "class must map vertex labels to Laurent polynomials");
    CandidateClass c;
    for (const auto& v : g.vertices) {
        require(j.contains(v), ErrorKind::parse, "class does not assign vertex '" + v + "'");
        LaurentPoly p = series_from_json(j[v], g.rank);
        require(p.is_exact(), ErrorKind::parse, "class values must be exact Laurent polynomials");
        c.values.push_back(std::move(p));
    }
    return c;
}

inline json descriptor_json(const SupportDescriptor& s) {
    json roots = json::array();
    for (const auto& a : s.vanishing_roots) roots.push_back({{"m", a.m}, {"alpha", coords_json(a.alpha)}});
    return {{"h1", coords_json(s.h1)},
            {"h2", coords_json(s.h2)},
            {"folded_minus_h1", alcove_json(s.folded)},
            {"walls", s.walls},
            {"order2", s.order2.get_str()},
            {"denom1", s.denom1.get_str()},
            {"vanishing_roots", roots}};
}

} // namespace ellkit
