#pragma once

// GKM moment graphs with K-theoretic euler-class edge labels, and the
// divisibility test for the image of restriction to fixed points.

#include <optional>
#include <string>
#include <vector>

#include "ellkit/char_ring.hpp"

namespace ellkit {

struct GkmEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<Weight> weights; // tangent characters of the invariant sphere
};

struct GkmGraph {
    std::size_t rank = 0;
    std::vector<std::string> vertices;
    std::vector<GkmEdge> edges;
    std::vector<Int> order;                  // stratification rank of each vertex
    std::vector<FiniteWeylElement> elements; // filled for flag graphs only

    std::optional<std::size_t> index_of(const std::string& label) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return i;
        return std::nullopt;
    }
};

/// Vertex labels: "e" for the identity, otherwise the reduced word such as "s1s2".
inline std::string weyl_label(const FiniteWeylElement& w) {
    if (w.word.empty()) return "e";
    std::string s;
    for (int i : w.word) s += "s" + std::to_string(i + 1);
    return s;
}

inline constexpr int max_flag_rank = 3;

/// G/T: vertices W, an edge {w, r_gamma w} for each positive root gamma, labeled gamma.
inline GkmGraph build_flag_gkm(const RootDatum& d) {
    require(d.rank <= max_flag_rank, ErrorKind::capacity, "flag GKM graphs are limited to rank 3");
    GkmGraph g;
    g.rank = d.dim();
    g.elements = enumerate_finite_weyl(d);
    for (const auto& w : g.elements) {
        g.vertices.push_back(weyl_label(w));
        g.order.push_back(w.length());
    }
    auto index = [&](const FiniteWeylElement& x) {
        for (std::size_t i = 0; i < g.elements.size(); ++i)
            if (g.elements[i] == x) return i;
        fail(ErrorKind::consistency, "Weyl element missing from enumeration");
    };
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        for (const auto& gamma : d.positive_roots) {
            const std::size_t j = index(weyl_multiply(d, root_reflection(d, gamma), g.elements[i]));
            const auto& wi = g.elements[i];
            const auto& wj = g.elements[j];
            // Each edge once, oriented from the shorter element.
            if (wi.length() > wj.length() || (wi.length() == wj.length() && !(wi < wj))) continue;
            g.edges.push_back({i, j, {gamma}});
        }
    }
    return g;
}

/// prod (1 - e^{-chi}) in the given factor order.
inline LaurentPoly euler_class(const std::vector<Weight>& weights, std::size_t rank) {
    LaurentPoly e = LaurentPoly::one(rank);
    for (const auto& chi : weights) {
        require(chi.size() == rank, ErrorKind::domain, "euler class weight has wrong rank");
        require(!chi.is_zero(), ErrorKind::domain, "euler class of a zero weight");
        e = mul(e, subtract(LaurentPoly::one(rank), LaurentPoly::character(-chi)));
    }
    return e;
}

inline LaurentPoly euler_class(const std::vector<Weight>& weights) {
    require(!weights.empty(), ErrorKind::domain, "rank of an empty weight list is unknown; pass it explicitly");
    return euler_class(weights, weights.front().size());
}

/// f / (1 - e^{-chi}) = -f / (e^{-chi} - 1).
inline std::optional<LaurentPoly> divide_by_euler_factor(const LaurentPoly& f, const Weight& chi) {
    auto q = divide_exact(f, -chi);
    if (!q) return std::nullopt;
    return scale(*q, -1);
}

struct CandidateClass {
    std::vector<LaurentPoly> values; // one per vertex
};

struct MembershipVerdict {
    bool pass = false;
    std::optional<std::size_t> failing_edge;
    std::optional<std::size_t> failing_factor;
    std::vector<LaurentPoly> certificates; // per edge quotient (alpha_src - alpha_dst) / e(V)
};

inline MembershipVerdict check_membership(const GkmGraph& g, const CandidateClass& c) {
    require(c.values.size() == g.vertices.size(), ErrorKind::domain, "candidate class must assign every vertex");
    MembershipVerdict v;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const GkmEdge& edge = g.edges[e];
        LaurentPoly diff = subtract(c.values[edge.src], c.values[edge.dst]);
        for (std::size_t f = 0; f < edge.weights.size(); ++f) {
            auto q = divide_by_euler_factor(diff, edge.weights[f]);
            if (!q) {
                v.failing_edge = e;
                v.failing_factor = f;
                return v;
            }
            diff = std::move(*q);
        }
        v.certificates.push_back(std::move(diff));
    }
    v.pass = true;
    return v;
}

/// w -> e^{w lambda} on a flag graph.
inline CandidateClass restrict_line_bundle(const RootDatum& d, const GkmGraph& g, const Weight& lambda) {
    require(g.elements.size() == g.vertices.size(), ErrorKind::domain, "line bundle restriction needs a flag graph");
    require(lambda.size() == d.dim(), ErrorKind::domain, "weight rank mismatch");
    CandidateClass c;
    for (const auto& w : g.elements) c.values.push_back(LaurentPoly::character(apply(w, lambda)));
    return c;
}

inline bool proportional(const Weight& a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (checked::mul(a[i], b[j]) != checked::mul(a[j], b[i])) return false;
    return true;
}

struct AxiomReport {
    bool pass = true;
    std::vector<std::string> violations;
};

inline AxiomReport gkm_axiom_check(const GkmGraph& g) {
    AxiomReport r;
    auto violate = [&](std::string msg) {
        r.pass = false;
        r.violations.push_back(std::move(msg));
    };
    if (g.order.size() != g.vertices.size()) violate("order does not rank every vertex");
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        if (edge.src >= g.vertices.size() || edge.dst >= g.vertices.size()) {
            violate("edge " + std::to_string(e) + " has an unknown endpoint");
            continue;
        }
        for (const auto& w : edge.weights)
            if (w.is_zero()) violate("edge " + std::to_string(e) + " carries a zero weight");
        if (g.order.size() == g.vertices.size() && g.order[edge.src] == g.order[edge.dst])
            violate("edge " + std::to_string(e) + " joins vertices of equal order");
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        std::vector<std::size_t> incident;
        for (std::size_t e = 0; e < g.edges.size(); ++e)
            if (g.edges[e].src == v || g.edges[e].dst == v) incident.push_back(e);
        for (std::size_t a = 0; a < incident.size(); ++a)
            for (std::size_t b = a + 1; b < incident.size(); ++b)
                for (const auto& x : g.edges[incident[a]].weights)
                    for (const auto& y : g.edges[incident[b]].weights)
                        if (!x.is_zero() && !y.is_zero() && x.size() == y.size() && proportional(x, y))
                            violate("vertex " + g.vertices[v] + ": edges " + std::to_string(incident[a]) + " and " +
                                    std::to_string(incident[b]) + " have proportional weights");
    }
    return r;
}

} // namespace ellkit
