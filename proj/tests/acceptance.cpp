// Acceptance run: one PASS/FAIL line per criterion, each with its runtime limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"

using namespace ellkit;
using namespace std::string_literals;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

const std::vector<std::string> kAllTypes = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2"};

std::string str(std::size_t x) { return std::to_string(x); }

Outcome level_k_counts() {
    Outcome o;
    const RootDatum a1 = build_root_datum("A1");
    for (Int k = 1; k <= 10; ++k) {
        const std::size_t n = enumerate_level_k(a1, k).size();
        o.check(n == static_cast<std::size_t>(k + 1), "A1 level " + std::to_string(k) + " count " + str(n));
        o.check(n == oracle::dilated_alcove_points(a1.highest_coroot.coords, k), "A1 alcove oracle");
        const std::size_t rank = oracle::invariant_theta_rank(a1, k, 20);
        o.check(rank == n, "A1 level " + std::to_string(k) + " theta rank " + str(rank));
    }
    const RootDatum a2 = build_root_datum("A2");
    const std::vector<std::size_t> want = {3, 6, 10};
    for (Int k = 1; k <= 3; ++k) {
        const std::size_t n = enumerate_level_k(a2, k).size();
        o.check(n == want[static_cast<std::size_t>(k - 1)], "A2 level " + std::to_string(k) + " count " + str(n));
        o.check(n == oracle::dilated_alcove_points(a2.highest_coroot.coords, k), "A2 alcove oracle");
        const std::size_t rank = oracle::invariant_theta_rank(a2, k, 20);
        o.check(rank == n, "A2 level " + std::to_string(k) + " theta rank " + str(rank));
    }
    if (o.pass) o.detail = "A1 k=1..10 -> k+1, A2 k=1..3 -> 3,6,10; theta rank at q-order 20 agrees";
    return o;
}

Outcome section_transform() {
    Outcome o;
    oracle::Random rng(2024);
    std::size_t done = 0;
    double worst = 0;
    for (const std::string& type : {"A1"s, "A2"s}) {
        const RootDatum d = build_root_datum(type);
        std::vector<CorootVector> betas;
        for (const auto& shell : lattice_shells(d, 2)) betas.insert(betas.end(), shell.begin(), shell.end());
        for (int s = 0; s < 50; ++s) {
            const Int k = rng.uniform(1, 2);
            const auto levels = enumerate_level_k(d, k);
            const Weight lam = levels[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(levels.size()) - 1))];
            const ThetaSeries theta = theta_lambda(d, {lam, k, 0}, 40);
            const UpperHalfPoint tau(Complex(rng.real(-0.5, 0.5), rng.real(1.0, 2.0)));
            SigmaCPoint h;
            for (std::size_t i = 0; i < d.dim(); ++i) h.h.emplace_back(rng.real(0.0, 1.0), rng.real(-0.2, 0.2));
            const Complex z = std::polar(rng.real(0.5, 1.5), rng.real(0.0, 6.28));
            const CorootVector& beta = betas[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(betas.size()) - 1))];
            try {
                const TransformReport r = verify_section_transform(d, theta, tau, h, z, beta, 1e-8);
                worst = std::max({worst, r.periodicity_error, r.quasi_periodicity_error, r.homogeneity_error});
                o.check(r.pass, type + " sample " + std::to_string(s) + " errors " + std::to_string(r.periodicity_error) +
                                    "/" + std::to_string(r.quasi_periodicity_error) + "/" +
                                    std::to_string(r.homogeneity_error));
            } catch (const Error& e) {
                o.check(false, type + " sample " + std::to_string(s) + ": " + e.what());
            }
            ++done;
        }
    }
    if (o.pass) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu samples, worst relative error %.2e", done, worst);
        o.detail = buf;
    }
    return o;
}

Outcome lattice_group_law() {
    Outcome o;
    oracle::Random rng(3);
    int count = 0;
    for (int s = 0; s < 500; ++s) {
        const RootDatum d = build_root_datum(kAllTypes[static_cast<std::size_t>(s) % kAllTypes.size()]);
        const auto x = rng.series(d.dim(), 8);
        const auto b1 = rng.coroot(d.dim(), 3), b2 = rng.coroot(d.dim(), 3);
        o.check(lattice_translate(d, b1 + b2, x) == lattice_translate(d, b1, lattice_translate(d, b2, x)),
                d.name() + " sample " + std::to_string(s));
        ++count;
    }
    if (o.pass) o.detail = std::to_string(count) + " random series over all 13 types, exact";
    return o;
}

M2Element random_m2(oracle::Random& rng, const RootDatum& d, const std::vector<FiniteWeylElement>& weyl) {
    M2Element g;
    g.sign = static_cast<int>(rng.uniform(0, 1));
    g.lattice = {rng.coroot(d.dim(), 4), rng.coroot(d.dim(), 4)};
    g.w = weyl[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(weyl.size()) - 1))];
    // Products of S and T give entries of moderate size.
    SL2ZElement A;
    for (int i = rng.uniform(0, 4); i > 0; --i) A = sl2_multiply(A, rng.uniform(0, 1) ? sl2_S() : sl2_T());
    if (rng.uniform(0, 1)) A = sl2_inverse(A);
    g.A = A;
    return g;
}

Outcome m2_structure() {
    Outcome o;
    oracle::Random rng(4);
    const std::vector<std::string> types = {"A1", "A2", "D4"};
    const IntegralForm odd{{{1}}};
    int assoc = 0, conj = 0, eta_checked = 0;
    for (int s = 0; s < 1000; ++s) {
        const RootDatum d = build_root_datum(types[static_cast<std::size_t>(s) % 3]);
        const auto weyl = enumerate_finite_weyl(d);
        const auto x = random_m2(rng, d, weyl), y = random_m2(rng, d, weyl), z = random_m2(rng, d, weyl);
        o.check(m2_multiply(d, m2_multiply(d, x, y), z) == m2_multiply(d, x, m2_multiply(d, y, z)),
                "associativity " + d.name() + " sample " + std::to_string(s));
        ++assoc;
    }
    // The odd form [[1]] has a nontrivial cocycle; associativity must survive it too.
    const RootDatum a1 = build_root_datum("A1");
    const auto w1 = enumerate_finite_weyl(a1);
    for (int s = 0; s < 200; ++s) {
        const auto x = random_m2(rng, a1, w1), y = random_m2(rng, a1, w1), z = random_m2(rng, a1, w1);
        o.check(m2_multiply(a1, odd, m2_multiply(a1, odd, x, y), z) == m2_multiply(a1, odd, x, m2_multiply(a1, odd, y, z)),
                "associativity with odd form, sample " + std::to_string(s));
    }
    for (int s = 0; s < 200; ++s) {
        const bool use_odd = s % 2 == 1;
        const RootDatum d = use_odd ? a1 : build_root_datum(types[static_cast<std::size_t>(s / 2) % 3]);
        const IntegralForm form = use_odd ? odd : integral_form(d);
        const auto weyl = enumerate_finite_weyl(d);
        const M2Element g = random_m2(rng, d, weyl);
        const SL2ZElement A = g.A;
        const LatticePair L = g.lattice;
        // A^{-1} L A = eta(L, A) (A * L)
        const M2Element mA = m2_from_sl2(d, A), mL{0, L, weyl_identity(d), SL2ZElement{}};
        const M2Element lhs = m2_multiply(d, form, m2_multiply(d, form, m2_inverse(d, form, mA), mL), mA);
        const M2Element rhs{eta(form, L, A), sl2_lattice_act(A, L), weyl_identity(d), SL2ZElement{}};
        o.check(lhs == rhs, "conjugation relation " + d.name() + (use_odd ? " (odd form)" : "") + " sample " +
                                std::to_string(s));
        ++conj;
    }
    for (const std::string& type : types) {
        const RootDatum d = build_root_datum(type);
        const auto weyl = enumerate_finite_weyl(d);
        for (int s = 0; s < 200; ++s) {
            const auto g = random_m2(rng, d, weyl);
            o.check(eta(d, g.lattice, g.A) == 0, "eta nonzero on " + type);
            ++eta_checked;
        }
    }
    if (o.pass)
        o.detail = std::to_string(assoc) + " associativity triples, " + std::to_string(conj) +
                   " conjugation pairs, eta = 0 on " + std::to_string(eta_checked) + " A1/A2/D4 samples";
    return o;
}

Outcome cover_divisibility() {
    Outcome o;
    std::size_t certs = 0, counterexamples = 0;
    for (const std::string& type : {"A1"s, "A2"s}) {
        const RootDatum d = build_root_datum(type);
        const auto covers = bruhat_cover_pairs(d, 4);
        for (Int k = 1; k <= 2; ++k)
            for (const auto& lam : enumerate_level_k(d, k))
                for (const auto& c : covers) {
                    const auto cert = check_cover_divisibility(d, {lam, k, 0}, c, 16);
                    if (cert.counterexample) ++counterexamples;
                    o.check(cert.verdict == Verdict::divisible && cert.verified,
                            type + " level " + std::to_string(k) + ": " + to_string(cert.verdict) + " " + cert.note);
                    ++certs;
                }
    }
    o.check(counterexamples == 0, str(counterexamples) + " counterexamples");
    if (o.pass) o.detail = str(certs) + " verified quotient certificates, 0 counterexamples";
    return o;
}

Outcome factorization() {
    Outcome o;
    std::size_t checks = 0;
    for (const std::string& type : {"A1"s, "A2"s}) {
        const RootDatum d = build_root_datum(type);
        std::vector<CorootVector> betas{CorootVector::zero(d.dim())};
        for (const auto& shell : lattice_shells(d, 2)) betas.insert(betas.end(), shell.begin(), shell.end());
        const auto covers = bruhat_cover_pairs(d, 1);
        for (Int k = 1; k <= 2; ++k)
            for (const auto& lam : enumerate_level_k(d, k))
                for (const auto& c : covers)
                    for (const auto& beta : betas) {
                        const auto r = factorization_witness(d, c.w, c.v, {lam, k, 0}, c.alpha, beta);
                        o.check(r.holds, type + ": " + r.mismatch);
                        ++checks;
                    }
    }
    if (o.pass) o.detail = str(checks) + " exact identities (beta = 0 and the first two shells)";
    return o;
}

Outcome gkm_membership() {
    Outcome o;
    oracle::Random rng(7);
    std::size_t classes = 0;
    for (const std::string& type : {"A1"s, "A2"s, "C2"s}) {
        const RootDatum d = build_root_datum(type);
        const GkmGraph g = build_flag_gkm(d);
        for (int s = 0; s < 20; ++s) {
            const auto c = restrict_line_bundle(d, g, rng.weight(d.dim(), 8));
            o.check(check_membership(g, c).pass, type + " line bundle rejected");
            ++classes;
        }
        CandidateClass bad;
        bad.values.push_back(LaurentPoly::one(d.dim()));
        for (std::size_t i = 1; i < g.vertices.size(); ++i) bad.values.push_back(LaurentPoly(d.dim()));
        const auto v = check_membership(g, bad);
        o.check(!v.pass && v.failing_edge.has_value(), type + " non-member accepted");
        if (v.failing_edge) {
            // The named edge really violates divisibility.
            const GkmEdge& e = g.edges[*v.failing_edge];
            const LaurentPoly diff = subtract(bad.values[e.src], bad.values[e.dst]);
            o.check(!divide_by_euler_factor(diff, e.weights[*v.failing_factor]).has_value(),
                    type + " certificate names an edge that is not violated");
        }
    }
    if (o.pass) o.detail = str(classes) + " line-bundle classes pass; (1, 0, ...) fails on a named edge for A1/A2/C2";
    return o;
}

std::vector<Rational> grid_values() {
    std::set<Rational> vals;
    for (Int q = 1; q <= 4; ++q)
        for (Int p = -q; p <= q; ++p) vals.insert(make_rational(p, q));
    return {vals.begin(), vals.end()};
}

Outcome free_space() {
    Outcome o;
    const auto vals = grid_values();
    std::size_t points = 0, supported = 0;
    for (const std::string& type : {"A1"s, "A2"s}) {
        const RootDatum d = build_root_datum(type);
        const std::size_t r = d.dim();
        std::vector<std::size_t> idx(2 * r, 0);
        for (;;) {
            RationalCartanVector h1 = RationalCartanVector::zero(r), h2 = RationalCartanVector::zero(r);
            bool lattice = true;
            for (std::size_t i = 0; i < r; ++i) {
                h1[i] = vals[idx[i]];
                h2[i] = vals[idx[r + i]];
                lattice = lattice && is_integer(h1[i]) && is_integer(h2[i]);
            }
            const bool f = free_space_support(h1, h2);
            o.check(f == lattice, type + " grid point misclassified");
            supported += f;
            ++points;
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == vals.size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    oracle::Random rng(8);
    for (int s = 0; s < 500; ++s) {
        const RootDatum d = build_root_datum(s % 2 ? "A2" : "A1");
        const auto weyl = enumerate_finite_weyl(d);
        RationalCartanVector h1 = RationalCartanVector::zero(d.dim()), h2 = RationalCartanVector::zero(d.dim());
        for (std::size_t i = 0; i < d.dim(); ++i) {
            h1[i] = vals[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(vals.size()) - 1))];
            h2[i] = vals[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(vals.size()) - 1))];
        }
        const NElement g{rng.coroot(d.dim(), 5), rng.coroot(d.dim(), 5),
                         weyl[static_cast<std::size_t>(rng.uniform(0, static_cast<Int>(weyl.size()) - 1))]};
        auto [g1, g2] = transform_parts(g, h1, h2);
        o.check(free_space_support(g1, g2) == free_space_support(h1, h2), "not invariant under a translate");
    }
    if (o.pass)
        o.detail = str(points) + " grid points (" + str(supported) + " lattice pairs), 500 invariant translates";
    return o;
}

Outcome folding() {
    Outcome o;
    oracle::Random rng(9);
    std::size_t n = 0;
    for (const auto& type : kAllTypes) {
        const RootDatum d = build_root_datum(type);
        const auto weyl = enumerate_finite_weyl(d);
        for (int s = 0; s < 1000; ++s) {
            const auto h = rng.cartan(d.dim(), 12, 10);
            const auto g = rng.affine(d, weyl, 3);
            const FoldResult f = fold_to_alcove(d, h);
            o.check(in_alcove(d, f.point.point), type + " fold left the alcove");
            o.check(act(f.witness, h) == f.point.point, type + " witness wrong");
            o.check(fold_to_alcove(d, act(g, h)).point == f.point, type + " fold not invariant");
            ++n;
        }
    }
    if (o.pass) o.detail = str(n) + " points over 13 types: invariant, witnessed, exact";
    return o;
}

Outcome numeric_sanity() {
    Outcome o;
    const RootDatum d = build_root_datum("A1");
    const ThetaSeries theta = theta_lambda(d, {Weight::zero(1), 1, 0}, 25);
    const SectionValue v = evaluate_section(d, theta, UpperHalfPoint(Complex(0.0, 1.0)), {{0.0}}, 1.0);
    const double want = oracle::direct_theta_value_at_i(50);
    const double err = std::abs(v.value - Complex(want, 0.0));
    char buf[160];
    std::snprintf(buf, sizeof buf, "value %.15f, direct sum %.15f, |diff| %.1e, tail bound %.1e", v.value.real(), want,
                  err, v.tail_bound);
    o.check(err <= 1e-10, buf);
    o.detail = buf;
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "level-k basis count", 5, level_k_counts},
        {2, "theta section transformation", 30, section_transform},
        {3, "lattice-action group law", 10, lattice_group_law},
        {4, "M2(Z) structure", 10, m2_structure},
        {5, "cover divisibility", 60, cover_divisibility},
        {6, "factorization identity", 30, factorization},
        {7, "GKM membership", 20, gkm_membership},
        {8, "free-space support", 10, free_space},
        {9, "folding correctness", 10, folding},
        {10, "numeric evaluation sanity", 1, numeric_sanity},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_s;
        const bool ok = out.pass && in_time;
        if (!in_time) out.detail += " (over the time limit)";
        std::printf("criterion %2d %-30s %s  %.2fs/%.0fs  %s\n", c.id, c.name, ok ? "PASS" : "FAIL", secs, c.limit_s,
                    out.detail.c_str());
        std::fflush(stdout);
        failures += !ok;
    }
    return failures == 0 ? 0 : 1;
}
