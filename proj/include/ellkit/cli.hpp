#pragma once

// Command-line front end.  run() never throws: every failure becomes a JSON
// report with an exit code (0 pass, 1 fail or module error, 2 usage,
// 3 indeterminate).

#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellkit/serialize.hpp"

namespace ellkit {

struct CommandReport {
    int exit_code = 0;
    std::string out; // JSON document
    std::string err; // human summary
};

enum class Status { pass, fail, indeterminate };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::indeterminate: return "indeterminate";
    }
    return "unknown";
}

inline int exit_code(Status s) {
    switch (s) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::indeterminate: return 3;
    }
    return 1;
}

namespace cli_detail {

struct Options {
    std::string type = "A1";
    Int level = 1;
    std::string lambda;
    std::string energy = "0";
    std::string qorder = "40";
    std::string h;
    std::string h1;
    std::string h2;
    std::string tau = "0+1i";
    std::string z = "1";
    std::string beta;
    double tol = 1e-8;
    double im_floor = 0.5;
    int length = 2;
    int samples = 200;
    std::uint64_t seed = 1;
    std::string graph_path;
    std::string class_path;
    bool compact = false;
    bool timings = false;
    bool series = false;
};

struct Outcome {
    Status status = Status::pass;
    json data = json::object();
    json diagnostics = json::object();
    std::string summary;
};

inline Weight parse_weight(const RootDatum& d, const std::string& text) {
    Weight w = text.empty() ? Weight::zero(d.dim()) : Weight(parse_int_vector(text));
    require(w.size() == d.dim(), ErrorKind::domain,
            "expected " + std::to_string(d.dim()) + " weight coordinates, got '" + text + "'");
    return w;
}

inline CorootVector parse_coroot(const RootDatum& d, const std::string& text) {
    CorootVector b = text.empty() ? CorootVector::zero(d.dim()) : CorootVector(parse_int_vector(text));
    require(b.size() == d.dim(), ErrorKind::domain,
            "expected " + std::to_string(d.dim()) + " coroot coordinates, got '" + text + "'");
    return b;
}

inline RationalCartanVector parse_cartan(const RootDatum& d, const std::string& text) {
    RationalCartanVector h = text.empty() ? RationalCartanVector::zero(d.dim()) : parse_rational_vector(text);
    require(h.size() == d.dim(), ErrorKind::domain,
            "expected " + std::to_string(d.dim()) + " Cartan coordinates, got '" + text + "'");
    return h;
}

inline SigmaCPoint parse_sigma(const RootDatum& d, const std::string& text) {
    SigmaCPoint p;
    if (text.empty()) p.h.assign(d.dim(), 0.0);
    for (const auto& part : detail::split_list(text)) p.h.push_back(parse_complex(part));
    require(p.h.size() == d.dim(), ErrorKind::domain,
            "expected " + std::to_string(d.dim()) + " complex coordinates, got '" + text + "'");
    return p;
}

inline LevelKCharacter parse_character(const RootDatum& d, const Options& o) {
    return {parse_weight(d, o.lambda), o.level, parse_rational(o.energy)};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::parse, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::parse, "invalid JSON in '" + path + "': " + e.what());
    }
}

// Draws by plain modular reduction so a seed gives the same samples with any standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    Int uniform(Int lo, Int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<Int>(rng_() % span);
    }
    double real(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53); }

private:
    std::mt19937_64 rng_;
};

inline SL2ZElement random_sl2(Sampler& s, Int bound = 10) {
    const SL2ZElement gens[] = {sl2_S(), sl2_T(), sl2_inverse(sl2_T())};
    for (;;) {
        SL2ZElement A;
        const Int len = s.uniform(0, 5);
        for (Int i = 0; i < len; ++i) A = sl2_multiply(A, gens[s.uniform(0, 2)]);
        if (std::max({std::abs(A.a), std::abs(A.b), std::abs(A.c), std::abs(A.d)}) <= bound) return A;
    }
}

inline CorootVector random_coroot(Sampler& s, std::size_t rank, Int bound) {
    CorootVector b = CorootVector::zero(rank);
    for (auto& x : b.coords) x = s.uniform(-bound, bound);
    return b;
}

inline double point_error(const LinePoint& a, const LinePoint& b) {
    auto rel = [](Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };
    double e = rel(a.tau.tau, b.tau.tau);
    for (std::size_t i = 0; i < a.h.h.size(); ++i) e = std::max(e, rel(a.h.h[i], b.h.h[i]));
    return std::max(e, std::abs(a.z - b.z) / std::max(1e-300, std::abs(a.z)));
}

// --- handlers ---------------------------------------------------------------

inline Outcome root_describe(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    Outcome out;
    out.data = root_datum_json(d);
    out.data["weyl_order"] = enumerate_finite_weyl(d).size();
    out.summary = d.name() + ": rank " + std::to_string(d.rank) + ", " + std::to_string(d.positive_roots.size()) +
                  " positive roots";
    return out;
}

inline Outcome alcove_fold(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const RationalCartanVector h = parse_cartan(d, o.h);
    const FoldResult r = fold_to_alcove(d, h);
    Outcome out;
    out.data = {{"input", coords_json(h)},
                {"point", coords_json(r.point.point)},
                {"walls", r.point.walls},
                {"witness", affine_json(r.witness)}};
    std::string pt;
    for (const auto& x : r.point.point.coords) pt += (pt.empty() ? "" : ",") + x.get_str();
    out.summary = "folded to (" + pt + "), " + std::to_string(r.point.walls.size()) + " tight walls";
    return out;
}

inline Outcome weights_enumerate(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const auto ws = enumerate_level_k(d, o.level);
    Outcome out;
    json list = json::array();
    for (const auto& w : ws) list.push_back(coords_json(w));
    out.data = {{"type", d.name()}, {"level", o.level}, {"count", ws.size()}, {"weights", list}};
    out.summary = std::to_string(ws.size()) + " dominant weights of level <= " + std::to_string(o.level);
    return out;
}

inline Outcome theta_expand(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const ThetaSeries t = theta_lambda(d, parse_character(d, o), parse_rational(o.qorder));
    Outcome out;
    out.data = theta_json(t);
    out.diagnostics["terms"] = t.series.size();
    out.summary = std::to_string(t.series.size()) + " terms up to q^" + o.qorder;
    return out;
}

inline Outcome theta_verify(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const ThetaSeries t = theta_lambda(d, parse_character(d, o), parse_rational(o.qorder));
    Outcome out;
    const bool pure = t.series.all_levels_equal(o.level);
    json shells = json::array();
    bool invariant = true;
    std::size_t checked_vectors = 0;
    for (const auto& shell : lattice_shells(d, 2)) {
        for (const auto& beta : shell) {
            const bool ok = agree_up_to(lattice_translate(d, beta, t.series), t.series, translation_validity(d, t, beta));
            invariant = invariant && ok;
            ++checked_vectors;
            if (!ok) shells.push_back(coords_json(beta));
        }
    }
    const CharacterSeries sym = weyl_invariantize(d, t);
    bool sym_ok = true;
    for (const auto& w : enumerate_finite_weyl(d)) sym_ok = sym_ok && finite_weyl_act(w, sym) == sym;
    out.data = {{"level_purity", pure},
                {"lattice_invariance", invariant},
                {"translations_checked", checked_vectors},
                {"failing_translations", shells},
                {"weyl_invariantized_is_invariant", sym_ok}};
    out.diagnostics["terms"] = t.series.size();
    out.status = pure && invariant && sym_ok ? Status::pass : Status::fail;
    out.summary = "theta checks: purity " + std::string(pure ? "ok" : "FAILED") + ", invariance " +
                  (invariant ? "ok" : "FAILED");
    return out;
}

inline Outcome theta_cover_divisibility(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const LevelKCharacter lam = parse_character(d, o);
    const Rational n = parse_rational(o.qorder);
    const auto covers = bruhat_cover_pairs(d, o.length);
    Outcome out;
    json certs = json::array();
    std::size_t divisible = 0, not_divisible = 0, indeterminate = 0;
    for (const auto& c : covers) {
        const DivisibilityCertificate cert = check_cover_divisibility(d, lam, c, n);
        switch (cert.verdict) {
        case Verdict::divisible: ++divisible; break;
        case Verdict::not_divisible: ++not_divisible; break;
        case Verdict::indeterminate: ++indeterminate; break;
        }
        json j = cover_json(c);
        j["certificate"] = certificate_json(cert, o.series);
        certs.push_back(j);
    }
    out.data = {{"covers", covers.size()},
                {"divisible", divisible},
                {"not_divisible", not_divisible},
                {"indeterminate", indeterminate},
                {"certificates", certs}};
    out.diagnostics["truncation"] = rational_json(n);
    out.status = not_divisible ? Status::fail : indeterminate ? Status::indeterminate : Status::pass;
    out.summary = std::to_string(divisible) + "/" + std::to_string(covers.size()) + " covers divisible";
    return out;
}

inline Outcome modular_verify_group(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const IntegralForm form = integral_form(d);
    const auto weyl = enumerate_finite_weyl(d);
    Sampler s(o.seed);
    auto random_w = [&] { return weyl[static_cast<std::size_t>(s.uniform(0, static_cast<Int>(weyl.size()) - 1))]; };
    auto random_n = [&] {
        return NElement{random_coroot(s, d.dim(), 3), random_coroot(s, d.dim(), 3), random_w()};
    };
    auto random_m2 = [&] {
        return M2Element{static_cast<int>(s.uniform(0, 1)), {random_coroot(s, d.dim(), 3), random_coroot(s, d.dim(), 3)},
                         random_w(), random_sl2(s)};
    };
    auto random_point = [&] {
        LinePoint x;
        x.tau = UpperHalfPoint(Complex(s.real(-0.5, 0.5), s.real(0.5, 2.0)));
        for (std::size_t i = 0; i < d.dim(); ++i) x.h.h.emplace_back(s.real(-0.5, 0.5), s.real(-0.2, 0.2));
        x.z = Complex(s.real(0.5, 1.5), s.real(-0.5, 0.5));
        return x;
    };
    double n_err = 0, sl2_err = 0, m2_line_err = 0;
    std::size_t assoc_fail = 0, relation_fail = 0, eta_nonzero = 0, split_fail = 0;
    for (int i = 0; i < o.samples; ++i) {
        const LinePoint x = random_point();
        const NElement g1 = random_n(), g2 = random_n();
        n_err = std::max(n_err, point_error(n_act_line(d, n_multiply(d, g1, g2), x),
                                            n_act_line(d, g1, n_act_line(d, g2, x))));
        const SL2ZElement A = random_sl2(s), B = random_sl2(s);
        sl2_err = std::max(sl2_err, point_error(sl2_act_line(d, sl2_multiply(A, B), x),
                                                sl2_act_line(d, A, sl2_act_line(d, B, x))));
        const M2Element a = random_m2(), b = random_m2(), c = random_m2();
        if (!(m2_multiply(d, form, m2_multiply(d, form, a, b), c) == m2_multiply(d, form, a, m2_multiply(d, form, b, c))))
            ++assoc_fail;
        m2_line_err = std::max(m2_line_err, point_error(m2_act_line(d, m2_multiply(d, form, a, b), x),
                                                        m2_act_line(d, a, m2_act_line(d, b, x))));
        const LatticePair L{random_coroot(s, d.dim(), 3), random_coroot(s, d.dim(), 3)};
        const M2Element lhs = m2_multiply(d, form, m2_multiply(d, form, m2_from_sl2(d, sl2_inverse(A)), M2Element{0, L, weyl_identity(d), SL2ZElement{}}),
                                          m2_from_sl2(d, A));
        const M2Element rhs{eta(form, L, A), sl2_lattice_act(A, L), weyl_identity(d), SL2ZElement{}};
        if (!(lhs == rhs)) ++relation_fail;
        if (eta(form, L, A) != 0) ++eta_nonzero;
        if (m2_multiply(d, form, m2_from_n(g1), m2_from_n(g2)).sign != 0 ||
            m2_multiply(d, form, m2_from_sl2(d, A), m2_from_sl2(d, B)).sign != 0)
            ++split_fail;
    }
    const bool even = form.is_even();
    const double action_tol = 1e-12;
    Outcome out;
    out.data = {{"samples", o.samples},
                {"seed", o.seed},
                {"even_lattice", even},
                {"n_action_max_error", n_err},
                {"sl2_action_max_error", sl2_err},
                {"m2_line_action_max_error", m2_line_err},
                {"associativity_failures", assoc_fail},
                {"relation_failures", relation_fail},
                {"split_failures", split_fail},
                {"eta_nonzero", eta_nonzero}};
    const bool ok = n_err <= action_tol && sl2_err <= action_tol && assoc_fail == 0 && relation_fail == 0 &&
                    split_fail == 0 && (!even || eta_nonzero == 0);
    out.status = ok ? Status::pass : Status::fail;
    out.summary = "group checks on " + std::to_string(o.samples) + " samples: " + (ok ? "pass" : "FAILED");
    return out;
}

inline Outcome modular_verify_section(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const UpperHalfPoint tau(parse_complex(o.tau));
    require(tau.tau.imag() >= o.im_floor, ErrorKind::domain,
            "Im tau below the floor " + format_double(o.im_floor) + " (see --im-tau-floor)");
    const SigmaCPoint h = parse_sigma(d, o.h);
    const Complex z = parse_complex(o.z);
    const CorootVector beta = parse_coroot(d, o.beta);
    const ThetaSeries t = theta_lambda(d, parse_character(d, o), parse_rational(o.qorder));
    const TransformReport r = verify_section_transform(d, t, tau, h, z, beta, o.tol);
    const SectionValue v = evaluate_section(d, t, tau, h, z, o.tol);
    Outcome out;
    out.data = {{"value", format_complex(v.value)},
                {"periodicity_error", r.periodicity_error},
                {"quasi_periodicity_error", r.quasi_periodicity_error},
                {"homogeneity_error", r.homogeneity_error},
                {"tolerance", o.tol}};
    out.diagnostics = {{"tail_bound", r.max_tail_bound}, {"terms", t.series.size()}, {"qorder", o.qorder}};
    out.status = r.pass ? Status::pass : Status::fail;
    out.summary = std::string("section transformation ") + (r.pass ? "pass" : "FAILED");
    return out;
}

inline Outcome modular_eta_table(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const IntegralForm form = integral_form(d);
    const std::vector<std::pair<std::string, SL2ZElement>> mats = {
        {"S", sl2_S()}, {"T", sl2_T()}, {"ST", sl2_multiply(sl2_S(), sl2_T())}};
    json rows = json::array();
    bool all_zero = true;
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j)
            for (int part = 0; part < 3; ++part) {
                LatticePair L{CorootVector::zero(d.dim()), CorootVector::zero(d.dim())};
                if (part == 0) L.beta1 = CorootVector::unit(d.dim(), i), L.beta2 = CorootVector::unit(d.dim(), j);
                if (part == 1) L.beta1 = CorootVector::unit(d.dim(), i);
                if (part == 2) L.beta2 = CorootVector::unit(d.dim(), j);
                if (part != 0 && ((part == 1 && j != 0) || (part == 2 && i != 0))) continue;
                json row = {{"beta1", coords_json(L.beta1)}, {"beta2", coords_json(L.beta2)},
                            {"mu", mu(form, L.beta1, L.beta2)}};
                for (const auto& [name, A] : mats) {
                    const int e = eta(form, L, A);
                    all_zero = all_zero && e == 0;
                    row["eta_" + name] = e;
                }
                rows.push_back(row);
            }
    Outcome out;
    out.data = {{"even_lattice", form.is_even()}, {"eta_identically_zero_on_table", all_zero}, {"rows", rows}};
    out.summary = std::string("eta table: ") + (all_zero ? "all zero" : "nonzero entries present");
    return out;
}

inline Outcome gkm_build_flag(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const GkmGraph g = build_flag_gkm(d);
    const AxiomReport axioms = gkm_axiom_check(g);
    Outcome out;
    out.data = graph_json(g);
    out.diagnostics = {{"axioms_pass", axioms.pass}, {"violations", axioms.violations}};
    out.status = axioms.pass ? Status::pass : Status::fail;
    out.summary = std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) + " edges";
    return out;
}

inline Outcome gkm_check(const Options& o) {
    GkmGraph g;
    std::optional<RootDatum> d;
    if (!o.graph_path.empty()) {
        g = graph_from_json(read_json_file(o.graph_path));
    } else {
        d = build_root_datum(o.type);
        g = build_flag_gkm(*d);
    }
    CandidateClass c;
    if (!o.class_path.empty()) {
        c = class_from_json(read_json_file(o.class_path), g);
    } else {
        require(d.has_value(), ErrorKind::domain, "--lambda needs a flag graph built from --type");
        c = restrict_line_bundle(*d, g, parse_weight(*d, o.lambda));
    }
    const AxiomReport axioms = gkm_axiom_check(g);
    const MembershipVerdict v = check_membership(g, c);
    Outcome out;
    out.data = {{"member", v.pass}, {"edges", g.edges.size()}};
    if (v.failing_edge) {
        const GkmEdge& e = g.edges[*v.failing_edge];
        out.data["failing_edge"] = {{"index", *v.failing_edge},
                                    {"src", g.vertices[e.src]},
                                    {"dst", g.vertices[e.dst]},
                                    {"factor", *v.failing_factor},
                                    {"weight", coords_json(e.weights[*v.failing_factor])}};
    }
    if (o.series) {
        json certs = json::array();
        for (const auto& q : v.certificates) certs.push_back(series_json(q));
        out.data["certificates"] = certs;
    }
    out.diagnostics = {{"axioms_pass", axioms.pass}, {"violations", axioms.violations}};
    out.status = v.pass ? Status::pass : Status::fail;
    out.summary = v.pass ? "class is in the restriction image"
                         : "divisibility fails on edge " + std::to_string(*v.failing_edge);
    return out;
}

inline Outcome stalk_support(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const SupportDescriptor s = support_descriptor(d, parse_cartan(d, o.h1), parse_cartan(d, o.h2));
    Outcome out;
    out.data = descriptor_json(s);
    out.summary = std::to_string(s.vanishing_roots.size()) + " vanishing affine roots, " +
                  std::to_string(s.walls.size()) + " walls";
    return out;
}

inline Outcome stalk_free_support(const Options& o) {
    const RootDatum d = build_root_datum(o.type);
    const RationalCartanVector h1 = parse_cartan(d, o.h1), h2 = parse_cartan(d, o.h2);
    const bool free = free_space_support(h1, h2);
    Outcome out;
    out.data = {{"h1", coords_json(h1)}, {"h2", coords_json(h2)}, {"supported", free}};
    out.summary = free ? "point lies in the support (both parts in the coroot lattice)" : "point is off the support";
    return out;
}

} // namespace cli_detail

inline CommandReport run(const std::vector<std::string>& args) {
    using namespace cli_detail;
    Options o;
    CLI::App app{"ellkit: affine Weyl, theta, modular, GKM and stalk computations"};
    app.name("ellkit");
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.compact, "Compact single-line JSON");
    app.add_flag("--timings", o.timings, "Report wall-clock time in diagnostics");

    std::string command;
    std::function<Outcome(const Options&)> handler;

    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                    Outcome (*fn)(const Options&)) {
        auto* s = parent->add_subcommand(name, help);
        s->callback([&command, &handler, parent, name, fn] {
            command = parent->get_name() + " " + name;
            handler = fn;
        });
        return s;
    };
    auto type_opt = [&](CLI::App* s) { s->add_option("--type", o.type, "Root system, e.g. A2, C3, G2")->capture_default_str(); };
    auto theta_opts = [&](CLI::App* s) {
        type_opt(s);
        s->add_option("--level", o.level, "Level k")->capture_default_str();
        s->add_option("--lambda", o.lambda, "Finite weight, comma separated (default 0)");
        s->add_option("--energy", o.energy, "Energy offset n")->capture_default_str();
        s->add_option("--qorder", o.qorder, "Truncation N")->capture_default_str();
        s->add_flag("--series", o.series, "Include full series in the output");
    };

    auto* root = group("root", "Root data");
    type_opt(leaf(root, "describe", "Describe a root datum", root_describe));

    auto* alcove = group("alcove", "Alcove geometry");
    auto* fold = leaf(alcove, "fold", "Fold a rational point into the fundamental alcove", alcove_fold);
    type_opt(fold);
    fold->add_option("--h", o.h, "Rational coroot coordinates, e.g. \"7/10\"");

    auto* weights = group("weights", "Weight enumeration");
    auto* en = leaf(weights, "enumerate", "Dominant weights of level <= k", weights_enumerate);
    type_opt(en);
    en->add_option("--level", o.level, "Level k")->capture_default_str();

    auto* theta = group("theta", "Theta series");
    theta_opts(leaf(theta, "expand", "Expand theta_lambda up to q^N", theta_expand));
    theta_opts(leaf(theta, "verify", "Check purity and lattice invariance of theta_lambda", theta_verify));
    auto* cov = leaf(theta, "cover-divisibility", "Divisibility certificates for Bruhat covers", theta_cover_divisibility);
    theta_opts(cov);
    cov->add_option("--length", o.length, "Length bound for covers (<= 12)")->capture_default_str();

    auto* modular = group("modular", "Modular group actions");
    auto* vg = leaf(modular, "verify-group", "Random checks of the N, SL2(Z) and M2(Z) structure", modular_verify_group);
    type_opt(vg);
    vg->add_option("--samples", o.samples, "Number of random samples")->capture_default_str();
    vg->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    auto* vs = leaf(modular, "verify-section",
                    "Check the transformation laws of a theta section numerically (Im tau >= floor keeps the "
                    "default q-order 40 adequate for 1e-8)",
                    modular_verify_section);
    theta_opts(vs);
    vs->add_option("--tau", o.tau, "Point of the upper half plane, \"a+bi\"")->capture_default_str();
    vs->add_option("--h", o.h, "Complex coroot coordinates, comma separated");
    vs->add_option("--z", o.z, "Fibre coordinate")->capture_default_str();
    vs->add_option("--beta", o.beta, "Lattice vector for the transformation laws");
    vs->add_option("--tol", o.tol, "Relative tolerance")->capture_default_str();
    vs->add_option("--im-tau-floor", o.im_floor, "Smallest accepted Im tau")->capture_default_str();
    type_opt(leaf(modular, "eta-table", "mu and eta on basis vectors", modular_eta_table));

    auto* gkm = group("gkm", "GKM graphs");
    type_opt(leaf(gkm, "build-flag", "Moment graph of G/T", gkm_build_flag));
    auto* gc = leaf(gkm, "check", "Membership test for a candidate class", gkm_check);
    type_opt(gc);
    gc->add_option("--graph", o.graph_path, "Graph JSON file (default: flag graph of --type)");
    gc->add_option("--class", o.class_path, "Class JSON file (default: line bundle of --lambda)");
    gc->add_option("--lambda", o.lambda, "Weight of the line bundle");
    gc->add_flag("--series", o.series, "Include quotient certificates");

    auto* stalk = group("stalk", "Stalk support");
    auto* sup = leaf(stalk, "support", "Support descriptor of h = -tau h1 + h2", stalk_support);
    type_opt(sup);
    sup->add_option("--h1", o.h1, "Rational coordinates of h1");
    sup->add_option("--h2", o.h2, "Rational coordinates of h2");
    auto* fs = leaf(stalk, "free-support", "Whether (h1, h2) lies on the support", stalk_free_support);
    type_opt(fs);
    fs->add_option("--h1", o.h1, "Rational coordinates of h1");
    fs->add_option("--h2", o.h2, "Rational coordinates of h2");

    CommandReport report;
    auto emit = [&](const json& doc) { report.out = (o.compact ? doc.dump() : doc.dump(2)) + "\n"; };
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        report.exit_code = 0;
        report.out = app.help();
        return report;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            report.out = app.help("", CLI::AppFormatMode::All);
            return report;
        }
        report.exit_code = 2;
        emit({{"status", "usage-error"}, {"error", {{"kind", "usage"}, {"message", e.what()}}}});
        report.err = std::string("usage error: ") + e.what() + "\n";
        return report;
    }
    if (!handler) {
        report.exit_code = 2;
        emit({{"status", "usage-error"}, {"error", {{"kind", "usage"}, {"message", "no command given"}}}});
        report.err = "usage error: no command given\n";
        return report;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome r = handler(o);
        if (o.timings)
            r.diagnostics["elapsed_ms"] =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit({{"command", command}, {"status", to_string(r.status)}, {"data", r.data}, {"diagnostics", r.diagnostics}});
        report.exit_code = exit_code(r.status);
        report.err = command + ": " + to_string(r.status) + " (" + r.summary + ")\n";
    } catch (const Error& e) {
        const bool truncation = e.kind() == ErrorKind::insufficient_truncation;
        const Status s = truncation ? Status::indeterminate : Status::fail;
        emit({{"command", command},
              {"status", truncation ? "indeterminate" : "error"},
              {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}});
        report.exit_code = exit_code(s);
        report.err = command + ": " + std::string(to_string(e.kind())) + " error: " + e.what() + "\n";
    } catch (const std::exception& e) {
        emit({{"command", command}, {"status", "error"}, {"error", {{"kind", "internal"}, {"message", e.what()}}}});
        report.exit_code = 1;
        report.err = command + ": internal error: " + e.what() + "\n";
    }
    return report;
}

} // namespace ellkit
