#include "cluster/cli.hpp"

#include <algorithm>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cluster/bases.hpp"
#include "cluster/ccmap.hpp"
#include "cluster/error.hpp"
#include "cluster/explore.hpp"
#include "cluster/io.hpp"
#include "cluster/seed.hpp"
#include "cluster/tropical.hpp"

namespace cluster::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct SeedOptions {
    std::string path;
    bool quantum = false;
    bool classical = false;
};

void add_seed_options(CLI::App* app, SeedOptions& o, bool required = true) {
    auto* opt = app->add_option("--seed", o.path, "seed file (JSON)");
    if (required) opt->required();
    auto* q = app->add_flag("--quantum", o.quantum, "quantum frame (uses the file's lambda)");
    auto* c = app->add_flag("--classical", o.classical, "classical frame (default)");
    q->excludes(c);
}

Seed load_seed(const SeedOptions& o) { return io::seed_from_file(io::parse_seed_file(io::read_file(o.path)), o.quantum); }

std::vector<std::string> split_ids(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::string cur;
        for (char c : item) {
            if (c == ',') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else if (c != ' ' && c != '[' && c != ']') {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::vector<int> resolve_sequence(const Frame& frame, const std::vector<std::string>& ids) {
    std::vector<int> seq;
    for (const auto& id : split_ids(ids)) {
        std::size_t k = vertex_index(frame, id);
        if (!frame.unfrozen[k]) throw Error("vertex " + id + " is frozen");
        seq.push_back(static_cast<int>(k));
    }
    return seq;
}

std::vector<std::string> names_of(const Frame& frame, const std::vector<int>& seq) {
    std::vector<std::string> out;
    for (int k : seq) out.push_back(frame.vertices[static_cast<std::size_t>(k)]);
    return out;
}

ojson matrix_json(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

// ---------------- verbs ----------------

int do_mutate(const SeedOptions& so, const std::vector<std::string>& ks, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    auto seq = resolve_sequence(*s.frame, ks);
    Seed t = mutate_sequence(s, seq);
    std::vector<int> touched;
    for (int k : seq)
        if (std::find(touched.begin(), touched.end(), k) == touched.end()) touched.push_back(k);
    if (as_json) {
        ojson j;
        j["sequence"] = names_of(*s.frame, seq);
        ojson vars = ojson::object();
        for (int k : touched) vars[s.frame->vertices[static_cast<std::size_t>(k)]] = render(t.vars[static_cast<std::size_t>(k)]);
        j["variables"] = vars;
        j["b"] = matrix_json(t.b);
        if (t.lambda_local) j["lambda"] = matrix_json(*t.lambda_local);
        out << j.dump(2) << '\n';
        return 0;
    }
    out << "sequence: " << join(names_of(*s.frame, seq), ",") << '\n';
    for (int k : touched)
        out << "X" << s.frame->vertices[static_cast<std::size_t>(k)] << "' = " << render(t.vars[static_cast<std::size_t>(k)]) << '\n';
    out << "b = " << render_matrix(t.b) << '\n';
    if (t.lambda_local) out << "lambda = " << render_matrix(*t.lambda_local) << '\n';
    return 0;
}

std::vector<std::size_t> selected_vertices(const Seed& s, const std::string& k) {
    if (!k.empty()) return {vertex_index(*s.frame, k)};
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

int do_expand(const SeedOptions& so, const std::vector<std::string>& seq_ids, const std::string& k, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    Seed t = mutate_sequence(s, resolve_sequence(*s.frame, seq_ids));
    auto which = selected_vertices(s, k);
    if (as_json) {
        ojson j;
        j["sequence"] = names_of(*s.frame, t.history);
        ojson vars = ojson::object();
        for (auto i : which) vars[s.frame->vertices[i]] = render(t.vars[i]);
        j["variables"] = vars;
        out << j.dump(2) << '\n';
        return 0;
    }
    if (!k.empty()) {
        out << render(t.vars[which[0]]) << '\n';
        return 0;
    }
    for (auto i : which) out << "X" << s.frame->vertices[i] << " = " << render(t.vars[i]) << '\n';
    return 0;
}

int do_gvec(const SeedOptions& so, const std::vector<std::string>& seq_ids, const std::string& k, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    Seed t = mutate_sequence(s, resolve_sequence(*s.frame, seq_ids));
    ojson list = ojson::array();
    for (auto i : selected_vertices(s, k)) {
        auto d = extract_pointed(t.vars[i], *s.lattice);
        std::string text = render_decomposition(d, *s.frame);
        if (as_json) {
            ojson f = ojson::array();
            for (const auto& [n, c] : d.f_poly) f.push_back({{"n", n.values()}, {"coefficient", c.to_string()}});
            list.push_back({{"vertex", s.frame->vertices[i]}, {"g", d.g.values()}, {"F", f}});
        } else {
            out << "X" << s.frame->vertices[i] << ": " << text << '\n';
        }
    }
    if (as_json) out << list.dump(2) << '\n';
    return 0;
}

int do_trop(const SeedOptions& so, const std::vector<std::string>& seq_ids, const std::string& k, const std::string& g_text,
            bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    Seed t = mutate_sequence(s, resolve_sequence(*s.frame, seq_ids));
    std::size_t kk = vertex_index(*s.frame, k);
    if (!s.is_unfrozen(kk)) throw Error("vertex " + k + " is frozen");
    Exponent g(io::parse_int_list(g_text));
    if (g.size() != s.size()) throw ParseError("degree must have " + std::to_string(s.size()) + " entries");
    Exponent image = tropical_transform(g, kk, t.b);
    if (as_json)
        out << ojson({{"g", g.values()}, {"k", k}, {"image", image.values()}}).dump(2) << '\n';
    else
        out << image.to_string() << '\n';
    return 0;
}

int do_explore(const SeedOptions& so, int depth, bool unlabeled, std::size_t budget, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    auto catalog = explore(s, depth, unlabeled ? DedupMode::unlabeled : DedupMode::labeled, budget);
    if (as_json) {
        out << io::write_catalog(catalog);
        return 0;
    }
    std::map<int, int> by_depth;
    for (const auto& e : catalog.seeds) ++by_depth[e.depth];
    out << "seeds: " << catalog.seeds.size() << '\n' << "variables: " << catalog.variables.size() << '\n';
    for (const auto& [d, n] : by_depth) out << "depth " << d << ": " << n << '\n';
    return 0;
}

int do_find_t1(const SeedOptions& so, int depth, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    auto w = find_injective_copy(s, depth);
    const auto& names = s.frame->vertices;
    if (as_json) {
        ojson sigma = ojson::object();
        for (std::size_t k = 0; k < w.sigma.size(); ++k) sigma[names[k]] = names[w.sigma[k]];
        out << ojson({{"sequence", names_of(*s.frame, w.sequence)}, {"sigma", sigma}, {"identity", w.sigma_is_identity()}}).dump(2)
            << '\n';
        return 0;
    }
    out << "sequence: [" << join(names_of(*s.frame, w.sequence), ",") << "]\n";
    if (w.sigma_is_identity()) {
        out << "sigma: id\n";
    } else {
        std::vector<std::string> parts;
        for (std::size_t k = 0; k < w.sigma.size(); ++k)
            if (w.sigma[k] != k) parts.push_back(names[k] + "->" + names[w.sigma[k]]);
        out << "sigma: " << join(parts, ", ") << '\n';
    }
    return 0;
}

AnnulusKind parse_kind(const std::string& kind) {
    if (kind == "bangle") return AnnulusKind::bangle;
    if (kind == "bracelet") return AnnulusKind::bracelet;
    if (kind == "band") return AnnulusKind::band;
    throw ParseError("unknown kind '" + kind + "' (expected bangle, bracelet or band)");
}

int do_annulus(const SeedOptions& so, const std::string& kind, int k, bool distinguished, int trunc, int depth, bool as_json,
               std::ostream& out) {
    Seed s = load_seed(so);
    TorusElement z = annulus_element(parse_kind(kind), k, s);
    if (!distinguished) {
        if (as_json)
            out << ojson({{"kind", kind}, {"k", k}, {"element", render(z)}}).dump(2) << '\n';
        else
            out << render(z) << '\n';
        return 0;
    }
    auto data = injective_data(s, find_injective_copy(s, depth));
    auto e = expand_in_distinguished(z, data, trunc);
    if (!(reassemble(e, data) == z)) throw Error("internal: distinguished expansion does not reassemble");
    if (as_json) {
        ojson terms = ojson::array();
        for (const auto& [g, c] : e.terms) terms.push_back({{"g", g.values()}, {"coefficient", c.to_string()}});
        out << ojson({{"kind", kind}, {"k", k}, {"truncation", trunc}, {"terms", terms}, {"remainder", render(e.remainder)}}).dump(2)
            << '\n';
        return 0;
    }
    for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it)
        out << "(" << it->second.to_string() << ")*I" << it->first.to_string() << '\n';
    if (!e.remainder.is_zero()) out << "remainder: " << render(e.remainder) << '\n';
    return 0;
}

int do_verify(const SeedOptions& so, const std::string& family_path, int trunc, int depth, std::ostream& out) {
    Seed s = load_seed(so);
    auto data = injective_data(s, find_injective_copy(s, depth));
    auto family = io::parse_family(io::read_file(family_path), data.anchor.frame);
    auto report = verify_triangular(family, data, trunc);
    ojson members = ojson::array();
    for (std::size_t i = 0; i < report.members.size(); ++i) {
        const auto& m = report.members[i];
        ojson products = ojson::array();
        for (auto v : m.products) products.push_back(to_string(v));
        ojson entry;
        entry["element"] = render(family[i]);
        entry["g"] = m.g ? ojson(m.g->values()) : ojson(nullptr);
        entry["pointed"] = to_string(m.pointed);
        entry["bar_invariant"] = to_string(m.bar_invariant);
        entry["products"] = products;
        entry["notes"] = m.notes;
        members.push_back(entry);
    }
    ojson j;
    j["truncation"] = report.truncation;
    j["pointed"] = to_string(report.overall_pointed());
    j["bar_invariant"] = to_string(report.overall_bar_invariant());
    j["products"] = to_string(report.overall_products());
    j["contains_seed_variables"] = report.contains_seed_variables;
    j["contains_injective_variables"] = report.contains_injective_variables;
    j["members"] = members;
    out << j.dump(2) << '\n';
    bool failed = report.overall_pointed() == Verdict::fail || report.overall_bar_invariant() == Verdict::fail ||
                  report.overall_products() == Verdict::fail;
    return failed ? 1 : 0;
}

ojson euler_json(const EulerData& e) {
    ojson j = ojson::array();
    for (const auto& [n, c] : e.chi) j.push_back({{"n", n}, {"chi", c.get_str()}});
    return j;
}

int do_ccmap(const SeedOptions& so, const std::string& rep_path, bool generic, const std::string& g_text, int samples,
             std::optional<std::uint64_t> rng_seed, int bound, bool as_json, std::ostream& out) {
    Seed s = load_seed(so);
    if (!generic) {
        if (rep_path.empty()) throw ParseError("ccmap needs --rep or --generic");
        QuiverRep rep = io::parse_rep(io::read_file(rep_path));
        check_quiver_matches(rep.quiver, s);
        Exponent g = injective_g_vector(rep);
        EulerData e = euler_characteristics(rep);
        TorusElement value = cc_with_degree(g, e, s);
        if (as_json)
            out << ojson({{"g", g.values()}, {"euler", euler_json(e)}, {"value", render(value)}}).dump(2) << '\n';
        else
            out << render(value) << '\n';
        return 0;
    }
    if (!rng_seed) throw ParseError("--generic requires --rng-seed");
    if (g_text.empty()) throw ParseError("--generic requires --g");
    Exponent g(io::parse_int_list(g_text));
    auto result = generic_character(g, quiver_of_seed(s), s, samples, *rng_seed, bound);
    if (as_json) {
        ojson values = ojson::array();
        for (const auto& v : result.sample_values) values.push_back(render(v));
        out << ojson({{"g", g.values()},
                      {"samples", samples},
                      {"rng_seed", *rng_seed},
                      {"stable", result.stable},
                      {"chosen", result.chosen},
                      {"value", render(result.value)},
                      {"sample_values", values}})
                   .dump(2)
            << '\n';
        return 0;
    }
    out << render(result.value) << '\n';
    out << "samples: " << samples << ", rng-seed: " << *rng_seed << ", stable: " << (result.stable ? "yes" : "no") << '\n';
    return 0;
}

struct CheckFlags {
    bool laurent = false, positivity = false, tropical = false, compat = false, roundtrip = false;
};

int do_check(const SeedOptions& so, const std::string& tri_path, int depth, CheckFlags f, bool as_json, std::ostream& out) {
    if (!f.laurent && !f.positivity && !f.tropical && !f.compat && !f.roundtrip)
        f = CheckFlags{true, true, true, true, true};
    if (so.path.empty() == tri_path.empty()) throw ParseError("check needs exactly one of --seed and --triangulation");
    if (!tri_path.empty() && so.quantum) throw ParseError("triangulations give classical seeds");
    const bool from_triangulation = !tri_path.empty();
    std::string text = io::read_file(from_triangulation ? tri_path : so.path);
    ojson results = ojson::object();
    bool failed = false;
    auto record = [&](const std::string& name, std::size_t passed, std::size_t total, const std::string& unit) {
        results[name] = {{"passed", passed}, {"total", total}};
        if (passed != total) failed = true;
        if (!as_json) out << name << ": " << passed << "/" << total << " " << unit << (passed == total ? " ok" : " FAILED") << '\n';
    };

    if (f.roundtrip) {
        bool same = from_triangulation ? io::write_triangulation(io::parse_triangulation(text)) == text
                                       : io::write_seed_file(io::parse_seed_file(text)) == text;
        record("roundtrip", same ? 1 : 0, 1, "files");
    }
    Seed s = from_triangulation ? seed_from_triangulation(io::parse_triangulation(text)) : load_seed(so);
    SeedCatalog catalog;
    try {
        catalog = explore(s, depth, DedupMode::labeled);
    } catch (const LaurentViolation& e) {
        if (f.laurent) record("laurent", 0, 1, std::string("variables (") + e.what() + ")");
        return 1;
    }

    std::vector<std::optional<PointedDecomposition>> decomp;
    for (const auto& v : catalog.variables) {
        try {
            decomp.push_back(extract_pointed(v, *s.lattice));
        } catch (const NotPointed&) {
            decomp.push_back(std::nullopt);
        }
    }
    if (f.laurent) {
        std::size_t ok = 0;
        for (const auto& d : decomp) {
            if (!d) continue;
            auto it = d->f_poly.find(Exponent(s.unfrozen_indices().size()));
            if (it != d->f_poly.end() && it->second.is_one()) ++ok;
        }
        record("laurent", ok, catalog.variables.size(), "variables with F(0) = 1");
    }
    if (f.positivity) {
        std::size_t ok = 0;
        for (const auto& v : catalog.variables) {
            bool positive = true;
            for (const auto& [m, c] : v.terms())
                for (const auto& [p, a] : c.terms()) positive = positive && a > 0;
            ok += positive;
        }
        record("positivity", ok, catalog.variables.size(), "variables with nonnegative coefficients");
    }
    if (f.tropical) {
        // Degrees of every catalog variable seen from t and from mu_k(t) differ by the tropical transformation.
        std::size_t ok = 0, total = 0;
        std::vector<std::pair<const Seed*, std::size_t>> carriers;
        std::set<std::string> seen;
        for (const auto& e : catalog.seeds)
            for (std::size_t i = 0; i < e.seed.size(); ++i)
                if (seen.insert(render(e.seed.vars[i])).second) carriers.emplace_back(&e.seed, i);
        for (const auto& e : catalog.seeds) {
            if (e.depth >= depth) continue;
            for (auto k : s.unfrozen_indices()) {
                Seed mk = mutate_seed(e.seed, k);
                for (const auto& [carrier, i] : carriers) {
                    ++total;
                    if (tropical_transform(relative_degree(e.seed, *carrier, i), k, e.seed.b) == relative_degree(mk, *carrier, i)) ++ok;
                }
            }
        }
        record("tropical", ok, total, "degree transformations");
    }
    if (f.compat) {
        if (!s.quantum()) {
            if (!as_json) out << "compat: skipped (classical frame)\n";
            results["compat"] = "skipped";
        } else {
            std::size_t ok = 0;
            for (const auto& e : catalog.seeds) {
                try {
                    check_compatibility(*e.seed.lambda_local, e.seed.b, e.seed.frame->unfrozen);
                    ++ok;
                } catch (const Error&) {
                }
            }
            record("compat", ok, catalog.seeds.size(), "seeds");
        }
    }
    if (as_json) {
        results["seeds"] = catalog.seeds.size();
        results["variables"] = catalog.variables.size();
        out << results.dump(2) << '\n';
    } else {
        out << "seeds: " << catalog.seeds.size() << ", variables: " << catalog.variables.size() << '\n';
    }
    return failed ? 1 : 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum cluster algebra toolkit", "cluster"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    SeedOptions so;
    std::vector<std::string> ks, sequence;
    std::string vertex, g_text, rep_path, family_path, kind;
    int depth = 4, k_index = 1, trunc = default_truncation, samples = 4, bound = default_entry_bound;
    std::size_t budget = default_seed_budget;
    bool unlabeled = false, generic = false, distinguished = false;
    std::optional<std::uint64_t> rng_seed;
    CheckFlags flags;

    auto* mutate = app.add_subcommand("mutate", "mutate a seed along vertices");
    add_seed_options(mutate, so);
    mutate->add_option("-k", ks, "vertex id (repeat or comma-separate for a sequence)")->required();
    mutate->add_flag("--json", as_json);

    auto* expand = app.add_subcommand("expand", "Laurent expansions of cluster variables");
    add_seed_options(expand, so);
    expand->add_option("--sequence", sequence, "mutation sequence of vertex ids");
    expand->add_option("-k", vertex, "only this vertex");
    expand->add_flag("--json", as_json);

    auto* gvec = app.add_subcommand("gvec", "degrees and F-polynomials of cluster variables");
    add_seed_options(gvec, so);
    gvec->add_option("--sequence", sequence, "mutation sequence of vertex ids");
    gvec->add_option("-k", vertex, "only this vertex");
    gvec->add_flag("--json", as_json);

    auto* trop = app.add_subcommand("trop", "tropical transformation of a degree");
    add_seed_options(trop, so);
    trop->add_option("--sequence", sequence, "seed at which the degree lives");
    trop->add_option("-k", vertex, "mutation direction")->required();
    trop->add_option("--g", g_text, "degree, e.g. [-1,0,1]")->required();
    trop->add_flag("--json", as_json);

    auto* expl = app.add_subcommand("explore", "breadth-first catalog of seeds");
    add_seed_options(expl, so);
    expl->add_option("--depth", depth, "maximum mutation depth")->required();
    expl->add_flag("--unlabeled", unlabeled, "identify seeds up to permutation");
    expl->add_option("--budget", budget, "maximum number of seeds");
    expl->add_flag("--json", as_json);

    auto* t1 = app.add_subcommand("find-t1", "search for the injective-reachable seed t[1]");
    add_seed_options(t1, so);
    t1->add_option("--depth", depth, "search depth");
    t1->add_flag("--json", as_json);

    auto* bases = app.add_subcommand("bases", "annulus elements and triangular-basis verification");
    bases->require_subcommand(1);
    auto* annulus = bases->add_subcommand("annulus", "bangle, bracelet or band element on the Kronecker seed");
    add_seed_options(annulus, so);
    annulus->add_option("--kind", kind, "bangle, bracelet or band")->required();
    annulus->add_option("-k", k_index, "index");
    annulus->add_flag("--distinguished", distinguished, "expand in distinguished functions");
    annulus->add_option("--trunc", trunc, "truncation for the expansion");
    annulus->add_option("--depth", depth, "search depth for t[1]");
    annulus->add_flag("--json", as_json);
    auto* verify = bases->add_subcommand("verify-triangular", "check a candidate family against the triangular-basis conditions");
    add_seed_options(verify, so);
    verify->add_option("--family", family_path, "family file (JSON)")->required();
    verify->add_option("--trunc", trunc, "degree window");
    verify->add_option("--depth", depth, "search depth for t[1]");

    auto* ccmap = app.add_subcommand("ccmap", "cluster character of a representation");
    add_seed_options(ccmap, so);
    ccmap->add_option("--rep", rep_path, "representation file (JSON)");
    ccmap->add_flag("--generic", generic, "generic character of a degree");
    ccmap->add_option("--g", g_text, "principal degree for --generic");
    ccmap->add_option("--samples", samples, "number of random homomorphisms");
    ccmap->add_option("--rng-seed", rng_seed, "random seed (required with --generic)");
    ccmap->add_option("--bound", bound, "entries are drawn from [-bound, bound]");
    ccmap->add_flag("--json", as_json);

    auto* check = app.add_subcommand("check", "property suites over an explored catalog");
    add_seed_options(check, so, false);
    std::string tri_path;
    check->add_option("--triangulation", tri_path, "triangulation file instead of a seed");
    check->add_option("--depth", depth, "exploration depth");
    check->add_flag("--laurent", flags.laurent, "F-polynomials have constant term 1");
    check->add_flag("--positivity", flags.positivity, "coefficients are nonnegative");
    check->add_flag("--tropical", flags.tropical, "degrees transform tropically");
    check->add_flag("--compat", flags.compat, "quantum compatibility is preserved");
    check->add_flag("--roundtrip", flags.roundtrip, "the seed file is canonical");
    check->add_flag("--json", as_json);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*mutate) return do_mutate(so, ks, as_json, out);
        if (*expand) return do_expand(so, sequence, vertex, as_json, out);
        if (*gvec) return do_gvec(so, sequence, vertex, as_json, out);
        if (*trop) return do_trop(so, sequence, vertex, g_text, as_json, out);
        if (*expl) return do_explore(so, depth, unlabeled, budget, as_json, out);
        if (*t1) return do_find_t1(so, depth, as_json, out);
        if (*annulus) return do_annulus(so, kind, k_index, distinguished, trunc, depth, as_json, out);
        if (*verify) return do_verify(so, family_path, trunc, depth, out);
        if (*ccmap) return do_ccmap(so, rep_path, generic, g_text, samples, rng_seed, bound, as_json, out);
        if (*check) return do_check(so, tri_path, depth, flags, as_json, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace cluster::cli
