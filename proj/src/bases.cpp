#include "cluster/bases.hpp"

#include <algorithm>

#include "cluster/error.hpp"
#include "cluster/tropical.hpp"

namespace cluster {

namespace {

void trim(UniPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long long l1(const std::vector<long long>& n) {
    long long s = 0;
    for (long long x : n) s += x;
    return s;
}

// Support exponent of z with the smallest |n|_1 offset from `base`; fails if
// some exponent is not of the form base + B~n with n >= 0.
std::pair<Exponent, long long> next_degree(const TorusElement& z, const Exponent& base, const DegreeLattice& lattice) {
    std::optional<std::pair<Exponent, long long>> best;
    for (const auto& [m, c] : z.terms()) {
        auto n = lattice.offset(base, m);
        if (!n || std::any_of(n->begin(), n->end(), [](long long x) { return x < 0; }))
            throw NotPointed("exponent " + m.to_string() + " is not dominated by " + base.to_string());
        long long size = l1(*n);
        if (!best || size < best->second) best.emplace(m, size);
    }
    return *best;
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
}

bool strictly_negative_powers(const ScalarPoly& c) { return c.is_zero() || c.max_power() < 0; }

}  // namespace

UniPoly chebyshev(ChebyshevKind kind, int k) {
    if (k < 0) throw Error("Chebyshev index must be nonnegative");
    UniPoly prev{Integer(kind == ChebyshevKind::first ? 2 : 1)};
    UniPoly cur{Integer(0), Integer(1)};
    if (k == 0) return prev;
    for (int i = 1; i < k; ++i) {
        UniPoly next = poly_mul(UniPoly{Integer(0), Integer(1)}, cur);
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        trim(next);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

UniPoly poly_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

UniPoly poly_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

std::string render_poly(const UniPoly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Integer& c = p[i];
        if (c == 0) continue;
        Integer a = abs(c);
        std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
        std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

TorusElement evaluate_poly(const UniPoly& p, const TorusElement& z) {
    TorusElement out(z.frame());
    for (std::size_t i = p.size(); i-- > 0;) {
        out = out * z;
        out += TorusElement::constant(z.frame(), ScalarPoly(p[i]));
    }
    return out;
}

TorusElement loop_element(const Seed& s) {
    if (s.size() != 2 || !s.is_unfrozen(0) || !s.is_unfrozen(1) || !(s.b == IntMatrix{{0, -2}, {2, 0}}))
        throw Error("the loop element needs the Kronecker seed with b = [[0,-2],[2,0]]");
    if (!s.history.empty()) throw Error("the loop element is written in the coordinates of an initial seed");
    TorusElement out(s.frame);
    out.add_term(Exponent{1, -1}, 1);
    out.add_term(Exponent{-1, -1}, 1);
    out.add_term(Exponent{-1, 1}, 1);
    return out;
}

TorusElement annulus_element(AnnulusKind kind, int k, const Seed& s) {
    if (k <= 0) throw Error("annulus element index must be positive");
    TorusElement l = loop_element(s);
    switch (kind) {
        case AnnulusKind::bangle: return power(l, static_cast<unsigned>(k));
        case AnnulusKind::bracelet: return evaluate_poly(chebyshev(ChebyshevKind::first, k), l);
        case AnnulusKind::band: return evaluate_poly(chebyshev(ChebyshevKind::second, k), l);
    }
    throw Error("unknown annulus element kind");
}

TorusElement distinguished_function(const InjectiveData& data, const Exponent& g) {
    const Seed& t = data.anchor;
    const Seed& shifted = data.shifted;
    const std::size_t n = t.size();
    if (g.size() != n) throw Error("degree has wrong length");
    std::vector<int> plus(n, 0), minus(n, 0);
    Exponent reached(n);
    for (auto k : t.unfrozen_indices()) {
        plus[k] = std::max(g[k], 0);
        std::size_t j = data.witness.sigma.at(k);
        minus[j] = std::max(-g[k], 0);
        reached += plus[k] * Exponent::unit(n, k);
        reached += minus[j] * shifted.degrees[j];
    }
    Exponent frozen_part = g - reached;
    for (auto k : t.unfrozen_indices())
        if (frozen_part[k] != 0) throw Error("internal: degree adjustment for " + g.to_string() + " is not frozen");
    TorusElement product = TorusElement::monomial(t.frame, frozen_part) * cluster_monomial(t, plus) *
                           cluster_monomial(shifted, minus);
    return pointed_normalize(product, g);
}

TorusElement distinguished_function(const Seed& s, const InjectiveWitness& witness, const Exponent& g) {
    return distinguished_function(injective_data(s, witness), g);
}

DistinguishedExpansion expand_in_distinguished(const TorusElement& z, const InjectiveData& data, int truncation) {
    const DegreeLattice& lattice = *data.anchor.lattice;
    DistinguishedExpansion out;
    out.base_g = extract_pointed(z, lattice).g;
    out.truncation = truncation;
    TorusElement rem = z;
    while (!rem.is_zero()) {
        auto [m, size] = next_degree(rem, out.base_g, lattice);
        if (size > truncation) break;
        ScalarPoly c = rem.coefficient(m);
        out.terms.emplace(m, c);
        rem -= c * distinguished_function(data, m);
    }
    out.remainder = rem;
    return out;
}

TorusElement reassemble(const DistinguishedExpansion& e, const InjectiveData& data) {
    TorusElement out = e.remainder;
    for (const auto& [g, c] : e.terms) out += c * distinguished_function(data, g);
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict TriangularReport::overall_pointed() const {
    Verdict v = Verdict::pass;
    for (const auto& m : members) v = combine(v, m.pointed);
    return v;
}

Verdict TriangularReport::overall_bar_invariant() const {
    Verdict v = Verdict::pass;
    for (const auto& m : members) v = combine(v, m.bar_invariant);
    return v;
}

Verdict TriangularReport::overall_products() const {
    Verdict v = Verdict::pass;
    for (const auto& m : members) {
        if (m.products.empty()) v = combine(v, Verdict::inconclusive);
        for (auto p : m.products) v = combine(v, p);
    }
    return v;
}

TriangularReport verify_triangular(const std::vector<TorusElement>& family, const InjectiveData& data, int truncation) {
    const Seed& t = data.anchor;
    const DegreeLattice& lattice = *t.lattice;
    const std::size_t n = t.size();
    TriangularReport report;
    report.truncation = truncation;

    std::map<Exponent, const TorusElement*> by_degree;
    for (const auto& z : family) {
        MemberReport r;
        try {
            r.g = extract_pointed(z, lattice).g;
            r.pointed = Verdict::pass;
            if (!by_degree.emplace(*r.g, &z).second) r.notes.push_back("degree " + r.g->to_string() + " repeated in family");
        } catch (const NotPointed& e) {
            r.notes.push_back(e.what());
        }
        r.bar_invariant = bar(z) == z ? Verdict::pass : Verdict::fail;
        report.members.push_back(std::move(r));
    }

    for (std::size_t idx = 0; idx < family.size(); ++idx) {
        MemberReport& r = report.members[idx];
        if (r.pointed != Verdict::pass) continue;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent base = *r.g + Exponent::unit(n, i);
            Verdict v = Verdict::pass;
            try {
                TorusElement rem = pointed_normalize(t.vars[i] * family[idx], base);
                while (!rem.is_zero()) {
                    auto [m, size] = next_degree(rem, base, lattice);
                    if (size > truncation) break;
                    auto it = by_degree.find(m);
                    if (it == by_degree.end()) {
                        v = Verdict::inconclusive;
                        r.notes.push_back("X_" + t.frame->vertices[i] + " * L" + r.g->to_string() + " needs degree " +
                                          m.to_string() + " absent from the family");
                        break;
                    }
                    ScalarPoly c = rem.coefficient(m);
                    if (m != base && !strictly_negative_powers(c)) {
                        v = Verdict::fail;
                        r.notes.push_back("X_" + t.frame->vertices[i] + " * L" + r.g->to_string() + " has coefficient " +
                                          c.to_string() + " at " + m.to_string());
                        break;
                    }
                    rem -= c * *it->second;
                }
            } catch (const NotPointed& e) {
                v = Verdict::fail;
                r.notes.push_back(e.what());
            }
            r.products.push_back(v);
        }
    }

    auto in_family = [&](const TorusElement& x) { return std::find(family.begin(), family.end(), x) != family.end(); };
    report.contains_seed_variables = true;
    for (const auto& x : t.vars) report.contains_seed_variables = report.contains_seed_variables && in_family(x);
    report.contains_injective_variables = true;
    for (auto k : t.unfrozen_indices())
        report.contains_injective_variables =
            report.contains_injective_variables && in_family(data.shifted.vars[data.witness.sigma.at(k)]);
    return report;
}

}  // namespace cluster
