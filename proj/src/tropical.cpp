#include "cluster/tropical.hpp"

#include <algorithm>

#include "cluster/error.hpp"

namespace cluster {

namespace {

void check_unfrozen(const std::vector<bool>& unfrozen, std::size_t k) {
    if (k >= unfrozen.size()) throw Error("vertex out of range");
    if (!unfrozen[k]) throw Error("vertex " + std::to_string(k) + " is frozen");
}

std::string coefficient_prefix(const ScalarPoly& c) {
    if (c.is_one()) return "";
    if (c == ScalarPoly(-1)) return "-";
    if (c.single_term_power()) return c.to_string() + "*";
    return "(" + c.to_string() + ")*";
}

}  // namespace

TorusElement y_variable(const Seed& s, std::size_t k) {
    check_unfrozen(s.frame->unfrozen, k);
    Exponent col(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) col[i] = static_cast<int>(s.b(i, k));
    return TorusElement::monomial(s.frame, col);
}

PointedDecomposition extract_pointed(const TorusElement& z, const DegreeLattice& lattice) {
    if (z.is_zero()) throw NotPointed("zero element is not pointed");
    const auto& terms = z.terms();

    // The candidate g has componentwise minimal B~-coordinates.
    const Exponent* g = nullptr;
    if (lattice.rank() == 0) {
        if (terms.size() != 1) throw NotPointed("several terms but no unfrozen directions");
        g = &terms.begin()->first;
    } else {
        std::vector<std::vector<Rational>> coords;
        coords.reserve(terms.size());
        for (const auto& [m, c] : terms) coords.push_back(lattice.coordinates(m));
        std::vector<Rational> low = coords.front();
        for (const auto& u : coords)
            for (std::size_t k = 0; k < low.size(); ++k) low[k] = std::min(low[k], u[k]);
        std::size_t idx = 0;
        for (const auto& [m, c] : terms) {
            if (coords[idx] == low) {
                g = &m;
                break;
            }
            ++idx;
        }
        if (!g) throw NotPointed("no support exponent is dominance-maximal");
    }

    PointedDecomposition out;
    out.g = *g;
    const ScalarPoly& lead = z.coefficient(*g);
    if (!lead.is_one()) throw NotPointed("coefficient at " + g->to_string() + " is " + lead.to_string() + ", not 1");
    for (const auto& [m, c] : terms) {
        auto n = lattice.offset(*g, m);
        if (!n) throw NotPointed("exponent " + m.to_string() + " is not in " + g->to_string() + " + B~Z^I_uf");
        std::vector<int> key(n->size());
        for (std::size_t k = 0; k < n->size(); ++k) {
            if ((*n)[k] < 0) throw NotPointed("exponent " + m.to_string() + " is not dominated by " + g->to_string());
            key[k] = static_cast<int>((*n)[k]);
        }
        out.f_poly.emplace(Exponent(std::move(key)), c);
    }
    return out;
}

PointedDecomposition extract_pointed(const TorusElement& z, const Seed& s) {
    return extract_pointed(z, DegreeLattice(s.b, s.frame->unfrozen));
}

TorusElement reassemble(const PointedDecomposition& d, const DegreeLattice& lattice, const FramePtr& frame) {
    TorusElement out(frame);
    for (const auto& [n, c] : d.f_poly) {
        std::vector<long long> nn(n.values().begin(), n.values().end());
        out.add_term(lattice.shift(d.g, nn), c);
    }
    return out;
}

bool dominance_less(const Exponent& g1, const Exponent& g2, const DegreeLattice& lattice) {
    auto n = lattice.offset(g2, g1);
    if (!n) return false;
    bool nonzero = false;
    for (long long x : *n) {
        if (x < 0) return false;
        if (x > 0) nonzero = true;
    }
    return nonzero;
}

bool dominance_less(const Exponent& g1, const Exponent& g2, const Seed& s) {
    return dominance_less(g1, g2, DegreeLattice(s.b, s.frame->unfrozen));
}

Exponent relative_degree(const Seed& t, const Seed& carrier, std::size_t i) {
    std::vector<int> path(t.history.rbegin(), t.history.rend());
    path.insert(path.end(), carrier.history.begin(), carrier.history.end());
    // Cancel back-and-forth steps; mutation is an involution.
    std::vector<int> reduced;
    for (int k : path) {
        if (!reduced.empty() && reduced.back() == k)
            reduced.pop_back();
        else
            reduced.push_back(k);
    }
    return mutate_sequence(reanchor(t), reduced).degrees.at(i);
}

Exponent tropical_transform(const Exponent& g, std::size_t k, const IntMatrix& b_full) {
    Exponent out = g;
    const int gk = g[k];
    out[k] = -gk;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == k) continue;
        long long bik = b_full(i, k);
        long long coef = gk >= 0 ? std::max(bik, 0LL) : std::max(-bik, 0LL);
        out[i] += static_cast<int>(coef * gk);
    }
    return out;
}

TropicalPoint transport(const TropicalPoint& p, const std::vector<int>& sequence, const std::vector<bool>& unfrozen) {
    TropicalPoint out = p;
    for (int k : sequence) {
        if (k < 0) throw Error("vertex out of range");
        check_unfrozen(unfrozen, static_cast<std::size_t>(k));
        out.g = tropical_transform(out.g, static_cast<std::size_t>(k), out.anchor_b);
        out.anchor_b = mutate_b(out.anchor_b, static_cast<std::size_t>(k), unfrozen);
        if (!out.anchor.empty() && out.anchor.back() == k)
            out.anchor.pop_back();
        else
            out.anchor.push_back(k);
    }
    return out;
}

bool same_tropical_point(const TropicalPoint& p, const TropicalPoint& q, const std::vector<bool>& unfrozen) {
    std::vector<int> back_p(p.anchor.rbegin(), p.anchor.rend());
    std::vector<int> back_q(q.anchor.rbegin(), q.anchor.rend());
    TropicalPoint a = transport(p, back_p, unfrozen);
    TropicalPoint b = transport(q, back_q, unfrozen);
    if (!(a.anchor_b == b.anchor_b)) throw Error("tropical points are anchored in different exchange graphs");
    return a.g == b.g;
}

std::string render_decomposition(const PointedDecomposition& d, const Frame& frame) {
    auto uf = frame.unfrozen_indices();
    std::string out = "g=" + d.g.to_string() + "; F = ";
    bool first = true;
    for (const auto& [n, c] : d.f_poly) {
        std::string mono;
        for (std::size_t k = 0; k < n.size(); ++k) {
            if (n[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "Y" + frame.vertices[uf[k]];
            if (n[k] != 1) mono += "^" + std::to_string(n[k]);
        }
        std::string term;
        if (mono.empty())
            term = c.single_term_power() && c.min_power() == 0 ? c.to_string() : "(" + c.to_string() + ")";
        else
            term = coefficient_prefix(c) + mono;
        if (first)
            out += term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
        first = false;
    }
    return out;
}

}  // namespace cluster
