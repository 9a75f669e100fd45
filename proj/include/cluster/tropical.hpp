#pragma once

#include <map>
#include <string>
#include <vector>

#include "cluster/lattice.hpp"
#include "cluster/ring.hpp"
#include "cluster/seed.hpp"

namespace cluster {

// z = X^g * sum_n c_n Y^n with n in N^{I_uf}; c_0 = 1.
struct PointedDecomposition {
    Exponent g;
    std::map<Exponent, ScalarPoly> f_poly;  // keyed by n (length |I_uf|)
};

// Monomial X^{col_k B~} in the coordinates of s's own cluster.
TorusElement y_variable(const Seed& s, std::size_t k);

// Pointedness against an extended exchange matrix. Throws NotPointed.
PointedDecomposition extract_pointed(const TorusElement& z, const DegreeLattice& lattice);
// z is read in the coordinates of s's own cluster, so B~ is s.b.
PointedDecomposition extract_pointed(const TorusElement& z, const Seed& s);

// X^g * sum c_n Y^n expanded back into monomials.
TorusElement reassemble(const PointedDecomposition& d, const DegreeLattice& lattice, const FramePtr& frame);

// g1 = g2 + B~n for some nonzero n >= 0.
bool dominance_less(const Exponent& g1, const Exponent& g2, const DegreeLattice& lattice);
bool dominance_less(const Exponent& g1, const Exponent& g2, const Seed& s);

// Degree of carrier.vars[i] relative to seed t (both reached from the same
// initial seed), found by re-expanding along reverse(t.history) + carrier.history.
Exponent relative_degree(const Seed& t, const Seed& carrier, std::size_t i);

Exponent tropical_transform(const Exponent& g, std::size_t k, const IntMatrix& b_full);

// A degree anchored at the seed reached from the initial seed by `anchor`.
struct TropicalPoint {
    std::vector<int> anchor;
    IntMatrix anchor_b;
    Exponent g;
};

TropicalPoint transport(const TropicalPoint& p, const std::vector<int>& sequence, const std::vector<bool>& unfrozen);

// Compares two points after transporting both back to the initial seed.
bool same_tropical_point(const TropicalPoint& p, const TropicalPoint& q, const std::vector<bool>& unfrozen);

// "g=[...]; F = 1 + Y1 + 2*Y1*Y2", Y indices named by unfrozen vertex ids.
std::string render_decomposition(const PointedDecomposition& d, const Frame& frame);

}  // namespace cluster
