#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cluster/matrix.hpp"
#include "cluster/ring.hpp"
#include "cluster/seed.hpp"

namespace cluster {

// Acyclic quiver of a representation; vertex i corresponds to the i-th
// unfrozen vertex of the companion seed.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> arrows;  // (source, target)

    std::size_t size() const { return vertices.size(); }
};

// Sources before targets; throws Error on an oriented cycle.
std::vector<std::size_t> topological_order(const Quiver& q);

// Arrow counts must satisfy #(i->j) - #(j->i) = -b_ij on the unfrozen vertices of s.
void check_quiver_matches(const Quiver& q, const Seed& s);

// The representation quiver of a seed: -b_ij arrows i -> j when b_ij < 0.
Quiver quiver_of_seed(const Seed& s);

// maps[a] is dims[target] x dims[source], acting on column vectors.
struct QuiverRep {
    Quiver quiver;
    std::vector<int> dims;
    std::vector<QMatrix> maps;
};

// Shapes and acyclicity; throws ParseError / Error.
void validate(const QuiverRep& rep);

QuiverRep zero_rep(const Quiver& q);
QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);
// Indecomposable injective I_k: basis of (I_k)_j are the paths j -> k.
QuiverRep injective_rep(const Quiver& q, std::size_t k);

constexpr std::uint64_t default_subspace_budget = 10000000;

// Number of subrepresentations of dimension n over F_p (p prime, the maps
// reduced mod p). Throws Error if a denominator vanishes mod p.
Integer submodule_count(const QuiverRep& rep, const std::vector<int>& n, std::int64_t p,
                        std::uint64_t budget = default_subspace_budget);
// All dimension vectors at once.
std::map<std::vector<int>, Integer> submodule_counts(const QuiverRep& rep, std::int64_t p,
                                                     std::uint64_t budget = default_subspace_budget);

struct EulerData {
    std::map<std::vector<int>, Integer> chi;           // per dimension vector
    std::map<std::vector<int>, std::vector<Integer>> counting_polynomial;  // coefficients of P(q)
    std::vector<std::int64_t> primes;
};

// Euler characteristics of all quiver Grassmannians of rep from counting
// polynomials fitted to point counts at accepted primes.
EulerData euler_characteristics(const QuiverRep& rep, std::uint64_t budget = default_subspace_budget);
Integer euler_char(const QuiverRep& rep, const std::vector<int>& n);

// m' - m for the minimal injective copresentation 0 -> V -> I^m -> I^{m'}.
Exponent injective_g_vector(const QuiverRep& rep);

// X^{g_V} * sum_n chi(Gr_n V) Y^n in the coordinates of s (classical).
TorusElement cc(const QuiverRep& rep, const Seed& s);
// Same with a prescribed principal degree and precomputed characteristics.
TorusElement cc_with_degree(const Exponent& principal_g, const EulerData& chi, const Seed& s);

struct GenericCharacter {
    TorusElement value;
    bool stable = true;  // every sample gave the same value
    std::vector<TorusElement> sample_values;
    std::size_t chosen = 0;
};

constexpr int default_entry_bound = 10;

// Samples f in Hom(I^{[-g]_+}, I^{[g]_+}) and evaluates X^g * F(ker f).
GenericCharacter generic_character(const Exponent& principal_g, const Quiver& q, const Seed& s, int samples,
                                   std::uint64_t rng_seed, int bound = default_entry_bound);

// Kernel of a homomorphism between representations given by its vertex maps.
QuiverRep kernel_rep(const QuiverRep& domain, const std::vector<QMatrix>& f);
// Basis of Hom(x, y) as tuples of vertex maps with primitive integer entries.
std::vector<std::vector<QMatrix>> hom_basis(const QuiverRep& x, const QuiverRep& y);

}  // namespace cluster
