#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cluster/seed.hpp"

namespace cluster {

enum class DedupMode { labeled, unlabeled };

constexpr std::size_t default_seed_budget = 10000;

struct CatalogEntry {
    Seed seed;
    int depth = 0;
    std::string key;
};

struct SeedCatalog {
    std::vector<CatalogEntry> seeds;      // breadth-first order
    std::vector<TorusElement> variables;  // distinct cluster variables, in order of first appearance
};

// Labeled: matrix plus ordered variables. Unlabeled: the minimum of that
// rendering over simultaneous permutations of the unfrozen indices.
std::string seed_key(const Seed& s, DedupMode mode);

// Breadth-first closure under unfrozen mutations (vertex order) up to max_depth.
// Throws BudgetExceeded when more than `budget` seeds are reached.
SeedCatalog explore(const Seed& s, int max_depth, DedupMode mode, std::size_t budget = default_seed_budget);

// Mutation sequence (vertex indices) and sigma over all vertices (identity on frozen ones).
struct InjectiveWitness {
    std::vector<int> sequence;
    std::vector<std::size_t> sigma;

    bool sigma_is_identity() const;
};

// Searches for t[1]: a seed whose unfrozen variables have principal g-vectors
// -f_k (relative to s) up to a permutation. Throws NotFound past max_depth.
InjectiveWitness find_injective_copy(const Seed& s, int max_depth, std::size_t budget = default_seed_budget);

// The variables I_k(s) = X_{sigma k}(t[1]) expressed in the coordinates of s's own cluster.
struct InjectiveData {
    Seed anchor;   // reanchor(s)
    Seed shifted;  // t[1] reached from the anchor
    InjectiveWitness witness;
};
InjectiveData injective_data(const Seed& s, const InjectiveWitness& witness);

}  // namespace cluster
