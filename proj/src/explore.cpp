#include "cluster/explore.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "cluster/error.hpp"

namespace cluster {

namespace {

std::string labeled_key(const IntMatrix& b, const std::vector<const TorusElement*>& vars) {
    std::string key = render_matrix(b);
    for (const auto* v : vars) {
        key += '|';
        key += render(*v);
    }
    return key;
}

// Visits seeds breadth-first; the visitor returns true to stop.
void breadth_first(const Seed& start, int max_depth, DedupMode mode, std::size_t budget,
                   const std::function<bool(const Seed&, int, const std::string&)>& visit) {
    std::unordered_set<std::string> seen;
    std::deque<std::pair<Seed, int>> queue;
    std::string k0 = seed_key(start, mode);
    seen.insert(k0);
    if (visit(start, 0, k0)) return;
    queue.emplace_back(start, 0);
    const auto uf = start.unfrozen_indices();
    while (!queue.empty()) {
        auto [s, depth] = std::move(queue.front());
        queue.pop_front();
        if (depth >= max_depth) continue;
        for (auto k : uf) {
            Seed next = mutate_seed(s, k);
            std::string key = seed_key(next, mode);
            if (!seen.insert(key).second) continue;
            if (seen.size() > budget)
                throw BudgetExceeded("seed budget of " + std::to_string(budget) + " exceeded");
            if (visit(next, depth + 1, key)) return;
            queue.emplace_back(std::move(next), depth + 1);
        }
    }
}

}  // namespace

std::string seed_key(const Seed& s, DedupMode mode) {
    std::vector<const TorusElement*> vars;
    for (const auto& v : s.vars) vars.push_back(&v);
    if (mode == DedupMode::labeled) return labeled_key(s.b, vars);

    const auto uf = s.unfrozen_indices();
    std::vector<std::size_t> perm(uf.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    const std::size_t n = s.size();
    std::string best;
    bool first = true;
    do {
        // Vertex uf[i] moves to position uf[perm[i]].
        std::vector<std::size_t> to(n);
        for (std::size_t i = 0; i < n; ++i) to[i] = i;
        for (std::size_t i = 0; i < uf.size(); ++i) to[uf[i]] = uf[perm[i]];
        IntMatrix pb(n, n);
        std::vector<const TorusElement*> pv(n);
        for (std::size_t i = 0; i < n; ++i) {
            pv[to[i]] = &s.vars[i];
            for (std::size_t j = 0; j < n; ++j) pb(to[i], to[j]) = s.b(i, j);
        }
        std::string key = labeled_key(pb, pv);
        if (first || key < best) best = std::move(key);
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

SeedCatalog explore(const Seed& s, int max_depth, DedupMode mode, std::size_t budget) {
    if (max_depth < 0) throw Error("depth must be nonnegative");
    SeedCatalog catalog;
    std::set<std::string> seen_vars;
    breadth_first(s, max_depth, mode, budget, [&](const Seed& seed, int depth, const std::string& key) {
        for (const auto& v : seed.vars)
            if (seen_vars.insert(render(v)).second) catalog.variables.push_back(v);
        catalog.seeds.push_back(CatalogEntry{seed, depth, key});
        return false;
    });
    return catalog;
}

bool InjectiveWitness::sigma_is_identity() const {
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] != i) return false;
    return true;
}

InjectiveWitness find_injective_copy(const Seed& s, int max_depth, std::size_t budget) {
    if (max_depth < 0) throw Error("depth must be nonnegative");
    Seed anchor = reanchor(s);
    const auto uf = anchor.unfrozen_indices();
    const std::size_t n = anchor.size();
    std::optional<InjectiveWitness> found;
    breadth_first(anchor, max_depth, DedupMode::labeled, budget, [&](const Seed& seed, int, const std::string&) {
        std::vector<std::size_t> sigma(n);
        for (std::size_t i = 0; i < n; ++i) sigma[i] = i;
        std::vector<bool> used(n, false);
        for (auto k : uf) {
            bool hit = false;
            for (auto j : uf) {
                if (used[j]) continue;
                bool match = true;
                for (auto i : uf)
                    if (seed.degrees[j][i] != (i == k ? -1 : 0)) match = false;
                if (match) {
                    sigma[k] = j;
                    used[j] = true;
                    hit = true;
                    break;
                }
            }
            if (!hit) return false;
        }
        found = InjectiveWitness{seed.history, sigma};
        return true;
    });
    if (!found) throw NotFound("no injective copy t[1] within depth " + std::to_string(max_depth));
    return *found;
}

InjectiveData injective_data(const Seed& s, const InjectiveWitness& witness) {
    Seed anchor = reanchor(s);
    Seed shifted = mutate_sequence(anchor, witness.sequence);
    for (auto k : anchor.unfrozen_indices()) {
        const auto& g = shifted.degrees[witness.sigma.at(k)];
        for (auto i : anchor.unfrozen_indices())
            if (g[i] != (i == k ? -1 : 0)) throw Error("witness does not reach an injective copy");
    }
    return InjectiveData{std::move(anchor), std::move(shifted), witness};
}

}  // namespace cluster
