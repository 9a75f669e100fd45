#include <doctest.h>

#include <algorithm>
#include <set>

#include "cluster/explore.hpp"
#include "cluster/tropical.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace cluster;
using namespace testsupport;

namespace {

std::set<std::string> keys(const SeedCatalog& c) {
    std::set<std::string> out;
    for (const auto& e : c.seeds) out.insert(e.key);
    return out;
}

bool has_history(const SeedCatalog& c, const std::vector<int>& h) {
    return std::any_of(c.seeds.begin(), c.seeds.end(), [&](const CatalogEntry& e) { return e.seed.history == h; });
}

}  // namespace

TEST_CASE("SL3 exchange graph has two unlabeled seeds") {
    auto c = explore(sl3_seed(false), 3, DedupMode::unlabeled);
    CHECK(c.seeds.size() == 2);
    CHECK(explore(sl3_seed(true), 3, DedupMode::unlabeled).seeds.size() == 2);
}

TEST_CASE("Kronecker exploration to depth 3") {
    auto s = kronecker_seed(false);
    auto c = explore(s, 3, DedupMode::labeled);
    // Both directions of the infinite path: 1 + 2 + 2 + 2 seeds.
    CHECK(c.seeds.size() == 7);
    CHECK(explore(s, 3, DedupMode::unlabeled).seeds.size() == 7);
    CHECK(has_history(c, {0}));
    CHECK(has_history(c, {0, 1}));
    CHECK(has_history(c, {0, 1, 0}));

    // X1..X5 along the path t0, mu1 t0, mu2 mu1 t0, mu1 mu2 mu1 t0, checked
    // against the recursion evaluated at rational points.
    std::vector<TorusElement> path{s.vars[0], s.vars[1]};
    Seed t = s;
    for (int k : {0, 1, 0}) {
        t = mutate_seed(t, static_cast<std::size_t>(k));
        path.push_back(t.vars[static_cast<std::size_t>(k)]);
    }
    for (auto [a, b] : {std::pair<long, long>{2, 3}, {-5, 7}, {3, 11}}) {
        std::vector<Rational> pt{Rational(a), Rational(b)};
        std::vector<Rational> x{pt[0], pt[1]};
        for (int n = 0; n < 3; ++n) x.push_back((1 + x[n + 1] * x[n + 1]) / x[n]);
        for (std::size_t n = 0; n < 5; ++n) CHECK(oracle::evaluate(path[n], pt) == x[n]);
    }
    for (const auto& v : path)
        CHECK(std::count(c.variables.begin(), c.variables.end(), v) == 1);
}

TEST_CASE("exploration basics") {
    auto s = kronecker_seed(false);
    auto c0 = explore(s, 0, DedupMode::labeled);
    REQUIRE(c0.seeds.size() == 1);
    CHECK(seeds_equal(c0.seeds[0].seed, s));
    CHECK_THROWS_AS(explore(s, 12, DedupMode::labeled, 5), BudgetExceeded);
    CHECK_THROWS_AS(explore(s, -1, DedupMode::labeled), Error);
}

TEST_CASE("exploration is monotone in depth and labeled is finer") {
    std::vector<Seed> fixed{sl3_seed(false), kronecker_seed(false), seed_from_triangulation(annulus_triangulation())};
    for (const auto& s : fixed)
        for (int d = 0; d < 4; ++d) {
            auto a = explore(s, d, DedupMode::labeled), b = explore(s, d + 1, DedupMode::labeled);
            auto ka = keys(a), kb = keys(b);
            CHECK(std::includes(kb.begin(), kb.end(), ka.begin(), ka.end()));
            CHECK(a.seeds.size() >= explore(s, d, DedupMode::unlabeled).seeds.size());
        }
}

TEST_CASE("unlabeled keys ignore relabeling") {
    auto s = kronecker_seed(false);
    Seed swapped = s;
    swapped.b = IntMatrix{{0, 2}, {-2, 0}};
    std::swap(swapped.vars[0], swapped.vars[1]);
    CHECK(seed_key(s, DedupMode::unlabeled) == seed_key(swapped, DedupMode::unlabeled));
    CHECK(seed_key(s, DedupMode::labeled) != seed_key(swapped, DedupMode::labeled));
}

TEST_CASE("catalog variables are pointed") {
    for (const auto& s : {sl3_seed(true), kronecker_seed(true), seed_from_triangulation(annulus_triangulation())}) {
        auto c = explore(s, 4, DedupMode::labeled);
        for (const auto& v : c.variables) CHECK_NOTHROW(extract_pointed(v, *s.lattice));
    }
}

TEST_CASE("injective copies") {
    auto w = find_injective_copy(sl3_seed(false), 4);
    CHECK(w.sequence == std::vector<int>{0});
    CHECK(w.sigma_is_identity());
    auto k = find_injective_copy(kronecker_seed(false), 4);
    CHECK(k.sequence == std::vector<int>{0, 1});
    CHECK(k.sigma_is_identity());
    auto frozen_only = make_initial_seed(make_frame({"a", "b"}, {false, false}, {1, 1}), IntMatrix(2, 2));
    auto e = find_injective_copy(frozen_only, 0);
    CHECK(e.sequence.empty());
    CHECK(e.sigma_is_identity());
    CHECK_THROWS_AS(find_injective_copy(kronecker_seed(false), 1), NotFound);
    auto data = injective_data(kronecker_seed(false), k);
    CHECK(data.shifted.degrees[0] == Exponent{-1, 0});
    CHECK(data.shifted.degrees[1] == Exponent{0, -1});
}

TEST_CASE("injective reachability propagates through the catalog") {
    for (const auto& s : {sl3_seed(false), kronecker_seed(false), kronecker_seed(true)}) {
        auto c = explore(s, 4, DedupMode::labeled);
        for (const auto& e : c.seeds) CHECK_NOTHROW(find_injective_copy(e.seed, 4));
    }
}
