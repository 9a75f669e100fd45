#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "cluster/explore.hpp"
#include "cluster/tropical.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace cluster;
using namespace testsupport;

namespace {

Exponent n_of(std::vector<int> v) { return Exponent(std::move(v)); }

}  // namespace

TEST_CASE("y-variables are columns of B~") {
    auto k = kronecker_seed(false);
    CHECK(y_variable(k, 0) == mono(k.frame, {0, 2}));
    CHECK(y_variable(k, 1) == mono(k.frame, {-2, 0}));
    auto s = sl3_seed(false);
    CHECK(y_variable(s, 0) == mono(s.frame, {0, 1, -1}));
    CHECK_THROWS_AS(y_variable(s, 2), Error);
}

TEST_CASE("pointed decomposition of SL3 X1'") {
    auto s = sl3_seed(true);
    auto t = mutate_seed(s, 0);
    auto d = extract_pointed(t.vars[0], s);
    CHECK(d.g == Exponent{-1, 0, 1});
    CHECK(d.f_poly.size() == 2);
    CHECK(d.f_poly.at(n_of({0})).is_one());
    CHECK(d.f_poly.at(n_of({1})).is_one());
    CHECK(render_decomposition(d, *s.frame) == "g=[-1,0,1]; F = 1 + Y1");
    CHECK(reassemble(d, *s.lattice, s.frame) == t.vars[0]);
}

TEST_CASE("pointed decomposition of monomials and Kronecker X4") {
    auto s = kronecker_seed(false);
    auto d = extract_pointed(mono(s.frame, {3, -5}), s);
    CHECK(d.g == Exponent{3, -5});
    CHECK(d.f_poly.size() == 1);

    auto x4 = mutate_sequence(s, {0, 1}).vars[1];
    auto p = extract_pointed(x4, s);
    CHECK(p.g == Exponent{0, -1});
    std::set<Exponent> support;
    for (const auto& [m, c] : x4.terms()) support.insert(m);
    CHECK(support == std::set<Exponent>{{0, -1}, {-2, -1}, {-2, 1}, {-2, 3}});
    // Each offset is found independently by enumeration.
    for (const auto& m : support) {
        auto n = oracle::search_offset(s.extended_b(), p.g, m, 4);
        REQUIRE(n);
        CHECK(p.f_poly.count(Exponent(*n)) == 1);
    }
    CHECK(p.f_poly.at(n_of({0, 0})).is_one());
    CHECK(p.f_poly.at(n_of({0, 1})).is_one());
    CHECK(p.f_poly.at(n_of({1, 1})) == ScalarPoly(2));
    CHECK(p.f_poly.at(n_of({2, 1})).is_one());
}

TEST_CASE("non-pointed inputs are rejected") {
    auto s = kronecker_seed(false);
    CHECK_THROWS_AS(extract_pointed(mono(s.frame, {1, 0}) + mono(s.frame, {0, 1}), s), NotPointed);
    CHECK_THROWS_AS(extract_pointed(mono(s.frame, {1, 0}, 2), s), NotPointed);
    CHECK_THROWS_AS(extract_pointed(TorusElement(s.frame), s), NotPointed);
    auto q = kronecker_seed(true);
    CHECK_THROWS_AS(extract_pointed(mono(q.frame, {1, 0}, vp(1)), q), NotPointed);
}

TEST_CASE("dominance order") {
    auto k = kronecker_seed(false);
    CHECK(dominance_less(Exponent{-2, 2}, Exponent{0, 0}, k));
    CHECK(!dominance_less(Exponent{0, 0}, Exponent{-2, 2}, k));
    CHECK(!dominance_less(Exponent{1, 1}, Exponent{1, 1}, k));
    auto s = sl3_seed(false);
    CHECK(dominance_less(Exponent{0, 1, -1}, Exponent{0, 0, 0}, s));

    std::mt19937 rng(8);
    std::uniform_int_distribution<int> e(-3, 3), nn(0, 2);
    for (int t = 0; t < 120; ++t) {
        auto spec = random_seed_spec(rng);
        auto seed = seed_from_spec(spec, false);
        DegreeLattice lat(spec.b, spec.unfrozen);
        std::vector<int> g(spec.b.rows());
        for (auto& x : g) x = e(rng);
        auto step = [&](const Exponent& from) {
            std::vector<long long> n(lat.rank());
            for (auto& x : n) x = nn(rng);
            return lat.shift(from, n);
        };
        Exponent a(g), b = step(a), c = step(b);
        CHECK(!dominance_less(a, a, seed));
        if (dominance_less(b, a, seed) && dominance_less(c, b, seed)) CHECK(dominance_less(c, a, seed));
        if (dominance_less(b, a, seed)) CHECK(!dominance_less(a, b, seed));
    }
}

TEST_CASE("pointedness extraction finds the unique dominating exponent") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> e(-3, 3), nn(0, 2), c(1, 3);
    for (int t = 0; t < 150; ++t) {
        auto spec = random_seed_spec(rng);
        auto seed = seed_from_spec(spec, false);
        DegreeLattice lat(spec.b, spec.unfrozen);
        std::vector<int> g(spec.b.rows());
        for (auto& x : g) x = e(rng);
        TorusElement z = TorusElement::monomial(seed.frame, Exponent(g));
        for (int j = 0; j < 4; ++j) {
            std::vector<long long> n(lat.rank());
            bool zero = true;
            for (auto& x : n) zero = (x = nn(rng)) == 0 && zero;
            if (zero) continue;
            z.add_term(lat.shift(Exponent(g), n), ScalarPoly(c(rng)));
        }
        auto d = extract_pointed(z, lat);
        CHECK(d.g == Exponent(g));
        CHECK(reassemble(d, lat, seed.frame) == z);
        // No other support exponent dominates the rest.
        for (const auto& [m, coef] : z.terms()) {
            if (m == d.g) continue;
            CHECK(dominance_less(m, d.g, lat));
            CHECK(!dominance_less(d.g, m, lat));
        }
    }
}

TEST_CASE("tropical transformation") {
    auto s = sl3_seed(false);
    CHECK(tropical_transform(Exponent{-1, 0, 1}, 0, s.b) == Exponent{1, 0, 0});
    CHECK(tropical_transform(Exponent{0, 0, 0}, 0, s.b) == Exponent{0, 0, 0});
    // Recomputing X1' at the mutated seed gives the same vector.
    auto t = mutate_seed(s, 0);
    CHECK(relative_degree(t, t, 0) == Exponent{1, 0, 0});

    std::mt19937 rng(21);
    std::uniform_int_distribution<int> e(-4, 4);
    for (int i = 0; i < 200; ++i) {
        auto spec = random_seed_spec(rng);
        std::vector<int> g(spec.b.rows());
        for (auto& x : g) x = e(rng);
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (!spec.unfrozen[k]) continue;
            auto once = tropical_transform(Exponent(g), k, spec.b);
            CHECK(tropical_transform(once, k, mutate_b(spec.b, k, spec.unfrozen)) == Exponent(g));
        }
    }
}

TEST_CASE("transport of tropical points") {
    auto s = kronecker_seed(false);
    TropicalPoint p{{}, s.b, Exponent{2, -3}};
    auto same = transport(p, {}, s.frame->unfrozen);
    CHECK(same.g == p.g);
    auto back = transport(p, {1, 1}, s.frame->unfrozen);
    CHECK(back.g == p.g);
    CHECK(back.anchor.empty());
    CHECK(back.anchor_b == p.anchor_b);
    auto moved = transport(p, {0, 1}, s.frame->unfrozen);
    CHECK(same_tropical_point(p, moved, s.frame->unfrozen));
    CHECK(!same_tropical_point(p, transport(TropicalPoint{{}, s.b, Exponent{2, -2}}, {0}, s.frame->unfrozen), s.frame->unfrozen));
    CHECK_THROWS_AS(transport(p, {5}, s.frame->unfrozen), Error);
}

namespace {

// g-vectors recomputed at mu_k t agree with the transformed g-vectors at t.
void check_tropical_covariance(const Seed& s0, int depth) {
    auto catalog = explore(s0, depth, DedupMode::labeled);
    std::vector<std::pair<const Seed*, std::size_t>> carriers;
    std::set<std::string> seen;
    for (const auto& e : catalog.seeds)
        for (std::size_t i = 0; i < e.seed.size(); ++i)
            if (seen.insert(render(e.seed.vars[i])).second) carriers.emplace_back(&e.seed, i);
    for (const auto& e : catalog.seeds)
        for (auto k : s0.unfrozen_indices()) {
            Seed mk = mutate_seed(e.seed, k);
            for (const auto& [carrier, i] : carriers) {
                Exponent at_t = relative_degree(e.seed, *carrier, i);
                Exponent at_mk = relative_degree(mk, *carrier, i);
                CHECK(tropical_transform(at_t, k, e.seed.b) == at_mk);
            }
        }
}

}  // namespace

TEST_CASE("g-vectors transform tropically across catalogs") {
    check_tropical_covariance(sl3_seed(false), 4);
    check_tropical_covariance(kronecker_seed(false), 4);
    check_tropical_covariance(kronecker_seed(true), 3);
}

TEST_CASE("distinct cluster monomials have distinct tropical points") {
    auto s0 = kronecker_seed(false);
    auto catalog = explore(s0, 4, DedupMode::labeled);
    std::map<std::string, TropicalPoint> points;
    for (const auto& e : catalog.seeds)
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) {
                auto z = cluster_monomial(e.seed, {a, b});
                Exponent g = extract_pointed(z, *s0.lattice).g;
                TropicalPoint p{{}, s0.b, g};
                auto [it, inserted] = points.emplace(render(z), p);
                if (!inserted) CHECK(same_tropical_point(it->second, p, s0.frame->unfrozen));
            }
    std::vector<TropicalPoint> all;
    for (const auto& [r, p] : points) all.push_back(p);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(!same_tropical_point(all[i], all[j], s0.frame->unfrozen));
}
