#include <doctest.h>

#include <algorithm>
#include <set>

#include "cluster/ccmap.hpp"
#include "cluster/explore.hpp"
#include "cluster/linalg.hpp"
#include "cluster/tropical.hpp"
#include "support.hpp"

using namespace cluster;
using namespace testsupport;

namespace {

// ---- naive oracle: subspaces as explicit vector sets over F_p ----

using Vec = std::vector<std::int64_t>;

std::vector<Vec> all_vectors(int d, std::int64_t p) {
    std::vector<Vec> out;
    Vec v(static_cast<std::size_t>(d), 0);
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < v.size() && v[i] == p - 1) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
    }
    return out;
}

// Every subspace of F_p^d of dimension r, as a sorted set of its vectors.
std::set<std::set<Vec>> naive_subspaces(int d, int r, std::int64_t p) {
    std::set<std::set<Vec>> out;
    auto vecs = all_vectors(d, p);
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == pick.size()) {
            std::set<Vec> span;
            for (const auto& coeffs : all_vectors(r, p)) {
                Vec s(static_cast<std::size_t>(d), 0);
                for (std::size_t i = 0; i < pick.size(); ++i)
                    for (std::size_t j = 0; j < s.size(); ++j) s[j] = (s[j] + coeffs[i] * vecs[pick[i]][j]) % p;
                span.insert(s);
            }
            std::size_t size = 1;
            for (int i = 0; i < r; ++i) size *= static_cast<std::size_t>(p);
            if (span.size() == size) out.insert(span);
            return;
        }
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            pick[k] = i;
            go(k + 1);
        }
    };
    go(0);
    return out;
}

Integer naive_count(const QuiverRep& rep, const std::vector<int>& n, std::int64_t p) {
    auto mod = std::vector<linalg::ModMatrix>();
    for (const auto& m : rep.maps) mod.push_back(*linalg::reduce_mod(m, p));
    std::vector<std::vector<std::set<Vec>>> options(rep.dims.size());
    for (std::size_t v = 0; v < rep.dims.size(); ++v)
        for (const auto& s : naive_subspaces(rep.dims[v], n[v], p)) options[v].push_back(s);
    Integer total = 0;
    std::vector<std::size_t> choice(rep.dims.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t v) {
        if (v == rep.dims.size()) {
            for (std::size_t a = 0; a < rep.quiver.arrows.size(); ++a) {
                auto [s, t] = rep.quiver.arrows[a];
                for (const auto& x : options[s][choice[s]]) {
                    Vec y(mod[a].rows(), 0);
                    for (std::size_t i = 0; i < y.size(); ++i)
                        for (std::size_t j = 0; j < x.size(); ++j) y[i] = (y[i] + mod[a](i, j) * x[j]) % p;
                    if (!options[t][choice[t]].count(y)) return;
                }
            }
            total += 1;
            return;
        }
        for (std::size_t i = 0; i < options[v].size(); ++i) {
            choice[v] = i;
            go(v + 1);
        }
    };
    go(0);
    return total;
}

Quiver kronecker_quiver() { return Quiver{{"1", "2"}, {{0, 1}, {0, 1}}}; }

QMatrix qm(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
    QMatrix m(r, c, Rational(0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long x : row) m(i, j++) = Rational(x);
        ++i;
    }
    return m;
}

QuiverRep v_l(long lambda) { return QuiverRep{kronecker_quiver(), {1, 1}, {qm({{1}}), qm({{lambda}})}}; }

QuiverRep random_rep(std::mt19937& rng, const Quiver& q, int max_dim) {
    std::uniform_int_distribution<int> dim(0, max_dim), entry(-2, 2);
    QuiverRep r{q, {}, {}};
    for (std::size_t v = 0; v < q.size(); ++v) r.dims.push_back(dim(rng));
    for (auto [s, t] : q.arrows) {
        QMatrix m(static_cast<std::size_t>(r.dims[t]), static_cast<std::size_t>(r.dims[s]), Rational(0));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        r.maps.push_back(m);
    }
    return r;
}

std::vector<int> dims_box_next(std::vector<int> n, const std::vector<int>& top, bool& done) {
    std::size_t i = 0;
    while (i < n.size() && n[i] == top[i]) n[i++] = 0;
    done = i == n.size();
    if (!done) ++n[i];
    return n;
}

}  // namespace

TEST_CASE("quiver of a seed and arrow validation") {
    auto s = kronecker_seed(false);
    auto q = quiver_of_seed(s);
    CHECK(q.arrows == kronecker_quiver().arrows);
    CHECK_NOTHROW(check_quiver_matches(q, s));
    Quiver wrong{{"1", "2"}, {{1, 0}, {1, 0}}};
    CHECK_THROWS_AS(check_quiver_matches(wrong, s), Error);
    Quiver cyclic{{"1", "2"}, {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(topological_order(cyclic), Error);
    auto bad = v_l(1);
    bad.maps[0] = qm({{1, 2}});
    CHECK_THROWS_AS(validate(bad), ParseError);
}

TEST_CASE("submodule counts of V_L") {
    for (std::int64_t p : {2, 3, 5}) {
        auto v = v_l(1);
        CHECK(submodule_count(v, {0, 0}, p) == 1);
        CHECK(submodule_count(v, {0, 1}, p) == 1);
        CHECK(submodule_count(v, {1, 1}, p) == 1);
        CHECK(submodule_count(v, {1, 0}, p) == 0);
    }
}

TEST_CASE("submodule counts agree with naive enumeration") {
    std::mt19937 rng(11);
    std::vector<Quiver> quivers = {kronecker_quiver(), Quiver{{"a", "b", "c"}, {{0, 1}, {1, 2}}},
                                   Quiver{{"a", "b", "c"}, {{0, 1}, {2, 1}, {0, 2}}}};
    for (int trial = 0; trial < 30; ++trial) {
        const auto& q = quivers[static_cast<std::size_t>(trial) % quivers.size()];
        auto rep = random_rep(rng, q, 2);
        for (std::int64_t p : {2, 3}) {
            auto all = submodule_counts(rep, p);
            std::vector<int> n(q.size(), 0);
            bool done = false;
            while (!done) {
                Integer expect = naive_count(rep, n, p);
                auto it = all.find(n);
                CHECK((it == all.end() ? Integer(0) : it->second) == expect);
                CHECK(submodule_count(rep, n, p) == expect);
                n = dims_box_next(n, rep.dims, done);
            }
        }
    }
}

TEST_CASE("subspace budget is enforced") {
    auto big = QuiverRep{kronecker_quiver(), {4, 4}, {}};
    QMatrix id(4, 4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i) id(i, i) = 1;
    big.maps = {id, id};
    CHECK_THROWS_AS(submodule_counts(big, 7, 10), BudgetExceeded);
}

TEST_CASE("Euler characteristics") {
    CHECK(euler_char(v_l(1), {0, 1}) == 1);
    CHECK(euler_char(v_l(1), {1, 0}) == 0);
    auto l2 = direct_sum(v_l(1), v_l(2));
    for (std::int64_t p : {3, 5}) CHECK(submodule_count(l2, {1, 1}, p) == 2);
    CHECK(euler_char(l2, {1, 1}) == 2);
    CHECK(euler_char(l2, {0, 2}) == 1);
    CHECK(euler_char(l2, {0, 1}) == 2);
    // Jordan block at a single point: only the eigenline lifts.
    QuiverRep jordan{kronecker_quiver(), {2, 2}, {qm({{1, 0}, {0, 1}}), qm({{1, 1}, {0, 1}})}};
    CHECK(submodule_count(jordan, {1, 1}, 5) == 1);
    CHECK(euler_char(jordan, {1, 1}) == 1);

    // A field factor Q(sqrt 2) in End V: reductions where 2 is not a square are rejected.
    QuiverRep irr{kronecker_quiver(), {2, 2}, {qm({{1, 0}, {0, 1}}), qm({{0, 2}, {1, 0}})}};
    auto data = euler_characteristics(irr);
    for (auto p : data.primes) {
        bool square = false;
        for (std::int64_t x = 0; x < p; ++x) square = square || (x * x) % p == 2 % p;
        CHECK(square);
    }
    CHECK(data.chi.at({1, 1}) == 2);
}

TEST_CASE("Euler characteristics are multiplicative on direct sums") {
    std::mt19937 rng(5);
    auto q = kronecker_quiver();
    for (int trial = 0; trial < 8; ++trial) {
        auto a = random_rep(rng, q, 1), b = random_rep(rng, q, 2);
        auto ea = euler_characteristics(a), eb = euler_characteristics(b), es = euler_characteristics(direct_sum(a, b));
        std::map<std::vector<int>, Integer> conv;
        for (const auto& [n1, c1] : ea.chi)
            for (const auto& [n2, c2] : eb.chi) conv[{n1[0] + n2[0], n1[1] + n2[1]}] += c1 * c2;
        std::erase_if(conv, [](const auto& kv) { return kv.second == 0; });
        CHECK(conv == es.chi);
    }
}

TEST_CASE("injective representations and g-vectors") {
    auto q = kronecker_quiver();
    auto i1 = injective_rep(q, 0), i2 = injective_rep(q, 1);
    CHECK(i1.dims == std::vector<int>{1, 0});
    CHECK(i2.dims == std::vector<int>{2, 1});
    CHECK(injective_g_vector(i1) == Exponent{-1, 0});
    CHECK(injective_g_vector(i2) == Exponent{0, -1});
    CHECK(injective_g_vector(zero_rep(q)) == Exponent{0, 0});
    CHECK(injective_g_vector(v_l(3)) == Exponent{1, -1});
    CHECK(injective_g_vector(direct_sum(v_l(1), i2)) == Exponent{1, -2});
    Quiver path{{"a", "b", "c"}, {{0, 1}, {1, 2}}};
    CHECK(injective_rep(path, 2).dims == std::vector<int>{1, 1, 1});
    CHECK(injective_g_vector(injective_rep(path, 2)) == Exponent{0, 0, -1});
}

TEST_CASE("CC map on the Kronecker quiver") {
    auto s = kronecker_seed(false);
    auto f = s.frame;
    CHECK(cc(zero_rep(quiver_of_seed(s)), s) == mono(f, {0, 0}));
    auto l = cc(v_l(1), s);
    CHECK(l == mono(f, {1, -1}) + mono(f, {-1, -1}) + mono(f, {-1, 1}));
    CHECK(cc(v_l(-2), s) == l);
    auto d = extract_pointed(l, s);
    CHECK(d.g == Exponent{1, -1});
    // V_{L^k}: k copies of V_L at distinct points.
    QuiverRep sum = v_l(1);
    for (long k = 2; k <= 3; ++k) {
        sum = direct_sum(sum, v_l(k));
        CHECK(cc(sum, s) == power(l, static_cast<unsigned>(k)));
    }
    // A Jordan block instead gives the second-kind Chebyshev polynomials in CC(V_L).
    QuiverRep j2{kronecker_quiver(), {2, 2}, {qm({{1, 0}, {0, 1}}), qm({{1, 1}, {0, 1}})}};
    CHECK(cc(j2, s) == l * l - mono(f, {0, 0}));
    QuiverRep j3{kronecker_quiver(), {3, 3}, {qm({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), qm({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}})}};
    CHECK(cc(j3, s) == l * l * l - 2 * l);
    CHECK_THROWS_AS(cc(v_l(1), kronecker_seed(true)), Error);
}

TEST_CASE("CC map of rigid representations gives cluster variables") {
    auto s = kronecker_seed(false);
    auto catalog = explore(s, 6, DedupMode::labeled);
    auto q = quiver_of_seed(s);
    std::vector<QuiverRep> rigid = {
        injective_rep(q, 0), injective_rep(q, 1),
        QuiverRep{q, {0, 1}, {QMatrix(1, 0), QMatrix(1, 0)}},
        QuiverRep{q, {1, 2}, {qm({{1}, {0}}), qm({{0}, {1}})}},
        QuiverRep{q, {3, 2}, {qm({{1, 0, 0}, {0, 1, 0}}), qm({{0, 1, 0}, {0, 0, 1}})}},
    };
    CHECK(cc(rigid[0], s) == mutate_seed(s, 0).vars[0]);
    for (const auto& r : rigid) {
        auto x = cc(r, s);
        CHECK(std::find(catalog.variables.begin(), catalog.variables.end(), x) != catalog.variables.end());
        CHECK(extract_pointed(x, s).g == injective_g_vector(r));
    }
}

TEST_CASE("CC map on an acyclic seed with frozen vertices") {
    auto s = sl3_seed(false);
    auto q = quiver_of_seed(s);
    REQUIRE(q.size() == 1);
    // Frozen components of the degree are zero, so the result differs from
    // the cluster variable by a frozen monomial.
    auto x = cc(injective_rep(q, 0), s);
    CHECK(x * mono(s.frame, {0, 0, 1}) == mutate_seed(s, 0).vars[0]);
}

TEST_CASE("Hom spaces and kernels") {
    auto q = kronecker_quiver();
    CHECK(hom_basis(injective_rep(q, 1), injective_rep(q, 0)).size() == 2);
    CHECK(hom_basis(v_l(1), v_l(1)).size() == 1);
    CHECK(hom_basis(v_l(1), v_l(2)).empty());
    auto i2 = injective_rep(q, 1), i1 = injective_rep(q, 0);
    auto basis = hom_basis(i2, i1);
    auto ker = kernel_rep(i2, basis[0]);
    CHECK(ker.dims == std::vector<int>{1, 1});
    CHECK(injective_g_vector(ker) == Exponent{1, -1});
}

TEST_CASE("generic characters") {
    auto s = kronecker_seed(false);
    auto q = quiver_of_seed(s);
    auto f = s.frame;
    CHECK(generic_character({2, 1}, q, s, 2, 1).value == mono(f, {2, 1}));
    CHECK(generic_character({-1, 0}, q, s, 3, 1).value == mutate_seed(s, 0).vars[0]);
    auto l = cc(v_l(1), s);
    for (int k = 1; k <= 3; ++k) {
        auto g = generic_character({k, -k}, q, s, 4, 7);
        CHECK(g.stable);
        CHECK(g.value == power(l, static_cast<unsigned>(k)));
    }
    CHECK_THROWS_AS(generic_character({1, -1}, q, s, 1, 1), Error);
}

TEST_CASE("generic characters are pointed and pairwise distinct") {
    auto s = kronecker_seed(false);
    auto q = quiver_of_seed(s);
    std::vector<TorusElement> seen;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
            auto g = generic_character({a, b}, q, s, 3, 17);
            CHECK(extract_pointed(g.value, s).g == Exponent{a, b});
            CHECK(std::find(seen.begin(), seen.end(), g.value) == seen.end());
            seen.push_back(g.value);
        }
}
