#include <doctest.h>

#include "cluster/bases.hpp"
#include "cluster/explore.hpp"
#include "cluster/tropical.hpp"
#include "support.hpp"

using namespace cluster;
using namespace testsupport;

namespace {

UniPoly z_poly(std::initializer_list<long> c) {
    UniPoly p;
    for (long x : c) p.push_back(Integer(x));
    return p;
}

InjectiveData kronecker_data(bool quantum) {
    auto s = kronecker_seed(quantum);
    return injective_data(s, find_injective_copy(s, 4));
}

}  // namespace

TEST_CASE("Chebyshev polynomials") {
    CHECK(chebyshev(ChebyshevKind::first, 0) == z_poly({2}));
    CHECK(chebyshev(ChebyshevKind::first, 1) == z_poly({0, 1}));
    CHECK(chebyshev(ChebyshevKind::first, 2) == z_poly({-2, 0, 1}));
    CHECK(chebyshev(ChebyshevKind::second, 2) == z_poly({-1, 0, 1}));
    CHECK(chebyshev(ChebyshevKind::first, 3) == z_poly({0, -3, 0, 1}));
    CHECK(render_poly(chebyshev(ChebyshevKind::first, 3)) == "z^3 - 3*z");
    CHECK_THROWS_AS(chebyshev(ChebyshevKind::second, -1), Error);
}

TEST_CASE("Chebyshev product formulas") {
    for (int k = 0; k <= 10; ++k)
        for (int l = 0; l <= 10; ++l) {
            auto t = poly_mul(chebyshev(ChebyshevKind::first, k), chebyshev(ChebyshevKind::first, l));
            CHECK(t == poly_add(chebyshev(ChebyshevKind::first, k + l), chebyshev(ChebyshevKind::first, std::abs(k - l))));
            auto u = poly_mul(chebyshev(ChebyshevKind::second, k), chebyshev(ChebyshevKind::second, l));
            UniPoly sum;
            for (int j = 0; j <= std::min(k, l); ++j) sum = poly_add(sum, chebyshev(ChebyshevKind::second, k + l - 2 * j));
            CHECK(u == sum);
        }
}

TEST_CASE("loop element") {
    auto s = kronecker_seed(false);
    auto l = loop_element(s);
    CHECK(l == mono(s.frame, {1, -1}) + mono(s.frame, {-1, -1}) + mono(s.frame, {-1, 1}));
    // Same element from X^{(1,-1)}(1 + Y2 + Y1Y2) with Y1 = X2^2, Y2 = X1^{-2}.
    auto y1 = y_variable(s, 0), y2 = y_variable(s, 1);
    CHECK(l == mono(s.frame, {1, -1}) * (TorusElement::constant(s.frame, 1) + y2 + y1 * y2));
    CHECK(extract_pointed(l, s).g == Exponent{1, -1});
    auto q = kronecker_seed(true);
    CHECK(bar(loop_element(q)) == loop_element(q));
    CHECK_THROWS_AS(loop_element(sl3_seed(false)), Error);
}

TEST_CASE("annulus elements") {
    for (bool quantum : {false, true}) {
        auto s = kronecker_seed(quantum);
        auto l = loop_element(s);
        auto one = TorusElement::constant(s.frame, 1);
        CHECK(annulus_element(AnnulusKind::bracelet, 2, s) == l * l - ScalarPoly(2) * one);
        CHECK(annulus_element(AnnulusKind::band, 2, s) == l * l - one);
        for (auto kind : {AnnulusKind::bangle, AnnulusKind::bracelet, AnnulusKind::band}) {
            CHECK(annulus_element(kind, 1, s) == l);
            CHECK_THROWS_AS(annulus_element(kind, 0, s), Error);
        }
        CHECK(ScalarPoly(2) * annulus_element(AnnulusKind::band, 2, s) ==
              annulus_element(AnnulusKind::bracelet, 2, s) + annulus_element(AnnulusKind::bangle, 2, s));
    }
    auto s = kronecker_seed(false);
    for (int k = 1; k <= 6; ++k)
        for (auto kind : {AnnulusKind::bracelet, AnnulusKind::band}) {
            auto z = annulus_element(kind, k, s);
            for (const auto& [m, c] : z.terms()) CHECK(c.at_one() > 0);
        }
}

TEST_CASE("distinguished functions on the Kronecker seed") {
    auto data = kronecker_data(false);
    const auto& f = data.anchor.frame;
    CHECK(distinguished_function(data, Exponent{2, 1}) == cluster_monomial(data.anchor, {2, 1}));
    auto x3 = distinguished_function(data, Exponent{-1, 0});
    CHECK(x3 == mono(f, {-1, 0}) + mono(f, {-1, 2}));
    auto x1x4 = distinguished_function(data, Exponent{1, -1});
    CHECK(x1x4 == data.anchor.vars[0] * data.shifted.vars[1]);
    CHECK(extract_pointed(x1x4, data.anchor).g == Exponent{1, -1});

    for (bool quantum : {false, true}) {
        auto d = kronecker_data(quantum);
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b) {
                auto z = distinguished_function(d, Exponent{a, b});
                CHECK(extract_pointed(z, d.anchor).g == Exponent{a, b});
                // Bar-invariant whenever one of the two factors is trivial.
                if ((a >= 0 && b >= 0) || (a <= 0 && b <= 0)) CHECK(bar(z) == z);
            }
    }

    // With both factors nontrivial the normalized product X1 * X4 is not bar-invariant.
    auto q = kronecker_data(true);
    auto qf = q.anchor.frame;
    auto i = distinguished_function(q, Exponent{1, -1});
    CHECK(i == mono(qf, {1, -1}) + mono(qf, {-1, 3}, vp(-4)) + mono(qf, {-1, 1}, vp(-4) + 1) + mono(qf, {-1, -1}));
    CHECK(!(bar(i) == i));
    CHECK(bar(distinguished_function(q, Exponent{-1, 1})) == distinguished_function(q, Exponent{-1, 1}));
    // So the quantum loop expands with a v-dependent second coefficient.
    auto e = expand_in_distinguished(loop_element(q.anchor), q, default_truncation);
    CHECK(e.terms.at(Exponent{1, -1}).is_one());
    CHECK(e.terms.at(Exponent{-1, 1}) == -vp(-4));
}

TEST_CASE("expansion of the loop element over distinguished functions") {
    auto data = kronecker_data(false);
    auto l = loop_element(data.anchor);
    auto e = expand_in_distinguished(l, data, default_truncation);
    CHECK(e.base_g == Exponent{1, -1});
    CHECK(e.terms.size() == 2);
    CHECK(e.terms.at(Exponent{1, -1}).is_one());
    CHECK(e.terms.at(Exponent{-1, 1}) == ScalarPoly(-1));
    CHECK(e.remainder.is_zero());
    CHECK(reassemble(e, data) == l);

    auto m = cluster_monomial(data.shifted, {1, 2});
    auto em = expand_in_distinguished(m, data, default_truncation);
    CHECK(em.terms.size() == 1);
    CHECK(em.terms.begin()->second.is_one());

    auto two = distinguished_function(data, Exponent{1, 0}) + distinguished_function(data, Exponent{0, 1});
    CHECK_THROWS_AS(expand_in_distinguished(two, data, default_truncation), NotPointed);

    // Bands expand with a beyond-window remainder only when the window is small.
    auto band = annulus_element(AnnulusKind::band, 3, data.anchor);
    auto small = expand_in_distinguished(band, data, 1);
    CHECK(reassemble(small, data) == band);
    auto q = kronecker_data(true);
    auto qb = annulus_element(AnnulusKind::band, 2, q.anchor);
    CHECK(reassemble(expand_in_distinguished(qb, q, default_truncation), q) == qb);
}

TEST_CASE("triangular-basis verification") {
    auto data = kronecker_data(true);
    std::vector<TorusElement> monomials;
    for (const auto* seed : {&data.anchor, &data.shifted})
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) monomials.push_back(cluster_monomial(*seed, {a, b}));
    auto r = verify_triangular(monomials, data, default_truncation);
    CHECK(r.overall_pointed() == Verdict::pass);
    CHECK(r.overall_bar_invariant() == Verdict::pass);
    CHECK(r.contains_seed_variables);
    CHECK(r.contains_injective_variables);

    std::vector<TorusElement> bands;
    for (int k = 1; k <= 3; ++k) bands.push_back(annulus_element(AnnulusKind::band, k, data.anchor));
    auto rb = verify_triangular(bands, data, default_truncation);
    CHECK(rb.overall_pointed() == Verdict::pass);
    CHECK(rb.overall_bar_invariant() == Verdict::pass);
    for (int k = 1; k <= 3; ++k) CHECK(*rb.members[static_cast<std::size_t>(k - 1)].g == Exponent{k, -k});

    auto planted = verify_triangular({TorusElement::constant(data.anchor.frame, vp(1))}, data, default_truncation);
    CHECK(planted.overall_bar_invariant() == Verdict::fail);
    CHECK(planted.overall_pointed() == Verdict::fail);

    // The cluster monomials of the initial seed alone: X_i * X^m is again a
    // cluster monomial, so the product condition holds exactly.
    std::vector<TorusElement> initial;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) initial.push_back(cluster_monomial(data.anchor, {a, b}));
    auto ri = verify_triangular(initial, data, default_truncation);
    for (std::size_t i = 0; i < ri.members.size(); ++i) {
        const auto& g = *ri.members[i].g;
        if (g[0] < 4 && g[1] < 4) {
            CHECK(ri.members[i].products[0] == Verdict::pass);
            CHECK(ri.members[i].products[1] == Verdict::pass);
        }
    }
}
