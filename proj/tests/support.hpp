#pragma once

#include <random>
#include <string>
#include <vector>

#include "cluster/ring.hpp"
#include "cluster/seed.hpp"

namespace testsupport {

using namespace cluster;

inline IntMatrix sl3_b() { return IntMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}; }
inline IntMatrix sl3_lambda() { return IntMatrix{{0, -1, 1}, {1, 0, 0}, {-1, 0, 0}}; }

inline Seed sl3_seed(bool quantum) {
    std::optional<IntMatrix> lambda;
    if (quantum) lambda = sl3_lambda();
    auto frame = make_frame({"1", "2", "3"}, {true, false, false}, {1, 1, 1}, lambda);
    return make_initial_seed(frame, sl3_b());
}

inline IntMatrix kronecker_b() { return IntMatrix{{0, -2}, {2, 0}}; }

inline Seed kronecker_seed(bool quantum) {
    std::optional<IntMatrix> lambda;
    if (quantum) lambda = IntMatrix{{0, -1}, {1, 0}};
    auto frame = make_frame({"1", "2"}, {true, true}, {1, 1}, lambda);
    return make_initial_seed(frame, kronecker_b());
}

inline Triangulation annulus_triangulation() {
    return Triangulation{{"x1", "x2", "b1", "b2"}, {"b1", "b2"}, {{"x2", "x1", "b1"}, {"x2", "x1", "b2"}}};
}

inline TorusElement mono(const FramePtr& f, std::vector<int> m, ScalarPoly c = 1) {
    return TorusElement::monomial(f, Exponent(std::move(m)), c);
}

inline ScalarPoly vp(int k) { return ScalarPoly::v_power(k); }

// Random element with exponents in [-bound, bound] and small v-coefficients.
inline TorusElement random_element(std::mt19937& rng, const FramePtr& f, int terms, int bound, bool v_free = false) {
    std::uniform_int_distribution<int> e(-bound, bound), c(-3, 3), p(-2, 2);
    TorusElement out(f);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> m(f->size());
        for (auto& x : m) x = e(rng);
        out.add_term(Exponent(m), v_free ? ScalarPoly(c(rng)) : ScalarPoly::monomial(c(rng), p(rng)));
    }
    return out;
}

inline IntMatrix random_skew(std::mt19937& rng, std::size_t n, int bound) {
    std::uniform_int_distribution<int> e(-bound, bound);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = e(rng);
            m(j, i) = -m(i, j);
        }
    return m;
}

}  // namespace testsupport

namespace testsupport {

// Random skew-symmetrizable matrix with entries in [-bound, bound], d_i in {1,2},
// random frozen set and full-rank B~. Quantum seeds get a compatible Lambda.
struct RandomSeedSpec {
    IntMatrix b;
    std::vector<bool> unfrozen;
    std::vector<int> d;
};

inline RandomSeedSpec random_seed_spec(std::mt19937& rng, int bound = 2, std::size_t max_n = 4) {
    std::uniform_int_distribution<int> size(1, static_cast<int>(max_n)), e(-bound, bound), coin(0, 3), dd(1, 2);
    while (true) {
        std::size_t n = static_cast<std::size_t>(size(rng));
        RandomSeedSpec s{IntMatrix(n, n), std::vector<bool>(n), std::vector<int>(n)};
        bool all_one = coin(rng) != 0;
        for (std::size_t i = 0; i < n; ++i) s.d[i] = all_one ? 1 : dd(rng);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                // b_ij d_j = -b_ji d_i
                int bij = e(rng);
                long long num = static_cast<long long>(bij) * s.d[j];
                if (num % s.d[i] != 0) bij = 0, num = 0;
                long long bji = -num / s.d[i];
                if (bji < -bound || bji > bound) bij = 0, bji = 0;
                s.b(i, j) = bij;
                s.b(j, i) = bji;
            }
        std::size_t nuf = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s.unfrozen[i] = coin(rng) != 0;
            nuf += s.unfrozen[i];
        }
        if (nuf == 0) s.unfrozen[0] = true;
        try {
            check_full_rank(s.b, s.unfrozen);
        } catch (const Error&) {
            continue;
        }
        return s;
    }
}

inline Seed seed_from_spec(const RandomSeedSpec& spec, bool quantum) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < spec.b.rows(); ++i) names.push_back(std::to_string(i + 1));
    std::optional<IntMatrix> lambda;
    if (quantum) lambda = find_compatible_lambda(spec.b, spec.unfrozen);
    return make_initial_seed(make_frame(names, spec.unfrozen, spec.d, lambda), spec.b);
}

inline std::vector<int> random_sequence(std::mt19937& rng, const Seed& s, int length) {
    auto uf = s.unfrozen_indices();
    std::uniform_int_distribution<std::size_t> pick(0, uf.size() - 1);
    std::vector<int> seq;
    for (int i = 0; i < length; ++i) seq.push_back(static_cast<int>(uf[pick(rng)]));
    return seq;
}

inline bool seeds_equal(const Seed& a, const Seed& b) {
    return a.b == b.b && a.vars == b.vars && a.degrees == b.degrees && a.lambda_local == b.lambda_local;
}

}  // namespace testsupport
