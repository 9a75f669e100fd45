#include "cluster/seed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "cluster/error.hpp"
#include "cluster/linalg.hpp"
#include "cluster/tropical.hpp"

namespace cluster {

namespace {

std::string name_of(const std::vector<std::string>& names, std::size_t i) {
    return i < names.size() ? names[i] : std::to_string(i + 1);
}

void check_mutable(const std::vector<bool>& unfrozen, std::size_t k, const std::vector<std::string>& names = {}) {
    if (k >= unfrozen.size()) throw Error("vertex out of range");
    if (!unfrozen[k]) throw Error("vertex " + name_of(names, k) + " is frozen");
}

IntMatrix pullback_lambda(const Frame& frame, const std::vector<Exponent>& degrees) {
    const std::size_t n = degrees.size();
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = frame.pairing(degrees[i], degrees[j]);
    return out;
}

}  // namespace

IntMatrix Seed::extended_b() const { return select_columns(b, unfrozen_indices()); }

std::size_t vertex_index(const Frame& frame, const std::string& id) {
    auto it = std::find(frame.vertices.begin(), frame.vertices.end(), id);
    if (it == frame.vertices.end()) throw Error("vertex out of range");
    return static_cast<std::size_t>(it - frame.vertices.begin());
}

void check_skew_symmetrizable(const IntMatrix& b, const std::vector<int>& d, const std::vector<std::string>& names) {
    if (b.rows() != b.cols() || b.rows() != d.size()) throw ParseError("b must be a square matrix matching the vertex count");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = i; j < b.cols(); ++j)
            if (b(i, j) * d[j] != -b(j, i) * d[i])
                throw ParseError("b is not skew-symmetrizable by d at (" + name_of(names, i) + "," + name_of(names, j) + ")");
}

void check_full_rank(const IntMatrix& b, const std::vector<bool>& unfrozen) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < unfrozen.size(); ++k)
        if (unfrozen[k]) cols.push_back(k);
    if (linalg::rank(select_columns(b, cols)) != cols.size()) throw Error("extended exchange matrix is rank deficient");
}

IntMatrix mutate_b(const IntMatrix& b, std::size_t k, const std::vector<bool>& unfrozen) {
    check_mutable(unfrozen, k);
    const std::size_t n = b.rows();
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k)
                out(i, j) = -b(i, j);
            else
                out(i, j) = b(i, j) + b(i, k) * std::max(b(k, j), 0LL) + std::max(-b(i, k), 0LL) * b(k, j);
        }
    return out;
}

std::vector<long long> check_compatibility(const IntMatrix& lambda, const IntMatrix& b, const std::vector<bool>& unfrozen,
                                           const std::vector<std::string>& names) {
    const std::size_t n = b.rows();
    if (lambda.rows() != n || lambda.cols() != n) throw Incompatible("lambda has wrong shape");
    std::vector<long long> delta;
    for (std::size_t k = 0; k < n; ++k) {
        if (!unfrozen[k]) continue;
        for (std::size_t i = 0; i < n; ++i) {
            long long p = 0;
            for (std::size_t j = 0; j < n; ++j) p += lambda(i, j) * b(j, k);
            const std::string where = "(" + name_of(names, i) + "," + name_of(names, k) + ")";
            if (i != k && p != 0) throw Incompatible("lambda is incompatible with b at " + where + ": pairing " + std::to_string(p));
            if (i == k) {
                if (-p <= 0) throw Incompatible("lambda is incompatible with b at " + where + ": delta " + std::to_string(-p) + " is not positive");
                delta.push_back(-p);
            }
        }
    }
    return delta;
}

IntMatrix find_compatible_lambda(const IntMatrix& b, const std::vector<bool>& unfrozen) {
    const std::size_t n = b.rows();
    check_full_rank(b, unfrozen);
    std::vector<std::size_t> uf;
    for (std::size_t k = 0; k < n; ++k)
        if (unfrozen[k]) uf.push_back(k);
    if (uf.empty()) return IntMatrix(n, n);

    // Unknowns Lambda_ab for a < b in row-major order; one equation per (i, k).
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = a + 1; c < n; ++c) pairs.emplace_back(a, c);
    IntMatrix a_mat(n * uf.size(), pairs.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t kk = 0; kk < uf.size(); ++kk)
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                auto [x, y] = pairs[p];
                long long c = 0;
                if (i == x) c = b(y, uf[kk]);
                if (i == y) c = -b(x, uf[kk]);
                a_mat(i * uf.size() + kk, p) = c;
            }

    // delta admits a rational solution iff it is orthogonal to the left kernel
    // restricted to the diagonal rows (k, k).
    auto left = linalg::kernel(to_rational(a_mat).transpose());
    QMatrix constraints(left.size(), uf.size());
    for (std::size_t r = 0; r < left.size(); ++r)
        for (std::size_t kk = 0; kk < uf.size(); ++kk) constraints(r, kk) = left[r][uf[kk] * uf.size() + kk];
    auto admissible = left.empty() ? std::vector<std::vector<Rational>>() : linalg::kernel(constraints);
    if (left.empty())
        for (std::size_t kk = 0; kk < uf.size(); ++kk) {
            std::vector<Rational> e(uf.size(), Rational(0));
            e[kk] = 1;
            admissible.push_back(e);
        }
    if (admissible.empty()) throw Incompatible("no compatible lambda exists for b");

    linalg::IntegerSystem system(a_mat);
    auto try_delta = [&](const std::vector<long long>& delta) -> std::optional<IntMatrix> {
        std::vector<Integer> rhs(a_mat.rows(), Integer(0));
        for (std::size_t kk = 0; kk < uf.size(); ++kk) rhs[uf[kk] * uf.size() + kk] = Integer(static_cast<long>(-delta[kk]));
        auto x = system.solve(rhs);
        if (!x) return std::nullopt;
        IntMatrix lambda(n, n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            long long v = (*x)[p].get_si();
            lambda(pairs[p].first, pairs[p].second) = v;
            lambda(pairs[p].second, pairs[p].first) = -v;
        }
        return lambda;
    };
    auto admissible_delta = [&](const std::vector<long long>& delta) {
        for (std::size_t r = 0; r < constraints.rows(); ++r) {
            Rational s = 0;
            for (std::size_t kk = 0; kk < uf.size(); ++kk) s += constraints(r, kk) * Rational(static_cast<long>(delta[kk]));
            if (s != 0) return false;
        }
        return true;
    };

    if (admissible.size() == 1) {
        auto prim = linalg::primitive_integer(admissible.front());
        bool pos = std::all_of(prim.begin(), prim.end(), [](const Integer& x) { return x > 0; });
        bool neg = std::all_of(prim.begin(), prim.end(), [](const Integer& x) { return x < 0; });
        if (!pos && !neg) throw Incompatible("no compatible lambda with positive delta exists for b");
        for (long long t = 1; t <= 4096; ++t) {
            std::vector<long long> delta(uf.size());
            for (std::size_t kk = 0; kk < uf.size(); ++kk) delta[kk] = t * (pos ? 1 : -1) * prim[kk].get_si();
            if (auto l = try_delta(delta)) return *l;
        }
        throw Incompatible("no integer compatible lambda found");
    }

    // Several independent directions: enumerate delta by increasing sum, then lexicographically.
    const long long cap = 64;
    std::vector<long long> delta(uf.size());
    for (long long total = static_cast<long long>(uf.size()); total <= cap; ++total) {
        // All compositions of `total` into |I_uf| positive parts, lexicographic.
        std::vector<std::vector<long long>> comps;
        std::function<void(std::size_t, long long)> rec = [&](std::size_t pos, long long rest) {
            if (pos + 1 == uf.size()) {
                delta[pos] = rest;
                comps.push_back(delta);
                return;
            }
            for (long long x = 1; x <= rest - static_cast<long long>(uf.size() - pos - 1); ++x) {
                delta[pos] = x;
                rec(pos + 1, rest - x);
            }
        };
        rec(0, total);
        for (const auto& d : comps)
            if (admissible_delta(d))
                if (auto l = try_delta(d)) return *l;
    }
    throw Incompatible("no integer compatible lambda found");
}

Seed make_initial_seed(const FramePtr& frame, const IntMatrix& b) {
    check_skew_symmetrizable(b, frame->d, frame->vertices);
    const std::size_t n = frame->size();
    Seed s;
    s.frame = frame;
    s.lattice = std::make_shared<const DegreeLattice>(b, frame->unfrozen);
    s.b = b;
    if (frame->lambda) {
        check_compatibility(*frame->lambda, b, frame->unfrozen, frame->vertices);
        s.lambda_local = frame->lambda;
    }
    for (std::size_t i = 0; i < n; ++i) {
        s.vars.push_back(TorusElement::monomial(frame, Exponent::unit(n, i)));
        s.degrees.push_back(Exponent::unit(n, i));
    }
    return s;
}

Seed reanchor(const Seed& s) {
    auto frame = make_frame(s.frame->vertices, s.frame->unfrozen, s.frame->d, s.lambda_local);
    return make_initial_seed(frame, s.b);
}

Seed classical_seed(const Seed& s) {
    Seed out = s;
    out.frame = classical_frame(s.frame);
    out.lambda_local.reset();
    for (auto& x : out.vars) {
        TorusElement c(out.frame);
        for (const auto& [m, coef] : x.terms()) c.add_term(m, ScalarPoly(coef.at_one()));
        x = c;
    }
    return out;
}

TorusElement cluster_monomial(const Seed& s, const std::vector<int>& m) {
    if (m.size() != s.size()) throw Error("monomial exponent has wrong length");
    TorusElement out = TorusElement::constant(s.frame, 1);
    long long twist = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) throw Error("cluster monomial exponents must be nonnegative");
        if (m[i] == 0) continue;
        out = out * power(s.vars[i], static_cast<unsigned>(m[i]));
        if (s.lambda_local)
            for (std::size_t j = i + 1; j < m.size(); ++j) twist += static_cast<long long>(m[i]) * m[j] * (*s.lambda_local)(i, j);
    }
    // X^a * X^b = v^{Lambda(a,b)} X^{a+b}, so the ordered product carries v^{sum_{i<j} m_i m_j lambda_ij}.
    if (twist != 0) out = ScalarPoly::v_power(static_cast<int>(-twist)) * out;
    return out;
}

Seed mutate_seed(const Seed& s, std::size_t k) {
    check_mutable(s.frame->unfrozen, k, s.frame->vertices);
    const std::size_t n = s.size();
    std::vector<int> m1(n, 0), m2(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        m1[j] = static_cast<int>(std::max(-s.b(j, k), 0LL));
        m2[j] = static_cast<int>(std::max(s.b(j, k), 0LL));
    }
    auto twist = [&](const std::vector<int>& m) {
        if (!s.lambda_local) return 0LL;
        long long w = 0;
        for (std::size_t j = 0; j < n; ++j) w += (*s.lambda_local)(k, j) * m[j];
        return w;
    };
    // X_k' * X_k = v^{-Lambda(f_k,m1)} X^{m1} + v^{-Lambda(f_k,m2)} X^{m2} in the seed's own torus.
    TorusElement numerator = ScalarPoly::v_power(static_cast<int>(-twist(m1))) * cluster_monomial(s, m1) +
                             ScalarPoly::v_power(static_cast<int>(-twist(m2))) * cluster_monomial(s, m2);
    TorusElement fresh = exact_divide(numerator, s.vars[k], Side::right);

    Seed out = s;
    out.b = mutate_b(s.b, k, s.frame->unfrozen);
    out.degrees[k] = extract_pointed(fresh, *s.lattice).g;
    out.vars[k] = std::move(fresh);
    if (s.lambda_local) out.lambda_local = pullback_lambda(*s.frame, out.degrees);
    out.history.push_back(static_cast<int>(k));
    return out;
}

Seed mutate_sequence(Seed s, const std::vector<int>& sequence) {
    for (int k : sequence) {
        if (k < 0) throw Error("vertex out of range");
        s = mutate_seed(s, static_cast<std::size_t>(k));
    }
    return s;
}

TriangulationMatrix triangulation_to_b(const Triangulation& tri) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < tri.arcs.size(); ++i)
        if (!index.emplace(tri.arcs[i], i).second) throw ParseError("arc '" + tri.arcs[i] + "' declared twice");
    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) throw ParseError("arc '" + id + "' is not declared");
        return it->second;
    };
    const std::size_t n = tri.arcs.size();
    TriangulationMatrix out{IntMatrix(n, n), std::vector<bool>(n, false)};
    for (const auto& f : tri.frozen_arcs) out.frozen[lookup(f)] = true;
    for (const auto& t : tri.triangles) {
        std::array<std::size_t, 3> ids{lookup(t[0]), lookup(t[1]), lookup(t[2])};
        if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2])
            throw ParseError("triangle (" + t[0] + "," + t[1] + "," + t[2] + ") repeats an arc (self-folded triangles are not supported)");
        for (std::size_t e = 0; e < 3; ++e) {
            std::size_t i = ids[e], j = ids[(e + 1) % 3];
            out.b(i, j) += 1;
            out.b(j, i) -= 1;
        }
    }
    return out;
}

Seed seed_from_triangulation(const Triangulation& tri) {
    auto tb = triangulation_to_b(tri);
    std::vector<bool> unfrozen(tb.frozen.size());
    for (std::size_t i = 0; i < unfrozen.size(); ++i) unfrozen[i] = !tb.frozen[i];
    auto frame = make_frame(tri.arcs, unfrozen, std::vector<int>(tri.arcs.size(), 1));
    return make_initial_seed(frame, tb.b);
}

}  // namespace cluster
