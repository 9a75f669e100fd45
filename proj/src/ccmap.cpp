#include "cluster/ccmap.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "cluster/error.hpp"
#include "cluster/linalg.hpp"

namespace cluster {

namespace {

using linalg::ModMatrix;
using Vec = std::vector<std::int64_t>;

// ---------------- small helpers ----------------

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t next_prime(std::int64_t n) {
    while (!is_prime(n)) ++n;
    return n;
}

Integer int_pow(std::int64_t p, int e) {
    Integer r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<long>(p);
    return r;
}

// Number of b-dimensional subspaces of F_p^a.
Integer gaussian_binomial(int a, int b, std::int64_t p) {
    if (b < 0 || b > a) return 0;
    Integer num = 1, den = 1;
    for (int i = 0; i < b; ++i) {
        num *= int_pow(p, a - i) - 1;
        den *= int_pow(p, i + 1) - 1;
    }
    return num / den;
}

Vec apply(const ModMatrix& a, const Vec& x, std::int64_t p) {
    Vec y(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) && x[j]) s = (s + linalg::mod_mul(a(i, j), x[j], p)) % p;
        y[i] = s;
    }
    return y;
}

ModMatrix rows_matrix(const std::vector<Vec>& rows, std::size_t d) {
    ModMatrix m(rows.size(), d, 0);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
    return m;
}

// Echelon basis (reduced) of the span of `rows` and its pivot columns.
std::pair<std::vector<Vec>, std::vector<std::size_t>> span_rref(const std::vector<Vec>& rows, std::size_t d, std::int64_t p) {
    if (rows.empty()) return {};
    ModMatrix m = rows_matrix(rows, d);
    auto piv = linalg::rref_mod(m, p);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        Vec v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = m(r, j);
        basis.push_back(std::move(v));
    }
    return {basis, piv};
}

// Rows spanning {y : y.u = 0 for u in U}; the identity when U = 0.
std::vector<Vec> annihilator(const std::vector<Vec>& u, std::size_t d, std::int64_t p) {
    if (u.empty()) {
        std::vector<Vec> id(d, Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
        return id;
    }
    return linalg::kernel_mod(rows_matrix(u, d), p);
}

struct ModRep {
    std::vector<int> dims;
    std::vector<ModMatrix> maps;
};

std::optional<ModRep> reduce_rep(const QuiverRep& rep, std::int64_t p) {
    ModRep out{rep.dims, {}};
    for (const auto& m : rep.maps) {
        auto r = linalg::reduce_mod(m, p);
        if (!r) return std::nullopt;
        out.maps.push_back(std::move(*r));
    }
    return out;
}

// Calls `visit` with a basis of every subspace U with W <= U <= F_p^d and dim U = r.
void for_each_superspace(const std::vector<Vec>& w, const std::vector<std::size_t>& w_pivots, std::size_t d, int r,
                         std::int64_t p, std::uint64_t& budget, const std::function<void(const std::vector<Vec>&)>& visit) {
    const int wd = static_cast<int>(w.size());
    if (r < wd || r > static_cast<int>(d)) return;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < d; ++c)
        if (std::find(w_pivots.begin(), w_pivots.end(), c) == w_pivots.end()) free_cols.push_back(c);
    const std::size_t f = free_cols.size();
    const std::size_t k = static_cast<std::size_t>(r - wd);

    // Pivot sets of the quotient subspace in reduced echelon form.
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    std::vector<Vec> basis = w;
    basis.resize(w.size() + k, Vec(d, 0));
    while (true) {
        std::vector<std::pair<std::size_t, std::size_t>> slots;  // (row, quotient column)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = piv[j] + 1; c < f; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) slots.emplace_back(j, c);
        std::vector<std::int64_t> val(slots.size(), 0);
        while (true) {
            if (budget == 0) throw BudgetExceeded("subspace enumeration budget exceeded");
            --budget;
            for (std::size_t j = 0; j < k; ++j) {
                Vec& v = basis[w.size() + j];
                std::fill(v.begin(), v.end(), 0);
                v[free_cols[piv[j]]] = 1;
            }
            for (std::size_t s = 0; s < slots.size(); ++s) basis[w.size() + slots[s].first][free_cols[slots[s].second]] = val[s];
            visit(basis);
            std::size_t s = 0;
            while (s < val.size() && val[s] == p - 1) val[s++] = 0;
            if (s == val.size()) break;
            ++val[s];
        }
        // Next combination.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == f - k + i - 1) --i;
        if (i == 0) break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

// Counts subrepresentations for all dimension vectors (target == nullptr) or one.
std::map<std::vector<int>, Integer> count_submodules(const QuiverRep& rep, const ModRep& mod, std::int64_t p,
                                                     const std::vector<int>* target, std::uint64_t budget) {
    const Quiver& q = rep.quiver;
    const std::size_t nv = q.size();
    auto order = topological_order(q);

    // Independent vertex set with the largest total dim^2, counted by Gaussian binomials.
    std::vector<bool> adjacent(nv * nv, false);
    for (auto [s, t] : q.arrows) adjacent[s * nv + t] = adjacent[t * nv + s] = true;
    std::uint64_t best_mask = 0;
    long best_weight = -1;
    const std::size_t limit = nv <= 20 ? nv : 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << limit); ++mask) {
        bool ok = true;
        long weight = 0;
        for (std::size_t i = 0; i < limit && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            weight += static_cast<long>(mod.dims[i]) * mod.dims[i] + 1;
            for (std::size_t j = i + 1; j < limit; ++j)
                if ((mask >> j & 1) && adjacent[i * nv + j]) ok = false;
        }
        if (ok && weight > best_weight) best_weight = weight, best_mask = mask;
    }
    std::vector<bool> in_s(nv, false);
    for (std::size_t i = 0; i < limit; ++i) in_s[i] = best_mask >> i & 1;
    std::vector<std::size_t> comp, indep;
    for (auto v : order) (in_s[v] ? indep : comp).push_back(v);

    std::vector<std::vector<std::size_t>> incoming(nv), outgoing(nv);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        outgoing[q.arrows[a].first].push_back(a);
        incoming[q.arrows[a].second].push_back(a);
    }

    std::map<std::vector<int>, Integer> counts;
    std::vector<std::vector<Vec>> chosen(nv);
    std::vector<int> dims_now(nv, 0);

    auto images = [&](std::size_t v) {
        std::vector<Vec> out;
        for (auto a : incoming[v])
            for (const auto& u : chosen[q.arrows[a].first]) out.push_back(apply(mod.maps[a], u, p));
        return out;
    };

    std::function<void(std::size_t)> descend = [&](std::size_t idx) {
        if (idx == comp.size()) {
            // Per independent vertex: subspaces between the incoming images W and the preimage P.
            std::vector<std::vector<Integer>> per_vertex;
            for (auto s : indep) {
                const std::size_t d = static_cast<std::size_t>(mod.dims[s]);
                auto [w, wp] = span_rref(images(s), d, p);
                std::vector<Vec> constraints;
                for (auto a : outgoing[s]) {
                    std::size_t t = q.arrows[a].second;
                    for (const auto& y : annihilator(chosen[t], static_cast<std::size_t>(mod.dims[t]), p)) {
                        Vec row(d, 0);
                        for (std::size_t j = 0; j < d; ++j)
                            for (std::size_t i = 0; i < y.size(); ++i)
                                row[j] = (row[j] + linalg::mod_mul(y[i], mod.maps[a](i, j), p)) % p;
                        constraints.push_back(std::move(row));
                    }
                }
                int rank_c = constraints.empty() ? 0 : static_cast<int>(linalg::rank_mod(rows_matrix(constraints, d), p));
                bool contained = true;
                for (const auto& x : w)
                    for (const auto& c : constraints) {
                        std::int64_t s2 = 0;
                        for (std::size_t j = 0; j < d; ++j) s2 = (s2 + linalg::mod_mul(c[j], x[j], p)) % p;
                        if (s2 != 0) contained = false;
                    }
                std::vector<Integer> by_dim(d + 1, Integer(0));
                if (contained) {
                    int top = static_cast<int>(d) - rank_c, low = static_cast<int>(w.size());
                    for (int r = low; r <= top; ++r) by_dim[static_cast<std::size_t>(r)] = gaussian_binomial(top - low, r - low, p);
                }
                per_vertex.push_back(std::move(by_dim));
            }
            // Accumulate over dimension choices at the independent vertices.
            std::vector<int> nvec = dims_now;
            std::function<void(std::size_t, const Integer&)> spread = [&](std::size_t j, const Integer& acc) {
                if (acc == 0) return;
                if (j == indep.size()) {
                    counts[nvec] += acc;
                    return;
                }
                std::size_t v = indep[j];
                for (std::size_t r = 0; r < per_vertex[j].size(); ++r) {
                    if (target && static_cast<int>(r) != (*target)[v]) continue;
                    nvec[v] = static_cast<int>(r);
                    spread(j + 1, acc * per_vertex[j][r]);
                }
            };
            spread(0, Integer(1));
            return;
        }
        std::size_t v = comp[idx];
        const std::size_t d = static_cast<std::size_t>(mod.dims[v]);
        auto [w, wp] = span_rref(images(v), d, p);
        for (int r = static_cast<int>(w.size()); r <= static_cast<int>(d); ++r) {
            if (target && r != (*target)[v]) continue;
            dims_now[v] = r;
            for_each_superspace(w, wp, d, r, p, budget, [&](const std::vector<Vec>& basis) {
                chosen[v] = basis;
                descend(idx + 1);
            });
        }
        chosen[v].clear();
        dims_now[v] = 0;
    };
    descend(0);
    return counts;
}

// ---------------- rational helpers ----------------

std::size_t q_rank(const QMatrix& m) { return linalg::rank(m); }

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    QMatrix c(a.rows(), b.cols(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0)
                for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

using Endo = std::vector<QMatrix>;  // one block per vertex

Rational trace_of_product(const Endo& a, const Endo& b) {
    Rational t = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        QMatrix m = mat_mul(a[v], b[v]);
        for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    }
    return t;
}

// Sum of the dimensions of generalized eigenspaces with eigenvalue in F_p.
bool splits_mod(const ModMatrix& a, std::int64_t p) {
    const std::size_t d = a.rows();
    if (d == 0) return true;
    std::size_t total = 0;
    for (std::int64_t lambda = 0; lambda < p && total < d; ++lambda) {
        ModMatrix shifted = a;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) = linalg::mod_normalize(shifted(i, i) - lambda, p);
        if (linalg::rank_mod(shifted, p) == d) continue;
        ModMatrix pw = shifted;
        for (std::size_t e = 1; e < d; ++e) pw = linalg::mul_mod(pw, shifted, p);
        total += d - linalg::rank_mod(pw, p);
    }
    return total == d;
}

// Invariants of V over Q that a prime must preserve to give a faithful point count.
struct PrimeCheck {
    const QuiverRep& rep;
    std::vector<std::size_t> map_ranks;
    std::vector<Endo> end_basis;
    std::vector<Endo> test_elements;
    std::size_t gram_rank = 0;

    explicit PrimeCheck(const QuiverRep& r) : rep(r) {
        for (const auto& m : rep.maps) map_ranks.push_back(q_rank(m));
        end_basis = hom_basis(rep, rep);
        // A non-split simple factor of End V shows up as a basis element whose
        // characteristic polynomial does not split mod p.
        test_elements = end_basis;
        QMatrix gram(end_basis.size(), end_basis.size());
        for (std::size_t a = 0; a < end_basis.size(); ++a)
            for (std::size_t b = 0; b < end_basis.size(); ++b) gram(a, b) = trace_of_product(end_basis[a], end_basis[b]);
        gram_rank = q_rank(gram);
    }

    bool accepts(std::int64_t p) const {
        for (std::size_t a = 0; a < rep.maps.size(); ++a) {
            auto m = linalg::reduce_mod(rep.maps[a], p);
            if (!m || linalg::rank_mod(*m, p) != map_ranks[a]) return false;
        }
        auto mod = reduce_rep(rep, p);
        if (!mod) return false;
        if (mod_end_dim(*mod, p) != end_basis.size()) return false;
        QMatrix gram(end_basis.size(), end_basis.size());
        for (std::size_t a = 0; a < end_basis.size(); ++a)
            for (std::size_t b = 0; b < end_basis.size(); ++b) gram(a, b) = trace_of_product(end_basis[a], end_basis[b]);
        auto gm = linalg::reduce_mod(gram, p);
        if (!gm || linalg::rank_mod(*gm, p) != gram_rank) return false;
        for (const auto& e : test_elements)
            for (const auto& block : e) {
                auto b = linalg::reduce_mod(block, p);
                if (!b || !splits_mod(*b, p)) return false;
            }
        return true;
    }

    std::size_t mod_end_dim(const ModRep& mod, std::int64_t p) const {
        const Quiver& q = rep.quiver;
        std::vector<std::size_t> offset(q.size() + 1, 0);
        for (std::size_t v = 0; v < q.size(); ++v)
            offset[v + 1] = offset[v] + static_cast<std::size_t>(mod.dims[v]) * static_cast<std::size_t>(mod.dims[v]);
        std::vector<Vec> eqs;
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            auto [s, t] = q.arrows[a];
            const std::size_t ds = static_cast<std::size_t>(mod.dims[s]), dt = static_cast<std::size_t>(mod.dims[t]);
            for (std::size_t r = 0; r < dt; ++r)
                for (std::size_t c = 0; c < ds; ++c) {
                    Vec row(offset.back(), 0);
                    // (A phi_s - phi_t A)(r, c)
                    for (std::size_t m = 0; m < ds; ++m)
                        row[offset[s] + m * ds + c] = (row[offset[s] + m * ds + c] + mod.maps[a](r, m)) % p;
                    for (std::size_t m = 0; m < dt; ++m)
                        row[offset[t] + r * dt + m] = linalg::mod_normalize(row[offset[t] + r * dt + m] - mod.maps[a](m, c), p);
                    eqs.push_back(std::move(row));
                }
        }
        if (eqs.empty()) return offset.back();
        return offset.back() - linalg::rank_mod(rows_matrix(eqs, offset.back()), p);
    }
};

// Newton interpolation through (x_i, y_i); coefficients in the monomial basis.
std::vector<Rational> interpolate(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    const std::size_t n = x.size();
    std::vector<Rational> c = y;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            c[i] = (c[i] - c[i - 1]) / (x[i] - x[i - j]);
            if (i == j) break;
        }
    std::vector<Rational> poly(n, Rational(0));
    for (std::size_t k = n; k-- > 0;) {
        // poly = poly * (z - x_k) + c_k
        std::vector<Rational> next(n, Rational(0));
        for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] += poly[i];
        for (std::size_t i = 0; i < n; ++i) next[i] -= poly[i] * x[k];
        next[0] += c[k];
        poly = std::move(next);
    }
    return poly;
}

Rational evaluate(const std::vector<Rational>& poly, const Rational& z) {
    Rational r = 0;
    for (std::size_t i = poly.size(); i-- > 0;) r = r * z + poly[i];
    return r;
}

}  // namespace

// ---------------- quivers ----------------

std::vector<std::size_t> topological_order(const Quiver& q) {
    const std::size_t n = q.size();
    std::vector<std::size_t> indeg(n, 0), order;
    for (auto [s, t] : q.arrows) {
        if (s >= n || t >= n) throw ParseError("arrow endpoint out of range");
        ++indeg[t];
    }
    std::vector<bool> done(n, false);
    for (std::size_t round = 0; round < n; ++round) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        if (pick == n) throw Error("quiver has an oriented cycle; only acyclic quivers are supported");
        done[pick] = true;
        order.push_back(pick);
        for (auto [s, t] : q.arrows)
            if (s == pick) --indeg[t];
    }
    return order;
}

void check_quiver_matches(const Quiver& q, const Seed& s) {
    auto uf = s.unfrozen_indices();
    if (q.size() != uf.size()) throw Error("quiver has " + std::to_string(q.size()) + " vertices, seed has " +
                                           std::to_string(uf.size()) + " unfrozen vertices");
    for (std::size_t i = 0; i < uf.size(); ++i)
        for (std::size_t j = 0; j < uf.size(); ++j) {
            if (i == j) continue;
            long long net = 0;
            for (auto [a, b] : q.arrows) {
                if (a == i && b == j) ++net;
                if (a == j && b == i) --net;
            }
            if (net != -s.b(uf[i], uf[j]))
                throw Error("quiver arrows between " + q.vertices[i] + " and " + q.vertices[j] +
                            " do not match the exchange matrix");
        }
}

Quiver quiver_of_seed(const Seed& s) {
    Quiver q;
    auto uf = s.unfrozen_indices();
    for (auto i : uf) q.vertices.push_back(s.frame->vertices[i]);
    for (std::size_t i = 0; i < uf.size(); ++i)
        for (std::size_t j = 0; j < uf.size(); ++j)
            for (long long c = 0; c < -s.b(uf[i], uf[j]); ++c) q.arrows.emplace_back(i, j);
    return q;
}

void validate(const QuiverRep& rep) {
    const Quiver& q = rep.quiver;
    if (rep.dims.size() != q.size()) throw ParseError("dims has wrong length");
    for (int d : rep.dims)
        if (d < 0) throw ParseError("dimensions must be nonnegative");
    if (rep.maps.size() != q.arrows.size()) throw ParseError("one matrix per arrow is required");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        if (s >= q.size() || t >= q.size()) throw ParseError("arrow endpoint out of range");
        if (rep.maps[a].rows() != static_cast<std::size_t>(rep.dims[t]) || rep.maps[a].cols() != static_cast<std::size_t>(rep.dims[s]))
            throw ParseError("matrix of arrow " + std::to_string(a) + " must be " + std::to_string(rep.dims[t]) + "x" +
                             std::to_string(rep.dims[s]));
    }
    topological_order(q);
}

QuiverRep zero_rep(const Quiver& q) {
    QuiverRep r{q, std::vector<int>(q.size(), 0), {}};
    for (std::size_t a = 0; a < q.arrows.size(); ++a) r.maps.emplace_back(0, 0);
    return r;
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
    if (a.quiver.vertices != b.quiver.vertices || a.quiver.arrows != b.quiver.arrows) throw Error("direct sum of representations of different quivers");
    QuiverRep r{a.quiver, {}, {}};
    for (std::size_t v = 0; v < a.dims.size(); ++v) r.dims.push_back(a.dims[v] + b.dims[v]);
    for (std::size_t e = 0; e < a.maps.size(); ++e) {
        const QMatrix& x = a.maps[e];
        const QMatrix& y = b.maps[e];
        QMatrix m(x.rows() + y.rows(), x.cols() + y.cols(), Rational(0));
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
        r.maps.push_back(std::move(m));
    }
    return r;
}

QuiverRep injective_rep(const Quiver& q, std::size_t k) {
    topological_order(q);
    const std::size_t n = q.size();
    if (k >= n) throw Error("vertex out of range");
    // paths[j]: arrow sequences from j to k.
    std::vector<std::vector<std::vector<std::size_t>>> paths(n);
    std::function<void(std::size_t, std::vector<std::size_t>&, std::size_t)> walk = [&](std::size_t start, std::vector<std::size_t>& path, std::size_t at) {
        if (at == k) paths[start].push_back(path);
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
            if (q.arrows[a].first == at) {
                path.push_back(a);
                walk(start, path, q.arrows[a].second);
                path.pop_back();
            }
    };
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> path;
        walk(j, path, j);
    }
    QuiverRep r{q, {}, {}};
    for (std::size_t j = 0; j < n; ++j) r.dims.push_back(static_cast<int>(paths[j].size()));
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        QMatrix m(paths[t].size(), paths[s].size(), Rational(0));
        for (std::size_t i = 0; i < paths[s].size(); ++i) {
            const auto& path = paths[s][i];
            if (path.empty() || path.front() != a) continue;
            std::vector<std::size_t> rest(path.begin() + 1, path.end());
            auto it = std::find(paths[t].begin(), paths[t].end(), rest);
            m(static_cast<std::size_t>(it - paths[t].begin()), i) = 1;
        }
        r.maps.push_back(std::move(m));
    }
    return r;
}

// ---------------- counting ----------------

Integer submodule_count(const QuiverRep& rep, const std::vector<int>& n, std::int64_t p, std::uint64_t budget) {
    validate(rep);
    if (!is_prime(p)) throw Error("field size must be prime");
    if (n.size() != rep.dims.size()) throw Error("dimension vector has wrong length");
    for (std::size_t i = 0; i < n.size(); ++i)
        if (n[i] < 0 || n[i] > rep.dims[i]) return 0;
    auto mod = reduce_rep(rep, p);
    if (!mod) throw Error("a matrix entry has a denominator divisible by " + std::to_string(p));
    auto counts = count_submodules(rep, *mod, p, &n, budget);
    auto it = counts.find(n);
    return it == counts.end() ? Integer(0) : it->second;
}

std::map<std::vector<int>, Integer> submodule_counts(const QuiverRep& rep, std::int64_t p, std::uint64_t budget) {
    validate(rep);
    if (!is_prime(p)) throw Error("field size must be prime");
    auto mod = reduce_rep(rep, p);
    if (!mod) throw Error("a matrix entry has a denominator divisible by " + std::to_string(p));
    return count_submodules(rep, *mod, p, nullptr, budget);
}

EulerData euler_characteristics(const QuiverRep& rep, std::uint64_t budget) {
    validate(rep);
    int total = 0, degree = 0;
    for (int d : rep.dims) {
        total += d;
        degree += (d / 2) * (d - d / 2);
    }
    const std::size_t needed = static_cast<std::size_t>(degree) + 2;
    PrimeCheck check(rep);

    EulerData out;
    std::vector<std::map<std::vector<int>, Integer>> samples;
    std::int64_t p = next_prime(std::max(total + 1, 2));
    for (int scanned = 0; out.primes.size() < needed; ++scanned, p = next_prime(p + 1)) {
        if (scanned > 5000) throw Error("could not find enough primes with a faithful reduction");
        if (!check.accepts(p)) continue;
        out.primes.push_back(p);
        samples.push_back(submodule_counts(rep, p, budget));
    }

    // Every dimension vector 0 <= n <= dims.
    std::vector<int> n(rep.dims.size(), 0);
    while (true) {
        std::vector<Rational> xs, ys;
        for (std::size_t i = 0; i + 1 < needed; ++i) {
            xs.push_back(Rational(static_cast<long>(out.primes[i])));
            auto it = samples[i].find(n);
            ys.push_back(Rational(it == samples[i].end() ? Integer(0) : it->second));
        }
        auto poly = interpolate(xs, ys);
        std::vector<Integer> coeffs;
        for (const auto& c : poly) {
            if (c.get_den() != 1) throw Error("point counts do not fit an integer polynomial (dimension vector " + Exponent(n).to_string() + ")");
            coeffs.push_back(c.get_num());
        }
        for (std::size_t i = needed - 1; i < out.primes.size(); ++i) {
            auto it = samples[i].find(n);
            Integer y = it == samples[i].end() ? Integer(0) : it->second;
            if (evaluate(poly, Rational(static_cast<long>(out.primes[i]))) != Rational(y))
                throw Error("point counts are inconsistent with a polynomial of degree " + std::to_string(degree));
        }
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
        Integer chi = evaluate(poly, Rational(1)).get_num();
        if (chi != 0) out.chi[n] = chi;
        out.counting_polynomial[n] = coeffs;

        std::size_t i = 0;
        while (i < n.size() && n[i] == rep.dims[i]) n[i++] = 0;
        if (i == n.size()) break;
        ++n[i];
    }
    return out;
}

Integer euler_char(const QuiverRep& rep, const std::vector<int>& n) {
    auto data = euler_characteristics(rep);
    auto it = data.chi.find(n);
    return it == data.chi.end() ? Integer(0) : it->second;
}

// ---------------- g-vectors and the CC map ----------------

Exponent injective_g_vector(const QuiverRep& rep) {
    validate(rep);
    const Quiver& q = rep.quiver;
    Exponent g(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) {
        std::size_t rows = 0;
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
            if (q.arrows[a].first == k) rows += static_cast<std::size_t>(rep.dims[q.arrows[a].second]);
        QMatrix stacked(rows, static_cast<std::size_t>(rep.dims[k]), Rational(0));
        std::size_t r0 = 0;
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            if (q.arrows[a].first != k) continue;
            for (std::size_t i = 0; i < rep.maps[a].rows(); ++i)
                for (std::size_t j = 0; j < rep.maps[a].cols(); ++j) stacked(r0 + i, j) = rep.maps[a](i, j);
            r0 += rep.maps[a].rows();
        }
        int rank = rows == 0 || rep.dims[k] == 0 ? 0 : static_cast<int>(q_rank(stacked));
        int socle = rep.dims[k] - rank;                     // m_k
        int cosocle = static_cast<int>(rows) - rank;        // m'_k = dim Ext^1(S_k, V)
        g[k] = cosocle - socle;
    }
    return g;
}

TorusElement cc_with_degree(const Exponent& principal_g, const EulerData& chi, const Seed& s) {
    if (s.quantum()) throw Error("the CC map is defined on classical seeds");
    auto uf = s.unfrozen_indices();
    if (principal_g.size() != uf.size()) throw Error("degree has wrong length");
    const std::size_t n = s.size();
    Exponent g(n);
    for (std::size_t k = 0; k < uf.size(); ++k) g[uf[k]] = principal_g[k];
    TorusElement out(s.frame);
    for (const auto& [dim, c] : chi.chi) {
        Exponent m = g;
        for (std::size_t k = 0; k < uf.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) m[i] += dim[k] * static_cast<int>(s.b(i, uf[k]));
        out.add_term(m, ScalarPoly(c));
    }
    return out;
}

TorusElement cc(const QuiverRep& rep, const Seed& s) {
    validate(rep);
    check_quiver_matches(rep.quiver, s);
    return cc_with_degree(injective_g_vector(rep), euler_characteristics(rep), s);
}

std::vector<std::vector<QMatrix>> hom_basis(const QuiverRep& x, const QuiverRep& y) {
    const Quiver& q = x.quiver;
    std::vector<std::size_t> offset(q.size() + 1, 0);
    for (std::size_t v = 0; v < q.size(); ++v)
        offset[v + 1] = offset[v] + static_cast<std::size_t>(y.dims[v]) * static_cast<std::size_t>(x.dims[v]);
    const std::size_t unknowns = offset.back();
    std::size_t eq_count = 0;
    for (auto [s, t] : q.arrows) eq_count += static_cast<std::size_t>(y.dims[t]) * static_cast<std::size_t>(x.dims[s]);
    QMatrix eqs(eq_count, unknowns, Rational(0));
    std::size_t row = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        const std::size_t xs = static_cast<std::size_t>(x.dims[s]), ys = static_cast<std::size_t>(y.dims[s]);
        const std::size_t xt = static_cast<std::size_t>(x.dims[t]), yt = static_cast<std::size_t>(y.dims[t]);
        for (std::size_t r = 0; r < yt; ++r)
            for (std::size_t c = 0; c < xs; ++c, ++row) {
                // (Y_a phi_s - phi_t X_a)(r, c)
                for (std::size_t m = 0; m < ys; ++m) eqs(row, offset[s] + m * xs + c) += y.maps[a](r, m);
                for (std::size_t m = 0; m < xt; ++m) eqs(row, offset[t] + r * xt + m) -= x.maps[a](m, c);
            }
    }
    std::vector<std::vector<Rational>> kernel;
    if (eq_count == 0) {
        for (std::size_t u = 0; u < unknowns; ++u) {
            std::vector<Rational> e(unknowns, Rational(0));
            e[u] = 1;
            kernel.push_back(e);
        }
    } else {
        kernel = linalg::kernel(eqs);
    }
    std::vector<std::vector<QMatrix>> out;
    for (const auto& vec : kernel) {
        auto ints = linalg::primitive_integer(vec);
        std::vector<QMatrix> phi;
        for (std::size_t v = 0; v < q.size(); ++v) {
            const std::size_t rows = static_cast<std::size_t>(y.dims[v]), cols = static_cast<std::size_t>(x.dims[v]);
            QMatrix m(rows, cols, Rational(0));
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(ints[offset[v] + i * cols + j]);
            phi.push_back(std::move(m));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

QuiverRep kernel_rep(const QuiverRep& domain, const std::vector<QMatrix>& f) {
    const Quiver& q = domain.quiver;
    std::vector<QMatrix> basis(q.size());  // columns span ker f_v
    QuiverRep out{q, std::vector<int>(q.size(), 0), {}};
    for (std::size_t v = 0; v < q.size(); ++v) {
        const std::size_t d = static_cast<std::size_t>(domain.dims[v]);
        std::vector<std::vector<Rational>> ker;
        if (f[v].rows() == 0) {
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<Rational> e(d, Rational(0));
                e[i] = 1;
                ker.push_back(e);
            }
        } else {
            ker = linalg::kernel(f[v]);
        }
        QMatrix b(d, ker.size(), Rational(0));
        for (std::size_t c = 0; c < ker.size(); ++c) {
            auto ints = linalg::primitive_integer(ker[c]);
            for (std::size_t i = 0; i < d; ++i) b(i, c) = Rational(ints[i]);
        }
        basis[v] = std::move(b);
        out.dims[v] = static_cast<int>(ker.size());
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        auto [s, t] = q.arrows[a];
        QMatrix m(basis[t].cols(), basis[s].cols(), Rational(0));
        for (std::size_t c = 0; c < basis[s].cols(); ++c) {
            std::vector<Rational> image(basis[t].rows(), Rational(0));
            for (std::size_t i = 0; i < domain.maps[a].rows(); ++i)
                for (std::size_t j = 0; j < domain.maps[a].cols(); ++j) image[i] += domain.maps[a](i, j) * basis[s](j, c);
            auto coords = linalg::solve(basis[t], image);
            if (!coords) throw Error("internal: kernel is not a subrepresentation");
            for (std::size_t i = 0; i < coords->size(); ++i) m(i, c) = (*coords)[i];
        }
        out.maps.push_back(std::move(m));
    }
    return out;
}

GenericCharacter generic_character(const Exponent& principal_g, const Quiver& q, const Seed& s, int samples,
                                   std::uint64_t rng_seed, int bound) {
    if (samples < 2) throw Error("generic character needs at least 2 samples");
    if (principal_g.size() != q.size()) throw Error("degree has wrong length");
    check_quiver_matches(q, s);
    topological_order(q);

    QuiverRep source = zero_rep(q), target = zero_rep(q);
    for (std::size_t k = 0; k < q.size(); ++k) {
        QuiverRep ik = injective_rep(q, k);
        for (int c = 0; c < std::max(-principal_g[k], 0); ++c) source = direct_sum(source, ik);
        for (int c = 0; c < std::max(principal_g[k], 0); ++c) target = direct_sum(target, ik);
    }
    auto basis = hom_basis(source, target);
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<int> coef(-bound, bound);

    GenericCharacter out;
    for (int t = 0; t < samples; ++t) {
        std::vector<QMatrix> f;
        for (std::size_t v = 0; v < q.size(); ++v)
            f.emplace_back(static_cast<std::size_t>(target.dims[v]), static_cast<std::size_t>(source.dims[v]), Rational(0));
        for (const auto& b : basis) {
            Rational c(coef(rng));
            for (std::size_t v = 0; v < q.size(); ++v)
                for (std::size_t i = 0; i < f[v].rows(); ++i)
                    for (std::size_t j = 0; j < f[v].cols(); ++j) f[v](i, j) += c * b[v](i, j);
        }
        QuiverRep ker = kernel_rep(source, f);
        out.sample_values.push_back(cc_with_degree(principal_g, euler_characteristics(ker), s));
    }
    for (std::size_t i = 1; i < out.sample_values.size(); ++i)
        if (out.sample_values[i].size() > out.sample_values[out.chosen].size()) out.chosen = i;
    out.value = out.sample_values[out.chosen];
    out.stable = std::all_of(out.sample_values.begin(), out.sample_values.end(),
                             [&](const TorusElement& v) { return v == out.value; });
    bool any_agree = false;
    for (std::size_t i = 0; i < out.sample_values.size() && !any_agree; ++i)
        for (std::size_t j = i + 1; j < out.sample_values.size(); ++j)
            if (out.sample_values[i] == out.sample_values[j]) any_agree = true;
    if (!any_agree) throw Error("generic character is unstable: all samples disagree");
    return out;
}

}  // namespace cluster
