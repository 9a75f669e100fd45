#include "cluster/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace cluster {

QMatrix to_rational(const IntMatrix& m) {
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(static_cast<long>(m(i, j)));
    return q;
}

IntMatrix select_columns(const IntMatrix& m, const std::vector<std::size_t>& cols) {
    IntMatrix out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(i, cols[j]);
    return out;
}

std::string render_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace cluster

namespace cluster::linalg {

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<std::vector<Rational>> kernel(QMatrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
    std::vector<Integer> out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational s = v[i] * Rational(l);
        out[i] = s.get_num();
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

LeftInverse::LeftInverse(const IntMatrix& m) : m_(m) {
    // Independent rows are the pivot columns of the transpose.
    QMatrix t = to_rational(m).transpose();
    auto pivots = rref(t);
    if (pivots.size() != m.cols()) throw std::invalid_argument("matrix does not have full column rank");
    rows_ = pivots;
    const std::size_t n = m.cols();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rational(static_cast<long>(m(rows_[i], j)));
        aug(i, n + i) = 1;
    }
    rref(aug);
    inverse_ = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inverse_(i, j) = aug(i, n + j);
}

std::vector<Rational> LeftInverse::project(const std::vector<long long>& y) const {
    const std::size_t n = m_.cols();
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (inverse_(i, j) != 0) x[i] += inverse_(i, j) * Rational(static_cast<long>(y[rows_[j]]));
    return x;
}

std::optional<std::vector<Rational>> LeftInverse::apply(const std::vector<long long>& y) const {
    const std::size_t n = m_.cols();
    std::vector<Rational> x = project(y);
    for (std::size_t r = 0; r < m_.rows(); ++r) {
        Rational s = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (m_(r, j) != 0) s += Rational(static_cast<long>(m_(r, j))) * x[j];
        if (s != Rational(static_cast<long>(y[r]))) return std::nullopt;
    }
    return x;
}

std::optional<std::vector<long long>> LeftInverse::apply_integral(const std::vector<long long>& y) const {
    auto x = apply(y);
    if (!x) return std::nullopt;
    std::vector<long long> out(x->size());
    for (std::size_t i = 0; i < x->size(); ++i) {
        if ((*x)[i].get_den() != 1) return std::nullopt;
        out[i] = (*x)[i].get_num().get_si();
    }
    return out;
}

namespace {

using IVec = std::vector<Integer>;

// Row Hermite form of a list of integer row vectors: echelon, positive
// pivots, entries above each pivot reduced into [0, pivot).
std::vector<IVec> hermite_rows(std::vector<IVec> rows, std::size_t width) {
    std::size_t r = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < width; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& x : rows[r]) x = -x;
            for (std::size_t i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                if (q != 0)
                    for (std::size_t j = 0; j < width; ++j) rows[i][j] -= q * rows[r][j];
            }
            pivot_cols.push_back(c);
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace

IntegerSystem::IntegerSystem(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()) {
    a_.assign(rows_, IVec(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) a_[i][j] = static_cast<long>(a(i, j));
    h_ = a_;
    u_.assign(cols_, IVec(cols_, Integer(0)));
    for (std::size_t j = 0; j < cols_; ++j) u_[j][j] = 1;

    // Column operations on h_ (and u_), stored row-major.
    auto col_combine = [&](std::size_t k, std::size_t c, const Integer& s, const Integer& t, const Integer& p,
                           const Integer& q) {
        // [col_k, col_c] <- [s col_k + t col_c, p col_k + q col_c]
        auto apply = [&](std::vector<IVec>& m) {
            for (auto& row : m) {
                Integer x = row[k], y = row[c];
                row[k] = s * x + t * y;
                row[c] = p * x + q * y;
            }
        };
        apply(h_);
        apply(u_);
    };

    std::size_t k = 0;
    for (std::size_t r = 0; r < rows_ && k < cols_; ++r) {
        for (std::size_t c = k + 1; c < cols_; ++c) {
            if (h_[r][c] == 0) continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h_[r][k].get_mpz_t(), h_[r][c].get_mpz_t());
            Integer a_div = h_[r][k] / g, b_div = h_[r][c] / g;
            col_combine(k, c, s, t, -b_div, a_div);
        }
        if (h_[r][k] == 0) continue;
        if (h_[r][k] < 0) {
            for (auto& row : h_) row[k] = -row[k];
            for (auto& row : u_) row[k] = -row[k];
        }
        pivot_rows_.push_back(r);
        ++k;
    }
    std::vector<IVec> kern;
    for (std::size_t c = k; c < cols_; ++c) {
        IVec v(cols_);
        for (std::size_t i = 0; i < cols_; ++i) v[i] = u_[i][c];
        kern.push_back(std::move(v));
    }
    kernel_ = hermite_rows(std::move(kern), cols_);
}

std::optional<std::vector<Integer>> IntegerSystem::solve(const std::vector<Integer>& b) const {
    const std::size_t rank = pivot_rows_.size();
    IVec y(cols_, Integer(0));
    for (std::size_t k = 0; k < rank; ++k) {
        std::size_t r = pivot_rows_[k];
        Integer rhs = b[r];
        for (std::size_t j = 0; j < k; ++j) rhs -= h_[r][j] * y[j];
        if (!mpz_divisible_p(rhs.get_mpz_t(), h_[r][k].get_mpz_t())) return std::nullopt;
        y[k] = rhs / h_[r][k];
    }
    IVec x(cols_, Integer(0));
    for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = 0; j < rank; ++j) x[i] += u_[i][j] * y[j];
    for (std::size_t i = 0; i < rows_; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += a_[i][j] * x[j];
        if (s != b[i]) return std::nullopt;
    }
    // Canonical representative: pull each pivot coordinate into [-P/2, P/2).
    for (const auto& row : kernel_) {
        std::size_t q = 0;
        while (row[q] == 0) ++q;
        Integer num = 2 * x[q] + row[q];
        Integer den = 2 * row[q];
        Integer t;
        mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (t != 0)
            for (std::size_t j = 0; j < cols_; ++j) x[j] -= t * row[j];
    }
    return x;
}

std::int64_t mod_normalize(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = mod_normalize(a, p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw std::domain_error("element not invertible modulo p");
    return mod_normalize(t, p);
}

std::optional<ModMatrix> reduce_mod(const QMatrix& m, std::int64_t p) {
    ModMatrix out(m.rows(), m.cols(), 0);
    Integer pz = static_cast<long>(p);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m(i, j);
            Integer num = q.get_num() % pz, den = q.get_den() % pz;
            std::int64_t d = mod_normalize(den.get_si(), p);
            if (d == 0) return std::nullopt;
            out(i, j) = mod_mul(mod_normalize(num.get_si(), p), mod_inverse(d, p), p);
        }
    return out;
}

std::vector<std::size_t> rref_mod(ModMatrix& m, std::int64_t p) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        std::int64_t inv = mod_inverse(m(r, c), p);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = mod_mul(m(r, j), inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            std::int64_t f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = mod_normalize(m(i, j) - mod_mul(f, m(r, j), p), p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank_mod(ModMatrix m, std::int64_t p) { return rref_mod(m, p).size(); }

std::vector<std::vector<std::int64_t>> kernel_mod(ModMatrix m, std::int64_t p) {
    auto pivots = rref_mod(m, p);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::int64_t>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::int64_t> v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = mod_normalize(-m(r, f), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

ModMatrix mul_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t p) {
    ModMatrix c(a.rows(), b.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = (c(i, j) + mod_mul(a(i, k), b(k, j), p)) % p;
        }
    return c;
}

}  // namespace cluster::linalg
