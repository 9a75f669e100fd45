#include "cluster/lattice.hpp"

#include "cluster/error.hpp"

namespace cluster {

namespace {

std::vector<long long> to_ll(const Exponent& m) { return {m.values().begin(), m.values().end()}; }

}  // namespace

DegreeLattice::DegreeLattice(const IntMatrix& b_full, const std::vector<bool>& unfrozen) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < unfrozen.size(); ++k)
        if (unfrozen[k]) cols.push_back(k);
    bt_ = select_columns(b_full, cols);
    if (!cols.empty()) {
        if (linalg::rank(bt_) != cols.size()) throw Error("extended exchange matrix is rank deficient");
        inverse_.emplace(bt_);
    }
}

Exponent DegreeLattice::shift(const Exponent& g, const std::vector<long long>& n) const {
    Exponent out = g;
    for (std::size_t i = 0; i < bt_.rows(); ++i) {
        long long s = 0;
        for (std::size_t k = 0; k < bt_.cols(); ++k) s += bt_(i, k) * n[k];
        out[i] += static_cast<int>(s);
    }
    return out;
}

std::optional<std::vector<long long>> DegreeLattice::offset(const Exponent& from, const Exponent& to) const {
    if (!inverse_) {
        if (from == to) return std::vector<long long>{};
        return std::nullopt;
    }
    return inverse_->apply_integral(to_ll(to - from));
}

std::vector<Rational> DegreeLattice::coordinates(const Exponent& m) const {
    if (!inverse_) return {};
    return inverse_->project(to_ll(m));
}

}  // namespace cluster
