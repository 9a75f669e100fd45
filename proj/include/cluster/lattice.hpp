#pragma once

#include <optional>
#include <vector>

#include "cluster/linalg.hpp"
#include "cluster/matrix.hpp"
#include "cluster/ring.hpp"

namespace cluster {

// The extended exchange matrix B~ (I x I_uf) of a seed, viewed as the map
// n -> B~n used by the dominance order and by pointedness.
class DegreeLattice {
public:
    DegreeLattice(const IntMatrix& b_full, const std::vector<bool>& unfrozen);

    const IntMatrix& b_tilde() const { return bt_; }
    std::size_t rank() const { return bt_.cols(); }
    std::size_t dim() const { return bt_.rows(); }

    // g + B~n
    Exponent shift(const Exponent& g, const std::vector<long long>& n) const;
    // The unique integer n with to = from + B~n, if it exists.
    std::optional<std::vector<long long>> offset(const Exponent& from, const Exponent& to) const;
    // Rational coordinates of m along B~ (left inverse applied without consistency check).
    std::vector<Rational> coordinates(const Exponent& m) const;

private:
    IntMatrix bt_;
    std::optional<linalg::LeftInverse> inverse_;
};

}  // namespace cluster
