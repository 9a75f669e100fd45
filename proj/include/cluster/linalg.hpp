#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cluster/matrix.hpp"

namespace cluster::linalg {

// ---- exact linear algebra over Q ----

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);
std::size_t rank(const IntMatrix& m);

// Basis of {x : m x = 0}.
std::vector<std::vector<Rational>> kernel(QMatrix m);

// Some solution of m x = b, or nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);

// Scales a rational vector by the lcm of denominators and divides by the
// gcd of numerators, giving a primitive integer vector.
std::vector<Integer> primitive_integer(const std::vector<Rational>& v);

// Left inverse of an integer matrix with full column rank. `apply` returns the
// unique x with m x = y when such x exists (checked exactly).
class LeftInverse {
public:
    explicit LeftInverse(const IntMatrix& m);

    std::optional<std::vector<Rational>> apply(const std::vector<long long>& y) const;
    // Integer solution, or nullopt if none.
    std::optional<std::vector<long long>> apply_integral(const std::vector<long long>& y) const;

    // inverse * y restricted to the selected rows, without the consistency check.
    std::vector<Rational> project(const std::vector<long long>& y) const;

    const IntMatrix& matrix() const { return m_; }

private:
    IntMatrix m_;
    std::vector<std::size_t> rows_;
    QMatrix inverse_;
};

// ---- integer linear systems ----

// Solutions of A x = b over Z. Built once from A via a column Hermite
// reduction A U = H with U unimodular; each right-hand side is then cheap.
class IntegerSystem {
public:
    explicit IntegerSystem(const IntMatrix& a);

    // Integer solution reduced canonically modulo the kernel lattice, or
    // nullopt if the system has no integer solution.
    std::optional<std::vector<Integer>> solve(const std::vector<Integer>& b) const;

    // Basis of the integer kernel lattice, in row-echelon form with positive pivots.
    const std::vector<std::vector<Integer>>& kernel_basis() const { return kernel_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<Integer>> a_;
    std::vector<std::vector<Integer>> h_;  // A U, column echelon
    std::vector<std::vector<Integer>> u_;
    std::vector<std::size_t> pivot_rows_;  // pivot row of each leading column
    std::vector<std::vector<Integer>> kernel_;
};

// ---- arithmetic modulo a prime ----

using ModMatrix = Matrix<std::int64_t>;

std::int64_t mod_normalize(std::int64_t a, std::int64_t p);
std::int64_t mod_inverse(std::int64_t a, std::int64_t p);
std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p);

// Reduction of a rational matrix modulo p; nullopt if a denominator vanishes mod p.
std::optional<ModMatrix> reduce_mod(const QMatrix& m, std::int64_t p);

std::vector<std::size_t> rref_mod(ModMatrix& m, std::int64_t p);
std::size_t rank_mod(ModMatrix m, std::int64_t p);
std::vector<std::vector<std::int64_t>> kernel_mod(ModMatrix m, std::int64_t p);
ModMatrix mul_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t p);

}  // namespace cluster::linalg
