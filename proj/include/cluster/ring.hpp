#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cluster/error.hpp"
#include "cluster/matrix.hpp"

namespace cluster {

// Integer Laurent polynomial in the quantum parameter v.
class ScalarPoly {
public:
    ScalarPoly() = default;
    ScalarPoly(long c) { if (c != 0) terms_[0] = c; }  // NOLINT: implicit from integer constants
    ScalarPoly(const Integer& c) { if (c != 0) terms_[0] = c; }  // NOLINT

    static ScalarPoly monomial(const Integer& c, int power);
    static ScalarPoly v_power(int power) { return monomial(1, power); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<int, Integer>& terms() const { return terms_; }
    Integer coefficient(int power) const;
    int min_power() const { return terms_.begin()->first; }
    int max_power() const { return terms_.rbegin()->first; }

    // If the value is exactly v^k, returns k.
    std::optional<int> as_v_power() const;
    // If the value is c*v^k for a single term, returns k.
    std::optional<int> single_term_power() const;

    ScalarPoly shifted(int power) const;  // times v^power
    ScalarPoly bar() const;               // v -> v^{-1}
    Integer at_one() const;               // v := 1

    // Exact quotient in Z[v^{+-1}], or nullopt if `d` does not divide.
    std::optional<ScalarPoly> divide_exact(const ScalarPoly& d) const;

    ScalarPoly& operator+=(const ScalarPoly& o);
    ScalarPoly& operator-=(const ScalarPoly& o);
    friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
    friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
    ScalarPoly operator-() const;
    friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) { return a.terms_ == b.terms_; }

    // Ascending powers, e.g. "v^-1+v", "-2", "3*v^2".
    std::string to_string() const;

private:
    void add_term(int power, const Integer& c);
    std::map<int, Integer> terms_;
};

// Lattice vector in Z^I (a Laurent degree).
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t n) : e_(n, 0) {}
    Exponent(std::vector<int> e) : e_(std::move(e)) {}  // NOLINT
    Exponent(std::initializer_list<int> e) : e_(e) {}

    static Exponent unit(std::size_t n, std::size_t i) {
        Exponent u(n);
        u.e_[i] = 1;
        return u;
    }

    std::size_t size() const { return e_.size(); }
    int& operator[](std::size_t i) { return e_[i]; }
    int operator[](std::size_t i) const { return e_[i]; }
    const std::vector<int>& values() const { return e_; }
    bool is_zero() const;

    Exponent& operator+=(const Exponent& o);
    Exponent& operator-=(const Exponent& o);
    friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
    friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
    Exponent operator-() const;
    friend Exponent operator*(int s, Exponent a) {
        for (auto& x : a.e_) x *= s;
        return a;
    }

    // Lexicographic in vertex order; this is the term order of the ring.
    friend auto operator<=>(const Exponent& a, const Exponent& b) = default;

    std::string to_string() const;  // "[1,0,-2]"

private:
    std::vector<int> e_;
};

// Ambient lattice data shared by all elements of one computation.
struct Frame {
    std::vector<std::string> vertices;
    std::vector<bool> unfrozen;
    std::vector<int> d;
    std::optional<IntMatrix> lambda;

    std::size_t size() const { return vertices.size(); }
    bool quantum() const { return lambda.has_value(); }
    std::vector<std::size_t> unfrozen_indices() const;
    // Lambda(a, b) = a^T Lambda b; zero for a classical frame.
    long long pairing(const Exponent& a, const Exponent& b) const;

    friend bool operator==(const Frame&, const Frame&) = default;
};

using FramePtr = std::shared_ptr<const Frame>;

// Validates the frame invariants and freezes it for sharing.
FramePtr make_frame(std::vector<std::string> vertices, std::vector<bool> unfrozen, std::vector<int> d,
                    std::optional<IntMatrix> lambda = std::nullopt);

// Same vertex data without a quantization matrix.
FramePtr classical_frame(const FramePtr& frame);

// Finitely supported map Exponent -> ScalarPoly over a frame.
class TorusElement {
public:
    using Terms = std::map<Exponent, ScalarPoly>;

    TorusElement() = default;
    explicit TorusElement(FramePtr frame) : frame_(std::move(frame)) {}

    static TorusElement monomial(FramePtr frame, const Exponent& m, const ScalarPoly& c = ScalarPoly(1));
    static TorusElement constant(FramePtr frame, const ScalarPoly& c);

    const FramePtr& frame() const { return frame_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    ScalarPoly coefficient(const Exponent& m) const;
    bool contains(const Exponent& m) const { return terms_.count(m) != 0; }

    // Largest exponent in the term order.
    const Exponent& leading_exponent() const;
    const ScalarPoly& leading_coefficient() const;

    void add_term(const Exponent& m, const ScalarPoly& c);

    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    TorusElement operator-() const;
    friend TorusElement operator*(const ScalarPoly& s, const TorusElement& a);
    friend bool operator==(const TorusElement& a, const TorusElement& b);

    // Twisted product (commutative when the frame is classical).
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b);

private:
    void check_same_frame(const TorusElement& o) const;
    FramePtr frame_;
    Terms terms_;
};

bool same_frame(const FramePtr& a, const FramePtr& b);

TorusElement twisted_mul(const TorusElement& a, const TorusElement& b);
TorusElement power(const TorusElement& a, unsigned k);
TorusElement bar(const TorusElement& a);
TorusElement pointed_normalize(const TorusElement& a, const Exponent& leading);

enum class Side { left, right };
// Right: q with q * divisor = numerator. Left: q with divisor * q = numerator.
TorusElement exact_divide(const TorusElement& numerator, const TorusElement& divisor, Side side);

TorusElement specialize_classical(const TorusElement& a);

// Canonical text, e.g. "(v^-1+v)*X[1,0,-2] + X[0,0,0]"; terms in descending term order.
std::string render(const TorusElement& a);
TorusElement parse_element(std::string_view text, const FramePtr& frame);

}  // namespace cluster
