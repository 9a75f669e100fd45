#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cluster/explore.hpp"
#include "cluster/ring.hpp"
#include "cluster/seed.hpp"

namespace cluster {

// ---- Chebyshev polynomials ----

enum class ChebyshevKind { first, second };

// Integer polynomial in z, coefficient of z^i at index i (no trailing zeros).
using UniPoly = std::vector<Integer>;

UniPoly chebyshev(ChebyshevKind kind, int k);
UniPoly poly_mul(const UniPoly& a, const UniPoly& b);
UniPoly poly_add(const UniPoly& a, const UniPoly& b);
std::string render_poly(const UniPoly& p);  // "z^3 - 3*z"

// p(z) with powers taken by the twisted product.
TorusElement evaluate_poly(const UniPoly& p, const TorusElement& z);

// ---- annulus elements ----

// [L] = X^{(1,-1)}(1 + Y2 + Y1Y2) on the Kronecker seed (v-free coefficients).
TorusElement loop_element(const Seed& s);

enum class AnnulusKind { bangle, bracelet, band };
// bangle = [L]^k, bracelet = T_k([L]), band = U_k([L]).
TorusElement annulus_element(AnnulusKind kind, int k, const Seed& s);

// ---- distinguished functions ----

// Elements below are written in the coordinates of the cluster of data.anchor.
TorusElement distinguished_function(const InjectiveData& data, const Exponent& g);
TorusElement distinguished_function(const Seed& s, const InjectiveWitness& witness, const Exponent& g);

struct DistinguishedExpansion {
    Exponent base_g;
    std::map<Exponent, ScalarPoly> terms;  // g' -> coefficient of I_{g'}
    int truncation = 0;
    TorusElement remainder;  // part whose offsets exceed the window
};

constexpr int default_truncation = 6;

DistinguishedExpansion expand_in_distinguished(const TorusElement& z, const InjectiveData& data, int truncation);

// sum c I_{g'} + remainder
TorusElement reassemble(const DistinguishedExpansion& e, const InjectiveData& data);

// ---- triangular-basis verification ----

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct MemberReport {
    std::optional<Exponent> g;
    Verdict pointed = Verdict::fail;
    Verdict bar_invariant = Verdict::fail;
    std::vector<Verdict> products;  // per vertex i: X_i * L_g is unitriangular over the family
    std::vector<std::string> notes;
};

struct TriangularReport {
    std::vector<MemberReport> members;
    int truncation = 0;
    bool contains_seed_variables = false;       // every X_i(t) is in the family
    bool contains_injective_variables = false;  // every I_k(t) is in the family

    Verdict overall_pointed() const;
    Verdict overall_bar_invariant() const;
    Verdict overall_products() const;
};

TriangularReport verify_triangular(const std::vector<TorusElement>& family, const InjectiveData& data, int truncation);

}  // namespace cluster
