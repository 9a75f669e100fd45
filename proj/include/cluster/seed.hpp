#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cluster/lattice.hpp"
#include "cluster/matrix.hpp"
#include "cluster/ring.hpp"

namespace cluster {

// A seed reached from an initial seed by explicit mutations. Cluster
// variables are stored as Laurent expansions in the initial frame together
// with their degrees (extended g-vectors with respect to the initial seed).
struct Seed {
    FramePtr frame;
    std::shared_ptr<const DegreeLattice> lattice;  // B~ of the initial seed
    IntMatrix b;
    std::vector<TorusElement> vars;
    std::vector<Exponent> degrees;
    std::optional<IntMatrix> lambda_local;
    std::vector<int> history;

    std::size_t size() const { return vars.size(); }
    bool quantum() const { return frame->quantum(); }
    bool is_unfrozen(std::size_t k) const { return frame->unfrozen[k]; }
    std::vector<std::size_t> unfrozen_indices() const { return frame->unfrozen_indices(); }
    // The I x I_uf submatrix.
    IntMatrix extended_b() const;
};

// Validates b_ij d_j = -b_ji d_i, naming the first violating (i,j). Throws ParseError.
void check_skew_symmetrizable(const IntMatrix& b, const std::vector<int>& d,
                              const std::vector<std::string>& names = {});

// Validates the full-rank assumption on the I x I_uf submatrix.
void check_full_rank(const IntMatrix& b, const std::vector<bool>& unfrozen);

// Initial seed whose cluster variables are the coordinate monomials of the frame.
Seed make_initial_seed(const FramePtr& frame, const IntMatrix& b);

// Fresh initial seed with the same exchange matrix, variable names and
// (quantum) lambda_local as `s`; its cluster becomes the coordinate system.
Seed reanchor(const Seed& s);

// Classical specialization of a seed (drops Lambda, sets v = 1).
Seed classical_seed(const Seed& s);

IntMatrix mutate_b(const IntMatrix& b, std::size_t k, const std::vector<bool>& unfrozen);

// Verifies Lambda(f_i, col_k B~) = -delta_ik delta_k with delta_k > 0; returns delta over I_uf.
std::vector<long long> check_compatibility(const IntMatrix& lambda, const IntMatrix& b,
                                           const std::vector<bool>& unfrozen,
                                           const std::vector<std::string>& names = {});

IntMatrix find_compatible_lambda(const IntMatrix& b, const std::vector<bool>& unfrozen);

// Index of a vertex id; throws Error("vertex out of range").
std::size_t vertex_index(const Frame& frame, const std::string& id);

// Bar-invariant normalized ordered product X(s)^m of the seed's variables (m >= 0).
TorusElement cluster_monomial(const Seed& s, const std::vector<int>& m);

Seed mutate_seed(const Seed& s, std::size_t k);
Seed mutate_sequence(Seed s, const std::vector<int>& sequence);

struct Triangulation {
    std::vector<std::string> arcs;
    std::vector<std::string> frozen_arcs;
    std::vector<std::array<std::string, 3>> triangles;
};

struct TriangulationMatrix {
    IntMatrix b;
    std::vector<bool> frozen;  // per arc, in `arcs` order
};

TriangulationMatrix triangulation_to_b(const Triangulation& tri);

// Frame (classical, unit skew-symmetrizers) and initial seed from a triangulation.
Seed seed_from_triangulation(const Triangulation& tri);

}  // namespace cluster
