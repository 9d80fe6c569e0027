#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ugraph/graphon.hpp"

namespace ugraph {

/// Finite 0/1 pattern matrix A; the cylinder C_A is the set of infinite
/// adjacency matrices carrying A in the top-left corner.
struct CylinderPattern {
    std::size_t n = 0;
    std::vector<std::uint8_t> entries;  // row-major, symmetric, zero diagonal

    static CylinderPattern from_entries(std::size_t n, std::vector<std::uint8_t> entries);
    bool at(std::size_t i, std::size_t j) const { return entries[i * n + j] != 0; }

    /// Pattern from a packed upper-triangle bit code (row-major i<j order).
    static CylinderPattern from_code(std::size_t n, std::uint64_t code);
    std::uint64_t code() const;

    CylinderPattern permuted(const std::vector<std::size_t>& perm) const;  // P A P^T

    /// File format: first line n, then n lines of n space-separated 0/1.
    static CylinderPattern parse(std::istream& in);
    std::string to_string() const;

    std::size_t ones_above_diagonal() const;
    std::size_t pairs() const { return n * (n - 1) / 2; }
};

struct CylinderEstimate {
    Rational exact_value;   // meaningful when exact
    double value = 0.0;
    double std_error = 0.0;
    bool exact = false;
    std::uint64_t samples = 0;
    bool degenerate_sigma = false;  // MC with zero observed variance

    std::string method() const {
        return exact ? "exact" : "monte_carlo(" + std::to_string(samples) + ")";
    }
};

/// Exact cylinder probability for constant and step graphons.
/// constant(p): p^{#ones} (1-p)^{#zero pairs}. step: sum over all K^n block
/// assignments (guarded by n*log2(K) <= 24, ComplexityError beyond).
/// Indicator graphons raise UnsupportedVariantError.
CylinderEstimate cylinder_exact(const Graphon& g, const CylinderPattern& a);

/// Monte-Carlo estimate: vertex tuples i.i.d. from the measure, integrand
/// prod omega prod (1-omega) (the 0/1 pattern indicator for deterministic-
/// edge graphons). Sharded over 64 fixed substreams when samples >= 6400,
/// merged in shard order, so the result is independent of thread count.
CylinderEstimate cylinder_mc(const Graphon& g, const VertexMeasure& m, const CylinderPattern& a,
                             std::uint64_t samples, std::uint64_t seed, int threads = 1);

/// True iff cylinder_exact(g, A) equals cylinder_exact(g, P A P^T) exactly
/// for `permutations` seeded random permutations plus the identity.
bool permutation_invariance_check(const Graphon& g, const CylinderPattern& a,
                                  unsigned permutations, std::uint64_t seed);

}  // namespace ugraph
