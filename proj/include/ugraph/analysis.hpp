#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ugraph/sampled_graph.hpp"

namespace ugraph {

/// Vertices of some k-clique, if one exists. Exact branch-and-bound search.
std::optional<std::vector<std::size_t>> find_clique(const SampledGraph& g, std::size_t k);

struct ExtensionReport {
    std::size_t white_size = 0;
    std::size_t black_size = 0;
    std::uint64_t tuples_tested = 0;
    std::uint64_t tuples_satisfied = 0;
    // A few failing (U, W) tuples for inspection (capped), with the vertex
    // coordinates when the graph carries them.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> sample_failures;
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> failure_coords;

    double satisfied_fraction() const {
        return tuples_tested ? double(tuples_satisfied) / double(tuples_tested) : 0.0;
    }
    std::string to_string() const;
    std::string to_json() const;
};

/// Samples `tuples` random disjoint vertex tuples (U, W) and counts those
/// admitting a vertex joined to all of U and none of W. In triangle_free
/// mode U must be independent, in ks_free(s) mode K_{s-1}-free; tuples are
/// resampled until admissible (TupleExhaustionError after 10^4 tries).
ExtensionReport extension_stats(const SampledGraph& g, std::size_t white_size,
                                std::size_t black_size, std::uint64_t tuples, std::uint64_t seed,
                                PatternMode mode, int s = 0);

struct CensusReport {
    std::size_t k = 0;
    std::set<std::uint32_t> classes_found;
    std::set<std::uint32_t> classes_expected;
    bool complete() const;
    std::string to_string() const;
    std::string to_json() const;
};

/// Canonical-code census of induced k-subgraphs (k <= 5): exhaustive when
/// C(n,k) <= 10^6, else 10^6 seeded random subsets (fixed documented seed).
/// Expected classes: all k-vertex graphs, triangle-free ones, or K_s-free
/// ones according to mode.
CensusReport induced_census(const SampledGraph& g, std::size_t k, PatternMode mode, int s = 0);

/// Lexicographically minimal upper-triangle code over all relabelings of
/// the induced subgraph (k <= 5).
std::uint32_t canonical_code(const SampledGraph& g, const std::vector<std::size_t>& subset);
std::set<std::uint32_t> expected_classes(std::size_t k, PatternMode mode, int s = 0);

enum class CompareVerdict { same, different, inconclusive };

struct ComparisonReport {
    std::size_t k = 0;
    std::uint64_t samples_per_side = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    std::size_t df = 0;
    CompareVerdict verdict = CompareVerdict::inconclusive;
    std::string to_string() const;
    std::string to_json() const;
};

using ModelSampler = std::function<SampledGraph(std::size_t n, std::uint64_t seed)>;

/// Chi-square comparison of labeled k-pattern frequencies (k <= 4) over
/// samples_per_side draws from each side. Both sides receive the same
/// per-replicate substream, so a model compared against itself produces
/// identical tallies and statistic 0. Verdict `inconclusive` when more than
/// 20% of all cells have pooled expected count below 5; otherwise
/// `different` iff the statistic exceeds the 0.01-significance threshold.
ComparisonReport compare_matrix_distributions(const ModelSampler& side_a,
                                              const ModelSampler& side_b, std::size_t k,
                                              std::uint64_t samples_per_side, std::uint64_t seed);

/// Purity diagnostic: number of unordered vertex pairs with identical
/// neighbor sets (such pairs are necessarily non-adjacent).
std::uint64_t duplicate_neighborhood_pairs(const SampledGraph& g);

/// 0.99 quantile of chi-square with df degrees of freedom (table for
/// df <= 16, Wilson-Hilferty beyond).
double chi_square_quantile_99(std::size_t df);

}  // namespace ugraph
