#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ugraph/interval_set.hpp"

namespace ugraph {

/// A pattern: two finite families of nondegenerate open rational intervals
/// ("white" and "black") whose closures are pairwise disjoint. Patterns
/// drive the inductive constructions; locating a pattern around given
/// points yields witness regions.
struct Pattern {
    IntervalSet white;
    IntervalSet black;
    /// 1-based position in the filtered enumeration; 0 when the pattern was
    /// produced by `locate_pattern` beyond the materialization budget.
    std::uint64_t index = 0;

    bool empty() const { return white.empty() && black.empty(); }
    std::size_t part_count() const { return white.part_count() + black.part_count(); }
    /// Largest |endpoint| over all parts; 0 for the empty pattern.
    Rational max_abs_endpoint() const;

    /// "W: <intervals> | B: <intervals> | idx: <n>"
    std::string to_string() const;
    static Pattern parse(std::string_view text);

    bool same_shape(const Pattern& o) const { return white == o.white && black == o.black; }
};

enum class PatternMode { plain, triangle_free, ks_free };

struct PatternFilter {
    PatternMode mode = PatternMode::plain;
    int s = 0;  // clique bound, only for ks_free (s >= 4)

    static PatternFilter plain() { return {PatternMode::plain, 0}; }
    static PatternFilter trianglefree() { return {PatternMode::triangle_free, 0}; }
    static PatternFilter ksfree(int s);

    /// Static admissibility of a pattern under this filter. The triangle-free
    /// filter keeps patterns whose white closure is sum-free; plain and
    /// ks_free admit everything (K_s screening is dynamic, done by the plane
    /// model against its current edge set).
    bool admits(const Pattern& p) const;

    std::string name() const;
};

// Enumeration order (fixed, documented, platform-independent):
// grade(pattern) = sum over all parts of (|num lo| + den lo + |num hi| +
// den hi + 1), endpoints in lowest terms. Every pattern has a finite grade
// and each grade holds finitely many patterns, so enumerating grades
// 0, 1, 2, ... visits every rational pattern exactly once. Within a grade,
// patterns are ordered by: white part count, black part count, then the
// endpoint sequences compared lexicographically. enumerate_pattern(f, 1) is
// therefore the empty pattern for every filter.

/// Returns the n-th pattern (1-based) admitted by the filter.
/// Throws EnumerationHorizonError beyond the materialization budget.
Pattern enumerate_pattern(const PatternFilter& filter, std::uint64_t n);

/// Finds a pattern whose white intervals cover the white points and black
/// intervals cover the black points (each point strictly inside its
/// interval, one interval per point, closures pairwise disjoint). Cover
/// half-width starts at min(1/4, smallest pairwise gap / 4) with endpoints
/// snapped to the simplest rationals in range, and halves (at most 64
/// times) in triangle-free mode until the white closure is sum-free.
/// The returned index is the true enumeration rank when the pattern lies
/// within the materialization budget, otherwise 0.
Pattern locate_pattern(const PatternFilter& filter, const std::vector<Rational>& whites,
                       const std::vector<Rational>& blacks);

/// Same as locate_pattern but starting from a caller-chosen half-width
/// (used by witness searches that need to shrink below the default).
Pattern locate_pattern_with_width(const PatternFilter& filter, const std::vector<Rational>& whites,
                                  const std::vector<Rational>& blacks, const Rational& half_width);

/// Enumeration rank of a pattern under the filter, or 0 when it lies beyond
/// the materialization budget.
std::uint64_t pattern_rank(const PatternFilter& filter, const Pattern& p);

/// Number of patterns currently materialized (diagnostics/tests).
std::uint64_t materialized_pattern_count();

}  // namespace ugraph
