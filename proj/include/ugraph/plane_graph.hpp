#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ugraph/pattern.hpp"

namespace ugraph {

/// Axis-aligned closed box with rational corners.
struct Box {
    RationalInterval x;  // closed
    RationalInterval y;  // closed
    bool contains(const Rational& px, const Rational& py) const {
        return x.closure_contains(px) && y.closure_contains(py);
    }
    bool operator==(const Box&) const = default;
};

/// Symmetric finite union of closed boxes, stored with both orientations
/// (each added box is mirrored across the diagonal).
class BoxSet {
public:
    void add_symmetric(const Box& b);
    const std::vector<Box>& boxes() const { return boxes_; }
    bool contains(const Rational& x, const Rational& y) const;
    bool empty() const { return boxes_.empty(); }

private:
    std::vector<Box> boxes_;
};

struct PlaneStep {
    std::uint64_t seq = 0;
    Pattern pattern;
    bool injected = false;
    bool skipped = false;  // whites hosted a (s-1)-clique at screening time
    Rational m_bound;      // M_n
    RationalInterval strip;  // [M_n+1, M_n+2]; meaningful when not skipped
};

/// Topologically universal K_s-free graph on the line (s >= 4), built as a
/// symmetric closed box set Z in the plane; x ~ y iff (x,y) lies in Z.
///
/// Documented choices:
///  - Base: [1,2] x [3,4] symmetrized. (A base square [a,2a]^2 would put an
///    unbounded clique on [a,2a] and meet the diagonal, so the off-diagonal
///    pair of boxes is used instead; it is bipartite, hence K_3-free.)
///  - M_0 = 4 (largest base coordinate); M_n = A_n + M_{n-1} + n + 1 with
///    A_n the largest |endpoint| of the n-th pattern, advanced for skipped
///    patterns too.
///  - Step n screens the pattern's white part for (s-1)-cliques against the
///    current boxes (exact, cell refinement); clean patterns contribute the
///    strip [M_n+1, M_n+2] x white, symmetrized.
///  - Witness queries splice the located cover in as the next step (see the
///    line model header for why); the witness box is the strip interior,
///    verified exactly and stable under further growth.
class PlaneGraphModel {
public:
    explicit PlaneGraphModel(int s, std::uint64_t step_limit = 100000);

    int clique_bound() const { return s_; }

    /// Extends until no future strip can touch coordinates <= bound.
    void extend_to_bound(const Rational& bound);
    void step();

    /// (x, y) in Z (closed). Throws LoopEdgeError when x == y.
    bool adjacent(const Rational& x, const Rational& y);

    /// True iff `white` contains k points that are pairwise adjacent under
    /// the current boxes. Exact: coordinates are refined into cells of
    /// constant box membership; a self-adjacent cell supplies unlimited
    /// clique members, any other cell at most one.
    bool white_clique_check(const IntervalSet& white, int k);

    /// Open interval V with every v in V adjacent to all whites and to no
    /// blacks; whites must not contain a K_{s-1} (PreconditionError).
    RationalInterval witness_box(const std::vector<Rational>& whites,
                                 const std::vector<Rational>& blacks);

    std::vector<PlaneStep> steps() const;
    BoxSet boxes_snapshot() const;
    std::uint64_t built_step_count() const;
    Rational m_frontier() const;

    /// One line per step: `n | idx | M_n | strip | white` with idx as in the
    /// line model dump plus ` SKIP` for screened-out patterns.
    std::string dump() const;

private:
    void extend_to_bound_locked(const Rational& bound);
    void step_locked();
    bool adjacent_locked(const Rational& x, const Rational& y);
    bool clique_check_locked(const IntervalSet& white, int k) const;
    const PlaneStep* apply_pattern_locked(const Pattern& pattern, bool injected);

    mutable std::mutex mu_;
    int s_;
    std::uint64_t step_limit_;
    std::vector<PlaneStep> steps_;
    BoxSet z_;
    Rational m_;  // M_{frontier-1}
    std::uint64_t frontier_ = 1;
    std::map<std::string, std::size_t> step_by_shape_;
    std::map<std::string, RationalInterval> witness_cache_;
};

}  // namespace ugraph
