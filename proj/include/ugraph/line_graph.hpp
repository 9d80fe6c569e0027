#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ugraph/pattern.hpp"

namespace ugraph {

enum class LineMode { plain, triangle_free };

/// One construction step. Step 0 is the fixed base (no pattern). A step
/// whose pattern has an empty white part contributes no intervals but still
/// reserves its difference range, so its black-only witness region stays
/// clear of all later intervals.
struct LineStep {
    std::uint64_t seq = 0;
    Pattern pattern;        // empty() and index 0 for the base step
    bool injected = false;  // pattern came from a witness query, not the stream
    bool skipped = false;   // triangle-free: adding it would break sum-freeness
    Rational c;
    Rational eps;
    IntervalSet zn;
};

/// Shift-invariant graph on the line: vertices are the reals, x ~ y iff
/// |x - y| lies in the closure of a lazily built set Z of positive rational
/// intervals. In triangle_free mode the closure of Z is kept sum-free after
/// every step, which makes triangles impossible.
///
/// Construction notes (documented choices):
///  - Base: Z_0 = [1,2] (plain), [1,6/5] (triangle_free).
///  - Step for pattern with parts (a_i,a'_i) white / (b_j,b'_j) black:
///    c is the smallest integer strictly exceeding A + H + 1 (plain) or
///    3A + 2H + 2 (triangle_free), where A is the largest |endpoint| of the
///    pattern and H the high-water mark max over previous steps of
///    (c_k + A_k + eps_k) and the base maximum. Z_n is the union of the
///    reflected white intervals (c - a'_i - eps, c - a_i + eps); eps starts
///    at min(1/2, smallest closure gap of the pattern / 4) and halves (at
///    most 64 times) until every step condition holds exactly.
///  - The triangle_free bound makes every sum class except
///    "prefix + new = new" arithmetically impossible; that last class is
///    checked exactly and an unaddable stream pattern is recorded as
///    skipped, mirroring the screening of the plane construction.
///  - Witness queries locate a covering pattern and splice it in as the
///    next step, so the witness interval is available at desk scale; the
///    step sequence therefore depends on the query history (pure
///    extension-driven growth is query-independent). Dumps pin regressions.
class LineGraphModel {
public:
    explicit LineGraphModel(LineMode mode, std::uint64_t step_limit = 100000);

    LineMode mode() const { return mode_; }

    /// Builds steps until every interval of any future step lies strictly
    /// above bound. Afterwards closure membership of any t <= bound is
    /// decided by the built prefix alone, permanently. Idempotent.
    void extend_to_bound(const Rational& bound);

    /// Processes the next stream pattern.
    void step();

    /// |x - y| in closure(Z). Extends the construction as needed.
    /// Throws LoopEdgeError when x == y.
    bool adjacent(const Rational& x, const Rational& y);

    /// Returns a nonempty open rational interval C with: every v in C is
    /// adjacent to every white and non-adjacent to every black. Verified by
    /// exact interval arithmetic before returning, and stable under any
    /// further extension. In triangle_free mode the whites must be pairwise
    /// non-adjacent (PreconditionError otherwise).
    RationalInterval witness_interval(const std::vector<Rational>& whites,
                                      const std::vector<Rational>& blacks);

    IntervalSet z_prefix() const;
    std::vector<LineStep> steps() const;
    std::uint64_t built_step_count() const;
    Rational high_water() const;

    /// Regression format, one line per step: `n | idx | c | eps | Z_n`
    /// where idx is the stream index, `base`, `inj` (injected), or the
    /// index followed by ` SKIP`.
    std::string dump() const;

private:
    PatternFilter filter() const;
    void extend_to_bound_locked(const Rational& bound);
    void step_locked();
    bool adjacent_locked(const Rational& x, const Rational& y);
    // Returns the step holding the pattern; applies it if new. Null when the
    // pattern cannot be added (triangle_free) at this eps/delta resolution.
    const LineStep* apply_pattern_locked(const Pattern& pattern, bool injected);
    bool prefix_diff_condition_ok(const IntervalSet& zn) const;

    mutable std::mutex mu_;
    LineMode mode_;
    std::uint64_t step_limit_;
    std::vector<LineStep> steps_;
    IntervalSet z_;
    Rational high_water_;
    std::uint64_t frontier_ = 1;  // next stream index
    std::map<std::string, std::size_t> step_by_shape_;  // pattern shape -> step seq
    std::map<std::string, RationalInterval> witness_cache_;
};

}  // namespace ugraph
