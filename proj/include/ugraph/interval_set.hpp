#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugraph/rational.hpp"

namespace ugraph {

/// One interval with rational endpoints and independent endpoint closedness.
/// Invariant: lo < hi, or lo == hi with both ends closed (a point interval).
struct RationalInterval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;

    RationalInterval() = default;
    RationalInterval(Rational l, Rational h, bool lc, bool hc);

    bool contains(const Rational& x) const;
    bool closure_contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool is_point() const { return lo == hi; }
    Rational length() const { return hi - lo; }

    bool operator==(const RationalInterval&) const = default;
};

RationalInterval open_interval(const Rational& lo, const Rational& hi);
RationalInterval closed_interval(const Rational& lo, const Rational& hi);
RationalInterval point_interval(const Rational& x);

/// True iff the closed hulls [a.lo,a.hi] and [b.lo,b.hi] intersect.
bool closures_intersect(const RationalInterval& a, const RationalInterval& b);

/// Canonical finite union of rational intervals: parts sorted ascending,
/// pairwise disjoint, and merged whenever they overlap or touch with at
/// least one closed endpoint at the junction. Two open parts may share an
/// excluded junction point, e.g. (1,2),(2,3).
class IntervalSet {
public:
    IntervalSet() = default;

    /// Builds the canonical union of arbitrary (possibly overlapping) parts.
    static IntervalSet of(std::vector<RationalInterval> raw);
    static IntervalSet single(const RationalInterval& iv) { return of({iv}); }

    const std::vector<RationalInterval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t part_count() const { return parts_.size(); }

    bool contains(const Rational& x) const;
    bool contains_closure(const Rational& x) const;

    /// Exact infimum / supremum of the closure. Throws std::domain_error on
    /// the empty set.
    Rational min_value() const;
    Rational max_value() const;
    Rational total_length() const;

    IntervalSet closure() const;

    /// Textual form: comma-separated parts such as "[1,2],(5/2,3]".
    /// The empty set serializes to the empty string. Exact round-trip.
    std::string to_string() const;
    static IntervalSet parse(std::string_view text);

    bool operator==(const IntervalSet&) const = default;

private:
    std::vector<RationalInterval> parts_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b);

/// True iff x + y = z has no solution with x, y, z in the closure of s.
/// Decided exactly: for every part pair the sum interval is intersected
/// against every part closure.
bool is_sum_free_closure(const IntervalSet& s);

/// The set { x + t : x in s }.
IntervalSet translate(const IntervalSet& s, const Rational& t);
/// The set { -x : x in s }.
IntervalSet reflect(const IntervalSet& s);

/// True iff iv (as a set of points) is contained in the union s.
bool contains_interval(const IntervalSet& s, const RationalInterval& iv);
/// True iff the closure of s meets the closed hull of iv.
bool closure_intersects(const IntervalSet& s, const RationalInterval& iv);
/// Distance from x to the closure of s; std::nullopt when s is empty.
std::optional<Rational> closure_distance(const IntervalSet& s, const Rational& x);

}  // namespace ugraph
