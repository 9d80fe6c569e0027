#include "ugraph/line_graph.hpp"

#include <algorithm>

#include "ugraph/errors.hpp"

namespace ugraph {

namespace {

Rational smallest_integer_above(const Rational& x) { return Rational(floor_int(x) + 1); }

std::string shape_key(const Pattern& p) {
    return p.white.to_string() + "#" + p.black.to_string();
}

std::string query_key(const std::vector<Rational>& whites, const std::vector<Rational>& blacks) {
    std::string k = "W";
    for (const auto& w : whites) k += format_rational(w) + ",";
    k += "|B";
    for (const auto& b : blacks) k += format_rational(b) + ",";
    return k;
}

// Smallest gap between consecutive part closures of the pattern (all parts,
// both colours); 1 when fewer than two parts.
Rational min_closure_gap(const Pattern& p) {
    std::vector<RationalInterval> all = p.white.parts();
    all.insert(all.end(), p.black.parts().begin(), p.black.parts().end());
    std::sort(all.begin(), all.end(),
              [](const RationalInterval& a, const RationalInterval& b) { return a.lo < b.lo; });
    Rational gap = 1;
    for (std::size_t i = 1; i < all.size(); ++i) {
        Rational g = all[i].lo - all[i - 1].hi;
        if (g < gap) gap = g;
    }
    return gap;
}

}  // namespace

LineGraphModel::LineGraphModel(LineMode mode, std::uint64_t step_limit)
    : mode_(mode), step_limit_(step_limit) {
    RationalInterval base = mode == LineMode::plain
                                ? closed_interval(Rational(1), Rational(2))
                                : closed_interval(Rational(1), make_rational(6, 5));
    z_ = IntervalSet::single(base);
    high_water_ = base.hi;
    LineStep s;
    s.seq = 0;
    s.c = 0;
    s.eps = 0;
    s.zn = z_;
    steps_.push_back(std::move(s));
}

PatternFilter LineGraphModel::filter() const {
    return mode_ == LineMode::plain ? PatternFilter::plain() : PatternFilter::trianglefree();
}

void LineGraphModel::extend_to_bound(const Rational& bound) {
    std::scoped_lock lock(mu_);
    extend_to_bound_locked(bound);
}

void LineGraphModel::extend_to_bound_locked(const Rational& bound) {
    std::uint64_t taken = 0;
    // Every future interval lies strictly above the high-water mark, so once
    // high_water_ > bound nothing below the bound can change.
    while (high_water_ <= bound) {
        if (++taken > step_limit_)
            throw StepLimitError("line model: extension to bound " + format_rational(bound) +
                                 " exceeds the step limit");
        step_locked();
    }
}

void LineGraphModel::step() {
    std::scoped_lock lock(mu_);
    step_locked();
}

void LineGraphModel::step_locked() {
    Pattern p = enumerate_pattern(filter(), frontier_);
    ++frontier_;
    const LineStep* st = apply_pattern_locked(p, false);
    if (st == nullptr) {
        // Unaddable stream pattern (triangle_free only): record the skip.
        LineStep s;
        s.seq = steps_.size();
        s.pattern = p;
        s.skipped = true;
        s.c = 0;
        s.eps = 0;
        steps_.push_back(std::move(s));
    }
}

bool LineGraphModel::prefix_diff_condition_ok(const IntervalSet& zn) const {
    // x + y = z with x in the prefix closure and y, z in the closure of the
    // new intervals requires x to be a difference of new closure points.
    const auto& parts = zn.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i; j < parts.size(); ++j) {
            Rational lo = parts[j].lo - parts[i].hi;
            if (lo < 0) lo = 0;
            Rational hi = parts[j].hi - parts[i].lo;
            if (closure_intersects(z_, RationalInterval(lo, hi, true, true))) return false;
        }
    }
    return true;
}

const LineStep* LineGraphModel::apply_pattern_locked(const Pattern& pattern, bool injected) {
    auto found = step_by_shape_.find(shape_key(pattern));
    if (found != step_by_shape_.end()) return &steps_[found->second];

    Rational a_max = pattern.max_abs_endpoint();
    Rational bound = mode_ == LineMode::plain ? Rational(a_max + high_water_ + 1)
                                              : Rational(3 * a_max + 2 * high_water_ + 2);
    Rational c = smallest_integer_above(bound);

    Rational eps;
    IntervalSet zn;
    if (pattern.white.empty()) {
        eps = make_rational(1, 2);  // protected witness half-width
    } else {
        Rational eps0 = min_closure_gap(pattern) / 4;
        if (eps0 > make_rational(1, 2)) eps0 = make_rational(1, 2);
        bool ok = false;
        eps = eps0;
        for (int halving = 0; halving <= 64; ++halving, eps /= 2) {
            std::vector<RationalInterval> parts;
            parts.reserve(pattern.white.part_count());
            for (const auto& w : pattern.white.parts())
                parts.push_back(open_interval(c - w.hi - eps, c - w.lo + eps));
            IntervalSet candidate = IntervalSet::of(std::move(parts));
            // (a) reflected whites stay pairwise disjoint
            if (candidate.part_count() != pattern.white.part_count()) continue;
            // (b) reflected black closures avoid the new intervals
            bool blacks_clear = true;
            for (const auto& b : pattern.black.parts())
                if (closure_intersects(candidate, closed_interval(c - b.hi - eps, c - b.lo + eps)))
                    blacks_clear = false;
            if (!blacks_clear) continue;
            // (c) monotonicity over everything built so far
            if (!(candidate.min_value() > z_.max_value())) continue;
            // (d) sum-freeness: the step bound rules out every class except
            // prefix + new = new, which is checked exactly here.
            if (mode_ == LineMode::triangle_free) {
                if (!(candidate.min_value() > 2 * high_water_))
                    throw ConstructionFailure("line model: step bound failed to clear 2H");
                if (!(2 * candidate.min_value() > candidate.max_value()))
                    throw ConstructionFailure("line model: step bound failed width condition");
                if (!prefix_diff_condition_ok(candidate)) continue;
            }
            zn = std::move(candidate);
            ok = true;
            break;
        }
        if (!ok) {
            if (mode_ == LineMode::plain)
                throw ConstructionFailure("line model: plain step failed its epsilon budget");
            return nullptr;  // triangle_free: pattern not addable at this resolution
        }
    }

    if (mode_ == LineMode::triangle_free && !zn.empty()) {
        IntervalSet next = set_union(z_, zn);
        // Redundant full re-check while it is cheap; beyond that the exact
        // per-step conditions carry the invariant (and the test suites run
        // the full check on the final prefix).
        if (next.part_count() <= 64 && !is_sum_free_closure(next))
            throw ConstructionFailure("line model: sum-free invariant would break");
        z_ = std::move(next);
    } else {
        z_ = set_union(z_, zn);
    }

    LineStep s;
    s.seq = steps_.size();
    s.pattern = pattern;
    s.injected = injected;
    s.c = c;
    s.eps = eps;
    s.zn = zn;
    Rational new_water = c + a_max + eps;
    if (new_water > high_water_) high_water_ = new_water;
    steps_.push_back(std::move(s));
    step_by_shape_[shape_key(pattern)] = steps_.size() - 1;
    return &steps_.back();
}

bool LineGraphModel::adjacent(const Rational& x, const Rational& y) {
    std::scoped_lock lock(mu_);
    return adjacent_locked(x, y);
}

bool LineGraphModel::adjacent_locked(const Rational& x, const Rational& y) {
    if (x == y) throw LoopEdgeError("line model: adjacency undefined on loops");
    Rational d = rational_abs(x - y);
    extend_to_bound_locked(d);
    return z_.contains_closure(d);
}

RationalInterval LineGraphModel::witness_interval(const std::vector<Rational>& whites,
                                                  const std::vector<Rational>& blacks) {
    std::scoped_lock lock(mu_);
    std::string qk = query_key(whites, blacks);
    auto cached = witness_cache_.find(qk);
    if (cached != witness_cache_.end()) return cached->second;

    if (mode_ == LineMode::triangle_free) {
        for (std::size_t i = 0; i < whites.size(); ++i)
            for (std::size_t j = i + 1; j < whites.size(); ++j)
                if (adjacent_locked(whites[i], whites[j]))
                    throw PreconditionError(
                        "witness_interval: triangle_free whites must be pairwise non-adjacent");
    }

    // Freeze every pairwise difference before covering.
    std::vector<Rational> pts = whites;
    pts.insert(pts.end(), blacks.begin(), blacks.end());
    Rational max_diff = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational d = rational_abs(pts[i] - pts[j]);
            if (d > max_diff) max_diff = d;
        }
    extend_to_bound_locked(max_diff);

    Rational delta0 = make_rational(1, 4);
    std::vector<Rational> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        Rational g = (sorted[i] - sorted[i - 1]) / 4;
        if (g < delta0) delta0 = g;
    }

    Rational delta = delta0;
    for (int attempt = 0; attempt <= 64; ++attempt, delta /= 2) {
        Pattern pattern = locate_pattern_with_width(filter(), whites, blacks, delta);
        const LineStep* st = apply_pattern_locked(pattern, true);
        if (st == nullptr) continue;  // shrink the cover and retry

        // Copy out before any further extension reallocates steps_.
        Rational step_c = st->c;
        Rational half = st->eps / 2;
        RationalInterval witness = open_interval(step_c - half, step_c + half);

        // Exact verification against the built prefix; differences to all
        // points stay below the high-water mark, so the answer is final.
        Rational lowest = 0;
        for (const auto& p : pts)
            if (p < lowest) lowest = p;
        extend_to_bound_locked(witness.hi - lowest);
        bool ok = true;
        for (const auto& p : pts)
            if (!(p < witness.lo)) ok = false;  // the c-bound puts C above all points
        for (const auto& w : whites)
            if (ok && !contains_interval(z_, open_interval(witness.lo - w, witness.hi - w)))
                ok = false;
        for (const auto& b : blacks)
            if (ok && closure_intersects(z_, closed_interval(witness.lo - b, witness.hi - b)))
                ok = false;
        if (!ok) continue;
        witness_cache_.emplace(qk, witness);
        return witness;
    }
    throw ConstructionFailure("line model: witness search exhausted its budget");
}

IntervalSet LineGraphModel::z_prefix() const {
    std::scoped_lock lock(mu_);
    return z_;
}

std::vector<LineStep> LineGraphModel::steps() const {
    std::scoped_lock lock(mu_);
    return steps_;
}

std::uint64_t LineGraphModel::built_step_count() const {
    std::scoped_lock lock(mu_);
    return steps_.size();
}

Rational LineGraphModel::high_water() const {
    std::scoped_lock lock(mu_);
    return high_water_;
}

std::string LineGraphModel::dump() const {
    std::scoped_lock lock(mu_);
    std::string out;
    for (const auto& s : steps_) {
        out += std::to_string(s.seq);
        out += " | ";
        if (s.seq == 0)
            out += "base";
        else if (s.injected)
            out += "inj";
        else
            out += std::to_string(s.pattern.index);
        if (s.skipped) out += " SKIP";
        out += " | " + format_rational(s.c);
        out += " | " + format_rational(s.eps);
        out += " | " + s.zn.to_string();
        out += '\n';
    }
    return out;
}

}  // namespace ugraph
