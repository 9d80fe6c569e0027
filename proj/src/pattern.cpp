#include "ugraph/pattern.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "ugraph/errors.hpp"

namespace ugraph {

namespace {

// grade bookkeeping: size of a canonical rational p/q is |p| + q.
Int rational_size(const Rational& r) { return boost::multiprecision::abs(num(r)) + den(r); }

Int interval_cost(const RationalInterval& iv) {
    return rational_size(iv.lo) + rational_size(iv.hi) + 1;
}

Int pattern_grade(const Pattern& p) {
    Int g = 0;
    for (const auto& iv : p.white.parts()) g += interval_cost(iv);
    for (const auto& iv : p.black.parts()) g += interval_cost(iv);
    return g;
}

// All canonical rationals with |num| + den == t, ascending.
std::vector<Rational> rationals_of_size(unsigned t) {
    std::vector<Rational> out;
    if (t == 1) {
        out.push_back(Rational(0));
        return out;
    }
    for (unsigned d = 1; d < t; ++d) {
        unsigned a = t - d;
        if (boost::multiprecision::gcd(Int(a), Int(d)) != 1) continue;
        out.push_back(make_rational(Int(a), Int(d)));
        out.push_back(make_rational(-Int(a), Int(d)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// All open intervals (a, b), a < b, with rational_size(a) + rational_size(b) == s.
// Cached; only ever touched under the universe lock.
const std::vector<RationalInterval>& intervals_of_size(unsigned s) {
    static std::map<unsigned, std::vector<RationalInterval>> cache;
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    std::vector<RationalInterval> out;
    for (unsigned ta = 1; ta + 1 <= s; ++ta) {
        auto lows = rationals_of_size(ta);
        auto highs = rationals_of_size(s - ta);
        for (const auto& a : lows)
            for (const auto& b : highs)
                if (a < b) out.push_back(open_interval(a, b));
    }
    std::sort(out.begin(), out.end(), [](const RationalInterval& x, const RationalInterval& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.hi < y.hi;
    });
    return cache.emplace(s, std::move(out)).first->second;
}

using Family = std::vector<RationalInterval>;

// All ascending interval families with pairwise disjoint closures and total
// cost exactly `cost`. Emits the empty family when cost == 0.
void collect_families(unsigned cost, std::vector<Family>& out) {
    Family cur;
    // DFS: extend with any interval starting strictly after the previous
    // closure, spending (size + 1) of the remaining budget.
    auto rec = [&](auto&& self, unsigned remaining, const Rational* min_lo_exclusive) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned s = 3; s + 1 <= remaining; ++s) {
            for (const auto& iv : intervals_of_size(s)) {
                if (min_lo_exclusive && !(iv.lo > *min_lo_exclusive)) continue;
                cur.push_back(iv);
                self(self, remaining - (s + 1), &iv.hi);
                cur.pop_back();
            }
        }
    };
    rec(rec, cost, nullptr);
}

bool closures_pairwise_disjoint(const Family& merged) {
    for (std::size_t i = 1; i < merged.size(); ++i)
        if (!(merged[i].lo > merged[i - 1].hi)) return false;
    return true;
}

bool pattern_less(const Pattern& a, const Pattern& b) {
    if (a.white.part_count() != b.white.part_count())
        return a.white.part_count() < b.white.part_count();
    if (a.black.part_count() != b.black.part_count())
        return a.black.part_count() < b.black.part_count();
    auto cmp_sets = [](const IntervalSet& x, const IntervalSet& y) -> int {
        for (std::size_t i = 0; i < x.part_count(); ++i) {
            if (x.parts()[i].lo != y.parts()[i].lo) return x.parts()[i].lo < y.parts()[i].lo ? -1 : 1;
            if (x.parts()[i].hi != y.parts()[i].hi) return x.parts()[i].hi < y.parts()[i].hi ? -1 : 1;
        }
        return 0;
    };
    int c = cmp_sets(a.white, b.white);
    if (c != 0) return c < 0;
    return cmp_sets(a.black, b.black) < 0;
}

// Materialized prefix of the graded enumeration. Grades are generated whole;
// if the next grade would push past the budget, the horizon flag is set and
// deeper queries fail (enumerate) or degrade to rank 0 (locate).
class PatternUniverse {
public:
    static constexpr std::size_t kMaxPatterns = 300000;
    static constexpr unsigned kMaxGrade = 40;

    static PatternUniverse& instance() {
        static PatternUniverse u;
        return u;
    }

    Pattern enumerate(const PatternFilter& filter, std::uint64_t n) {
        std::scoped_lock lock(mu_);
        if (n == 0) throw std::invalid_argument("enumerate_pattern: index is 1-based");
        if (filter.mode == PatternMode::triangle_free) {
            while (tf_count_ < n && grow_locked()) {
            }
            if (tf_count_ < n)
                throw EnumerationHorizonError("pattern enumeration: triangle-free index " +
                                              std::to_string(n) + " beyond materialization budget");
            auto it = std::lower_bound(tf_prefix_.begin(), tf_prefix_.end(), n);
            Pattern p = all_[static_cast<std::size_t>(it - tf_prefix_.begin())];
            p.index = n;
            return p;
        }
        while (all_.size() < n && grow_locked()) {
        }
        if (all_.size() < n)
            throw EnumerationHorizonError("pattern enumeration: index " + std::to_string(n) +
                                          " beyond materialization budget");
        Pattern p = all_[static_cast<std::size_t>(n - 1)];
        p.index = n;
        return p;
    }

    std::uint64_t rank(const PatternFilter& filter, const Pattern& p) {
        std::scoped_lock lock(mu_);
        Int g = pattern_grade(p);
        if (g > kMaxGrade) return 0;
        unsigned grade = g.convert_to<unsigned>();
        while (next_grade_ <= grade && grow_locked()) {
        }
        if (next_grade_ <= grade) return 0;  // horizon reached first
        std::size_t lo = grade_offsets_[grade];
        std::size_t hi = grade + 1 < grade_offsets_.size() ? grade_offsets_[grade + 1] : all_.size();
        auto it = std::lower_bound(all_.begin() + lo, all_.begin() + hi, p, pattern_less);
        if (it == all_.begin() + hi || !it->same_shape(p)) return 0;
        std::size_t pos = static_cast<std::size_t>(it - all_.begin());
        if (filter.mode == PatternMode::triangle_free) {
            if (!filter.admits(all_[pos])) return 0;
            return tf_prefix_[pos];
        }
        return pos + 1;
    }

    std::uint64_t materialized() {
        std::scoped_lock lock(mu_);
        return all_.size();
    }

private:
    PatternUniverse() = default;

    // Generates the next grade in full. Returns false when the budget is
    // exhausted (horizon), leaving previously generated grades intact.
    bool grow_locked() {
        if (horizon_) return false;
        if (next_grade_ > kMaxGrade) {
            horizon_ = true;
            return false;
        }
        unsigned g = next_grade_;
        std::vector<Pattern> grade_patterns;
        // White cost cw, black cost g - cw; families computed per cost.
        for (unsigned cw = 0; cw <= g; ++cw) {
            std::vector<Family> wf;
            std::vector<Family> bf;
            collect_families(cw, wf);
            collect_families(g - cw, bf);
            for (const auto& w : wf) {
                for (const auto& b : bf) {
                    Family merged = w;
                    merged.insert(merged.end(), b.begin(), b.end());
                    std::sort(merged.begin(), merged.end(),
                              [](const RationalInterval& x, const RationalInterval& y) {
                                  return x.lo < y.lo;
                              });
                    if (!closures_pairwise_disjoint(merged)) continue;
                    Pattern p;
                    p.white = IntervalSet::of(w);
                    p.black = IntervalSet::of(b);
                    grade_patterns.push_back(std::move(p));
                    if (all_.size() + grade_patterns.size() > kMaxPatterns) {
                        horizon_ = true;
                        return false;
                    }
                }
            }
        }
        std::sort(grade_patterns.begin(), grade_patterns.end(), pattern_less);
        grade_offsets_.push_back(all_.size());
        PatternFilter tf = PatternFilter::trianglefree();
        for (auto& p : grade_patterns) {
            all_.push_back(std::move(p));
            if (tf.admits(all_.back())) ++tf_count_;
            tf_prefix_.push_back(tf_count_);
        }
        ++next_grade_;
        return true;
    }

    std::mutex mu_;
    std::vector<Pattern> all_;
    std::vector<std::uint64_t> tf_prefix_;  // inclusive prefix counts of tf-admissible
    std::vector<std::size_t> grade_offsets_;
    std::uint64_t tf_count_ = 0;
    unsigned next_grade_ = 0;
    bool horizon_ = false;
};

void check_point_sets(const std::vector<Rational>& whites, const std::vector<Rational>& blacks) {
    std::vector<Rational> all = whites;
    all.insert(all.end(), blacks.begin(), blacks.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i)
        if (all[i] == all[i - 1])
            throw PreconditionError("locate_pattern: white/black points must be pairwise distinct");
}

IntervalSet cover_points(const std::vector<Rational>& points, const Rational& delta) {
    std::vector<RationalInterval> parts;
    parts.reserve(points.size());
    for (const auto& p : points) {
        Rational lo = simplest_in_interval(p - delta, p - delta / 2);
        Rational hi = simplest_in_interval(p + delta / 2, p + delta);
        parts.push_back(open_interval(lo, hi));
    }
    return IntervalSet::of(std::move(parts));
}

}  // namespace

Rational Pattern::max_abs_endpoint() const {
    Rational m = 0;
    for (const IntervalSet* s : {&white, &black})
        for (const auto& iv : s->parts()) {
            Rational a = rational_abs(iv.lo);
            Rational b = rational_abs(iv.hi);
            if (a > m) m = a;
            if (b > m) m = b;
        }
    return m;
}

std::string Pattern::to_string() const {
    return "W: " + white.to_string() + " | B: " + black.to_string() +
           " | idx: " + std::to_string(index);
}

Pattern Pattern::parse(std::string_view text) {
    auto wpos = text.find("W:");
    auto bpos = text.find("| B:");
    auto ipos = text.find("| idx:");
    if (wpos == std::string_view::npos || bpos == std::string_view::npos ||
        ipos == std::string_view::npos || !(wpos < bpos && bpos < ipos))
        throw std::invalid_argument("pattern: cannot parse '" + std::string(text) + "'");
    Pattern p;
    p.white = IntervalSet::parse(text.substr(wpos + 2, bpos - wpos - 2));
    p.black = IntervalSet::parse(text.substr(bpos + 4, ipos - bpos - 4));
    std::string idx(text.substr(ipos + 6));
    p.index = std::stoull(idx);
    for (const IntervalSet* s : {&p.white, &p.black}) {
        for (const auto& iv : s->parts())
            if (iv.is_point() || iv.lo_closed || iv.hi_closed)
                throw std::invalid_argument("pattern: parts must be nondegenerate open intervals");
        for (std::size_t i = 1; i < s->part_count(); ++i)
            if (!(s->parts()[i].lo > s->parts()[i - 1].hi))
                throw std::invalid_argument("pattern: part closures must be pairwise disjoint");
    }
    for (const auto& w : p.white.parts())
        for (const auto& b : p.black.parts())
            if (closures_intersect(w, b))
                throw std::invalid_argument("pattern: white/black closures must be disjoint");
    return p;
}

PatternFilter PatternFilter::ksfree(int s) {
    if (s < 4) throw std::invalid_argument("PatternFilter: ks_free requires s >= 4");
    return {PatternMode::ks_free, s};
}

bool PatternFilter::admits(const Pattern& p) const {
    if (mode != PatternMode::triangle_free) return true;
    return is_sum_free_closure(p.white);
}

std::string PatternFilter::name() const {
    switch (mode) {
        case PatternMode::plain:
            return "plain";
        case PatternMode::triangle_free:
            return "triangle_free";
        case PatternMode::ks_free:
            return "ks_free(" + std::to_string(s) + ")";
    }
    return "?";
}

Pattern enumerate_pattern(const PatternFilter& filter, std::uint64_t n) {
    return PatternUniverse::instance().enumerate(filter, n);
}

Pattern locate_pattern_with_width(const PatternFilter& filter, const std::vector<Rational>& whites,
                                  const std::vector<Rational>& blacks, const Rational& half_width) {
    check_point_sets(whites, blacks);
    if (half_width <= 0) throw std::invalid_argument("locate_pattern: half width must be positive");
    Rational delta = half_width;
    for (int attempt = 0; attempt <= 64; ++attempt, delta /= 2) {
        IntervalSet white = cover_points(whites, delta);
        IntervalSet black = cover_points(blacks, delta);
        // The cover is usable only once every point has its own interval and
        // all closures are pairwise disjoint; shrink otherwise.
        if (white.part_count() != whites.size() || black.part_count() != blacks.size()) continue;
        bool disjoint = true;
        for (const auto& w : white.parts())
            for (const auto& b : black.parts())
                if (closures_intersect(w, b)) disjoint = false;
        auto internally_separated = [](const IntervalSet& s) {
            for (std::size_t i = 1; i < s.part_count(); ++i)
                if (!(s.parts()[i].lo > s.parts()[i - 1].hi)) return false;
            return true;
        };
        if (!disjoint || !internally_separated(white) || !internally_separated(black)) continue;
        if (filter.mode == PatternMode::triangle_free && !is_sum_free_closure(white)) continue;
        Pattern p;
        p.white = std::move(white);
        p.black = std::move(black);
        p.index = PatternUniverse::instance().rank(filter, p);
        return p;
    }
    if (filter.mode == PatternMode::triangle_free)
        throw InfeasibleCoverError(
            "locate_pattern: no sum-free cover of the white points at the search resolution");
    throw InfeasibleCoverError("locate_pattern: no disjoint cover at the search resolution");
}

Pattern locate_pattern(const PatternFilter& filter, const std::vector<Rational>& whites,
                       const std::vector<Rational>& blacks) {
    check_point_sets(whites, blacks);
    Rational delta = make_rational(1, 4);
    std::vector<Rational> all = whites;
    all.insert(all.end(), blacks.begin(), blacks.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i) {
        Rational gap = (all[i] - all[i - 1]) / 4;
        if (gap < delta) delta = gap;
    }
    return locate_pattern_with_width(filter, whites, blacks, delta);
}

std::uint64_t pattern_rank(const PatternFilter& filter, const Pattern& p) {
    return PatternUniverse::instance().rank(filter, p);
}

std::uint64_t materialized_pattern_count() { return PatternUniverse::instance().materialized(); }

}  // namespace ugraph
