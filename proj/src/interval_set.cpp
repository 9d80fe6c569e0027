#include "ugraph/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace ugraph {

RationalInterval::RationalInterval(Rational l, Rational h, bool lc, bool hc)
    : lo(std::move(l)), hi(std::move(h)), lo_closed(lc), hi_closed(hc) {
    if (lo > hi) throw std::invalid_argument("interval: lo > hi");
    if (lo == hi && !(lo_closed && hi_closed))
        throw std::invalid_argument("interval: degenerate interval must be closed");
}

bool RationalInterval::contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
}

RationalInterval open_interval(const Rational& lo, const Rational& hi) {
    return RationalInterval(lo, hi, false, false);
}

RationalInterval closed_interval(const Rational& lo, const Rational& hi) {
    return RationalInterval(lo, hi, true, true);
}

RationalInterval point_interval(const Rational& x) {
    return RationalInterval(x, x, true, true);
}

bool closures_intersect(const RationalInterval& a, const RationalInterval& b) {
    return a.lo <= b.hi && b.lo <= a.hi;
}

IntervalSet IntervalSet::of(std::vector<RationalInterval> raw) {
    std::sort(raw.begin(), raw.end(), [](const RationalInterval& a, const RationalInterval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        if (a.lo_closed != b.lo_closed) return a.lo_closed;  // closed endpoint first
        return a.hi < b.hi;
    });
    IntervalSet out;
    for (auto& part : raw) {
        if (out.parts_.empty()) {
            out.parts_.push_back(part);
            continue;
        }
        RationalInterval& cur = out.parts_.back();
        bool connected;
        if (part.lo < cur.hi) {
            connected = true;
        } else if (part.lo == cur.hi) {
            connected = cur.hi_closed || part.lo_closed;
        } else {
            connected = false;
        }
        if (!connected) {
            out.parts_.push_back(part);
            continue;
        }
        if (part.lo == cur.lo) cur.lo_closed = cur.lo_closed || part.lo_closed;
        if (part.hi > cur.hi) {
            cur.hi = part.hi;
            cur.hi_closed = part.hi_closed;
        } else if (part.hi == cur.hi) {
            cur.hi_closed = cur.hi_closed || part.hi_closed;
        }
    }
    return out;
}

bool IntervalSet::contains(const Rational& x) const {
    // Last part whose lo is <= x is the only candidate.
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const RationalInterval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(x);
}

bool IntervalSet::contains_closure(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const RationalInterval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->closure_contains(x);
}

Rational IntervalSet::min_value() const {
    if (parts_.empty()) throw std::domain_error("interval set: min of empty set");
    return parts_.front().lo;
}

Rational IntervalSet::max_value() const {
    if (parts_.empty()) throw std::domain_error("interval set: max of empty set");
    return parts_.back().hi;
}

Rational IntervalSet::total_length() const {
    Rational sum = 0;
    for (const auto& p : parts_) sum += p.length();
    return sum;
}

IntervalSet IntervalSet::closure() const {
    std::vector<RationalInterval> closed;
    closed.reserve(parts_.size());
    for (const auto& p : parts_) closed.push_back(closed_interval(p.lo, p.hi));
    return of(std::move(closed));
}

std::string IntervalSet::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& p = parts_[i];
        if (i) out += ',';
        out += p.lo_closed ? '[' : '(';
        out += format_rational(p.lo);
        out += ',';
        out += format_rational(p.hi);
        out += p.hi_closed ? ']' : ')';
    }
    return out;
}

IntervalSet IntervalSet::parse(std::string_view text) {
    std::vector<RationalInterval> parts;
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        char openc = text[i];
        if (openc != '[' && openc != '(')
            throw std::invalid_argument("interval set: expected '[' or '(' in '" + std::string(text) + "'");
        ++i;
        std::size_t comma = text.find(',', i);
        if (comma == std::string_view::npos) throw std::invalid_argument("interval set: missing ','");
        std::size_t close = text.find_first_of("])", comma);
        if (close == std::string_view::npos) throw std::invalid_argument("interval set: missing closing bracket");
        auto trim = [&](std::string_view s) {
            while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
            while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
            return s;
        };
        Rational lo = parse_rational(trim(text.substr(i, comma - i)));
        Rational hi = parse_rational(trim(text.substr(comma + 1, close - comma - 1)));
        parts.emplace_back(lo, hi, openc == '[', text[close] == ']');
        i = close + 1;
        skip_ws();
        if (i < text.size()) {
            if (text[i] != ',') throw std::invalid_argument("interval set: expected ',' between parts");
            ++i;
            skip_ws();
        }
    }
    return of(std::move(parts));
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<RationalInterval> all = a.parts();
    all.insert(all.end(), b.parts().begin(), b.parts().end());
    return IntervalSet::of(std::move(all));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
    std::vector<RationalInterval> out;
    std::size_t i = 0, j = 0;
    const auto& as = a.parts();
    const auto& bs = b.parts();
    while (i < as.size() && j < bs.size()) {
        const auto& A = as[i];
        const auto& B = bs[j];
        Rational lo;
        bool lc;
        if (A.lo > B.lo) {
            lo = A.lo;
            lc = A.lo_closed;
        } else if (A.lo < B.lo) {
            lo = B.lo;
            lc = B.lo_closed;
        } else {
            lo = A.lo;
            lc = A.lo_closed && B.lo_closed;
        }
        Rational hi;
        bool hc;
        if (A.hi < B.hi) {
            hi = A.hi;
            hc = A.hi_closed;
        } else if (A.hi > B.hi) {
            hi = B.hi;
            hc = B.hi_closed;
        } else {
            hi = A.hi;
            hc = A.hi_closed && B.hi_closed;
        }
        if (lo < hi || (lo == hi && lc && hc)) out.emplace_back(lo, hi, lc, hc);
        if (A.hi < B.hi) {
            ++i;
        } else if (A.hi > B.hi) {
            ++j;
        } else if (A.hi_closed == B.hi_closed) {
            ++i;
            ++j;
        } else if (A.hi_closed) {
            ++j;
        } else {
            ++i;
        }
    }
    return IntervalSet::of(std::move(out));
}

IntervalSet set_subtract(const IntervalSet& a, const IntervalSet& b) {
    std::vector<RationalInterval> out;
    const auto& bs = b.parts();
    for (const auto& A : a.parts()) {
        RationalInterval cur = A;
        bool alive = true;
        for (const auto& B : bs) {
            if (!alive) break;
            if (B.hi < cur.lo || (B.hi == cur.lo && !(B.hi_closed && cur.lo_closed))) continue;
            if (B.lo > cur.hi || (B.lo == cur.hi && !(B.lo_closed && cur.hi_closed))) break;
            // Left remainder: cur up to the start of B.
            if (cur.lo < B.lo || (cur.lo == B.lo && cur.lo_closed && !B.lo_closed)) {
                Rational hi = B.lo;
                bool hc = !B.lo_closed;
                if (cur.lo < hi || (cur.lo == hi && cur.lo_closed && hc))
                    out.emplace_back(cur.lo, hi, cur.lo_closed, hc);
            }
            // Right remainder continues against later B parts.
            if (cur.hi > B.hi || (cur.hi == B.hi && cur.hi_closed && !B.hi_closed)) {
                cur = RationalInterval(B.hi, cur.hi, !B.hi_closed, cur.hi_closed);
            } else {
                alive = false;
            }
        }
        if (alive) out.push_back(cur);
    }
    return IntervalSet::of(std::move(out));
}

bool is_sum_free_closure(const IntervalSet& s) {
    const auto& ps = s.parts();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i; j < ps.size(); ++j) {
            RationalInterval sum = closed_interval(ps[i].lo + ps[j].lo, ps[i].hi + ps[j].hi);
            if (closure_intersects(s, sum)) return false;
        }
    }
    return true;
}

IntervalSet translate(const IntervalSet& s, const Rational& t) {
    std::vector<RationalInterval> out;
    out.reserve(s.part_count());
    for (const auto& p : s.parts())
        out.emplace_back(p.lo + t, p.hi + t, p.lo_closed, p.hi_closed);
    return IntervalSet::of(std::move(out));
}

IntervalSet reflect(const IntervalSet& s) {
    std::vector<RationalInterval> out;
    out.reserve(s.part_count());
    for (const auto& p : s.parts())
        out.emplace_back(-p.hi, -p.lo, p.hi_closed, p.lo_closed);
    return IntervalSet::of(std::move(out));
}

bool contains_interval(const IntervalSet& s, const RationalInterval& iv) {
    // A connected set must land inside a single part.
    for (const auto& p : s.parts()) {
        if (p.lo > iv.lo || (p.lo == iv.lo && !p.lo_closed && iv.lo_closed)) continue;
        if (p.hi < iv.hi || (p.hi == iv.hi && !p.hi_closed && iv.hi_closed)) continue;
        return true;
    }
    return false;
}

bool closure_intersects(const IntervalSet& s, const RationalInterval& iv) {
    for (const auto& p : s.parts())
        if (p.lo <= iv.hi && iv.lo <= p.hi) return true;
    return false;
}

std::optional<Rational> closure_distance(const IntervalSet& s, const Rational& x) {
    if (s.empty()) return std::nullopt;
    std::optional<Rational> best;
    for (const auto& p : s.parts()) {
        Rational d;
        if (x < p.lo)
            d = p.lo - x;
        else if (x > p.hi)
            d = x - p.hi;
        else
            d = 0;
        if (!best || d < *best) best = d;
        if (*best == 0) break;
    }
    return best;
}

}  // namespace ugraph
