#include "ugraph/plane_graph.hpp"

#include <algorithm>

#include "ugraph/errors.hpp"

namespace ugraph {

namespace {

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

// One refinement cell: either a point or an open interval between cuts.
struct Cell {
    bool is_point;
    Rational a;  // the point, or the open interval (a, b)
    Rational b;
    Rational rep1() const { return is_point ? a : Rational((2 * a + b) / 3); }
    Rational rep2() const { return is_point ? a : Rational((a + 2 * b) / 3); }
};

}  // namespace

void BoxSet::add_symmetric(const Box& b) {
    boxes_.push_back(b);
    if (!(b.x == b.y)) boxes_.push_back(Box{b.y, b.x});
}

bool BoxSet::contains(const Rational& x, const Rational& y) const {
    for (const auto& b : boxes_)
        if (b.contains(x, y)) return true;
    return false;
}

PlaneGraphModel::PlaneGraphModel(int s, std::uint64_t step_limit)
    : s_(s), step_limit_(step_limit) {
    if (s < 4) throw std::invalid_argument("plane model: clique bound must be >= 4");
    Box base{closed_interval(Rational(1), Rational(2)), closed_interval(Rational(3), Rational(4))};
    z_.add_symmetric(base);
    m_ = 4;
    PlaneStep st;
    st.seq = 0;
    st.m_bound = m_;
    st.strip = closed_interval(Rational(1), Rational(2));
    steps_.push_back(std::move(st));
}

void PlaneGraphModel::extend_to_bound(const Rational& bound) {
    std::scoped_lock lock(mu_);
    extend_to_bound_locked(bound);
}

void PlaneGraphModel::extend_to_bound_locked(const Rational& bound) {
    std::uint64_t taken = 0;
    // Every box added later has its strip coordinate above m_ + 1, and the
    // other coordinate only matters when paired with it.
    while (m_ + 1 <= bound) {
        if (++taken > step_limit_)
            throw StepLimitError("plane model: extension to bound " + format_rational(bound) +
                                 " exceeds the step limit");
        step_locked();
    }
}

void PlaneGraphModel::step() {
    std::scoped_lock lock(mu_);
    step_locked();
}

void PlaneGraphModel::step_locked() {
    Pattern p = enumerate_pattern(PatternFilter::plain(), frontier_);
    ++frontier_;
    apply_pattern_locked(p, false);
}

const PlaneStep* PlaneGraphModel::apply_pattern_locked(const Pattern& pattern, bool injected) {
    auto found = step_by_shape_.find(shape_key(pattern));
    if (found != step_by_shape_.end()) return &steps_[found->second];

    std::uint64_t n = steps_.size();
    Rational m_next = pattern.max_abs_endpoint() + m_ + Rational(static_cast<long>(n)) + 1;
    bool clique = !pattern.white.empty() && clique_check_locked(pattern.white, s_ - 1);
    if (clique && injected) return nullptr;  // caller shrinks the cover and retries

    PlaneStep st;
    st.seq = n;
    st.pattern = pattern;
    st.injected = injected;
    st.m_bound = m_next;
    if (clique) {
        st.skipped = true;
    } else {
        st.strip = closed_interval(m_next + 1, m_next + 2);
        for (const auto& w : pattern.white.parts())
            z_.add_symmetric(Box{st.strip, closed_interval(w.lo, w.hi)});
    }
    m_ = m_next;
    steps_.push_back(std::move(st));
    step_by_shape_[shape_key(pattern)] = steps_.size() - 1;
    return &steps_.back();
}

bool PlaneGraphModel::adjacent(const Rational& x, const Rational& y) {
    std::scoped_lock lock(mu_);
    return adjacent_locked(x, y);
}

bool PlaneGraphModel::adjacent_locked(const Rational& x, const Rational& y) {
    if (x == y) throw LoopEdgeError("plane model: adjacency undefined on loops");
    Rational ax = rational_abs(x);
    Rational ay = rational_abs(y);
    extend_to_bound_locked(ax > ay ? ax : ay);
    return z_.contains(x, y);
}

bool PlaneGraphModel::white_clique_check(const IntervalSet& white, int k) {
    std::scoped_lock lock(mu_);
    if (k < 2) throw std::invalid_argument("white_clique_check: k must be >= 2");
    return clique_check_locked(white, k);
}

bool PlaneGraphModel::clique_check_locked(const IntervalSet& white, int k) const {
    if (white.empty()) return false;
    // Cut points: every box coordinate endpoint, on both axes (the set is
    // symmetric, but collect both to be safe).
    std::vector<Rational> cuts;
    for (const auto& b : z_.boxes()) {
        cuts.push_back(b.x.lo);
        cuts.push_back(b.x.hi);
        cuts.push_back(b.y.lo);
        cuts.push_back(b.y.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Cell> cells;
    for (const auto& part : white.parts()) {
        std::vector<Rational> inner;
        for (const auto& t : cuts)
            if (part.lo < t && t < part.hi) inner.push_back(t);
        if (part.is_point()) {
            cells.push_back({true, part.lo, part.lo});
            continue;
        }
        if (part.lo_closed) cells.push_back({true, part.lo, part.lo});
        Rational prev = part.lo;
        for (const auto& t : inner) {
            cells.push_back({false, prev, t});
            cells.push_back({true, t, t});
            prev = t;
        }
        cells.push_back({false, prev, part.hi});
        if (part.hi_closed) cells.push_back({true, part.hi, part.hi});
    }

    std::size_t m = cells.size();
    // Membership is constant on cell products, so representatives decide
    // adjacency exactly.
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    std::vector<bool> self_adj(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        self_adj[i] = !cells[i].is_point && z_.contains(cells[i].rep1(), cells[i].rep2());
        for (std::size_t j = i + 1; j < m; ++j)
            adj[i][j] = adj[j][i] = z_.contains(cells[i].rep1(), cells[j].rep1());
    }

    // DFS for a k-clique; a self-adjacent cell compatible with the current
    // choice can fill all remaining slots at once.
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (chosen.size() >= static_cast<std::size_t>(k)) return true;
        for (std::size_t i = start; i < m; ++i) {
            bool compatible = true;
            for (std::size_t c : chosen)
                if (!adj[i][c]) compatible = false;
            if (!compatible) continue;
            if (self_adj[i]) return true;
            chosen.push_back(i);
            if (self(self, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

RationalInterval PlaneGraphModel::witness_box(const std::vector<Rational>& whites,
                                              const std::vector<Rational>& blacks) {
    std::scoped_lock lock(mu_);
    std::string qk = query_key(whites, blacks);
    auto cached = witness_cache_.find(qk);
    if (cached != witness_cache_.end()) return cached->second;

    // Freeze the pairwise adjacency of the query points, then screen the
    // whites for a K_{s-1} exactly.
    Rational far = 0;
    for (const auto& p : whites)
        if (rational_abs(p) > far) far = rational_abs(p);
    for (const auto& p : blacks)
        if (rational_abs(p) > far) far = rational_abs(p);
    extend_to_bound_locked(far);

    std::size_t nw = whites.size();
    std::vector<std::vector<bool>> adj(nw, std::vector<bool>(nw, false));
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = i + 1; j < nw; ++j)
            adj[i][j] = adj[j][i] = adjacent_locked(whites[i], whites[j]);
    std::vector<std::size_t> chosen;
    auto has_clique = [&](auto&& self, std::size_t start, int want) -> bool {
        if (chosen.size() >= static_cast<std::size_t>(want)) return true;
        for (std::size_t i = start; i < nw; ++i) {
            bool ok = true;
            for (std::size_t c : chosen)
                if (!adj[i][c]) ok = false;
            if (!ok) continue;
            chosen.push_back(i);
            if (self(self, i + 1, want)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (has_clique(has_clique, 0, s_ - 1))
        throw PreconditionError("witness_box: whites contain a K_" + std::to_string(s_ - 1));

    Rational delta0 = make_rational(1, 4);
    std::vector<Rational> pts = whites;
    pts.insert(pts.end(), blacks.begin(), blacks.end());
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Rational g = (pts[i] - pts[i - 1]) / 4;
        if (g < delta0) delta0 = g;
    }

    Rational delta = delta0;
    for (int attempt = 0; attempt <= 64; ++attempt, delta /= 2) {
        Pattern pattern = locate_pattern_with_width(PatternFilter::plain(), whites, blacks, delta);
        const PlaneStep* st = apply_pattern_locked(pattern, true);
        if (st == nullptr) continue;  // screened out: shrink the cover
        RationalInterval strip = st->strip;
        RationalInterval witness = open_interval(strip.lo, strip.hi);

        // Freeze every pair the witness promises, then verify exactly.
        Rational bound = strip.hi;
        if (far > bound) bound = far;
        extend_to_bound_locked(bound);
        bool ok = true;
        for (const auto& w : whites) {
            bool covered = false;
            for (const auto& b : z_.boxes())
                if (b.x.lo <= strip.lo && strip.hi <= b.x.hi && b.y.closure_contains(w))
                    covered = true;
            if (!covered) ok = false;
        }
        for (const auto& bl : blacks) {
            for (const auto& b : z_.boxes())
                if (b.x.lo <= strip.hi && strip.lo <= b.x.hi && b.y.closure_contains(bl)) ok = false;
        }
        if (!ok) continue;
        witness_cache_.emplace(qk, witness);
        return witness;
    }
    throw ConstructionFailure("plane model: witness search exhausted its budget");
}

std::vector<PlaneStep> PlaneGraphModel::steps() const {
    std::scoped_lock lock(mu_);
    return steps_;
}

BoxSet PlaneGraphModel::boxes_snapshot() const {
    std::scoped_lock lock(mu_);
    return z_;
}

std::uint64_t PlaneGraphModel::built_step_count() const {
    std::scoped_lock lock(mu_);
    return steps_.size();
}

Rational PlaneGraphModel::m_frontier() const {
    std::scoped_lock lock(mu_);
    return m_;
}

std::string PlaneGraphModel::dump() const {
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
        out += " | " + format_rational(s.m_bound);
        out += " | ";
        if (!s.skipped)
            out += "[" + format_rational(s.strip.lo) + "," + format_rational(s.strip.hi) + "]";
        out += " | " + s.pattern.white.to_string();
        out += '\n';
    }
    return out;
}

}  // namespace ugraph
