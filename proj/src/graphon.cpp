#include "ugraph/graphon.hpp"

#include <algorithm>
#include <numeric>

#include "ugraph/errors.hpp"

namespace ugraph {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double measure_draw(const VertexMeasure& m, Rng& rng) {
    switch (m.kind) {
        case VertexMeasure::Kind::uniform:
            return to_double(m.lo) + rng.uniform() * (to_double(m.hi) - to_double(m.lo));
        case VertexMeasure::Kind::gaussian:
            return to_double(m.mean) + to_double(m.sigma) * rng.gaussian();
        case VertexMeasure::Kind::discrete_blocks:
            break;
    }
    throw std::logic_error("measure_draw: discrete measure has no continuous draw");
}

}  // namespace

VertexMeasure VertexMeasure::uniform(const Rational& lo, const Rational& hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform measure: lo must be < hi");
    VertexMeasure m;
    m.kind = Kind::uniform;
    m.lo = lo;
    m.hi = hi;
    return m;
}

VertexMeasure VertexMeasure::gaussian(const Rational& mean, const Rational& sigma) {
    if (!(sigma > 0)) throw std::invalid_argument("gaussian measure: sigma must be positive");
    VertexMeasure m;
    m.kind = Kind::gaussian;
    m.mean = mean;
    m.sigma = sigma;
    return m;
}

VertexMeasure VertexMeasure::discrete_blocks(std::vector<Rational> masses) {
    if (masses.empty()) throw std::invalid_argument("block measure: no masses");
    Rational sum = 0;
    for (const auto& w : masses) {
        if (!(w > 0)) throw std::invalid_argument("block measure: masses must be positive");
        sum += w;
    }
    if (sum != 1) throw std::invalid_argument("block measure: masses must sum to exactly 1");
    VertexMeasure m;
    m.kind = Kind::discrete_blocks;
    m.masses = std::move(masses);
    return m;
}

std::string VertexMeasure::to_string() const {
    switch (kind) {
        case Kind::uniform:
            return "uniform:" + format_rational(lo) + ":" + format_rational(hi);
        case Kind::gaussian:
            return "gaussian:" + format_rational(mean) + ":" + format_rational(sigma);
        case Kind::discrete_blocks: {
            std::string s = "blocks:";
            for (std::size_t i = 0; i < masses.size(); ++i)
                s += (i ? "," : "") + format_rational(masses[i]);
            return s;
        }
    }
    return "?";
}

VertexMeasure VertexMeasure::parse(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() == 3 && parts[0] == "uniform")
        return uniform(parse_rational(parts[1]), parse_rational(parts[2]));
    if (parts.size() == 3 && parts[0] == "gaussian")
        return gaussian(parse_rational(parts[1]), parse_rational(parts[2]));
    if (parts.size() == 2 && parts[0] == "blocks") {
        std::vector<Rational> masses;
        for (const auto& tok : split(parts[1], ',')) masses.push_back(parse_rational(tok));
        return discrete_blocks(std::move(masses));
    }
    throw std::invalid_argument("vertex measure: cannot parse '" + text + "'");
}

Graphon Graphon::constant(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("constant graphon: p must lie in [0,1]");
    Graphon g;
    g.kind_ = Kind::constant;
    g.p_ = p;
    return g;
}

Graphon Graphon::step(std::vector<Rational> masses, std::vector<std::vector<Rational>> values) {
    VertexMeasure::discrete_blocks(masses);  // reuse mass validation
    std::size_t k = masses.size();
    if (values.size() != k) throw std::invalid_argument("step graphon: values must be KxK");
    for (std::size_t i = 0; i < k; ++i) {
        if (values[i].size() != k) throw std::invalid_argument("step graphon: values must be KxK");
        for (std::size_t j = 0; j < k; ++j) {
            if (values[i][j] < 0 || values[i][j] > 1)
                throw std::invalid_argument("step graphon: values must lie in [0,1]");
            if (values[i][j] != values[j][i])
                throw std::invalid_argument("step graphon: values must be symmetric");
        }
    }
    Graphon g;
    g.kind_ = Kind::step;
    g.masses_ = std::move(masses);
    g.values_ = std::move(values);
    return g;
}

Graphon Graphon::line_indicator(std::shared_ptr<LineGraphModel> model) {
    if (!model) throw std::invalid_argument("line graphon: null model");
    Graphon g;
    g.kind_ = Kind::line_indicator;
    g.line_ = std::move(model);
    return g;
}

Graphon Graphon::plane_indicator(std::shared_ptr<PlaneGraphModel> model) {
    if (!model) throw std::invalid_argument("plane graphon: null model");
    Graphon g;
    g.kind_ = Kind::plane_indicator;
    g.plane_ = std::move(model);
    return g;
}

std::size_t Graphon::block_of(const Rational& x) const {
    if (kind_ != Kind::step) throw UnsupportedVariantError("block_of: step graphons only");
    if (x < 0 || x > 1) throw std::invalid_argument("block_of: point must lie in [0,1]");
    Rational cum = 0;
    for (std::size_t k = 0; k + 1 < masses_.size(); ++k) {
        cum += masses_[k];
        if (x < cum) return k;
    }
    return masses_.size() - 1;
}

Rational Graphon::omega(const Rational& x, const Rational& y) const {
    switch (kind_) {
        case Kind::constant:
            return p_;
        case Kind::step:
            return values_[block_of(x)][block_of(y)];
        case Kind::line_indicator:
            if (x == y) throw LoopEdgeError("omega: x == y on an indicator graphon");
            return line_->adjacent(x, y) ? 1 : 0;
        case Kind::plane_indicator:
            if (x == y) throw LoopEdgeError("omega: x == y on an indicator graphon");
            return plane_->adjacent(x, y) ? 1 : 0;
    }
    return 0;
}

bool Graphon::deterministic_edges() const {
    switch (kind_) {
        case Kind::constant:
            return p_ == 0 || p_ == 1;
        case Kind::step:
            for (const auto& row : values_)
                for (const auto& v : row)
                    if (v != 0 && v != 1) return false;
            return true;
        case Kind::line_indicator:
        case Kind::plane_indicator:
            return true;
    }
    return false;
}

std::string Graphon::to_string() const {
    switch (kind_) {
        case Kind::constant:
            return "constant(" + format_rational(p_) + ")";
        case Kind::step:
            return "step(K=" + std::to_string(masses_.size()) + ")";
        case Kind::line_indicator:
            return std::string("line_indicator(") +
                   (line_->mode() == LineMode::plain ? "plain" : "triangle_free") + ")";
        case Kind::plane_indicator:
            return "plane_indicator(ks_free(" + std::to_string(plane_->clique_bound()) + "))";
    }
    return "?";
}

void check_compatible(const Graphon& g, const VertexMeasure& m) {
    bool blocks = m.kind == VertexMeasure::Kind::discrete_blocks;
    switch (g.kind()) {
        case Graphon::Kind::constant:
            return;  // vertex coordinates never enter omega
        case Graphon::Kind::step:
            if (!blocks)
                throw IncompatibleModelError("step graphon requires the discrete block measure");
            if (m.masses != g.masses())
                throw IncompatibleModelError("block measure masses must match the step graphon");
            return;
        case Graphon::Kind::line_indicator:
        case Graphon::Kind::plane_indicator:
            if (blocks)
                throw IncompatibleModelError("indicator graphons require a continuous measure");
            return;
    }
}

namespace {

struct SortedCoords {
    std::vector<Rational> value;       // ascending
    std::vector<std::size_t> index;    // original vertex of each position
};

SortedCoords sort_coords(const std::vector<Rational>& coords) {
    SortedCoords s;
    s.index.resize(coords.size());
    std::iota(s.index.begin(), s.index.end(), 0);
    std::sort(s.index.begin(), s.index.end(), [&](std::size_t a, std::size_t b) {
        if (coords[a] != coords[b]) return coords[a] < coords[b];
        return a < b;
    });
    s.value.reserve(coords.size());
    for (std::size_t i : s.index) s.value.push_back(coords[i]);
    return s;
}

// Positions with value in the closed range [lo, hi].
std::pair<std::size_t, std::size_t> range_of(const std::vector<Rational>& v, const Rational& lo,
                                             const Rational& hi) {
    auto first = std::lower_bound(v.begin(), v.end(), lo);
    auto last = std::upper_bound(v.begin(), v.end(), hi);
    return {static_cast<std::size_t>(first - v.begin()), static_cast<std::size_t>(last - v.begin())};
}

}  // namespace

SampledGraph sample_graph(const Graphon& g, const VertexMeasure& m, std::size_t n,
                          std::uint64_t seed) {
    check_compatible(g, m);
    Rng vrng(derive_seed(seed, StreamRole::vertices));
    Rng erng(derive_seed(seed, StreamRole::edges));
    SampledGraph out(n);
    out.seed = seed;
    out.model = g.to_string() + ";" + m.to_string();

    switch (g.kind()) {
        case Graphon::Kind::constant: {
            BernoulliGate gate(g.p());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (gate.draw(erng)) out.set_edge(i, j);
            return out;
        }
        case Graphon::Kind::step: {
            std::size_t k = g.block_count();
            BlockSampler blocks_of(g.masses());
            std::vector<std::size_t> block(n);
            out.coords.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                block[i] = blocks_of.draw(vrng);
                out.coords.push_back(Rational(static_cast<long>(block[i])));
            }
            std::vector<std::vector<BernoulliGate>> gates;
            gates.reserve(k);
            for (std::size_t a = 0; a < k; ++a) {
                std::vector<BernoulliGate> row;
                row.reserve(k);
                for (std::size_t b = 0; b < k; ++b) row.emplace_back(g.values()[a][b]);
                gates.push_back(std::move(row));
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (gates[block[i]][block[j]].draw(erng)) out.set_edge(i, j);
            return out;
        }
        case Graphon::Kind::line_indicator: {
            out.mode = g.line_model()->mode() == LineMode::plain ? PatternMode::plain
                                                                 : PatternMode::triangle_free;
            out.coords.reserve(n);
            for (std::size_t i = 0; i < n; ++i) out.coords.push_back(dyadic_round(measure_draw(m, vrng)));
            if (n == 0) return out;
            SortedCoords sc = sort_coords(out.coords);
            Rational spread = sc.value.back() - sc.value.front();
            g.line_model()->extend_to_bound(spread);
            IntervalSet z = g.line_model()->z_prefix();
            for (const auto& part : z.parts()) {
                for (std::size_t a = 0; a < n; ++a) {
                    auto [first, last] =
                        range_of(sc.value, sc.value[a] + part.lo, sc.value[a] + part.hi);
                    for (std::size_t b = first; b < last; ++b)
                        if (sc.index[a] != sc.index[b]) out.set_edge(sc.index[a], sc.index[b]);
                }
            }
            return out;
        }
        case Graphon::Kind::plane_indicator: {
            out.mode = PatternMode::ks_free;
            out.s = g.plane_model()->clique_bound();
            out.coords.reserve(n);
            for (std::size_t i = 0; i < n; ++i) out.coords.push_back(dyadic_round(measure_draw(m, vrng)));
            if (n == 0) return out;
            SortedCoords sc = sort_coords(out.coords);
            Rational far = 0;
            for (const auto& c : out.coords)
                if (rational_abs(c) > far) far = rational_abs(c);
            g.plane_model()->extend_to_bound(far);
            BoxSet z = g.plane_model()->boxes_snapshot();
            for (const auto& box : z.boxes()) {
                auto [xf, xl] = range_of(sc.value, box.x.lo, box.x.hi);
                auto [yf, yl] = range_of(sc.value, box.y.lo, box.y.hi);
                for (std::size_t a = xf; a < xl; ++a)
                    for (std::size_t b = yf; b < yl; ++b)
                        if (sc.index[a] != sc.index[b]) out.set_edge(sc.index[a], sc.index[b]);
            }
            return out;
        }
    }
    throw std::logic_error("sample_graph: unreachable");
}

std::string UniversalityReport::to_string() const {
    std::string s = "universality: " + std::to_string(successes) + "/" + std::to_string(trials) +
                    " trials found a positive-product probe";
    if (witness_checked)
        s += "; " + std::to_string(witness_checked) + " exact witness cross-checks passed";
    return s;
}

UniversalityReport check_generalized_universality(const Graphon& g, const VertexMeasure& m,
                                                  std::uint64_t trials, std::uint64_t probes,
                                                  std::uint64_t seed) {
    if (trials < 1 || probes < 1)
        throw std::invalid_argument("check_generalized_universality: trials and probes must be >= 1");
    check_compatible(g, m);
    UniversalityReport report;
    report.trials = trials;

    auto draw_point = [&](Rng& rng) -> Rational {
        if (m.kind == VertexMeasure::Kind::discrete_blocks) {
            // Representative point of the drawn block inside [0,1].
            Rational u = make_rational(Int(rng.uniform_bits()), Int(1) << 53);
            Rational acc = 0;
            for (std::size_t b = 0; b < m.masses.size(); ++b) {
                Rational next = acc + m.masses[b];
                if (u < next || b + 1 == m.masses.size()) return (acc + next) / 2;
                acc = next;
            }
            return (1 + acc) / 2;
        }
        return dyadic_round(measure_draw(m, rng));
    };

    bool line_tf = g.kind() == Graphon::Kind::line_indicator &&
                   g.line_model()->mode() == LineMode::triangle_free;

    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, StreamRole::replicates, t));
        std::vector<Rational> whites, blacks;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                throw PreconditionError("check_generalized_universality: no admissible tuple found");
            whites.clear();
            blacks.clear();
            std::size_t nw = 1 + rng.below(3);
            std::size_t nb = rng.below(4);
            bool distinct = true;
            for (std::size_t i = 0; i < nw + nb; ++i) {
                Rational p = draw_point(rng);
                for (const auto& q : whites)
                    if (q == p) distinct = false;
                for (const auto& q : blacks)
                    if (q == p) distinct = false;
                (i < nw ? whites : blacks).push_back(p);
            }
            if (!distinct) continue;
            if (line_tf) {
                bool independent = true;
                for (std::size_t i = 0; i < whites.size() && independent; ++i)
                    for (std::size_t j = i + 1; j < whites.size() && independent; ++j)
                        if (g.line_model()->adjacent(whites[i], whites[j])) independent = false;
                if (!independent) continue;
            }
            break;
        }

        bool success = false;
        for (std::uint64_t p = 0; p < probes && !success; ++p) {
            Rational z = draw_point(rng);
            bool collide = false;
            for (const auto& q : whites)
                if (q == z) collide = true;
            for (const auto& q : blacks)
                if (q == z) collide = true;
            if (collide) continue;
            bool positive = true;
            for (const auto& w : whites)
                if (!(g.omega(w, z) > 0)) positive = false;
            for (const auto& b : blacks)
                if (positive && !(g.omega(b, z) < 1)) positive = false;
            success = positive;
        }
        if (success) ++report.successes;

        if (g.kind() == Graphon::Kind::line_indicator) {
            // Exact cross-check: a verified witness interval must exist.
            RationalInterval w = g.line_model()->witness_interval(whites, blacks);
            if (!(w.lo < w.hi))
                throw ConstructionFailure("check_generalized_universality: empty witness interval");
            ++report.witness_checked;
        }
    }
    return report;
}

}  // namespace ugraph
