#include "ugraph/cylinder.hpp"

#include <cmath>
#include <future>
#include <optional>
#include <istream>
#include <sstream>

#include "ugraph/errors.hpp"

namespace ugraph {

CylinderPattern CylinderPattern::from_entries(std::size_t n, std::vector<std::uint8_t> entries) {
    if (entries.size() != n * n) throw std::invalid_argument("cylinder pattern: wrong entry count");
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i * n + i] != 0)
            throw std::invalid_argument("cylinder pattern: diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (entries[i * n + j] > 1) throw std::invalid_argument("cylinder pattern: entries are 0/1");
            if (entries[i * n + j] != entries[j * n + i])
                throw std::invalid_argument("cylinder pattern: matrix must be symmetric");
        }
    }
    CylinderPattern p;
    p.n = n;
    p.entries = std::move(entries);
    return p;
}

CylinderPattern CylinderPattern::from_code(std::size_t n, std::uint64_t code) {
    std::vector<std::uint8_t> e(n * n, 0);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if ((code >> bit) & 1u) e[i * n + j] = e[j * n + i] = 1;
    return from_entries(n, std::move(e));
}

std::uint64_t CylinderPattern::code() const {
    std::uint64_t c = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if (at(i, j)) c |= std::uint64_t(1) << bit;
    return c;
}

CylinderPattern CylinderPattern::permuted(const std::vector<std::size_t>& perm) const {
    std::vector<std::uint8_t> e(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            e[perm[i] * n + perm[j]] = entries[i * n + j];
    return from_entries(n, std::move(e));
}

CylinderPattern CylinderPattern::parse(std::istream& in) {
    std::size_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("cylinder pattern: missing order");
    std::vector<std::uint8_t> e(n * n, 0);
    for (std::size_t i = 0; i < n * n; ++i) {
        int v = -1;
        if (!(in >> v) || (v != 0 && v != 1))
            throw std::invalid_argument("cylinder pattern: entries must be 0/1");
        e[i] = static_cast<std::uint8_t>(v);
    }
    return from_entries(n, std::move(e));
}

std::string CylinderPattern::to_string() const {
    std::string out = std::to_string(n) + "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out += at(i, j) ? '1' : '0';
            out += j + 1 < n ? ' ' : '\n';
        }
    }
    return out;
}

std::size_t CylinderPattern::ones_above_diagonal() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (at(i, j)) ++c;
    return c;
}

namespace {

Rational pow_rational(const Rational& base, std::size_t e) {
    Rational r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

CylinderEstimate make_exact(const Rational& v) {
    CylinderEstimate e;
    e.exact_value = v;
    e.value = to_double(v);
    e.std_error = 0.0;
    e.exact = true;
    return e;
}

}  // namespace

CylinderEstimate cylinder_exact(const Graphon& g, const CylinderPattern& a) {
    switch (g.kind()) {
        case Graphon::Kind::constant: {
            std::size_t ones = a.ones_above_diagonal();
            std::size_t zeros = a.pairs() - ones;
            return make_exact(pow_rational(g.p(), ones) * pow_rational(1 - g.p(), zeros));
        }
        case Graphon::Kind::step: {
            std::size_t k = g.block_count();
            // Guard: K^n assignments, n*log2(K) <= 24.
            double work = static_cast<double>(a.n) * std::log2(static_cast<double>(k));
            if (work > 24.0)
                throw ComplexityError("cylinder_exact: step evaluation guard n*log2(K) <= 24");
            std::vector<std::size_t> assign(a.n, 0);
            Rational total = 0;
            // DFS over block assignments with partial products per level.
            std::vector<Rational> partial(a.n + 1, Rational(1));
            auto rec = [&](auto&& self, std::size_t i) -> void {
                if (i == a.n) {
                    total += partial[i];
                    return;
                }
                for (std::size_t b = 0; b < k; ++b) {
                    assign[i] = b;
                    Rational f = partial[i] * g.masses()[b];
                    for (std::size_t j = 0; j < i && f != 0; ++j) {
                        const Rational& v = g.values()[assign[j]][b];
                        f *= a.at(i, j) ? v : Rational(1 - v);
                    }
                    if (f == 0) continue;
                    partial[i + 1] = std::move(f);
                    self(self, i + 1);
                }
            };
            rec(rec, 0);
            return make_exact(total);
        }
        case Graphon::Kind::line_indicator:
        case Graphon::Kind::plane_indicator:
            throw UnsupportedVariantError(
                "cylinder_exact: exact values are not defined for indicator graphons "
                "(use cylinder_mc)");
    }
    throw std::logic_error("cylinder_exact: unreachable");
}

namespace {

struct McAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;
    double first = 0.0;
    bool constant = true;  // all integrand values identical so far
};

McAccumulator mc_run(const Graphon& g, const VertexMeasure& m, const CylinderPattern& a,
                     std::uint64_t samples, std::uint64_t stream_seed) {
    McAccumulator acc;
    Rng rng(stream_seed);
    std::size_t n = a.n;
    // Per-sample vertex draws follow the same transforms as sample_graph.
    std::vector<Rational> xs(n);
    std::vector<std::size_t> blocks(n);
    std::vector<double> values;  // step values as doubles
    std::optional<BlockSampler> block_sampler;
    if (g.kind() == Graphon::Kind::step) {
        block_sampler.emplace(g.masses());
        for (const auto& row : g.values())
            for (const auto& v : row) values.push_back(to_double(v));
    }
    double p_const = g.kind() == Graphon::Kind::constant ? to_double(g.p()) : 0.0;

    for (std::uint64_t s = 0; s < samples; ++s) {
        double integrand = 1.0;
        switch (g.kind()) {
            case Graphon::Kind::constant: {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        integrand *= a.at(i, j) ? p_const : 1.0 - p_const;
                break;
            }
            case Graphon::Kind::step: {
                std::size_t k = g.block_count();
                for (std::size_t i = 0; i < n; ++i) blocks[i] = block_sampler->draw(rng);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j) {
                        double v = values[blocks[i] * k + blocks[j]];
                        integrand *= a.at(i, j) ? v : 1.0 - v;
                    }
                break;
            }
            case Graphon::Kind::line_indicator:
            case Graphon::Kind::plane_indicator: {
                for (std::size_t i = 0; i < n; ++i) {
                    double t = m.kind == VertexMeasure::Kind::uniform
                                   ? to_double(m.lo) + rng.uniform() * (to_double(m.hi) - to_double(m.lo))
                                   : to_double(m.mean) + to_double(m.sigma) * rng.gaussian();
                    xs[i] = dyadic_round(t);
                }
                bool match = true;
                for (std::size_t i = 0; i < n && match; ++i)
                    for (std::size_t j = i + 1; j < n && match; ++j) {
                        bool adj;
                        if (xs[i] == xs[j])
                            adj = false;  // coincident points are never joined
                        else if (g.kind() == Graphon::Kind::line_indicator)
                            adj = g.line_model()->adjacent(xs[i], xs[j]);
                        else
                            adj = g.plane_model()->adjacent(xs[i], xs[j]);
                        if (adj != a.at(i, j)) match = false;
                    }
                integrand = match ? 1.0 : 0.0;
                break;
            }
        }
        if (acc.count == 0) acc.first = integrand;
        if (integrand != acc.first) acc.constant = false;
        acc.sum += integrand;
        acc.sumsq += integrand * integrand;
        acc.count += 1;
    }
    return acc;
}

}  // namespace

CylinderEstimate cylinder_mc(const Graphon& g, const VertexMeasure& m, const CylinderPattern& a,
                             std::uint64_t samples, std::uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("cylinder_mc: samples must be >= 1");
    check_compatible(g, m);

    constexpr std::uint64_t kShards = 64;
    std::vector<McAccumulator> parts;
    if (samples >= kShards * 100) {
        std::uint64_t base = samples / kShards;
        std::uint64_t extra = samples % kShards;
        std::vector<std::future<McAccumulator>> futures(kShards);
        int workers = threads < 1 ? 1 : threads;
        // Launch in waves of `workers`; shard streams are fixed, so the
        // estimate does not depend on the thread count.
        for (std::uint64_t s = 0; s < kShards; ++s) {
            std::uint64_t count = base + (s < extra ? 1 : 0);
            std::uint64_t shard_seed = derive_seed(seed, StreamRole::shards, s);
            auto policy = workers > 1 ? std::launch::async : std::launch::deferred;
            futures[s] = std::async(policy, [&, count, shard_seed]() {
                return mc_run(g, m, a, count, shard_seed);
            });
            if (workers > 1 && (s + 1) % static_cast<std::uint64_t>(workers) == 0)
                for (std::uint64_t t = s + 1 - workers; t <= s; ++t) futures[t].wait();
        }
        for (auto& f : futures) parts.push_back(f.get());
    } else {
        parts.push_back(mc_run(g, m, a, samples, derive_seed(seed, StreamRole::shards, 0)));
    }

    double sum = 0.0, sumsq = 0.0;
    std::uint64_t count = 0;
    bool constant = true;
    for (const auto& p : parts) {
        sum += p.sum;
        sumsq += p.sumsq;
        count += p.count;
        if (!p.constant || p.first != parts.front().first) constant = false;
    }
    CylinderEstimate e;
    e.samples = count;
    if (constant) {
        // Constant integrand (e.g. constant graphons): exact mean, zero
        // spread, flagged as degenerate.
        e.value = parts.front().first;
        e.std_error = 0.0;
        e.degenerate_sigma = true;
        return e;
    }
    e.value = sum / static_cast<double>(count);
    double var = (sumsq - sum * sum / static_cast<double>(count)) /
                 (count > 1 ? static_cast<double>(count - 1) : 1.0);
    if (var < 0) var = 0;
    e.std_error = std::sqrt(var / static_cast<double>(count));
    e.degenerate_sigma = var == 0.0;
    return e;
}

bool permutation_invariance_check(const Graphon& g, const CylinderPattern& a,
                                  unsigned permutations, std::uint64_t seed) {
    Rational reference = cylinder_exact(g, a).exact_value;
    std::vector<std::size_t> perm(a.n);
    for (std::size_t i = 0; i < a.n; ++i) perm[i] = i;
    if (cylinder_exact(g, a.permuted(perm)).exact_value != reference) return false;
    Rng rng(derive_seed(seed, StreamRole::tuples));
    for (unsigned t = 0; t < permutations; ++t) {
        deterministic_shuffle(perm, rng);
        if (cylinder_exact(g, a.permuted(perm)).exact_value != reference) return false;
    }
    return true;
}

}  // namespace ugraph
