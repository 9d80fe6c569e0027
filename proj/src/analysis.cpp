#include "ugraph/analysis.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "json.hpp"
#include "ugraph/errors.hpp"
#include "ugraph/rng.hpp"

namespace ugraph {

namespace {

constexpr std::uint64_t kCensusSeed = 0xC0FFEEULL;  // fixed, documented

std::size_t pair_bits(std::size_t k) { return k * (k - 1) / 2; }

// All permutations of {0..k-1}, k <= 5.
const std::vector<std::vector<std::size_t>>& permutations_of(std::size_t k) {
    static std::mutex mu;
    static std::map<std::size_t, std::vector<std::vector<std::size_t>>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<std::size_t>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(k, std::move(all)).first->second;
}

std::uint32_t permute_code(std::uint32_t code, std::size_t k, const std::vector<std::size_t>& perm) {
    auto bit_index = [k](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        // row-major upper triangle
        std::size_t idx = 0;
        for (std::size_t r = 0; r < i; ++r) idx += k - 1 - r;
        return idx + (j - i - 1);
    };
    std::uint32_t out = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j, ++b)
            if ((code >> b) & 1u) out |= std::uint32_t(1) << bit_index(perm[i], perm[j]);
    return out;
}

// canon[code] = min over relabelings; cached per k.
const std::vector<std::uint32_t>& canonical_table(std::size_t k) {
    static std::mutex mu;
    static std::map<std::size_t, std::vector<std::uint32_t>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::size_t bits = pair_bits(k);
    std::vector<std::uint32_t> table(std::size_t(1) << bits);
    const auto& perms = permutations_of(k);
    for (std::uint32_t code = 0; code < table.size(); ++code) {
        std::uint32_t best = code;
        for (const auto& p : perms) {
            std::uint32_t c = permute_code(code, k, p);
            if (c < best) best = c;
        }
        table[code] = best;
    }
    return cache.emplace(k, std::move(table)).first->second;
}

bool code_has_clique(std::uint32_t code, std::size_t k, std::size_t want) {
    auto at = [&](std::size_t i, std::size_t j) {
        if (i > j) std::swap(i, j);
        std::size_t idx = 0;
        for (std::size_t r = 0; r < i; ++r) idx += k - 1 - r;
        return ((code >> (idx + j - i - 1)) & 1u) != 0;
    };
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (chosen.size() >= want) return true;
        for (std::size_t v = start; v < k; ++v) {
            bool ok = true;
            for (std::size_t c : chosen)
                if (!at(c, v)) ok = false;
            if (!ok) continue;
            chosen.push_back(v);
            if (self(self, v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (want > k) return false;
    return rec(rec, 0);
}

}  // namespace

std::optional<std::vector<std::size_t>> find_clique(const SampledGraph& g, std::size_t k) {
    std::size_t n = g.size();
    if (k < 2 || k > n) throw std::invalid_argument("find_clique: need 2 <= k <= n");
    std::size_t words = g.words_per_row();

    std::vector<std::vector<std::uint64_t>> cand_stack(k + 1, std::vector<std::uint64_t>(words));
    std::vector<std::size_t> clique;

    auto rec = [&](auto&& self, std::size_t depth, std::size_t from) -> bool {
        if (clique.size() == k) return true;
        const auto& cand = cand_stack[depth];
        std::size_t remaining = 0;
        for (std::size_t w = from / 64; w < words; ++w) {
            std::uint64_t bitsw = cand[w];
            if (w == from / 64) bitsw &= ~((std::uint64_t(1) << (from % 64)) - 1);
            remaining += std::popcount(bitsw);
        }
        if (clique.size() + remaining < k) return false;
        for (std::size_t w = from / 64; w < words; ++w) {
            std::uint64_t bitsw = cand[w];
            if (w == from / 64) bitsw &= ~((std::uint64_t(1) << (from % 64)) - 1);
            while (bitsw) {
                std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(bitsw));
                bitsw &= bitsw - 1;
                clique.push_back(v);
                if (clique.size() == k) return true;
                auto& next = cand_stack[depth + 1];
                const std::uint64_t* row = g.row(v);
                for (std::size_t u = 0; u < words; ++u) next[u] = cand[u] & row[u];
                if (self(self, depth + 1, v + 1)) return true;
                clique.pop_back();
            }
        }
        return false;
    };

    std::fill(cand_stack[0].begin(), cand_stack[0].end(), ~std::uint64_t(0));
    if (n % 64) cand_stack[0][words - 1] = (std::uint64_t(1) << (n % 64)) - 1;
    if (rec(rec, 0, 0)) return clique;
    return std::nullopt;
}

std::string ExtensionReport::to_string() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "extension w=%zu b=%zu: %llu/%llu satisfied (%.4f)",
                  white_size, black_size, static_cast<unsigned long long>(tuples_satisfied),
                  static_cast<unsigned long long>(tuples_tested), satisfied_fraction());
    return buf;
}

std::string ExtensionReport::to_json() const {
    nlohmann::json j;
    j["white_size"] = white_size;
    j["black_size"] = black_size;
    j["tuples_tested"] = tuples_tested;
    j["tuples_satisfied"] = tuples_satisfied;
    j["failures"] = nlohmann::json::array();
    for (std::size_t i = 0; i < sample_failures.size(); ++i) {
        nlohmann::json f = {{"U", sample_failures[i].first}, {"W", sample_failures[i].second}};
        if (i < failure_coords.size()) {
            f["U_coords"] = failure_coords[i].first;
            f["W_coords"] = failure_coords[i].second;
        }
        j["failures"].push_back(std::move(f));
    }
    return j.dump();
}

ExtensionReport extension_stats(const SampledGraph& g, std::size_t white_size,
                                std::size_t black_size, std::uint64_t tuples, std::uint64_t seed,
                                PatternMode mode, int s) {
    std::size_t n = g.size();
    if (white_size + black_size > n - 1)
        throw std::invalid_argument("extension_stats: tuple larger than n - 1");
    ExtensionReport rep;
    rep.white_size = white_size;
    rep.black_size = black_size;
    Rng rng(derive_seed(seed, StreamRole::tuples));

    std::vector<std::size_t> u(white_size), w(black_size);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        int attempts = 0;
        while (true) {
            if (++attempts > 10000)
                throw TupleExhaustionError("extension_stats: no admissible tuple in 10^4 draws");
            std::set<std::size_t> used;
            while (used.size() < white_size + black_size) used.insert(rng.below(n));
            auto it = used.begin();
            for (std::size_t i = 0; i < white_size; ++i) u[i] = *it++;
            for (std::size_t i = 0; i < black_size; ++i) w[i] = *it++;
            bool admissible = true;
            if (mode == PatternMode::triangle_free) {
                for (std::size_t i = 0; i < white_size && admissible; ++i)
                    for (std::size_t j = i + 1; j < white_size; ++j)
                        if (g.edge(u[i], u[j])) admissible = false;
            } else if (mode == PatternMode::ks_free) {
                std::vector<std::size_t> chosen;
                auto rec = [&](auto&& self, std::size_t start) -> bool {
                    if (chosen.size() + 1 >= static_cast<std::size_t>(s)) return true;
                    for (std::size_t i = start; i < white_size; ++i) {
                        bool ok = true;
                        for (std::size_t c : chosen)
                            if (!g.edge(u[c], u[i])) ok = false;
                        if (!ok) continue;
                        chosen.push_back(i);
                        if (self(self, i + 1)) return true;
                        chosen.pop_back();
                    }
                    return false;
                };
                if (static_cast<std::size_t>(s) >= 2 && white_size + 1 >= static_cast<std::size_t>(s) &&
                    rec(rec, 0))
                    admissible = false;
            }
            if (admissible) break;
        }

        bool satisfied = false;
        for (std::size_t v = 0; v < n && !satisfied; ++v) {
            bool in_tuple = false;
            for (std::size_t x : u)
                if (x == v) in_tuple = true;
            for (std::size_t x : w)
                if (x == v) in_tuple = true;
            if (in_tuple) continue;
            bool good = true;
            for (std::size_t x : u)
                if (!g.edge(v, x)) good = false;
            for (std::size_t x : w)
                if (good && g.edge(v, x)) good = false;
            satisfied = good;
        }
        ++rep.tuples_tested;
        if (satisfied) {
            ++rep.tuples_satisfied;
        } else if (rep.sample_failures.size() < 10) {
            rep.sample_failures.emplace_back(u, w);
            if (!g.coords.empty()) {
                std::vector<std::string> uc, wc;
                for (std::size_t x : u) uc.push_back(format_rational(g.coords[x]));
                for (std::size_t x : w) wc.push_back(format_rational(g.coords[x]));
                rep.failure_coords.emplace_back(std::move(uc), std::move(wc));
            }
        }
    }
    return rep;
}

bool CensusReport::complete() const {
    return std::includes(classes_found.begin(), classes_found.end(), classes_expected.begin(),
                         classes_expected.end());
}

std::string CensusReport::to_string() const {
    return "census k=" + std::to_string(k) + ": " + std::to_string(classes_found.size()) + "/" +
           std::to_string(classes_expected.size()) + " expected classes found" +
           (complete() ? " (complete)" : "");
}

std::string CensusReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["classes_found"] = std::vector<std::uint32_t>(classes_found.begin(), classes_found.end());
    j["classes_expected"] =
        std::vector<std::uint32_t>(classes_expected.begin(), classes_expected.end());
    j["complete"] = complete();
    return j.dump();
}

std::uint32_t canonical_code(const SampledGraph& g, const std::vector<std::size_t>& subset) {
    std::size_t k = subset.size();
    std::uint32_t code = 0;
    std::size_t b = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j, ++b)
            if (g.edge(subset[i], subset[j])) code |= std::uint32_t(1) << b;
    return canonical_table(k)[code];
}

std::set<std::uint32_t> expected_classes(std::size_t k, PatternMode mode, int s) {
    const auto& table = canonical_table(k);
    std::set<std::uint32_t> out;
    for (std::uint32_t code = 0; code < table.size(); ++code) {
        if (mode == PatternMode::triangle_free && code_has_clique(code, k, 3)) continue;
        if (mode == PatternMode::ks_free && code_has_clique(code, k, static_cast<std::size_t>(s)))
            continue;
        out.insert(table[code]);
    }
    return out;
}

CensusReport induced_census(const SampledGraph& g, std::size_t k, PatternMode mode, int s) {
    if (k < 1 || k > 5) throw std::invalid_argument("induced_census: k must be in [1,5]");
    std::size_t n = g.size();
    if (k > n) throw std::invalid_argument("induced_census: k exceeds graph size");
    CensusReport rep;
    rep.k = k;
    rep.classes_expected = expected_classes(k, mode, s);

    // Exhaustive below 10^6 subsets, else that many random draws.
    double log_count = 0;
    for (std::size_t i = 0; i < k; ++i)
        log_count += std::log2(double(n - i)) - std::log2(double(i + 1));
    bool exhaustive = log_count <= std::log2(1e6);

    if (exhaustive) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            rep.classes_found.insert(canonical_code(g, idx));
            std::size_t i = k;
            while (i > 0) {
                --i;
                if (idx[i] != i + n - k) break;
            }
            if (idx[i] == i + n - k) break;
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        Rng rng(kCensusSeed);
        std::vector<std::size_t> idx(k);
        for (std::uint64_t t = 0; t < 1000000; ++t) {
            std::set<std::size_t> used;
            while (used.size() < k) used.insert(rng.below(n));
            std::copy(used.begin(), used.end(), idx.begin());
            rep.classes_found.insert(canonical_code(g, idx));
        }
    }
    return rep;
}

double chi_square_quantile_99(std::size_t df) {
    static const double table[] = {0,      6.635,  9.210,  11.345, 13.277, 15.086,
                                   16.812, 18.475, 20.090, 21.666, 23.209, 24.725,
                                   26.217, 27.688, 29.141, 30.578, 32.000};
    if (df == 0) return 0.0;
    if (df <= 16) return table[df];
    // Wilson-Hilferty cube approximation at the 0.99 point.
    double d = static_cast<double>(df);
    double z = 2.3263478740408408;
    double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

std::string ComparisonReport::to_string() const {
    const char* v = verdict == CompareVerdict::same
                        ? "same"
                        : verdict == CompareVerdict::different ? "different" : "inconclusive";
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "compare k=%zu, %llu samples/side: statistic %.4f vs threshold %.4f (df=%zu) -> %s",
                  k, static_cast<unsigned long long>(samples_per_side), statistic, threshold, df, v);
    return buf;
}

std::string ComparisonReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["samples_per_side"] = samples_per_side;
    j["statistic"] = statistic;
    j["threshold"] = threshold;
    j["df"] = df;
    j["verdict"] = verdict == CompareVerdict::same
                       ? "same"
                       : verdict == CompareVerdict::different ? "different" : "inconclusive";
    return j.dump();
}

ComparisonReport compare_matrix_distributions(const ModelSampler& side_a,
                                              const ModelSampler& side_b, std::size_t k,
                                              std::uint64_t samples_per_side, std::uint64_t seed) {
    if (k < 2 || k > 4) throw std::invalid_argument("compare_matrix_distributions: k must be in [2,4]");
    if (samples_per_side < 100)
        throw std::invalid_argument("compare_matrix_distributions: need >= 100 samples per side");
    std::size_t cells = std::size_t(1) << pair_bits(k);
    std::vector<std::uint64_t> tally_a(cells, 0), tally_b(cells, 0);
    for (std::uint64_t r = 0; r < samples_per_side; ++r) {
        // Both sides see the same replicate substream: a model compared with
        // itself yields identical tallies.
        std::uint64_t rs = derive_seed(seed, StreamRole::replicates, r);
        SampledGraph ga = side_a(k, rs);
        SampledGraph gb = side_b(k, rs);
        auto code = [&](const SampledGraph& g) {
            std::uint64_t c = 0;
            std::size_t b = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j, ++b)
                    if (g.edge(i, j)) c |= std::uint64_t(1) << b;
            return c;
        };
        ++tally_a[code(ga)];
        ++tally_b[code(gb)];
    }

    ComparisonReport rep;
    rep.k = k;
    rep.samples_per_side = samples_per_side;
    std::size_t low_cells = 0;
    std::size_t occupied = 0;
    for (std::size_t c = 0; c < cells; ++c) {
        double pooled = (double(tally_a[c]) + double(tally_b[c])) / 2.0;
        if (pooled < 5.0) ++low_cells;
        if (tally_a[c] + tally_b[c] > 0) {
            ++occupied;
            double diff = double(tally_a[c]) - double(tally_b[c]);
            rep.statistic += diff * diff / double(tally_a[c] + tally_b[c]);
        }
    }
    rep.df = occupied > 0 ? occupied - 1 : 0;
    rep.threshold = chi_square_quantile_99(rep.df);
    if (low_cells * 5 > cells) {  // more than 20% of all cells under-filled
        rep.verdict = CompareVerdict::inconclusive;
    } else {
        rep.verdict = rep.statistic > rep.threshold ? CompareVerdict::different : CompareVerdict::same;
    }
    return rep;
}

std::uint64_t duplicate_neighborhood_pairs(const SampledGraph& g) {
    std::size_t n = g.size();
    std::size_t words = g.words_per_row();
    std::vector<std::uint64_t> hashes(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::size_t w = 0; w < words; ++w) {
            h ^= g.row(i)[w];
            h *= 1099511628211ULL;
        }
        hashes[i] = h;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return hashes[a] < hashes[b]; });
    std::uint64_t pairs = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n && hashes[order[b]] == hashes[order[a]]; ++b) {
            bool equal = true;
            for (std::size_t w = 0; w < words && equal; ++w)
                if (g.row(order[a])[w] != g.row(order[b])[w]) equal = false;
            if (equal) ++pairs;
        }
    return pairs;
}

}  // namespace ugraph
