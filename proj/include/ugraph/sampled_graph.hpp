#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ugraph/pattern.hpp"

namespace ugraph {

/// Finite simple graph sampled from a model: symmetric 0/1 adjacency with
/// zero diagonal, stored as a row-major bit matrix; optional exact vertex
/// coordinates (indicator models) or block labels (step models).
class SampledGraph {
public:
    SampledGraph() = default;
    explicit SampledGraph(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t words_per_row() const { return words_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }

    bool edge(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set_edge(std::size_t i, std::size_t j);
    std::size_t edge_count() const;
    std::size_t degree(std::size_t i) const;

    std::vector<Rational> coords;  // empty when not applicable
    std::string model;             // descriptor, e.g. "er(p=1/2)"
    PatternMode mode = PatternMode::plain;
    int s = 0;  // clique bound when mode == ks_free
    std::uint64_t seed = 0;

    /// Edge-list format: header "n m", then one "i j" per edge with
    /// i < j, ascending; '#' comment lines tolerated on load, never written.
    void write_edge_list(std::ostream& out) const;
    static SampledGraph read_edge_list(std::istream& in);

    /// JSON format carries the descriptor, freeness mode, seed, exact
    /// coordinates (as "p/q" strings) and the edge list.
    void write_json(std::ostream& out) const;
    static SampledGraph read_json(std::istream& in);

    /// Dispatches on leading '{'.
    static SampledGraph load(std::istream& in);

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

std::string mode_label(PatternMode mode, int s);
std::optional<std::pair<PatternMode, int>> parse_mode_label(const std::string& text);

}  // namespace ugraph
