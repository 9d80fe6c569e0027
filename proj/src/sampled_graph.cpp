#include "ugraph/sampled_graph.hpp"

#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ugraph {

SampledGraph::SampledGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

void SampledGraph::set_edge(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("sampled graph: no loops");
    bits_[i * words_ + j / 64] |= std::uint64_t(1) << (j % 64);
    bits_[j * words_ + i / 64] |= std::uint64_t(1) << (i % 64);
}

std::size_t SampledGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& w : bits_) total += std::popcount(w);
    return total / 2;
}

std::size_t SampledGraph::degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(row(i)[w]);
    return d;
}

void SampledGraph::write_edge_list(std::ostream& out) const {
    out << n_ << ' ' << edge_count() << '\n';
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (edge(i, j)) out << i << ' ' << j << '\n';
}

SampledGraph SampledGraph::read_edge_list(std::istream& in) {
    std::string line;
    auto next_data_line = [&]() -> bool {
        while (std::getline(in, line)) {
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next_data_line()) throw std::invalid_argument("edge list: missing header");
    std::istringstream header(line);
    long long n = -1, m = -1;
    header >> n >> m;
    if (n < 0 || m < 0) throw std::invalid_argument("edge list: bad header");
    SampledGraph g(static_cast<std::size_t>(n));
    for (long long e = 0; e < m; ++e) {
        if (!next_data_line()) throw std::invalid_argument("edge list: truncated");
        std::istringstream ls(line);
        long long i = -1, j = -1;
        ls >> i >> j;
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw std::invalid_argument("edge list: bad edge '" + line + "'");
        g.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return g;
}

std::string mode_label(PatternMode mode, int s) {
    switch (mode) {
        case PatternMode::plain:
            return "plain";
        case PatternMode::triangle_free:
            return "triangle_free";
        case PatternMode::ks_free:
            return "ks_free(" + std::to_string(s) + ")";
    }
    return "plain";
}

std::optional<std::pair<PatternMode, int>> parse_mode_label(const std::string& text) {
    if (text == "plain") return std::make_pair(PatternMode::plain, 0);
    if (text == "triangle_free") return std::make_pair(PatternMode::triangle_free, 0);
    if (text.rfind("ks_free(", 0) == 0 && text.back() == ')') {
        int s = std::stoi(text.substr(8, text.size() - 9));
        return std::make_pair(PatternMode::ks_free, s);
    }
    return std::nullopt;
}

void SampledGraph::write_json(std::ostream& out) const {
    nlohmann::json j;
    j["n"] = n_;
    j["model"] = model;
    j["mode"] = mode_label(mode, s);
    j["seed"] = seed;
    if (!coords.empty()) {
        std::vector<std::string> cs;
        cs.reserve(coords.size());
        for (const auto& c : coords) cs.push_back(format_rational(c));
        j["coords"] = cs;
    }
    std::vector<std::array<std::size_t, 2>> edges;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = i + 1; k < n_; ++k)
            if (edge(i, k)) edges.push_back({i, k});
    j["edges"] = edges;
    out << j.dump() << '\n';
}

SampledGraph SampledGraph::read_json(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    SampledGraph g(j.at("n").get<std::size_t>());
    g.model = j.value("model", std::string());
    g.seed = j.value("seed", std::uint64_t(0));
    if (auto m = parse_mode_label(j.value("mode", std::string("plain")))) {
        g.mode = m->first;
        g.s = m->second;
    }
    if (j.contains("coords"))
        for (const auto& c : j.at("coords")) g.coords.push_back(parse_rational(c.get<std::string>()));
    for (const auto& e : j.at("edges")) g.set_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
    return g;
}

SampledGraph SampledGraph::load(std::istream& in) {
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
        in.get();
        c = in.peek();
    }
    if (c == '{') return read_json(in);
    return read_edge_list(in);
}

}  // namespace ugraph
