// Command-line front end: sampling (gen), verification (verify), cylinder
// probabilities (cylinder), and matrix-distribution comparison (compare).
//
// Exit codes: 0 success; 1 usage/spec/IO error; verify: 2 when a hard check
// fails; compare: 0 same, 2 different, 3 inconclusive.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ugraph/analysis.hpp"
#include "ugraph/cylinder.hpp"
#include "ugraph/errors.hpp"
#include "ugraph/model_spec.hpp"

using namespace ugraph;

namespace {

struct ModelFlags {
    std::string model;
    std::string p = "1/2";
    int s = 4;
    std::string spec_path;
    std::string measure;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f, const std::string& prefix) {
    cmd->add_option("--" + prefix + "model", f.model,
                    "model kind: er | line-universal | line-trianglefree | ksfree | step")
        ->required();
    cmd->add_option("--" + prefix + "p", f.p, "edge probability for er (rational, e.g. 3/10)");
    cmd->add_option("--" + prefix + "s", f.s, "clique bound for ksfree (>= 4)");
    cmd->add_option("--" + prefix + "spec", f.spec_path, "step-graphon JSON file");
    cmd->add_option("--" + prefix + "measure", f.measure,
                    "vertex measure override: gaussian:M:S | uniform:LO:HI | blocks:m1,m2,...");
}

ModelSpec spec_from_flags(const ModelFlags& f) {
    ModelSpec spec;
    if (f.model == "er")
        spec = ModelSpec::er(parse_rational(f.p));
    else if (f.model == "line-universal")
        spec = ModelSpec::line_universal();
    else if (f.model == "line-trianglefree")
        spec = ModelSpec::line_trianglefree();
    else if (f.model == "ksfree")
        spec = ModelSpec::ksfree(f.s);
    else if (f.model == "step")
        spec = ModelSpec::step_from_file(f.spec_path);
    else
        throw std::invalid_argument("unknown model '" + f.model + "'");
    if (!f.measure.empty()) spec.measure_override = VertexMeasure::parse(f.measure);
    return spec;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            if (start < text.size()) out.push_back(text.substr(start));
            return out;
        }
        if (pos > start) out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

int run_gen(const ModelFlags& flags, std::size_t n, std::uint64_t seed, const std::string& out_path,
            const std::string& format, std::optional<int> assert_ksfree) {
    ModelSpec spec = spec_from_flags(flags);
    Model model = instantiate_model(spec);
    if (assert_ksfree) {
        if (!model.graphon.deterministic_edges()) {
            std::cerr << "error: model labeled K_" << *assert_ksfree
                      << "-free must be deterministic in edges (omega in {0,1}); "
                      << model.descriptor << " is not\n";
            return 1;
        }
    }
    SampledGraph g = model.sample(n, seed);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file '" + out_path + "'");
        out = &file;
    }
    if (format == "edgelist")
        g.write_edge_list(*out);
    else if (format == "json")
        g.write_json(*out);
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    return 0;
}

int run_verify(const std::string& in_path, const std::string& checks, std::uint64_t seed) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file '" + in_path + "'");
    SampledGraph g = SampledGraph::load(in);
    std::cout << "loaded graph: n=" << g.size() << " m=" << g.edge_count()
              << (g.model.empty() ? "" : " model=" + g.model)
              << " mode=" << mode_label(g.mode, g.s) << "\n";
    bool all_pass = true;
    for (const std::string& check : split(checks, ',')) {
        auto parts = split(check, ':');
        if (parts.empty()) continue;
        if (parts[0] == "clique") {
            if (parts.size() != 2) throw std::invalid_argument("clique check: use clique:K");
            std::size_t k = std::stoul(parts[1]);
            auto found = find_clique(g, k);
            if (found) {
                all_pass = false;
                std::cout << "FAIL clique:" << k << " witness:";
                for (std::size_t v : *found) std::cout << ' ' << v;
                std::cout << "\n";
            } else {
                std::cout << "PASS clique:" << k << " (no K_" << k << ")\n";
            }
        } else if (parts[0] == "census") {
            if (parts.size() != 2) throw std::invalid_argument("census check: use census:K");
            std::size_t k = std::stoul(parts[1]);
            CensusReport rep = induced_census(g, k, g.mode, g.s);
            std::cout << (rep.complete() ? "PASS " : "FAIL ") << rep.to_string() << "\n";
            if (!rep.complete()) all_pass = false;
        } else if (parts[0] == "extension") {
            if (parts.size() < 4)
                throw std::invalid_argument("extension check: use extension:W:B:TUPLES[:MINFRAC]");
            std::size_t w = std::stoul(parts[1]);
            std::size_t b = std::stoul(parts[2]);
            std::uint64_t tuples = std::stoull(parts[3]);
            ExtensionReport rep = extension_stats(g, w, b, tuples, seed, g.mode, g.s);
            if (parts.size() >= 5) {
                double minfrac = std::stod(parts[4]);
                bool ok = rep.satisfied_fraction() >= minfrac;
                std::cout << (ok ? "PASS " : "FAIL ") << rep.to_string() << " (min " << minfrac
                          << ")\n";
                if (!ok) all_pass = false;
            } else {
                std::cout << "INFO " << rep.to_string() << "\n";
            }
        } else if (parts[0] == "dup") {
            std::cout << "INFO duplicate-neighborhood pairs: " << duplicate_neighborhood_pairs(g)
                      << "\n";
        } else {
            throw std::invalid_argument("unknown check '" + parts[0] + "'");
        }
    }
    return all_pass ? 0 : 2;
}

int run_cylinder(const ModelFlags& flags, const std::string& pattern_path,
                 const std::string& method, std::uint64_t samples, std::optional<std::uint64_t> seed,
                 int threads, std::optional<int> assert_ksfree) {
    ModelSpec spec = spec_from_flags(flags);
    Model model = instantiate_model(spec);
    if (assert_ksfree && !model.graphon.deterministic_edges()) {
        std::cerr << "error: model labeled K_" << *assert_ksfree
                  << "-free must be deterministic in edges (omega in {0,1}); " << model.descriptor
                  << " is not\n";
        return 1;
    }
    std::ifstream in(pattern_path);
    if (!in) throw std::invalid_argument("cannot open pattern file '" + pattern_path + "'");
    CylinderPattern a = CylinderPattern::parse(in);
    if (method == "exact") {
        CylinderEstimate e = cylinder_exact(model.graphon, a);
        std::cout << "exact: " << format_rational(e.exact_value) << " = "
                  << decimal_string(e.exact_value, 6) << "\n";
        return 0;
    }
    if (method == "mc") {
        if (!seed) throw std::invalid_argument("cylinder mc requires --seed");
        CylinderEstimate e = cylinder_mc(model.graphon, model.measure, a, samples, *seed, threads);
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(6);
        line << "mc(" << e.samples << "): " << e.value << " +/- " << e.std_error;
        if (e.degenerate_sigma) line << " (zero observed variance)";
        std::cout << line.str() << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown method '" + method + "' (use exact or mc)");
}

int run_compare(const ModelFlags& a_flags, const ModelFlags& b_flags, std::size_t k,
                std::uint64_t samples, std::uint64_t seed) {
    Model a = instantiate_model(spec_from_flags(a_flags));
    Model b = instantiate_model(spec_from_flags(b_flags));
    ComparisonReport rep = compare_matrix_distributions(a.sampler(), b.sampler(), k, samples, seed);
    std::cout << rep.to_string() << "\n";
    switch (rep.verdict) {
        case CompareVerdict::same:
            return 0;
        case CompareVerdict::different:
            return 2;
        case CompareVerdict::inconclusive:
            return 3;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Continuous universal graph toolkit: builds shift-invariant universal and "
        "triangle-free universal line graphs and K_s-free plane graphs, samples "
        "countable graphs from them, evaluates cylinder probabilities, and verifies "
        "structural properties."};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "sample a graph and write it to a file");
    ModelFlags gen_flags;
    add_model_flags(gen, gen_flags, "");
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "-";
    std::string gen_format = "edgelist";
    std::optional<int> gen_assert;
    gen->add_option("--n", gen_n, "number of vertices")->required();
    gen->add_option("--seed", gen_seed, "RNG seed (required: no wall-clock default)")->required();
    gen->add_option("--out", gen_out, "output path ('-' = stdout)");
    gen->add_option("--format", gen_format, "edgelist | json");
    gen->add_option("--assert-ksfree", gen_assert,
                    "refuse models that are not deterministic in edges (required for any "
                    "K_s-free claim)");

    // verify
    auto* verify = app.add_subcommand("verify", "run checks against a graph file");
    std::string verify_in;
    std::string verify_checks;
    std::uint64_t verify_seed = 0;
    verify->add_option("--in", verify_in, "graph file (edge list or json)")->required();
    verify
        ->add_option("--checks", verify_checks,
                     "comma list: clique:K | census:K | extension:W:B:T[:MINFRAC] | dup")
        ->required();
    verify->add_option("--seed", verify_seed, "seed for randomized checks (extension)");

    // cylinder
    auto* cylinder = app.add_subcommand("cylinder", "cylinder-set probability of a pattern");
    ModelFlags cyl_flags;
    add_model_flags(cylinder, cyl_flags, "");
    std::string cyl_pattern;
    std::string cyl_method = "exact";
    std::uint64_t cyl_samples = 1000000;
    std::optional<std::uint64_t> cyl_seed;
    int cyl_threads = 1;
    std::optional<int> cyl_assert;
    cylinder->add_option("--pattern", cyl_pattern, "pattern file: first line n, then n rows of 0/1")
        ->required();
    cylinder->add_option("--method", cyl_method, "exact | mc");
    cylinder->add_option("--samples", cyl_samples, "Monte-Carlo sample count");
    cylinder->add_option("--seed", cyl_seed, "RNG seed (required for mc)");
    cylinder->add_option("--threads", cyl_threads, "worker threads for mc shards (default 1)");
    cylinder->add_option("--assert-ksfree", cyl_assert,
                         "refuse models that are not deterministic in edges");

    // compare
    auto* compare = app.add_subcommand("compare", "compare matrix distributions of two models");
    ModelFlags a_flags, b_flags;
    add_model_flags(compare, a_flags, "a-");
    add_model_flags(compare, b_flags, "b-");
    std::size_t cmp_k = 2;
    std::uint64_t cmp_samples = 10000;
    std::uint64_t cmp_seed = 0;
    compare->add_option("--k", cmp_k, "pattern order (<= 4)");
    compare->add_option("--samples", cmp_samples, "samples per side (>= 100)");
    compare->add_option("--seed", cmp_seed, "RNG seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed())
            return run_gen(gen_flags, gen_n, gen_seed, gen_out, gen_format, gen_assert);
        if (verify->parsed()) return run_verify(verify_in, verify_checks, verify_seed);
        if (cylinder->parsed())
            return run_cylinder(cyl_flags, cyl_pattern, cyl_method, cyl_samples, cyl_seed,
                                cyl_threads, cyl_assert);
        if (compare->parsed()) return run_compare(a_flags, b_flags, cmp_k, cmp_samples, cmp_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
