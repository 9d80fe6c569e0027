#include "ugraph/model_spec.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "ugraph/errors.hpp"

namespace ugraph {

Rational exact_rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact_rational_from_double: non-finite");
    int e = 0;
    double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    int shift = e - 53;
    Rational r(mant);
    if (shift >= 0) return r * Rational(Int(1) << shift);
    return r / Rational(Int(1) << -shift);
}

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) return exact_rational_from_double(v.get<double>());
    throw std::invalid_argument("step spec: rationals must be \"p/q\" strings or numbers");
}

}  // namespace

ModelSpec ModelSpec::er(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("er model: p must lie in [0,1]");
    ModelSpec s;
    s.kind = Kind::er;
    s.p = p;
    return s;
}

ModelSpec ModelSpec::line_universal() {
    ModelSpec s;
    s.kind = Kind::line_universal;
    return s;
}

ModelSpec ModelSpec::line_trianglefree() {
    ModelSpec s;
    s.kind = Kind::line_trianglefree;
    return s;
}

ModelSpec ModelSpec::ksfree(int s) {
    if (s < 4) throw std::invalid_argument("ksfree model: s must be >= 4");
    ModelSpec spec;
    spec.kind = Kind::ksfree;
    spec.s = s;
    return spec;
}

ModelSpec ModelSpec::step_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("step spec: cannot open '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in);
    ModelSpec spec;
    spec.kind = Kind::step;
    for (const auto& m : j.at("masses")) spec.masses.push_back(json_rational(m));
    for (const auto& row : j.at("values")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(json_rational(v));
        spec.values.push_back(std::move(r));
    }
    Graphon::step(spec.masses, spec.values);  // full validation (throws on bad input)
    return spec;
}

std::string ModelSpec::descriptor() const {
    switch (kind) {
        case Kind::er:
            return "er(p=" + format_rational(p) + ")";
        case Kind::line_universal:
            return "line_universal";
        case Kind::line_trianglefree:
            return "line_trianglefree";
        case Kind::ksfree:
            return "ksfree(" + std::to_string(s) + ")";
        case Kind::step:
            return "step(K=" + std::to_string(masses.size()) + ")";
    }
    return "?";
}

VertexMeasure ModelSpec::measure() const {
    if (measure_override) {
        if (kind == Kind::step &&
            measure_override->kind != VertexMeasure::Kind::discrete_blocks)
            throw IncompatibleModelError("step models use the discrete block measure");
        return *measure_override;
    }
    switch (kind) {
        case Kind::er:
            return VertexMeasure::uniform(0, 1);  // never consulted by omega
        case Kind::line_universal:
        case Kind::line_trianglefree:
        case Kind::ksfree:
            return VertexMeasure::gaussian(0, 5);
        case Kind::step:
            return VertexMeasure::discrete_blocks(masses);
    }
    return VertexMeasure::uniform(0, 1);
}

Model instantiate_model(const ModelSpec& spec) {
    Model m;
    m.descriptor = spec.descriptor();
    m.measure = spec.measure();
    switch (spec.kind) {
        case ModelSpec::Kind::er:
            m.graphon = Graphon::constant(spec.p);
            break;
        case ModelSpec::Kind::line_universal:
            m.graphon = Graphon::line_indicator(std::make_shared<LineGraphModel>(LineMode::plain));
            break;
        case ModelSpec::Kind::line_trianglefree:
            m.graphon =
                Graphon::line_indicator(std::make_shared<LineGraphModel>(LineMode::triangle_free));
            break;
        case ModelSpec::Kind::ksfree:
            m.graphon = Graphon::plane_indicator(std::make_shared<PlaneGraphModel>(spec.s));
            break;
        case ModelSpec::Kind::step:
            m.graphon = Graphon::step(spec.masses, spec.values);
            break;
    }
    return m;
}

SampledGraph Model::sample(std::size_t n, std::uint64_t seed) const {
    SampledGraph g = sample_graph(graphon, measure, n, seed);
    g.model = descriptor + ";" + measure.to_string();
    if (graphon.kind() == Graphon::Kind::line_indicator) {
        g.mode = graphon.line_model()->mode() == LineMode::plain ? PatternMode::plain
                                                                 : PatternMode::triangle_free;
    } else if (graphon.kind() == Graphon::Kind::plane_indicator) {
        g.mode = PatternMode::ks_free;
        g.s = graphon.plane_model()->clique_bound();
    }
    return g;
}

ModelSampler Model::sampler() const {
    // Copy *this; indicator models share the underlying lazily built graph.
    Model copy = *this;
    return [copy](std::size_t n, std::uint64_t seed) { return copy.sample(n, seed); };
}

}  // namespace ugraph
