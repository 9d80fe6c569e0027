#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ugraph/line_graph.hpp"
#include "ugraph/plane_graph.hpp"
#include "ugraph/rng.hpp"
#include "ugraph/sampled_graph.hpp"

namespace ugraph {

/// Vertex distribution for the randomization-in-vertices step.
struct VertexMeasure {
    enum class Kind { uniform, gaussian, discrete_blocks };
    Kind kind = Kind::gaussian;
    Rational lo, hi;      // uniform
    Rational mean, sigma; // gaussian
    std::vector<Rational> masses;  // discrete_blocks; sum exactly 1

    static VertexMeasure uniform(const Rational& lo, const Rational& hi);
    static VertexMeasure gaussian(const Rational& mean, const Rational& sigma);
    static VertexMeasure discrete_blocks(std::vector<Rational> masses);

    std::string to_string() const;
    static VertexMeasure parse(const std::string& text);  // "gaussian:0:5" etc.
};

/// Generalized graph: symmetric edge-probability function omega over the
/// vertex space. Four variants:
///   constant(p)            - every pair independently with probability p
///   step(masses, values)   - block model on [0,1] split by masses
///   line_indicator(model)  - 0/1, x ~ y iff |x-y| in closure(Z)
///   plane_indicator(model) - 0/1, x ~ y iff (x,y) in Z
class Graphon {
public:
    enum class Kind { constant, step, line_indicator, plane_indicator };

    static Graphon constant(const Rational& p);
    static Graphon step(std::vector<Rational> masses, std::vector<std::vector<Rational>> values);
    static Graphon line_indicator(std::shared_ptr<LineGraphModel> model);
    static Graphon plane_indicator(std::shared_ptr<PlaneGraphModel> model);

    Kind kind() const { return kind_; }
    const Rational& p() const { return p_; }
    const std::vector<Rational>& masses() const { return masses_; }
    const std::vector<std::vector<Rational>>& values() const { return values_; }
    std::size_t block_count() const { return masses_.size(); }
    const std::shared_ptr<LineGraphModel>& line_model() const { return line_; }
    const std::shared_ptr<PlaneGraphModel>& plane_model() const { return plane_; }

    /// Edge probability at two points of the vertex space. For the step
    /// variant the space is [0,1] partitioned by the masses; for indicator
    /// variants x == y raises LoopEdgeError.
    Rational omega(const Rational& x, const Rational& y) const;

    /// Block index of a point of [0,1] under the step partition.
    std::size_t block_of(const Rational& x) const;

    /// True iff omega takes only the values 0 and 1 by construction.
    bool deterministic_edges() const;

    std::string to_string() const;

private:
    Kind kind_ = Kind::constant;
    Rational p_;
    std::vector<Rational> masses_;
    std::vector<std::vector<Rational>> values_;
    std::shared_ptr<LineGraphModel> line_;
    std::shared_ptr<PlaneGraphModel> plane_;
};

/// Two-step randomization: vertices i.i.d. from the measure (substream
/// "vertices"), then each pair independently with probability
/// omega(x_i, x_j) (substream "edges"; consumed only by the probabilistic
/// variants - indicator edges are deterministic given the coordinates).
/// Indicator coordinates are doubles snapped to denominator 2^40 before any
/// adjacency query, so the whole pipeline is exact and replayable.
SampledGraph sample_graph(const Graphon& g, const VertexMeasure& m, std::size_t n,
                          std::uint64_t seed);

/// Checks measure/graphon compatibility (throws IncompatibleModelError).
void check_compatible(const Graphon& g, const VertexMeasure& m);

struct UniversalityReport {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t witness_checked = 0;  // exact cross-checks (line models)
    double fraction() const { return trials ? double(successes) / double(trials) : 0.0; }
    std::string to_string() const;
};

/// Monte-Carlo diagnostic of generalized universality: per trial draw
/// disjoint white/black point sets (sizes <= 3, whites nonempty) and count
/// trials where some probe z has prod omega(x_i,z)(1-omega(y_j,z)) > 0.
/// For line indicator graphons each trial is also cross-checked against an
/// exact witness interval. One-sided by nature: it can confirm witnesses,
/// not certify their absence.
UniversalityReport check_generalized_universality(const Graphon& g, const VertexMeasure& m,
                                                  std::uint64_t trials, std::uint64_t probes,
                                                  std::uint64_t seed);

}  // namespace ugraph
