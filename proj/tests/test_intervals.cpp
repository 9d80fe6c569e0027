#include "doctest.h"

#include <random>
#include <vector>

#include "ugraph/interval_set.hpp"

using namespace ugraph;

namespace {

Rational rq(int n, int d = 1) { return make_rational(n, d); }

IntervalSet parse_set(const char* text) { return IntervalSet::parse(text); }

// Random small interval set for property tests.
IntervalSet random_set(std::mt19937& rng, int max_parts = 4) {
    std::uniform_int_distribution<int> nparts(0, max_parts);
    std::uniform_int_distribution<int> numd(-40, 40);
    std::uniform_int_distribution<int> dend(1, 6);
    std::uniform_int_distribution<int> flag(0, 1);
    std::vector<RationalInterval> parts;
    int k = nparts(rng);
    for (int i = 0; i < k; ++i) {
        Rational a = rq(numd(rng), dend(rng));
        Rational b = rq(numd(rng), dend(rng));
        if (a == b) b = a + rq(1, dend(rng));
        if (a > b) std::swap(a, b);
        parts.emplace_back(a, b, flag(rng) == 1, flag(rng) == 1);
    }
    return IntervalSet::of(std::move(parts));
}

std::vector<Rational> probe_points(std::mt19937& rng, const IntervalSet& a, const IntervalSet& b,
                                   int n_random) {
    std::vector<Rational> pts;
    for (const auto& p : a.parts()) {
        pts.push_back(p.lo);
        pts.push_back(p.hi);
    }
    for (const auto& p : b.parts()) {
        pts.push_back(p.lo);
        pts.push_back(p.hi);
    }
    std::uniform_int_distribution<int> numd(-45, 45);
    std::uniform_int_distribution<int> dend(1, 12);
    for (int i = 0; i < n_random; ++i) pts.push_back(rq(numd(rng), dend(rng)));
    return pts;
}

// Witness-based cross-check of the sum-free rule: when a pair-sum interval
// hits a part closure, produce explicit x + y = z and verify membership.
bool oracle_has_sum_witness(const IntervalSet& s) {
    const auto& ps = s.parts();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i; j < ps.size(); ++j) {
            Rational slo = ps[i].lo + ps[j].lo;
            Rational shi = ps[i].hi + ps[j].hi;
            for (const auto& pk : ps) {
                if (slo > pk.hi || pk.lo > shi) continue;
                Rational z = slo > pk.lo ? slo : pk.lo;
                Rational x = z - ps[j].hi;
                if (x < ps[i].lo) x = ps[i].lo;
                Rational y = z - x;
                REQUIRE(x >= ps[i].lo);
                REQUIRE(x <= ps[i].hi);
                REQUIRE(y >= ps[j].lo);
                REQUIRE(y <= ps[j].hi);
                REQUIRE(x + y == z);
                REQUIRE(s.contains_closure(x));
                REQUIRE(s.contains_closure(y));
                REQUIRE(s.contains_closure(z));
                return true;
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("interval membership honours open and closed endpoints") {
    CHECK(parse_set("[1,2]").contains(rq(3, 2)));
    CHECK_FALSE(parse_set("[1,2],[3,4]").contains(rq(5, 2)));
    CHECK_FALSE(parse_set("(1,2)").contains(rq(2)));
    CHECK(parse_set("(1,2)").contains_closure(rq(2)));
    CHECK_FALSE(parse_set("(1,2)").contains_closure(rq(3)));
    CHECK_FALSE(IntervalSet().contains_closure(rq(0)));
}

TEST_CASE("set operations on touching and nested parts") {
    CHECK(set_union(parse_set("[1,2]"), parse_set("[2,3]")) == parse_set("[1,3]"));
    CHECK(set_intersect(parse_set("[1,3]"), parse_set("[2,4]")) == parse_set("[2,3]"));
    CHECK(set_subtract(parse_set("[1,3]"), parse_set("(1,3)")) == parse_set("[1,1],[3,3]"));
    // Open parts meeting at an excluded point stay separate.
    CHECK(set_union(parse_set("(1,2)"), parse_set("(2,3)")).part_count() == 2);
    CHECK(set_union(parse_set("(1,2]"), parse_set("(2,3)")) == parse_set("(1,3)"));
}

TEST_CASE("extrema and total length") {
    CHECK(parse_set("[1,2],[5,7]").max_value() == rq(7));
    CHECK(parse_set("(3,4)").min_value() == rq(3));
    CHECK(parse_set("[1,2],[5,7]").total_length() == rq(3));
    CHECK_THROWS_AS(IntervalSet().min_value(), std::domain_error);
    CHECK_THROWS_AS(IntervalSet().max_value(), std::domain_error);
}

TEST_CASE("sum-free closure check") {
    CHECK_FALSE(is_sum_free_closure(parse_set("[1,2]")));  // 1+1=2
    CHECK(is_sum_free_closure(parse_set("(1,6/5)")));
    CHECK_FALSE(is_sum_free_closure(parse_set("[1,6/5],[3,5]")));  // [1,6/5]+[3,5] hits [4,5]
    CHECK(is_sum_free_closure(IntervalSet()));
}

TEST_CASE("degenerate intervals only arise where permitted") {
    CHECK_THROWS_AS(open_interval(rq(1), rq(1)), std::invalid_argument);
    CHECK_THROWS_AS(RationalInterval(rq(2), rq(1), true, true), std::invalid_argument);
    CHECK(point_interval(rq(1)).is_point());
}

TEST_CASE("serialization round-trips exactly") {
    const char* cases[] = {"", "[1,2]", "(1/2,3/4]", "[-5/3,-1),(0,2],[7,7]"};
    for (const char* c : cases) {
        IntervalSet s = IntervalSet::parse(c);
        CHECK(IntervalSet::parse(s.to_string()) == s);
    }
    std::mt19937 rng(7101);
    for (int t = 0; t < 200; ++t) {
        IntervalSet s = random_set(rng);
        CHECK(IntervalSet::parse(s.to_string()) == s);
    }
}

TEST_CASE("canonicalization is idempotent and membership-stable") {
    std::mt19937 rng(20250810);
    for (int t = 0; t < 300; ++t) {
        IntervalSet s = random_set(rng);
        CHECK(IntervalSet::of(s.parts()) == s);
        for (const auto& p : s.parts()) {
            CHECK((p.lo < p.hi || (p.lo == p.hi && p.lo_closed && p.hi_closed)));
        }
        // Parts strictly ordered and non-overlapping.
        for (std::size_t i = 1; i < s.part_count(); ++i) {
            const auto& a = s.parts()[i - 1];
            const auto& b = s.parts()[i];
            bool separated = a.hi < b.lo || (a.hi == b.lo && !a.hi_closed && !b.lo_closed);
            CHECK(separated);
        }
    }
}

TEST_CASE("contains implies contains_closure") {
    std::mt19937 rng(42);
    for (int t = 0; t < 100; ++t) {
        IntervalSet s = random_set(rng);
        for (const auto& x : probe_points(rng, s, IntervalSet(), 30)) {
            if (s.contains(x)) CHECK(s.contains_closure(x));
        }
    }
}

TEST_CASE("union/intersect/subtract agree with pointwise membership") {
    std::mt19937 rng(1234);
    for (int t = 0; t < 60; ++t) {
        IntervalSet a = random_set(rng);
        IntervalSet b = random_set(rng);
        IntervalSet u = set_union(a, b);
        IntervalSet i = set_intersect(a, b);
        IntervalSet d = set_subtract(a, b);
        for (const auto& x : probe_points(rng, a, b, 1000)) {
            bool ina = a.contains(x);
            bool inb = b.contains(x);
            CHECK(u.contains(x) == (ina || inb));
            CHECK(i.contains(x) == (ina && inb));
            CHECK(d.contains(x) == (ina && !inb));
        }
    }
}

TEST_CASE("sum-free check agrees with witness oracle on random sets") {
    std::mt19937 rng(987);
    int violations = 0;
    for (int t = 0; t < 300; ++t) {
        IntervalSet s = random_set(rng, 3);
        bool witness = oracle_has_sum_witness(s);
        CHECK(is_sum_free_closure(s) == !witness);
        violations += witness ? 1 : 0;
    }
    CHECK(violations > 10);  // the generator must actually exercise both sides
}

TEST_CASE("translate and reflect are exact") {
    IntervalSet s = parse_set("[1,2),(3,4]");
    CHECK(translate(s, rq(1, 2)) == parse_set("[3/2,5/2),(7/2,9/2]"));
    CHECK(reflect(s) == parse_set("[-4,-3),(-2,-1]"));
    CHECK(reflect(reflect(s)) == s);
}

TEST_CASE("interval containment and closure distance helpers") {
    IntervalSet s = parse_set("(1,2),[4,5]");
    CHECK(contains_interval(s, open_interval(rq(1), rq(2))));
    CHECK_FALSE(contains_interval(s, closed_interval(rq(1), rq(2))));
    CHECK(contains_interval(s, closed_interval(rq(4), rq(5))));
    CHECK_FALSE(contains_interval(s, closed_interval(rq(3, 2), rq(9, 2))));
    CHECK(closure_intersects(s, closed_interval(rq(2), rq(3))));
    CHECK_FALSE(closure_intersects(s, closed_interval(rq(5, 2), rq(3))));
    CHECK(*closure_distance(s, rq(3)) == rq(1));
    CHECK(*closure_distance(s, rq(3, 2)) == rq(0));
    CHECK_FALSE(closure_distance(IntervalSet(), rq(0)).has_value());
}
