#include "doctest.h"

#include <random>

#include "ugraph/errors.hpp"
#include "ugraph/line_graph.hpp"

using namespace ugraph;

namespace {
Rational rq(int n, int d = 1) { return make_rational(n, d); }
}

TEST_CASE("base step is pinned") {
    LineGraphModel plain(LineMode::plain);
    CHECK(plain.z_prefix().to_string() == "[1,2]");
    CHECK(plain.built_step_count() == 1);

    LineGraphModel tf(LineMode::triangle_free);
    CHECK(tf.z_prefix().to_string() == "[1,6/5]");
}

TEST_CASE("extend_to_bound is lazy and idempotent") {
    LineGraphModel m(LineMode::plain);
    m.extend_to_bound(rq(0));
    CHECK(m.built_step_count() == 1);  // nothing below 0 to build

    m.extend_to_bound(rq(100));
    CHECK(m.high_water() > rq(100));
    auto count = m.built_step_count();
    m.extend_to_bound(rq(100));
    CHECK(m.built_step_count() == count);
    m.extend_to_bound(rq(50));
    CHECK(m.built_step_count() == count);
}

TEST_CASE("monotonicity holds across built steps") {
    LineGraphModel m(LineMode::plain);
    m.extend_to_bound(rq(200));
    Rational prev_max = 0;
    IntervalSet rebuilt;
    for (const auto& s : m.steps()) {
        rebuilt = set_union(rebuilt, s.zn);
        if (s.zn.empty()) continue;
        if (s.seq > 0) CHECK(s.zn.min_value() > prev_max);
        if (s.zn.max_value() > prev_max) prev_max = s.zn.max_value();
    }
    CHECK(prev_max == m.z_prefix().max_value());
    CHECK(rebuilt == m.z_prefix());  // prefix is exactly the union of steps
}

TEST_CASE("adjacency facts under the documented base") {
    LineGraphModel m(LineMode::plain);
    CHECK(m.adjacent(rq(0), rq(3, 2)));   // 3/2 in [1,2]
    CHECK(m.adjacent(rq(0), rq(1)));      // closed endpoint
    CHECK_FALSE(m.adjacent(rq(0), rq(1, 2)));
    CHECK_FALSE(m.adjacent(rq(0), rq(5, 2)));
    CHECK_THROWS_AS(m.adjacent(rq(1), rq(1)), LoopEdgeError);
}

TEST_CASE("adjacency is symmetric and shift-invariant") {
    LineGraphModel m(LineMode::plain);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> numd(-400, 400);
    std::uniform_int_distribution<int> dend(1, 16);
    for (int t = 0; t < 1000; ++t) {
        Rational x = rq(numd(rng), dend(rng));
        Rational y = rq(numd(rng), dend(rng));
        Rational s = rq(numd(rng), dend(rng));
        if (x == y) continue;
        bool a = m.adjacent(x, y);
        CHECK(m.adjacent(y, x) == a);
        CHECK(m.adjacent(x + s, y + s) == a);
    }
}

TEST_CASE("adjacency answers are stable under further extension") {
    LineGraphModel m(LineMode::plain);
    std::vector<std::pair<Rational, Rational>> probes = {
        {rq(0), rq(3, 2)}, {rq(-5), rq(7, 3)}, {rq(1, 7), rq(22, 7)}, {rq(0), rq(9)}};
    std::vector<bool> before;
    for (auto& [x, y] : probes) before.push_back(m.adjacent(x, y));
    m.extend_to_bound(rq(2000));
    for (std::size_t i = 0; i < probes.size(); ++i)
        CHECK(m.adjacent(probes[i].first, probes[i].second) == before[i]);
}

TEST_CASE("construction is deterministic") {
    LineGraphModel a(LineMode::plain);
    LineGraphModel b(LineMode::plain);
    for (int i = 0; i < 50; ++i) {
        a.step();
        b.step();
    }
    CHECK(a.dump() == b.dump());

    LineGraphModel c(LineMode::triangle_free);
    LineGraphModel d(LineMode::triangle_free);
    for (int i = 0; i < 50; ++i) {
        c.step();
        d.step();
    }
    CHECK(c.dump() == d.dump());
}

TEST_CASE("triangle-free prefix stays sum-free after 200 steps") {
    LineGraphModel m(LineMode::triangle_free);
    for (int i = 0; i < 200; ++i) m.step();
    CHECK(is_sum_free_closure(m.z_prefix()));
}

TEST_CASE("step limit aborts runaway extension") {
    LineGraphModel m(LineMode::plain, 5);
    CHECK_THROWS_AS(m.extend_to_bound(rq(1000000)), StepLimitError);
}

TEST_CASE("plain witness intervals verify against adjacency") {
    LineGraphModel m(LineMode::plain);

    RationalInterval c1 = m.witness_interval({rq(0)}, {});
    CHECK(c1.lo < c1.hi);
    Rational mid = (c1.lo + c1.hi) / 2;
    CHECK(m.adjacent(mid, rq(0)));

    RationalInterval c2 = m.witness_interval({rq(0), rq(10)}, {rq(5)});
    for (const Rational& v : {Rational((c2.lo * 3 + c2.hi) / 4), Rational((c2.lo + c2.hi) / 2),
                              Rational((c2.lo + 3 * c2.hi) / 4)}) {
        CHECK(m.adjacent(v, rq(0)));
        CHECK(m.adjacent(v, rq(10)));
        CHECK_FALSE(m.adjacent(v, rq(5)));
    }
}

TEST_CASE("witness queries are cached and deterministic") {
    LineGraphModel m(LineMode::plain);
    RationalInterval a = m.witness_interval({rq(1, 3)}, {rq(2)});
    auto steps_after_first = m.built_step_count();
    RationalInterval b = m.witness_interval({rq(1, 3)}, {rq(2)});
    CHECK(a == b);
    CHECK(m.built_step_count() == steps_after_first);
}

TEST_CASE("black-only and empty witness queries work") {
    LineGraphModel m(LineMode::plain);
    RationalInterval c = m.witness_interval({}, {rq(0), rq(4)});
    Rational mid = (c.lo + c.hi) / 2;
    CHECK_FALSE(m.adjacent(mid, rq(0)));
    CHECK_FALSE(m.adjacent(mid, rq(4)));

    RationalInterval e = m.witness_interval({}, {});
    CHECK(e.lo < e.hi);
}

TEST_CASE("triangle-free witness demands independent whites") {
    LineGraphModel m(LineMode::triangle_free);
    REQUIRE(m.adjacent(rq(0), rq(11, 10)));  // 11/10 in [1,6/5]
    CHECK_THROWS_AS(m.witness_interval({rq(0), rq(11, 10)}, {}), PreconditionError);

    // Independent whites whose positions carry no sum relation.
    RationalInterval c = m.witness_interval({rq(1, 3), rq(5, 6)}, {rq(7, 2)});
    Rational mid = (c.lo + c.hi) / 2;
    CHECK(m.adjacent(mid, rq(1, 3)));
    CHECK(m.adjacent(mid, rq(5, 6)));
    CHECK_FALSE(m.adjacent(mid, rq(7, 2)));
    CHECK(is_sum_free_closure(m.z_prefix()));
}

TEST_CASE("witness intervals survive later construction growth") {
    LineGraphModel m(LineMode::plain);
    RationalInterval c = m.witness_interval({rq(-3), rq(2)}, {rq(7)});
    m.extend_to_bound(rq(5000));
    m.witness_interval({rq(1, 2)}, {rq(-9), rq(13)});
    Rational mid = (c.lo + c.hi) / 2;
    CHECK(m.adjacent(mid, rq(-3)));
    CHECK(m.adjacent(mid, rq(2)));
    CHECK_FALSE(m.adjacent(mid, rq(7)));
}

TEST_CASE("random plain witness instances all verify") {
    LineGraphModel m(LineMode::plain);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> numd(-200, 200);
    std::uniform_int_distribution<int> dend(1, 10);
    std::uniform_int_distribution<int> cnt(0, 3);
    for (int t = 0; t < 25; ++t) {
        std::set<Rational> used;
        auto draw = [&](int k) {
            std::vector<Rational> out;
            while ((int)out.size() < k) {
                Rational p = rq(numd(rng), dend(rng));
                if (used.insert(p).second) out.push_back(p);
            }
            return out;
        };
        auto whites = draw(cnt(rng));
        auto blacks = draw(cnt(rng));
        RationalInterval c = m.witness_interval(whites, blacks);
        Rational mid = (c.lo + c.hi) / 2;
        for (const auto& w : whites) CHECK(m.adjacent(mid, w));
        for (const auto& b : blacks) CHECK_FALSE(m.adjacent(mid, b));
    }
}

TEST_CASE("dump lines carry the step schema") {
    LineGraphModel m(LineMode::plain);
    for (int i = 0; i < 3; ++i) m.step();
    std::string d = m.dump();
    CHECK(d.find("0 | base | 0 | 0 | [1,2]\n") == 0);
    CHECK(d.find("1 | 1 | ") != std::string::npos);
}

TEST_CASE("construction dumps are pinned") {
    LineGraphModel m(LineMode::plain);
    for (int i = 0; i < 5; ++i) m.step();
    CHECK(m.dump() ==
          "0 | base | 0 | 0 | [1,2]\n"
          "1 | 1 | 4 | 1/2 | \n"
          "2 | 2 | 7 | 1/2 | \n"
          "3 | 3 | 11 | 1/2 | \n"
          "4 | 4 | 15 | 1/4 | (59/4,65/4)\n"
          "5 | 5 | 19 | 1/4 | (71/4,77/4)\n");

    LineGraphModel t(LineMode::triangle_free);
    for (int i = 0; i < 3; ++i) t.step();
    CHECK(t.dump() ==
          "0 | base | 0 | 0 | [1,6/5]\n"
          "1 | 1 | 5 | 1/2 | \n"
          "2 | 2 | 17 | 1/2 | \n"
          "3 | 3 | 43 | 1/2 | \n");
}
