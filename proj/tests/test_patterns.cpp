#include "doctest.h"

#include <random>
#include <set>
#include <string>

#include "ugraph/errors.hpp"
#include "ugraph/pattern.hpp"

using namespace ugraph;

namespace {
Rational rq(int n, int d = 1) { return make_rational(n, d); }
}

TEST_CASE("first patterns of the enumeration are pinned") {
    CHECK(enumerate_pattern(PatternFilter::plain(), 1).to_string() == "W:  | B:  | idx: 1");
    CHECK(enumerate_pattern(PatternFilter::plain(), 2).to_string() == "W:  | B: (-1,0) | idx: 2");
    CHECK(enumerate_pattern(PatternFilter::plain(), 5).to_string() == "W: (0,1) | B:  | idx: 5");
    // The triangle-free stream drops patterns whose white closure is not
    // sum-free but keeps every black-only pattern.
    CHECK(enumerate_pattern(PatternFilter::trianglefree(), 1).empty());
}

TEST_CASE("enumeration is injective over the first 10^4 indices") {
    std::set<std::string> seen;
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        Pattern p = enumerate_pattern(PatternFilter::plain(), n);
        CHECK(p.index == n);
        auto [it, inserted] = seen.insert(p.white.to_string() + "#" + p.black.to_string());
        CHECK(inserted);
    }
}

TEST_CASE("triangle-free stream yields sum-free white closures") {
    for (std::uint64_t k = 1; k <= 500; ++k) {
        Pattern p = enumerate_pattern(PatternFilter::trianglefree(), k);
        CHECK(is_sum_free_closure(p.white));
    }
}

TEST_CASE("enumerated patterns satisfy the structural invariants") {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        Pattern p = enumerate_pattern(PatternFilter::plain(), n);
        std::vector<RationalInterval> all = p.white.parts();
        all.insert(all.end(), p.black.parts().begin(), p.black.parts().end());
        for (const auto& iv : all) {
            CHECK_FALSE(iv.is_point());
            CHECK_FALSE(iv.lo_closed);
            CHECK_FALSE(iv.hi_closed);
        }
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                CHECK_FALSE(closures_intersect(all[i], all[j]));
    }
}

TEST_CASE("locate covers the requested points") {
    Pattern p = locate_pattern(PatternFilter::plain(), {rq(0)}, {rq(1)});
    CHECK(p.white.contains(rq(0)));
    CHECK(p.black.contains(rq(1)));
    CHECK(p.white.part_count() == 1);
    CHECK(p.black.part_count() == 1);

    Pattern q = locate_pattern(PatternFilter::plain(), {rq(0)}, {});
    CHECK(q.white.contains(rq(0)));
    CHECK(q.black.empty());
}

TEST_CASE("locate and enumerate are consistent where ranked") {
    Pattern p = locate_pattern(PatternFilter::plain(), {rq(0)}, {});
    REQUIRE(p.index > 0);
    Pattern q = enumerate_pattern(PatternFilter::plain(), p.index);
    CHECK(q.same_shape(p));

    Pattern pe = locate_pattern(PatternFilter::plain(), {}, {});
    CHECK(pe.index == 1);  // empty pattern

    Pattern tf = locate_pattern(PatternFilter::trianglefree(), {rq(2)}, {});
    if (tf.index > 0) CHECK(enumerate_pattern(PatternFilter::trianglefree(), tf.index).same_shape(tf));
}

TEST_CASE("triangle-free locate fails when point sums force it") {
    // 1 + 1 = 2 lies in every closure around {1, 2}.
    CHECK_THROWS_AS(locate_pattern(PatternFilter::trianglefree(), {rq(1), rq(2)}, {}),
                    InfeasibleCoverError);
    // Any cover of 0 has 0 + 0 = 0 in its closure.
    CHECK_THROWS_AS(locate_pattern(PatternFilter::trianglefree(), {rq(0)}, {}),
                    InfeasibleCoverError);
}

TEST_CASE("locate succeeds on random disjoint rational point sets") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> numd(-80, 80);
    std::uniform_int_distribution<int> dend(1, 8);
    std::uniform_int_distribution<int> count(0, 3);
    for (int t = 0; t < 200; ++t) {
        std::set<Rational> used;
        auto draw = [&](int k) {
            std::vector<Rational> pts;
            while ((int)pts.size() < k) {
                Rational p = rq(numd(rng), dend(rng));
                if (used.insert(p).second) pts.push_back(p);
            }
            return pts;
        };
        auto whites = draw(count(rng));
        auto blacks = draw(count(rng));
        Pattern p = locate_pattern(PatternFilter::plain(), whites, blacks);
        for (const auto& w : whites) CHECK(p.white.contains(w));
        for (const auto& b : blacks) CHECK(p.black.contains(b));
        std::vector<RationalInterval> all = p.white.parts();
        all.insert(all.end(), p.black.parts().begin(), p.black.parts().end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                CHECK_FALSE(closures_intersect(all[i], all[j]));
    }
}

TEST_CASE("located triangle-free patterns have sum-free white closures") {
    std::mt19937 rng(556);
    std::uniform_int_distribution<int> numd(1, 60);
    std::uniform_int_distribution<int> dend(1, 4);
    int located = 0;
    for (int t = 0; t < 100; ++t) {
        std::set<Rational> used;
        std::vector<Rational> whites;
        while (whites.size() < 2) {
            Rational p = rq(numd(rng), dend(rng));
            if (used.insert(p).second) whites.push_back(p);
        }
        try {
            Pattern p = locate_pattern(PatternFilter::trianglefree(), whites, {});
            CHECK(is_sum_free_closure(p.white));
            ++located;
        } catch (const InfeasibleCoverError&) {
            // x + y = z held at the points themselves; nothing to check.
        }
    }
    CHECK(located > 20);
}

TEST_CASE("pattern serialization round-trips") {
    for (std::uint64_t n : {1ull, 2ull, 17ull, 400ull}) {
        Pattern p = enumerate_pattern(PatternFilter::plain(), n);
        Pattern q = Pattern::parse(p.to_string());
        CHECK(q.same_shape(p));
        CHECK(q.index == p.index);
    }
    CHECK_THROWS(Pattern::parse("W: [1,2] | B:  | idx: 0"));   // closed part
    CHECK_THROWS(Pattern::parse("W: (1,2) | B: (3/2,3) | idx: 0"));  // overlapping closures
}

TEST_CASE("ks_free filter validates its clique bound") {
    CHECK_THROWS_AS(PatternFilter::ksfree(3), std::invalid_argument);
    CHECK(PatternFilter::ksfree(4).name() == "ks_free(4)");
    // ks_free enumerates the unrestricted stream (screening is dynamic).
    CHECK(enumerate_pattern(PatternFilter::ksfree(4), 7)
              .same_shape(enumerate_pattern(PatternFilter::plain(), 7)));
}
