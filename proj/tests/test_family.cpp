#include <random>

#include "doctest.h"
#include "trf/family.hpp"

using namespace trf;

namespace {

Family random_family(std::mt19937& rng, int n, int max_size) {
    std::vector<Mask> ms;
    int sz = 1 + static_cast<int>(rng() % max_size);
    for (int i = 0; i < sz; ++i) ms.push_back(rng() % (Mask{1} << n));
    return Family(n, std::move(ms));
}

std::vector<int> random_perm(std::mt19937& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace

TEST_CASE("family basics: sorting, dedup, membership") {
    Family f(3, {5, 1, 5, 0});
    CHECK(f.size() == 3);
    CHECK(f.members() == std::vector<Mask>{0, 1, 5});
    CHECK(f.contains(5));
    CHECK(!f.contains(2));
    CHECK_THROWS_AS(Family(3, {8}), UsageError);  // outside 2^[3]
    CHECK_THROWS_AS(Family(0, {}), UsageError);
    CHECK_THROWS_AS(Family(31, {}), UsageError);
}

TEST_CASE("from_sets uses 1-based elements") {
    Family f = Family::from_sets(4, {{1, 2}, {4}});
    CHECK(f.contains(0b0011));
    CHECK(f.contains(0b1000));
    CHECK(f.set_elements(0) == std::vector<int>{1, 2});
}

TEST_CASE("trace collapses duplicates") {
    Family f = Family::from_sets(4, {{1, 2}, {1, 3}, {2, 3}});
    Family t = trace_family(f, 0b0001);  // X = {1}
    CHECK(t.size() == 2);                // {1} and {}
    CHECK(t.contains(0));
    CHECK(t.contains(1));
}

TEST_CASE("trace composition: (F|_X)|_Y = F|_{X n Y}") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Family f = random_family(rng, 6, 20);
        Mask x = rng() % 64, y = rng() % 64;
        CHECK(trace_family(trace_family(f, x), y) == trace_family(f, x & y));
    }
}

TEST_CASE("down-compression preserves size and reaches a downset") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Family f = random_family(rng, 5, 12);
        for (int i = 1; i <= 5; ++i)
            CHECK(down_compress(f, i).size() == f.size());
        Family d = down_compress_fixpoint(f);
        CHECK(d.size() == f.size());
        CHECK(is_downward_closed(d));
    }
}

TEST_CASE("down-compression of a downset is the identity") {
    Family d = levels_at_most(4, 2);
    CHECK(down_compress_fixpoint(d) == d);
}

TEST_CASE("closures and duality via complement") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Family f = random_family(rng, 5, 10);
        Family down = closure_down(f), up = closure_up(f);
        CHECK(is_downward_closed(down));
        CHECK(is_upward_closed(up));
        for (Mask m : f.members()) {
            CHECK(down.contains(m));
            CHECK(up.contains(m));
        }
        CHECK(is_upward_closed(f) == is_downward_closed(complement_family(f)));
        CHECK(complement_family(complement_family(f)) == f);
    }
}

TEST_CASE("shadow of a level is the level below") {
    CHECK(shadow(level_family(5, 3)) == level_family(5, 2));
}

TEST_CASE("levels and binomials") {
    CHECK(level_family(6, 3).size() == 20);
    CHECK(levels_at_most(5, 1).size() == 6);
    CHECK(levels_at_least(5, 4).size() == 6);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 5) == 252);
    CHECK(binomial(30, 15) == 155117520);
    CHECK(binomial(5, 7) == 0);
}

TEST_CASE("permutation action is a group action") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        Family f = random_family(rng, 5, 10);
        auto p = random_perm(rng, 5);
        auto q = random_perm(rng, 5);
        std::vector<int> pq(5);
        for (int i = 0; i < 5; ++i) pq[i] = q[p[i]];
        CHECK(apply_permutation(apply_permutation(f, p), q) ==
              apply_permutation(f, pq));
        CHECK(apply_permutation(f, p).size() == f.size());
    }
}

TEST_CASE("canonical form: idempotent, orbit-constant, exact flag") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        Family f = random_family(rng, 5, 8);
        CanonicalResult c = canonical_form_ex(f);
        CHECK(c.exact);
        CHECK(canonical_form(c.family) == c.family);
        CHECK(is_canonical(c.family));
        Family g = apply_permutation(f, random_perm(rng, 5));
        CHECK(canonical_form(g) == c.family);
        CHECK(!(c.family < canonical_form(g)));
    }
}

TEST_CASE("canonical form beyond the exhaustive range is flagged") {
    Family f = level_family(9, 4);
    CanonicalResult c = canonical_form_ex(f);
    CHECK(!c.exact);
    CHECK(c.family.size() == f.size());
}

TEST_CASE("json round-trips, both encodings") {
    Family f = Family::from_sets(5, {{1, 3}, {2, 4, 5}, {}});
    CHECK(family_from_json(family_to_json(f)) == f);
    CHECK(family_from_json(R"({"n":3,"sets":[[1],[1,2]]})") ==
          Family(3, {1, 3}));
    CHECK(family_from_json(R"({"n":3,"masks":["0x1","0x3"]})") ==
          Family(3, {1, 3}));
    CHECK_THROWS_AS(family_from_json("{\"n\":3}"), UsageError);
    CHECK_THROWS_AS(family_from_json(R"({"n":2,"sets":[[3]]})"), UsageError);
}

TEST_CASE("printing") {
    CHECK(set_to_string(0) == "{}");
    CHECK(set_to_string(0b101) == "{1,3}");
    CHECK(family_to_string(Family(2, {0, 3})) == "{{}, {1,2}}");
}
