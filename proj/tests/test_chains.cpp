#include <algorithm>

#include "doctest.h"
#include "trf/chains.hpp"
#include "trf/poset.hpp"

using namespace trf;

namespace {

int chain_id_of(const ChainDecomposition& cd, Mask bottom) {
    for (std::size_t i = 0; i < cd.chains.size(); ++i)
        if (cd.chains[i].front() == bottom) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST_CASE("symmetric chain decompositions validate for n = 1..12") {
    for (int n = 1; n <= 12; ++n) {
        ChainDecomposition cd = symmetric_chain_decomposition(n);
        CHECK(static_cast<long long>(cd.chains.size()) == binomial(n, n / 2));
        CHECK(chain_decomposition_valid(cd));
    }
}

TEST_CASE("the validator rejects broken decompositions") {
    ChainDecomposition cd = symmetric_chain_decomposition(4);
    ChainDecomposition broken = cd;
    std::swap(broken.chains[0][0], broken.chains[0][1]);  // breaks nesting order
    CHECK(!chain_decomposition_valid(broken));
    ChainDecomposition missing = cd;
    missing.chains.pop_back();
    CHECK(!chain_decomposition_valid(missing));
}

TEST_CASE("lubell mass and LYM") {
    CHECK(lubell(level_family(5, 2)) == Rational{1, 1});
    CHECK(lubell(Family::from_sets(5, {{1, 2}})) == Rational{1, 10});
    CHECK(rational_le_one(lubell(level_family(7, 3))));
    CHECK(is_antichain(level_family(5, 2)));
    CHECK(!is_antichain(Family::from_sets(5, {{}, {1}})));
    // non-antichains pass vacuously even with mass > 1
    Family f = Family::from_sets(5, {{}, {1}});
    CHECK(!rational_le_one(lubell(f)));
    CHECK(lym_check(f));
    CHECK(lym_check(level_family(6, 3)));
}

TEST_CASE("rational arithmetic stays reduced") {
    CHECK(rational_add({1, 6}, {1, 3}) == Rational{1, 2});
    CHECK(rational_add({1, 2}, {1, 2}) == Rational{1, 1});
    CHECK(!rational_le_one(rational_add({1, 1}, {1, 10})));
}

TEST_CASE("longest member chain and mirsky extraction") {
    Family f = Family::from_sets(4, {{}, {1}, {1, 2}, {3}});
    auto ch = longest_member_chain(f);
    CHECK(ch.size() == 3);
    for (std::size_t i = 1; i < ch.size(); ++i)
        CHECK((ch[i - 1] & ~ch[i]) == 0);

    Family a = mirsky_antichain(levels_at_most(4, 1), 2);
    CHECK(a.size() == 4);  // the singletons; 4 >= 5/2
    CHECK(is_antichain(a));
    CHECK(a.size() * 2 >= levels_at_most(4, 1).size());

    CHECK_THROWS_AS(mirsky_antichain(levels_at_most(4, 2), 2), ChainFound);
    try {
        mirsky_antichain(levels_at_most(4, 2), 2);
    } catch (const ChainFound& e) {
        CHECK(e.chain.size() == 3);
        for (std::size_t i = 1; i < e.chain.size(); ++i)
            CHECK((e.chain[i - 1] & ~e.chain[i]) == 0);
    }
}

TEST_CASE("chain graph: frozen small example") {
    ChainDecomposition cd = symmetric_chain_decomposition(4);
    int id = chain_id_of(cd, 0);  // the prefix chain {}, {1}, {1,2}, ...
    REQUIRE(id >= 0);
    Family f = Family::from_sets(4, {{1, 2}, {3, 4}, {1, 3}, {1, 2, 3, 4}});
    LabeledChainGraph g = chain_graph(f, cd, id);
    REQUIRE(g.edges.size() == 3);
    auto find_edge = [&](int u, int v) -> const LabeledEdge* {
        for (const auto& e : g.edges)
            if (e.u == u && e.v == v) return &e;
        return nullptr;
    };
    const LabeledEdge* e12 = find_edge(1, 2);
    const LabeledEdge* e13 = find_edge(1, 3);
    const LabeledEdge* e34 = find_edge(3, 4);
    REQUIRE(e12);
    REQUIRE(e13);
    REQUIRE(e34);
    CHECK(e12->label == 0);
    CHECK(e12->multiplicity == 1);
    CHECK(e13->label == 0);
    // {3,4} qualifies through C = {} and C = {1,2}
    CHECK(e34->label == 0);
    CHECK(e34->multiplicity == 2);
    CHECK(check_cycle_label_condition(g));  // a triangle has no 4-cycle
}

TEST_CASE("violating 4-cycle replays to a diamond of traces") {
    ChainDecomposition cd = symmetric_chain_decomposition(6);
    int id = chain_id_of(cd, 0);
    REQUIRE(id >= 0);
    Family f = Family::from_sets(6, {{3, 4}, {1, 4, 5}, {1, 2, 5, 6}, {3, 6}});
    LabeledChainGraph g = chain_graph(f, cd, id);
    // edges 3-4 (label 0), 4-5 (1), 5-6 (2), 3-6 (0): the 4-cycle has its
    // min on 3-4 and max on 5-6, which share no vertex
    REQUIRE(g.edges.size() == 4);
    auto v = find_cycle_label_violation(g);
    REQUIRE(v.has_value());
    const LabeledEdge& emin = g.edges[v->e[0]];
    const LabeledEdge& emax = g.edges[v->e[2]];
    CHECK(emin.label == 0);
    CHECK(emax.label == 2);
    CHECK(emin.u != emax.u);
    CHECK(emin.u != emax.v);
    CHECK(emin.v != emax.u);
    CHECK(emin.v != emax.v);

    Family replay = replay_cycle_violation(f, cd, id, *v);
    CHECK(replay.size() == 4);
    CHECK(!is_p_free(replay, diamond()));
    // every replayed trace avoids the min edge's two elements
    Mask e1m = (Mask{1} << (emin.u - 1)) | (Mask{1} << (emin.v - 1));
    for (Mask m : replay.members()) CHECK((m & e1m) == 0);
}

TEST_CASE("clean chain graphs report no violation") {
    ChainDecomposition cd = symmetric_chain_decomposition(6);
    int id = chain_id_of(cd, 0);
    Family f = Family::from_sets(6, {{3, 4}, {1, 4, 5}, {1, 2, 5, 6}});  // drop {3,6}
    LabeledChainGraph g = chain_graph(f, cd, id);
    CHECK(!find_cycle_label_violation(g).has_value());
    CHECK(check_cycle_label_condition(g));
}

TEST_CASE("complete bipartite detection") {
    auto bit = [](int v) { return std::uint64_t{1} << v; };
    // K5
    std::vector<std::uint64_t> k5(5, 0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) k5[i] |= bit(j);
    auto r = contains_complete_bipartite(k5, 2, 3);
    REQUIRE(r.has_value());
    CHECK(r->first.size() == 2);
    CHECK(r->second.size() == 3);
    for (int u : r->first)
        for (int v : r->second) {
            CHECK(u != v);
            CHECK((k5[u] & bit(v)) != 0);
        }
    CHECK(!contains_complete_bipartite(k5, 3, 17).has_value());

    // path 0-1-2-3: a star K_{1,2} at vertex 1, but no K_{2,2}
    std::vector<std::uint64_t> path(4, 0);
    for (int i = 0; i + 1 < 4; ++i) {
        path[i] |= bit(i + 1);
        path[i + 1] |= bit(i);
    }
    CHECK(contains_complete_bipartite(path, 1, 2).has_value());
    CHECK(!contains_complete_bipartite(path, 2, 2).has_value());
    CHECK_THROWS_AS(contains_complete_bipartite(path, 0, 2), UsageError);
}

TEST_CASE("longest monotone subsequence") {
    MonotoneResult r = longest_monotone_subsequence({1, 3, 2, 4});
    CHECK(r.length == 3);
    CHECK(r.indices.size() == 3);
    CHECK(std::is_sorted(r.indices.begin(), r.indices.end()));

    MonotoneResult d = longest_monotone_subsequence({5, 4, 3, 1, 2});
    CHECK(d.length == 4);

    CHECK(longest_monotone_subsequence({}).length == 0);
    CHECK(longest_monotone_subsequence({7}).length == 1);
    // Erdos-Szekeres floor: any 10 reals hold a monotone run of length 4
    CHECK(longest_monotone_subsequence({3, 1, 4, 1, 5, 9, 2, 6, 5, 3}).length >= 4);
}
