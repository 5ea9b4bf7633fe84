#include "doctest.h"
#include "trf/poset.hpp"

using namespace trf;

TEST_CASE("named posets: sizes, edges, heights") {
    CHECK(chain(3).size() == 3);
    CHECK(edge_count(chain(3)) == 2);
    CHECK(height(chain(3)) == 3);

    CHECK(vee(2).size() == 3);
    CHECK(edge_count(vee(2)) == 2);
    CHECK(height(vee(2)) == 2);

    CHECK(wedge(3).size() == 4);
    CHECK(edge_count(wedge(3)) == 3);

    CHECK(butterfly().size() == 4);
    CHECK(edge_count(butterfly()) == 4);
    CHECK(height(butterfly()) == 2);

    CHECK(diamond().size() == 4);
    CHECK(edge_count(diamond()) == 4);  // hasse edges
    CHECK(height(diamond()) == 3);

    CHECK(k_rs(2, 3).size() == 5);
    CHECK(k_r1s(2, 3).size() == 6);
    CHECK(height(k_r1s(2, 3)) == 3);

    CHECK(p_m_gadget(2).size() == 16);
}

TEST_CASE("transitive closure and axioms") {
    Poset p(3, {{0, 1}, {1, 2}});
    CHECK(p.less(0, 2));
    CHECK(!p.less(2, 0));
    CHECK_THROWS_AS(Poset(2, {{0, 1}, {1, 0}}), UsageError);  // cycle
    CHECK_THROWS_AS(Poset(2, {{0, 0}}), UsageError);          // irreflexive
    CHECK_THROWS_AS(Poset(2, {{0, 5}}), UsageError);          // out of range
}

TEST_CASE("hasse strips transitive edges") {
    HasseDiagram h = hasse(chain(4));
    CHECK(h.edges.size() == 3);
    // diamond has 4 cover pairs even though < has 5 pairs
    CHECK(hasse(diamond()).edges.size() == 4);
}

TEST_CASE("isomorphism and canonical ids") {
    CHECK(isomorphic(butterfly(), k_rs(2, 2)));
    CHECK(!isomorphic(butterfly(), diamond()));
    CHECK(isomorphic(vee(1), chain(2)));
    // relabeled chain
    Poset q(3, {{2, 0}, {0, 1}});
    CHECK(isomorphic(q, chain(3)));
    CHECK(poset_canonical_id(q) == poset_canonical_id(chain(3)));
    CHECK(poset_canonical_id(butterfly()) == poset_canonical_id(k_rs(2, 2)));
    CHECK(poset_canonical_id(butterfly()) != poset_canonical_id(diamond()));
}

TEST_CASE("dual, unique max, tree predicate") {
    CHECK(isomorphic(dual(vee(3)), wedge(3)));
    CHECK(isomorphic(dual(diamond()), diamond()));
    CHECK(has_unique_max(vee(1)));
    CHECK(has_unique_max(wedge(5)));
    CHECK(!has_unique_max(butterfly()));
    CHECK(is_tree_poset(chain(4)));
    CHECK(is_tree_poset(wedge(3)));
    CHECK(!is_tree_poset(diamond()));
    Poset t = tree_from_hasse(5, {{0, 4}, {1, 4}, {2, 3}, {3, 4}});
    CHECK(is_tree_poset(t));
    CHECK(has_unique_max(t));
    CHECK(height(t) == 3);
}

TEST_CASE("t_power replaces the maximum by an antichain") {
    // chain(3) with top doubled is K_{1,1,2}, not the diamond
    Poset tp = t_power(chain(3), 2);
    CHECK(tp.size() == 4);
    CHECK(isomorphic(tp, k_r1s(1, 2)));
    CHECK(!isomorphic(tp, diamond()));
    CHECK(isomorphic(t_power(chain(2), 2), vee(2)));
    CHECK_THROWS_AS(t_power(butterfly(), 2), UsageError);  // no unique max
}

TEST_CASE("t_otimes blow-up keeps height, grows size") {
    Poset v = wedge(2);  // unique-max tree, 3 elements
    Poset b = t_otimes(v, 2);
    CHECK(b.size() == 5);
    CHECK(height(b) == height(v));
    CHECK(has_unique_max(b));
    // chain(1) is a single point; blow-up of a point is a point
    CHECK(t_otimes(chain(1), 4).size() == 1);
}

TEST_CASE("param_y: largest cube avoiding the poset") {
    CHECK(param_y(butterfly()) == 2);   // 2^[2] butterfly-free, 2^[3] not
    CHECK(param_y(diamond()) == 1);
    CHECK(param_y(vee(2)) == 1);
    CHECK(param_y(chain(2)) == 0);
    CHECK_THROWS_AS(param_y(chain(20)), CapExceeded);
    try {
        param_y(chain(20));
    } catch (const CapExceeded& e) {
        CHECK(e.lower_bound == 8);
    }
}

TEST_CASE("param_x: widest bottom band avoiding the poset") {
    CHECK(param_x(butterfly(), 6) == 1);
    CHECK(param_x(diamond(), 6) == 1);
    CHECK(param_x(chain(3), 6) == 1);
    CHECK(param_x(chain(2), 6) == 0);
    StabilizedValue s = param_x_limit(butterfly(), 4, 7);
    CHECK(s.value == 1);
    CHECK(s.stabilized);
}

TEST_CASE("param_e: consecutive-level bands avoiding the poset") {
    CHECK(param_e(butterfly(), 3, 8).value == 2);
    CHECK(param_e(chain(2), 3, 8).value == 1);
    CHECK(param_e(vee(2), 3, 8).value == 1);
    CHECK(param_e(diamond(), 3, 8).value == 2);
}

TEST_CASE("build_named and json round-trip") {
    CHECK(isomorphic(build_named("butterfly", {}), butterfly()));
    CHECK(isomorphic(build_named("chain", {4}), chain(4)));
    CHECK(isomorphic(build_named("k_rs", {2, 2}), butterfly()));
    CHECK_THROWS_AS(build_named("nonsense", {}), UsageError);
    CHECK_THROWS_AS(build_named("chain", {}), UsageError);

    Poset p = k_r1s(2, 3);
    Poset q = poset_from_json(poset_to_json(p));
    CHECK(q == p);
    Poset r = poset_from_json(R"({"name":"diamond","params":[]})");
    CHECK(isomorphic(r, diamond()));
    Poset s = poset_from_json(R"({"p":2,"lt":[[0,1]]})");
    CHECK(isomorphic(s, chain(2)));
}
