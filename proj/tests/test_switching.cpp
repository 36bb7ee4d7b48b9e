#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "holecycle/switching.hpp"

using namespace holecycle;
using namespace holecycle::testutil;

TEST_CASE("switch pairs: equal neighbourhoods give the empty partition") {
  auto h = build_host(3, 4);
  // pack one 4-cycle through outer 0,1 and holes 0,1: leave neighbourhoods of
  // outer 2 and 3 coincide
  Packing p{h.g, {Cycle{3, 0, 4, 1}}};
  auto pairs = switch_pairs(p, 5, 6);
  CHECK(pairs.empty());
}

TEST_CASE("switch pairs cover the symmetric difference, even size") {
  auto h = build_host(3, 4);
  Packing p{h.g, {Cycle{0, 3, 1, 4}}};  // 4-cycle U0 W0 U1 W1
  Graph L = p.leave();
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) {
      if (!h.g.twin(a, b)) continue;
      uint32_t want = (L.adj[a] ^ L.adj[b]) & ~(1u << a) & ~(1u << b);
      auto pairs = switch_pairs(p, a, b);
      uint32_t got = 0;
      for (auto [x, y] : pairs) {
        got |= 1u << x;
        got |= 1u << y;
      }
      CHECK(got == want);
      CHECK(__builtin_popcount(want) % 2 == 0);
      CHECK(pairs.size() * 2 == (size_t)__builtin_popcount(want));
    }
}

TEST_CASE("perform_switch invariants on seeded random packings") {
  std::mt19937_64 rng(20240817);
  int performed = 0;
  for (int iter = 0; iter < 300; ++iter) {
    int u = 1 + 2 * (int)(rng() % 4);        // 1,3,5,7
    int w = 4 + 2 * (int)(rng() % 4);        // 4..10
    Graph host = hole_graph(u, w);
    // random packing: decompose the whole host greedily, keep a random subset
    auto all = any_cycle_decomposition(host);
    std::vector<Cycle> kept;
    for (auto& c : all)
      if (rng() % 3) kept.push_back(c);
    Packing p{host, kept};
    Graph L = p.leave();
    int pure0 = L.pure_count(), cross0 = L.cross_count();
    auto lens0 = p.length_multiset();

    // pick a random same-part twin pair with a nonempty switchable set
    std::vector<std::pair<int, int>> cands;
    for (int a = 0; a < host.n; ++a)
      for (int b = a + 1; b < host.n; ++b)
        if (host.twin(a, b) && host.in_w(a) == host.in_w(b)) cands.push_back({a, b});
    std::shuffle(cands.begin(), cands.end(), rng);
    for (auto [a, b] : cands) {
      auto pairs = switch_pairs(p, a, b);
      if (pairs.empty()) continue;
      auto pr = pairs[rng() % pairs.size()];
      auto out = perform_switch(p, a, b, pr.first);
      CHECK(out.terminus == pr.second);
      CHECK(out.packing_after.length_multiset() == lens0);
      Graph L2 = out.packing_after.leave();
      CHECK(L2.pure_count() == pure0);
      CHECK(L2.cross_count() == cross0);
      int toggled = 0;
      for (int v = 0; v < host.n; ++v) toggled += __builtin_popcount(L.adj[v] ^ L2.adj[v]);
      CHECK(toggled == 8);  // four undirected edges
      ++performed;
      break;
    }
  }
  CHECK(performed > 250);
}

TEST_CASE("cycles avoiding both endpoints are untouched") {
  auto h = build_host(3, 6);
  Cycle far{0, 5, 1, 6};
  Packing p{h.g, {far, Cycle{2, 7, 0, 8}}};
  auto pairs = switch_pairs(p, 7, 8);
  for (auto [o, t] : pairs) {
    auto out = perform_switch(p, 7, 8, o);
    CHECK(out.packing_after.cycles[0] == far);
    (void)t;
  }
}

TEST_CASE("equalise_one_step moves one degree unit pair") {
  auto h = build_host(5, 10);
  // leave: two triangles sharing outer vertex 5 -> degree 4 there, plus
  // nothing at outer 6's twin candidates
  Graph leave;
  leave.n = h.g.n;
  leave.wside = h.g.wside;
  add_cycle_edges(leave, {5, 0, 6});
  add_cycle_edges(leave, {5, 1, 7});
  // make it a subgraph of an even leave: it already is even (deg 2/4)
  Packing p = packing_with_leave(h.g, leave);
  Graph L0 = p.leave();
  REQUIRE(L0.degree(5) == 4);
  int z = 8;
  REQUIRE(L0.degree(z) == 0);
  auto p2 = equalise_one_step(p, 5, z);
  Graph L1 = p2.leave();
  CHECK(L1.degree(5) == 2);
  CHECK(L1.degree(z) == 2);
  for (int v = 0; v < h.g.n; ++v)
    if (v != 5 && v != z) CHECK(L1.degree(v) == L0.degree(v));

  CHECK_THROWS_AS(equalise_one_step(p2, 5, z), Error);        // degrees equal now
  CHECK_THROWS_AS(equalise_one_step(p, 5, 0), Error);         // not twin
}

TEST_CASE("find_absent_twin modes") {
  auto h = build_host(5, 10);
  SUBCASE("mode I: single triangle leave in a big hole") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 6, 0});
    // needs a degree-4 hole vertex; build one
    add_cycle_edges(leave, {0, 7, 1, 8});
    Packing p = packing_with_leave(h.g, leave);
    auto at = find_absent_twin(h.g, p.leave(), IsolateMode::I);
    CHECK(at.y >= 1);
    CHECK(at.y < 5);
    CHECK(p.leave().degree(at.y) == 0);
  }
  SUBCASE("mode III returns a verified witness pair") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, mixed_cycle(5, 10, 5, 1, 0, 0));  // [W0,W1,U0,W2,U1]
    add_cycle_edges(leave, {5, 2, 6, 3});                    // shares W0,W1
    Packing p = packing_with_leave(h.g, leave);
    Graph L = p.leave();
    REQUIRE(L.even());
    REQUIRE(L.edge_count() <= std::min({2 * (5 + 2), 2 * 10 + 1, 15}));
    auto at = find_absent_twin(h.g, L, IsolateMode::III);
    CHECK(L.degree(at.x) >= 4);
    CHECK(L.degree(at.y) == 0);
    CHECK(h.g.twin(at.x, at.y));
  }
}

TEST_CASE("classify_structure tags chains and rings") {
  auto h = build_host(5, 10);
  SUBCASE("two cycles sharing one vertex -> chain(2)") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 0, 6});
    add_cycle_edges(leave, {5, 1, 7});
    auto rep = classify_structure(h.g, leave);
    REQUIRE(rep.comps.size() == 1);
    CHECK(rep.comps[0].kind == StructureComponent::Chain);
    CHECK(rep.comps[0].cr.cycles.size() == 2);
    CHECK(rep.comps[0].cr.good);
    CHECK(rep.comps[0].cr.links == std::vector<int>{5});
  }
  SUBCASE("two cycles sharing two vertices -> ring(2)") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 0, 6, 1});
    add_cycle_edges(leave, {5, 2, 6, 3});
    auto rep = classify_structure(h.g, leave);
    REQUIRE(rep.comps.size() == 1);
    CHECK(rep.comps[0].kind == StructureComponent::Ring);
    CHECK(rep.comps[0].cr.cycles.size() == 2);
  }
  SUBCASE("explicit good 3-chain") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    // end cycle with a pure edge and link in W, internal cycle linking W and U
    add_cycle_edges(leave, {5, 6, 0});     // pure edge 5-6, link will be 6
    add_cycle_edges(leave, {6, 1, 7, 2});  // internal, links 6 (W) and 2 (U)
    add_cycle_edges(leave, {2, 8, 3, 9});  // end cycle, link 2 (U)
    auto rep = classify_structure(h.g, leave);
    REQUIRE(rep.comps.size() == 1);
    REQUIRE(rep.comps[0].kind == StructureComponent::Chain);
    CHECK(rep.comps[0].cr.cycles.size() == 3);
    CHECK(rep.comps[0].cr.good);
  }
  SUBCASE("single cycle and not-even rejection") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 0, 6, 1});
    auto rep = classify_structure(h.g, leave);
    REQUIRE(rep.comps.size() == 1);
    CHECK(rep.comps[0].kind == StructureComponent::SingleCycle);
    leave.add_edge(5, 7);
    CHECK_THROWS_AS(classify_structure(h.g, leave), Error);
  }
}

TEST_CASE("max_components_bound formula and empirical bound") {
  CHECK(max_components_bound(12, 2) == 2);
  CHECK(max_components_bound(9, 1) == 1);
  // leaves with one degree-4 vertex: component count <= bound
  auto h = build_host(7, 12);
  for (int extra = 0; extra <= 2; ++extra) {
    // a (3,3)-chain providing the degree-4 vertex plus `extra` disjoint 4-cycles
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {7, 0, 8});  // pure edge 7-8
    add_cycle_edges(leave, {7, 1, 9});  // pure edge 7-9, link at 7
    int wbase = 3, ubase = 2;
    for (int i = 0; i < extra; ++i) {
      add_cycle_edges(leave, {7 + wbase, ubase, 7 + wbase + 1, ubase + 1});
      wbase += 2;
      ubase += 2;
    }
    REQUIRE(leave.even());
    int mu = leave.pure_count();
    REQUIRE(mu == 2);
    CHECK(leave_component_count(leave) <= max_components_bound(leave.edge_count(), mu));
  }
}

TEST_CASE("deficiency") {
  auto h = build_host(5, 10);
  Graph leave;
  leave.n = h.g.n;
  leave.wside = h.g.wside;
  add_cycle_edges(leave, {5, 0, 6, 1});
  Packing p = packing_with_leave(h.g, leave);
  CHECK(deficiency(p) == 0);
  add_cycle_edges(leave, {5, 2, 7});
  p = packing_with_leave(h.g, leave);
  CHECK(deficiency(p) == 1);
  add_cycle_edges(leave, {6, 3, 8});
  p = packing_with_leave(h.g, leave);
  CHECK(deficiency(p) == 2);
}

TEST_CASE("pick_apart reaches a single degree-4 vertex") {
  auto h = build_host(5, 10);
  SUBCASE("already deficiency 1: unchanged") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 6, 0});  // one pure edge each: 5-6 and 5-7
    add_cycle_edges(leave, {5, 1, 7});
    Packing p = packing_with_leave(h.g, leave);
    auto p2 = pick_apart(p, 2);
    CHECK(p2.leave() == p.leave());
  }
  SUBCASE("deficiency 2 becomes 1 with the component bound") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    add_cycle_edges(leave, {5, 6, 0});     // the only pure edge: 5-6
    add_cycle_edges(leave, {5, 1, 7, 2});  // deg 4 at 5
    add_cycle_edges(leave, {7, 3, 8, 4});  // deg 4 at 7
    Packing p = packing_with_leave(h.g, leave);
    REQUIRE(p.leave().pure_count() == 1);
    REQUIRE(deficiency(p) == 2);
    int k0 = leave_component_count(p.leave());
    auto p2 = pick_apart(p, 1);
    Graph L = p2.leave();
    int n4 = 0;
    for (int v = 0; v < L.n; ++v) {
      if (L.degree(v) == 4) ++n4;
      else CHECK((L.degree(v) == 0 || L.degree(v) == 2));
    }
    CHECK(n4 == 1);
    CHECK(leave_component_count(L) <= k0 + 2 - 1);
    CHECK(L.pure_count() == 1);
  }
  SUBCASE("oversized leave is rejected") {
    Graph leave;
    leave.n = h.g.n;
    leave.wside = h.g.wside;
    for (int i = 0; i < 5; ++i) add_cycle_edges(leave, {5 + 2 * i, i, 6 + 2 * i});
    Packing p = packing_with_leave(h.g, leave);
    REQUIRE(p.leave().edge_count() == 15);  // > 2u+4 = 14
    CHECK_THROWS_AS(pick_apart(p, 1), Error);
    CHECK_THROWS_AS(pick_apart(p, 3), Error);
  }
}
