#include "doctest.h"
#include "holecycle/core.hpp"
#include "holecycle/subsolvers.hpp"

using namespace holecycle;

TEST_CASE("host edge counts") {
  CHECK(build_host(1, 4).g.edge_count() == 10);
  CHECK(build_host(3, 4).g.edge_count() == 18);
  CHECK(build_host(5, 10).g.edge_count() == 95);
  CHECK_THROWS_AS(build_host(0, 4), Error);
}

TEST_CASE("edge kinds") {
  auto h = build_host(3, 4);
  CHECK(edge_kind(h, {Part::Outer, 1}, {Part::Outer, 2}) == EdgeKind::Pure);
  CHECK(edge_kind(h, {Part::Hole, 0}, {Part::Outer, 1}) == EdgeKind::Cross);
  CHECK_THROWS_AS(edge_kind(h, {Part::Hole, 0}, {Part::Hole, 1}), Error);
  CHECK_THROWS_AS(edge_kind(h, {Part::Hole, 0}, {Part::Hole, 0}), Error);
}

TEST_CASE("twins are exactly the same-part pairs") {
  auto h = build_host(3, 4);
  for (int x = 0; x < 7; ++x)
    for (int y = x + 1; y < 7; ++y)
      CHECK(h.g.twin(x, y) == ((x < 3) == (y < 3)));
}

TEST_CASE("reduced leave") {
  auto h = build_host(3, 4);
  Packing empty{h.g, {}};
  CHECK(reduced_leave(empty).g.edge_count() == 18);

  // one 3-cycle (Outer 0, Outer 1, Hole 0) removed: 15 edges, 5 pure left
  Packing p{h.g, {Cycle{3, 4, 0}}};
  auto lv = reduced_leave(p);
  CHECK(lv.g.edge_count() == 15);
  CHECK(lv.pure_edges == 5);
  CHECK(lv.cross_edges == 10);
}

TEST_CASE("verifier on a full (3^6) decomposition of host(3,4)") {
  auto h = build_host(3, 4);
  auto got = decompose_exhaustive(h.g, std::vector<int>(6, 3));
  REQUIRE(got.has_value());
  auto cert = verify_decomposition(h.g, *got, std::vector<int>(6, 3));
  CHECK(cert.pass());
  CHECK(cert.per_cycle_pure_counts.size() == 6);
  for (int pc : cert.per_cycle_pure_counts) CHECK(pc == 1);

  SUBCASE("duplicated cycle fails with EdgeReuse") {
    auto bad = *got;
    bad[0] = bad[1];
    CHECK(verify_decomposition(h.g, bad, std::vector<int>(6, 3)).verdict == Verdict::EdgeReuse);
  }
  SUBCASE("wrong multiset fails with LengthMismatch") {
    CHECK(verify_decomposition(h.g, *got, {3, 3, 3, 3, 3, 4}).verdict ==
          Verdict::LengthMismatch);
  }
  SUBCASE("dropping a cycle fails with NotPartition") {
    auto bad = *got;
    bad.pop_back();
    CHECK(verify_decomposition(h.g, bad, std::vector<int>(5, 3)).verdict ==
          Verdict::NotPartition);
  }
  SUBCASE("non-cycle fails with BadCycle") {
    auto bad = *got;
    bad[0] = {0, 1, 2};  // hole-hole edges
    CHECK(verify_decomposition(h.g, bad, std::vector<int>(6, 3)).verdict == Verdict::BadCycle);
  }
}

TEST_CASE("json round trip is exact on canonical forms") {
  auto h = build_host(3, 4);
  auto got = decompose_exhaustive(h.g, std::vector<int>(6, 3));
  REQUIRE(got.has_value());
  std::string js = decomposition_to_json(3, 4, *got);
  auto back = decomposition_from_json(js);
  CHECK(back.u == 3);
  CHECK(back.w == 4);
  CHECK(decomposition_to_json(back.u, back.w, back.cycles) == js);
}

TEST_CASE("canonical cycle picks min rotation and direction") {
  CHECK(canonical_cycle({5, 3, 4}) == Cycle{3, 4, 5});
  CHECK(canonical_cycle({5, 4, 3}) == Cycle{3, 4, 5});
  CHECK(canonical_cycle({2, 9, 4, 7}) == Cycle{2, 7, 4, 9});
}
