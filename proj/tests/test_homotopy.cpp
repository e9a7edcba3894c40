#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kanforge/homotopy.hpp"
#include "kanforge/kan.hpp"

using namespace kanforge;

TEST_CASE("coset enumeration of small presentations") {
  // Z/4 = <a | a^4>
  GroupPresentation p;
  p.generator_names = {"a"};
  p.relators = {{1, 1, 1, 1}};
  auto g = enumerate_presentation(p, 1000);
  CHECK(g.table.order == 4);
  CHECK(g.table.element_order(g.generator_element[0]) == 4);

  // S3 = <a,b | a^2, b^2, (ab)^3>
  GroupPresentation q;
  q.generator_names = {"a", "b"};
  q.relators = {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}};
  auto h = enumerate_presentation(q, 1000);
  CHECK(h.table.order == 6);

  // trivial group with a redundant generator
  GroupPresentation r;
  r.generator_names = {"a"};
  r.relators = {{1}};
  CHECK(enumerate_presentation(r, 1000).table.order == 1);
}

TEST_CASE("group isomorphism search") {
  auto z6 = group_table(FiniteGroupoid::cyclic_group(6));
  auto s3 = group_table(FiniteGroupoid::symmetric_group3());
  CHECK(group_isomorphism(z6, z6).has_value());
  CHECK(group_isomorphism(s3, s3).has_value());
  CHECK_FALSE(group_isomorphism(z6, s3).has_value());

  GroupPresentation p;  // another Z/6 = <a,b | a^2, b^3, aba^-1b^-1>
  p.generator_names = {"a", "b"};
  p.relators = {{1, 1}, {2, 2, 2}, {1, 2, -1, -2}};
  auto g = enumerate_presentation(p, 1000);
  CHECK(g.table.order == 6);
  CHECK(group_isomorphism(g.table, z6).has_value());
  CHECK_FALSE(group_isomorphism(g.table, s3).has_value());
}

TEST_CASE("pi0 of a disconnected nerve") {
  SplitMix64 rng(99);
  auto g = FiniteGroupoid::random(rng, 4, 12);
  auto ng = nerve(g, 2);
  auto p = pi0(*ng, 0);
  CHECK(p.component_count >= 1);

  auto pair2 = nerve(FiniteGroupoid::pair_groupoid(2), 2);
  auto p2 = pi0(*pair2, 0);
  CHECK(p2.component_count == 1);
}

TEST_CASE("pi1 of a nerve is the group, via both routes") {
  for (int which = 0; which < 3; ++which) {
    FiniteGroupoid g = which == 0   ? FiniteGroupoid::cyclic_group(2)
                       : which == 1 ? FiniteGroupoid::cyclic_group(3)
                                    : FiniteGroupoid::symmetric_group3();
    auto target = group_table(g);
    auto ng = nerve(g, 3);

    auto hk = homotopy_group(ng, 0, 1, PiMode::kan);
    REQUIRE(hk.table.has_value());
    CHECK(hk.mode == "kan");
    CHECK(group_isomorphism(*hk.table, target).has_value());

    auto hc = homotopy_group(ng, 0, 1, PiMode::covering);
    REQUIRE(hc.table.has_value());
    CHECK(group_isomorphism(*hc.table, target).has_value());

    auto ha = homotopy_group(ng, 0, 1, PiMode::automatic);
    CHECK(ha.mode == "kan");
    CHECK(group_isomorphism(*ha.table, target).has_value());
  }
}

TEST_CASE("pi2 of a nerve is trivial, via both routes") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto hk = homotopy_group(ng, 0, 2, PiMode::kan);
  CHECK(hk.trivial);
  auto hc = homotopy_group(ng, 0, 2, PiMode::covering);
  CHECK(hc.trivial);
}

TEST_CASE("pi0 of the pair groupoid nerve is a point") {
  auto ng = nerve(FiniteGroupoid::pair_groupoid(2), 2);
  auto h = homotopy_group(ng, 0, 0);
  CHECK(h.pi0_count == 1);
}

TEST_CASE("truncated depth-2 replacement of nerve(Z/2): pi_i match") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto target = group_table(g);
  auto ng = nerve(g, 3);
  auto f = kan_replace(ng, 2, 3);
  auto t = truncate(f.final_complex(), 2, 3);

  auto h0 = homotopy_group(t.quotient, 0, 0);
  CHECK(h0.pi0_count == 1);

  auto h1 = homotopy_group(t.quotient, 0, 1);
  CHECK(h1.mode == "covering");  // finite-depth replacement is not Kan
  REQUIRE(h1.table.has_value());
  CHECK(h1.table->order == 2);
  CHECK(group_isomorphism(*h1.table, target).has_value());

  auto h2 = homotopy_group(t.quotient, 0, 2);
  CHECK(h2.mode == "covering");
  CHECK(h2.trivial);
}

TEST_CASE("pi1 answer is independent of cell enumeration order") {
  // Relabel the arrows (which permutes nerve cells lexicographically) and
  // compare up to isomorphism.
  auto g = FiniteGroupoid::symmetric_group3();
  auto target = group_table(g);
  FiniteGroupoid shuffled = g;
  for (auto& a : shuffled.arrows) a.id = "zz" + a.id;  // reorders cells
  auto h1 = homotopy_group(nerve(g, 3), 0, 1);
  auto h2 = homotopy_group(nerve(shuffled, 3), 0, 1);
  REQUIRE(h1.table.has_value());
  REQUIRE(h2.table.has_value());
  CHECK(group_isomorphism(*h1.table, *h2.table).has_value());
  CHECK(group_isomorphism(*h2.table, target).has_value());
}
