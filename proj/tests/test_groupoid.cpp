#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kanforge/groupoid.hpp"

using namespace kanforge;

TEST_CASE("integer window local groupoid and its nerve") {
  auto l = LocalGroupoid::integer_window(1, 2);
  CHECK(l.arrows.size() == 5);

  auto ln = local_nerve(l, 3);
  ln->validate();

  // Independent brute force over tuples of V = {-1,0,1}.
  auto in_v = [](int a) { return a >= -1 && a <= 1; };
  int count2 = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      if (in_v(a + b)) ++count2;
  int count3 = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        if (in_v(a + b) && in_v(b + c) && in_v(a + b + c)) ++count3;
  CHECK(count2 == 7);
  CHECK(count3 == 15);
  CHECK(ln->size(2) == count2);
  CHECK(ln->size(3) == count3);

  // Kan(2,1) fails: the horn (1,1) has no filler since 1+1 is outside V.
  auto rep = check_horn_filling(ln, 2, 1);
  CHECK_FALSE(rep.restriction_surjective);
  CHECK(rep.horn_count == 9);
  CHECK(rep.cell_count == 7);

  auto verdict = classify_n_groupoid(ln, 2);
  CHECK_FALSE(verdict.ok);
  CHECK(verdict.failure.find("Kan(2,") != std::string::npos);

  // hom(Lambda[3,j], local nerve) is in bijection with level 3 for all j.
  for (int j = 0; j <= 3; ++j) {
    auto r3 = check_horn_filling(ln, 3, j);
    CHECK(r3.horn_count == 15);
    CHECK(r3.restriction_bijective);
  }
}

TEST_CASE("properties A and B") {
  auto l = LocalGroupoid::integer_window(1, 2);
  auto ln = local_nerve(l, 3);
  auto rep = check_local_kan_properties(ln);
  CHECK(rep.property_A_ok);
  CHECK(rep.property_B_ok);

  auto g = FiniteGroupoid::cyclic_group(3);
  auto ng = nerve(g, 2);
  auto rep2 = check_local_kan_properties(ng);
  CHECK(rep2.property_A_ok);
  CHECK(rep2.property_B_ok);
}

TEST_CASE("local nerve reduces to nerve when V is everything") {
  auto g = FiniteGroupoid::cyclic_group(3);
  auto l = LocalGroupoid::from_groupoid(g);
  auto a = local_nerve(l, 3);
  auto b = nerve(g, 3);
  CHECK(a->census(false) == b->census(false));
  for (int n = 0; n <= 3; ++n)
    for (int c = 0; c < a->size(n); ++c) CHECK(a->id(n, c) == b->id(n, c));
}

TEST_CASE("bigons of a nerve are the arrows") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto bs = bigons(*ng);
  // bigons = {(1, g)} indexed by arrows
  CHECK(bs.size() == g.arrows.size());
  for (int z : bs) {
    CHECK(ng->is_degenerate(1, ng->face(2, 2, z)));
    CHECK(ng->face(2, 0, z) == ng->face(2, 1, z));
  }
  // s_0(edge) and s_1(edge): only s_0(e) has a degenerate d2-face in general;
  // both land in the bigon set exactly when their d2-face is degenerate.
  for (int e = 0; e < ng->size(1); ++e) {
    int s0e = ng->degeneracy(1, 0, e);
    CHECK(ng->is_degenerate(1, ng->face(2, 2, s0e)));
  }
}

TEST_CASE("bigon groupoid of a nerve is the unit groupoid on arrows") {
  auto g = FiniteGroupoid::symmetric_group3();
  auto ng = nerve(g, 3);
  auto bg = bigon_groupoid(ng);
  CHECK(bg.groupoid.objects.size() == static_cast<size_t>(ng->size(1)));
  CHECK(bg.groupoid.arrows.size() == static_cast<size_t>(ng->size(1)));
  // unit groupoid: every arrow is an identity
  for (size_t a = 0; a < bg.groupoid.arrows.size(); ++a) {
    CHECK(bg.groupoid.arrows[a].src == bg.groupoid.arrows[a].tgt);
    CHECK(bg.groupoid.identity[bg.groupoid.arrows[a].src] == static_cast<int>(a));
  }
}

TEST_CASE("random groupoids are valid and classify as 1-groupoids") {
  SplitMix64 rng(20260811);
  for (int t = 0; t < 5; ++t) {
    auto g = FiniteGroupoid::random(rng, 4, 12);
    CHECK(g.objects.size() <= 4);
    CHECK(g.arrows.size() <= 12);
    auto ng = nerve(g, 3);
    auto verdict = classify_n_groupoid(ng, 2);
    CHECK(verdict.ok);
    CHECK(verdict.n == 1);
  }
}

TEST_CASE("pair groupoid nerve is connected with trivial pi0") {
  auto g = FiniteGroupoid::pair_groupoid(2);
  auto ng = nerve(g, 2);
  ng->validate();
  CHECK(ng->size(0) == 2);
  CHECK(ng->size(1) == 4);
}
