#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "kanforge/groupoid.hpp"
#include "kanforge/smap.hpp"
#include "kanforge/sset.hpp"

using namespace kanforge;

TEST_CASE("standard simplex censuses") {
  auto d2 = standard_simplex(2, 2);
  d2->validate();
  CHECK(d2->census(true) == std::vector<long long>{3, 3, 1});
  CHECK(d2->census(false) == std::vector<long long>{3, 6, 10});

  auto pt = standard_simplex(0, 2);
  CHECK(pt->census(true) == std::vector<long long>{1, 0, 0});
  CHECK(pt->census(false) == std::vector<long long>{1, 1, 1});

  auto d1 = standard_simplex(1, 1);
  CHECK(d1->census(true) == std::vector<long long>{2, 1});

  // Nondegenerate count of Delta[m] at level n is C(m+1, n+1).
  auto d3 = standard_simplex(3, 3);
  CHECK(d3->census(true) == std::vector<long long>{4, 6, 4, 1});
  CHECK_THROWS_AS(standard_simplex(2, 1), Error);
}

TEST_CASE("horns and boundaries") {
  auto h21 = horn(2, 1, 2);
  CHECK(h21->census(true) == std::vector<long long>{3, 2, 0});
  CHECK(h21->index_of(1, "0.2") == -1);

  auto h31 = horn(3, 1, 3);
  CHECK(h31->census(true) == std::vector<long long>{4, 6, 3, 0});

  auto h10 = horn(1, 0, 1);
  CHECK(h10->census(true) == std::vector<long long>{1, 0});
  CHECK(h10->index_of(0, "0") == 0);  // the vertex not opposite j = 0

  auto b2 = boundary_complex(2, 2);
  CHECK(b2->census(true) == std::vector<long long>{3, 3, 0});
  auto b1 = boundary_complex(1, 1);
  CHECK(b1->census(true) == std::vector<long long>{2, 0});

  // dDelta[m] is contained in Lambda[m,j] plus the j-th face, inside Delta[m].
  for (int j = 0; j <= 2; ++j) {
    auto h = horn(2, j, 2);
    auto d = standard_simplex(2, 2);
    CHECK(levelwise_subset(*h, *d));
    CHECK(levelwise_subset(*b2, *d));
    // every boundary cell is in the horn or a face of the missing face
    for (int n = 0; n <= 2; ++n)
      for (int c = 0; c < b2->size(n); ++c) {
        bool in_horn = h->index_of(n, b2->id(n, c)) >= 0;
        // cells of the j-th face have values avoiding j
        bool in_jface = b2->id(n, c).find(std::to_string(j)) == std::string::npos;
        CHECK((in_horn || in_jface));
      }
  }
}

TEST_CASE("hom sets via Yoneda and nerve counts") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  ng->validate();
  CHECK(ng->census(false) == std::vector<long long>{1, 2, 4, 8});

  // |hom(Delta[n], X)| = |X_n|
  for (int n = 0; n <= 2; ++n) {
    auto dn = standard_simplex(n, n);
    CHECK(count_simplicial_maps(dn, ng) == ng->size(n));
  }

  auto h21 = horn(2, 1, 1);
  CHECK(count_simplicial_maps(h21, ng) == 4);
  auto d2 = standard_simplex(2, 2);
  CHECK(count_simplicial_maps(d2, ng) == 4);

  // hom(Delta[0], X) matches vertices
  auto p = standard_simplex(0, 0);
  auto maps = simplicial_maps(p, ng);
  CHECK(maps.size() == 1);
  maps[0].validate();
}

TEST_CASE("horn filling checks on nerves") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j <= m; ++j) {
      auto rep = check_horn_filling(ng, m, j);
      CHECK(rep.restriction_surjective);
      if (m >= 2) CHECK(rep.restriction_bijective);
    }
  auto verdict = classify_n_groupoid(ng, 2);
  CHECK(verdict.ok);
  CHECK(verdict.n == 1);

  auto pt = standard_simplex(0, 2);
  auto v0 = classify_n_groupoid(pt, 2);
  CHECK(v0.ok);
  CHECK(v0.n == 0);
}

TEST_CASE("monotone map basics") {
  MonotoneMap f{3, {0, 1, 3}};
  CHECK(f.weakly_increasing());
  CHECK(f.nondegenerate());
  CHECK(f.face(1).values == std::vector<int>{0, 3});
  CHECK(f.degeneracy(1).values == std::vector<int>{0, 1, 1, 3});
  MonotoneMap d{3, {0, 1, 1}};
  CHECK(d.weakly_increasing());
  CHECK_FALSE(d.nondegenerate());
}
