#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kanforge/kan.hpp"

using namespace kanforge;

TEST_CASE("one Kan step on nerve(Z/2): level censuses") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto x1 = kan_step(ng, 3);
  x1->validate();

  // Level 1: X1 + X1 x_X0 X1 = 2 + 4
  CHECK(x1->size(1) == 6);
  // Level 2: X2 + three copies of X1 x_X0 X1 + sum_j hom(Lambda[3,j], X)
  //        = 4 + 12 + 4*8
  CHECK(x1->size(2) == 48);

  // The census identity |X^1_1| = |X_1| + |hom(Lambda[2,1],X)| holds exactly.
  auto h21 = horn(2, 1, 1);
  CHECK(x1->size(1) == ng->size(1) + count_simplicial_maps(h21, ng));
  // and hom(Lambda[3,j], nerve) = |G|^3 = 8 for each j
  for (int j = 0; j <= 3; ++j)
    CHECK(count_simplicial_maps(horn(3, j, 2), ng) == 8);
}

TEST_CASE("kan_replace depth 2 on nerve(Z/2): level-1 census and provenance") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto f = kan_replace(ng, 2, 3);
  CHECK(f.depth() == 2);
  CHECK_FALSE(f.budget_exceeded);

  // X^2_1 = X^1_1 + X^1_1 x_X0 X^1_1 = 6 + 36
  CHECK(f.stages[1].complex->size(1) == 6);
  CHECK(f.final_complex()->size(1) == 42);

  // Depth-0 replacement is the input itself.
  auto f0 = kan_replace(ng, 0, 3);
  CHECK(f0.final_complex()->census(false) == ng->census(false));

  // Every depth-1 level-1 addition is glued along a composable pair.
  const auto& st1 = f.stages[1];
  int new_edges = 0;
  for (int c = ng->size(1); c < st1.complex->size(1); ++c) {
    const auto& p = st1.prov[1][c];
    CHECK(p.stage == 1);
    CHECK(p.role == CellProvenance::Role::new_face);
    CHECK(p.k == 2);
    CHECK(p.j == 1);
    ++new_edges;
  }
  CHECK(new_edges == 4);

  // Census formula at each stage, for a second input shape as well.
  auto g3 = FiniteGroupoid::cyclic_group(3);
  auto f3 = kan_replace(nerve(g3, 2), 2, 2);
  for (int b = 1; b <= 2; ++b) {
    const auto& prev = *f3.stages[b - 1].complex;
    const auto& cur = *f3.stages[b].complex;
    auto h21 = horn(2, 1, 1);
    CHECK(cur.size(1) ==
          prev.size(1) + count_simplicial_maps(h21, f3.stages[b - 1].complex));
  }
}

TEST_CASE("kan_step on the point adds the free filler the pushout demands") {
  // hom(Lambda[2,1], pt) is a single (degenerate) horn, so one step glues one
  // formal edge; the eq-x1 census holds for every input.
  auto pt = standard_simplex(0, 2);
  auto x1 = kan_step(pt, 2);
  CHECK(x1->size(0) == 1);
  CHECK(x1->size(1) == 2);
}

TEST_CASE("budget flagging yields a partial tower") {
  auto g = FiniteGroupoid::cyclic_group(3);
  auto f = kan_replace(nerve(g, 2), 3, 2, /*cell_budget=*/200);
  CHECK(f.budget_exceeded);
  CHECK(f.depth() < 3);
}

TEST_CASE("truncation of a nerve is the identity shadow") {
  auto g = FiniteGroupoid::cyclic_group(3);
  auto ng = nerve(g, 2);
  auto t = truncate(ng, 1, 2);
  // tau_1(nerve) = nerve levelwise: no two distinct edges merge.
  CHECK(t.quotient->size(0) == ng->size(0));
  CHECK(t.quotient->size(1) == ng->size(1));
  CHECK(t.quotient->size(2) == ng->size(2));
  CHECK(t.witnesses.empty());
  check_truncation_kan_bang(t);
  for (const auto& kb : t.kan_bang) {
    CHECK(kb.surjective);
    CHECK(kb.unique);
  }

  // Idempotence.
  auto t2 = truncate(t.quotient, 1, 2);
  CHECK(t2.quotient->census(false) == t.quotient->census(false));
  CHECK(t2.witnesses.empty());
}

TEST_CASE("truncation of a verified 2-groupoid is levelwise identical") {
  auto g = FiniteGroupoid::symmetric_group3();
  auto ng = nerve(g, 3);
  auto t = truncate(ng, 2, 3);
  CHECK(t.quotient->census(false) == ng->census(false));
  CHECK(t.witnesses.empty());
}

TEST_CASE("evaluate_words on nerve(Z/2) tower") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto f = kan_replace(ng, 2, 3);
  auto ev = evaluate_words(f, g);
  CHECK(ev.total);

  const auto& cx = *f.final_complex();
  // identity word evaluates to the identity edge
  int id_edge = ng->index_of(1, g.arrows[g.identity[0]].id);
  CHECK(ev.map.assign[1][id_edge] == id_edge);

  // every stage-1 formal composite evaluates to the product of its pair
  const auto& st1 = f.stages[1];
  for (const auto& fill : st1.fills) {
    if (fill.k != 2) continue;
    int w = fill.face_cell;
    int e01 = -1, e12 = -1;
    // principal edges of the glued triangle are the d2 and d0 faces of the top
    int top = fill.top_cell;
    e01 = cx.face(2, 2, top);
    e12 = cx.face(2, 0, top);
    int a = ev.map.assign[1][e01], b = ev.map.assign[1][e12];
    int ga = -1, gb = -1;
    for (size_t i = 0; i < g.arrows.size(); ++i) {
      if (ng->id(1, a) == g.arrows[i].id) ga = static_cast<int>(i);
      if (ng->id(1, b) == g.arrows[i].id) gb = static_cast<int>(i);
    }
    int prod = g.compose[ga][gb];
    CHECK(ng->id(1, ev.map.assign[1][w]) == g.arrows[prod].id);
  }

  // nested composites of (g,(h,k)) and ((g,h),k) evaluate equally
  // (associativity witnessed through the evaluation map): compare the
  // evaluation of all depth-2 words pairwise by their underlying product.
  // Here we just check every depth-2 stage-2 edge has a defined image equal
  // to a group element edge.
  for (int c = 0; c < cx.size(1); ++c) {
    int im = ev.map.assign[1][c];
    CHECK(im >= 0);
    CHECK(im < ng->size(1));
  }
}

TEST_CASE("evaluate_words on the local window is partial exactly off-window") {
  auto l = LocalGroupoid::integer_window(1, 2);
  auto ln = local_nerve(l, 3);
  auto f = kan_replace(ln, 1, 2);
  auto ev = evaluate_words(f, l);
  // words 1+1 and -1-1 leave V (no edge 2 or -2 in the local nerve)
  CHECK_FALSE(ev.total);
  CHECK(ev.undefined_cells > 0);
  const auto& cx = *f.final_complex();
  const auto& st1 = f.stages[1];
  for (const auto& fill : st1.fills) {
    int w = fill.face_cell;
    int top = fill.top_cell;
    int a = ev.map.assign[1][cx.face(2, 2, top)];
    int b = ev.map.assign[1][cx.face(2, 0, top)];
    long va = std::stol(ln->id(1, a)), vb = std::stol(ln->id(1, b));
    if (std::abs(va + vb) <= 1) {
      CHECK(ev.defined[1][w]);
      CHECK(std::stol(ln->id(1, ev.map.assign[1][w])) == va + vb);
    } else {
      CHECK_FALSE(ev.defined[1][w]);
    }
  }
}
