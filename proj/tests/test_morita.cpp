#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kanforge/kan.hpp"
#include "kanforge/morita.hpp"

using namespace kanforge;

namespace {

// The 2-point vertex cover of a one-object nerve: Z0 = {a,b}, Z1 = Z0xZ0xG.
PullbackInput two_point_cover(const FiniteGroupoid& g, const SSetPtr& ng) {
  PullbackInput in;
  in.z0_ids = {"a", "b"};
  in.f0 = {0, 0};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q)
      for (size_t ai = 0; ai < g.arrows.size(); ++ai) {
        in.z1_ids.push_back(in.z0_ids[p] + in.z0_ids[q] + ":" + g.arrows[ai].id);
        in.d1.push_back(p);  // vertex 0
        in.d0.push_back(q);  // vertex 1
        in.f1.push_back(ng->index_of(1, g.arrows[ai].id));
      }
  auto edge_index = [&](int p, int q, int ai) {
    return (p * 2 + q) * static_cast<int>(g.arrows.size()) + ai;
  };
  in.s0 = {edge_index(0, 0, g.identity[0]), edge_index(1, 1, g.identity[0])};
  return in;
}

}  // namespace

TEST_CASE("identity map is a hypercover at every degree") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 3);
  auto id = identity_map(ng);
  for (int n = 0; n <= 2; ++n) {
    auto rep = check_hypercover(id, n);
    CHECK(rep.ok);
  }
}

TEST_CASE("vertex failure is detected at k=0") {
  auto g = FiniteGroupoid::pair_groupoid(2);
  auto ng = nerve(g, 2);
  auto pt = standard_simplex(0, 2);
  // the inclusion of one vertex
  SimplicialMap f;
  f.source = pt;
  f.target = ng;
  f.assign.resize(3);
  f.assign[0] = {0};
  f.assign[1] = {ng->degeneracy(0, 0, 0)};
  f.assign[2] = {ng->degeneracy(1, 0, ng->degeneracy(0, 0, 0))};
  f.validate();
  auto rep = check_hypercover(f, 1);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failure.find("k=0") != std::string::npos);
}

TEST_CASE("pullback 2-groupoid along the two-point vertex cover of nerve(Z/2)") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 2);
  auto in = two_point_cover(g, ng);
  auto pb = pullback_2groupoid(ng, in);
  pb.z->validate();
  CHECK(pb.z->size(1) == 8);
  // brute-force fiber product census: 8 vertex triangles x (2 free labels)
  CHECK(pb.z->size(2) == 32);

  auto rep = check_hypercover(pb.f, 2);
  CHECK(rep.ok);
  CHECK(rep.levels[1].bijective);  // the level-1 comparison map is bijective here

  // identity cover gives back X itself
  PullbackInput idin;
  for (int v = 0; v < ng->size(0); ++v) {
    idin.z0_ids.push_back(ng->id(0, v));
    idin.f0.push_back(v);
    idin.s0.push_back(ng->degeneracy(0, 0, v));
  }
  for (int e = 0; e < ng->size(1); ++e) {
    idin.z1_ids.push_back(ng->id(1, e));
    idin.d0.push_back(ng->face(1, 0, e));
    idin.d1.push_back(ng->face(1, 1, e));
    idin.f1.push_back(e);
  }
  auto pb2 = pullback_2groupoid(ng, idin);
  CHECK(pb2.z->size(2) == ng->size(2));
  CHECK(check_hypercover(pb2.f, 2).ok);
}

TEST_CASE("Morita lemma conditions") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 2);
  // K = Y, Z1 = Y1, g1 = h1 = id, alpha = identity bigons
  MoritaLemmaInput in;
  in.f = identity_map(ng);
  for (int e = 0; e < ng->size(1); ++e) {
    in.g1.push_back(e);
    in.h1.push_back(e);
    in.alpha.push_back(ng->degeneracy(1, 0, e));
  }
  auto rep = check_morita_lemma_conditions(in);
  CHECK(rep.all());

  // constant non-matching alpha breaks condition 3
  MoritaLemmaInput bad = in;
  int g_edge = -1;
  for (int e = 0; e < ng->size(1); ++e)
    if (!ng->is_degenerate(1, e)) g_edge = e;
  for (auto& a : bad.alpha) a = ng->degeneracy(1, 0, g_edge);
  auto rep2 = check_morita_lemma_conditions(bad);
  CHECK_FALSE(rep2.alpha_compatible);
  CHECK(rep2.level0_bijective);
}

TEST_CASE("extract_local_groupoid from a nerve recovers the groupoid") {
  auto g = FiniteGroupoid::symmetric_group3();
  auto ng = nerve(g, 2);
  std::vector<int> all_edges;
  for (int e = 0; e < ng->size(1); ++e) all_edges.push_back(e);
  auto l = extract_local_groupoid(ng, all_edges);
  CHECK(l.arrows.size() == g.arrows.size());
  // multiplication matches the group
  for (size_t a = 0; a < g.arrows.size(); ++a)
    for (size_t b = 0; b < g.arrows.size(); ++b) {
      int ea = -1, eb = -1;
      for (size_t i = 0; i < l.arrows.size(); ++i) {
        if (l.arrows[i].id == g.arrows[a].id) ea = static_cast<int>(i);
        if (l.arrows[i].id == g.arrows[b].id) eb = static_cast<int>(i);
      }
      int prod = l.compose[ea][eb];
      CHECK(l.arrows[prod].id == g.arrows[g.compose[a][b]].id);
    }
  // round trip through the nerve: identical cell ids levelwise
  auto ln = local_nerve(l, 2);
  CHECK(ln->census(false) == ng->census(false));
  for (int n = 0; n <= 2; ++n)
    for (int c = 0; c < ng->size(n); ++c) CHECK(ln->id(n, c) == ng->id(n, c));
}

TEST_CASE("extract_local_groupoid from the truncated depth-1 replacement") {
  auto l0 = LocalGroupoid::integer_window(1, 2);
  auto ln = local_nerve(l0, 3);
  auto f = kan_replace(ln, 1, 2);
  auto t = truncate(f.final_complex(), 2, 3);

  // provenance rank of each level-2 class: minimal birth stage of a member
  std::vector<int> rank2(t.quotient->size(2), 1 << 20);
  for (int c = 0; c < f.final_complex()->size(2); ++c) {
    int cls = t.class_of[c];
    rank2[cls] = std::min(rank2[cls], f.stage_of(2, c));
  }
  std::vector<int> v_edges;
  for (int e = 0; e < ln->size(1); ++e) v_edges.push_back(e);

  auto l = extract_local_groupoid(t.quotient, v_edges, rank2);
  // V = {-1,0,1} plus two formal arrows standing for +-2
  CHECK(l.arrows.size() == 5);
  int plus2 = -1, minus2 = -1;
  auto arrow_by_id = [&](const std::string& id) {
    for (size_t i = 0; i < l.arrows.size(); ++i)
      if (l.arrows[i].id == id) return static_cast<int>(i);
    return -1;
  };
  int m1 = arrow_by_id("-1"), z0 = arrow_by_id("0"), p1 = arrow_by_id("1");
  REQUIRE(m1 >= 0);
  REQUIRE(z0 >= 0);
  REQUIRE(p1 >= 0);
  plus2 = l.compose[p1][p1];
  minus2 = l.compose[m1][m1];
  CHECK(plus2 >= 0);
  CHECK(minus2 >= 0);
  CHECK(plus2 != minus2);
  CHECK_FALSE(l.arrows[plus2].in_v);
  CHECK_FALSE(l.arrows[minus2].in_v);

  // explicit isomorphism onto the integer window: v -> v, plus2 -> 2, minus2 -> -2
  auto target = LocalGroupoid::integer_window(1, 2);
  auto tindex = [&](const std::string& id) {
    for (size_t i = 0; i < target.arrows.size(); ++i)
      if (target.arrows[i].id == id) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> phi(l.arrows.size(), -1);
  phi[m1] = tindex("-1");
  phi[z0] = tindex("0");
  phi[p1] = tindex("1");
  phi[plus2] = tindex("2");
  phi[minus2] = tindex("-2");
  for (size_t a = 0; a < l.arrows.size(); ++a)
    for (size_t b = 0; b < l.arrows.size(); ++b) {
      int r = l.compose[a][b];
      int rt = target.compose[phi[a]][phi[b]];
      if (r < 0)
        CHECK(rt < 0);
      else
        CHECK(phi[r] == rt);
    }

  // missing identity edge in V is a precondition error
  std::vector<int> no_id;
  for (int e : v_edges)
    if (t.quotient->id(1, e) != "0") no_id.push_back(e);
  CHECK_THROWS_AS(extract_local_groupoid(t.quotient, no_id, rank2), Error);
}

TEST_CASE("zig-zags and 2-morphism comparison") {
  auto g = FiniteGroupoid::cyclic_group(2);
  auto ng = nerve(g, 2);
  auto id = identity_map(ng);
  auto z1 = make_zigzag(id, id, 2);
  auto z2 = make_zigzag(id, id, 2);
  auto iso = compare_generalized_morphisms(z1, z2);
  CHECK(iso.has_value());
}
