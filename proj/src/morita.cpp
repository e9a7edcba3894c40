#include "kanforge/morita.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace kanforge {

std::vector<int> boundary_restriction_key(const FiniteSimplicialSet& x, int m,
                                          int cell) {
  std::vector<int> key;
  for (int n = 0; n <= m - 1; ++n) {
    for (const auto& f : monotone_maps(n, m)) {
      if (!f.nondegenerate()) continue;
      std::vector<bool> hit(m + 1, false);
      for (int v : f.values) hit[v] = true;
      bool surjective = true;
      for (int v = 0; v <= m; ++v)
        if (!hit[v]) surjective = false;
      if (surjective) continue;
      std::vector<int> del;
      for (int v = m; v >= 0; --v)
        if (!hit[v]) del.push_back(v);
      key.push_back(x.apply_faces(m, cell, del));
    }
  }
  return key;
}

HypercoverReport check_hypercover(const SimplicialMap& f, int n) {
  HypercoverReport rep;
  rep.n = n;
  const auto& z = *f.source;
  const auto& x = *f.target;
  if (z.top_dim() < n || x.top_dim() < n)
    throw Error("check_hypercover: both sides need top_dim >= n");

  for (int k = 0; k <= n; ++k) {
    HypercoverReport::LevelVerdict v;
    v.k = k;
    if (k == 0) {
      // hom(dD[0], -) is a point: the pullback is X_0 and the map is f_0.
      std::vector<long long> hits(x.size(0), 0);
      for (int c = 0; c < z.size(0); ++c) ++hits[f(0, c)];
      v.pullback_size = x.size(0);
      v.surjective = std::all_of(hits.begin(), hits.end(),
                                 [](long long h) { return h > 0; });
      v.bijective = v.surjective && std::all_of(hits.begin(), hits.end(),
                                                [](long long h) { return h == 1; });
    } else {
      // spheres in Z, their X-images, and X_k cells over them
      auto bd = boundary_complex(k, k - 1);
      std::map<std::vector<int>, long long> sphere_index;
      std::vector<std::vector<int>> spheres;
      visit_simplicial_maps(bd, f.source, [&](const std::vector<int>& t) {
        if (sphere_index.emplace(t, spheres.size()).second) spheres.push_back(t);
      });
      // X-side keys of X_k cells
      std::map<std::vector<int>, std::vector<int>> xcells_by_key;
      for (int c = 0; c < x.size(k); ++c)
        xcells_by_key[boundary_restriction_key(x, k, c)].push_back(c);
      // pullback elements (sphere, x-cell) hit counts
      std::map<std::pair<long long, int>, long long> hits;
      long long pb = 0;
      for (long long si = 0; si < static_cast<long long>(spheres.size()); ++si) {
        std::vector<int> xk(spheres[si].size());
        // push the sphere through f (generators of dD[k] are at levels < k)
        auto gens = generator_list(*bd);
        for (size_t gi = 0; gi < gens.size(); ++gi)
          xk[gi] = f(gens[gi].first, spheres[si][gi]);
        auto it = xcells_by_key.find(xk);
        if (it == xcells_by_key.end()) continue;
        for (int c : it->second) {
          hits[{si, c}] = 0;
          ++pb;
        }
      }
      v.pullback_size = pb;
      for (int c = 0; c < z.size(k); ++c) {
        auto key = boundary_restriction_key(z, k, c);
        auto it = sphere_index.find(key);
        if (it == sphere_index.end())
          throw Error("check_hypercover: cell boundary is not a sphere");
        ++hits[{it->second, f(k, c)}];
      }
      v.surjective = true;
      v.bijective = true;
      for (auto& [pk, h] : hits) {
        (void)pk;
        if (h == 0) v.surjective = false;
        if (h != 1) v.bijective = false;
      }
      v.bijective = v.bijective && v.surjective;
    }
    bool need_bij = (k == n);
    if ((need_bij && !v.bijective) || (!need_bij && !v.surjective)) {
      std::ostringstream os;
      os << "hypercover fails at k=" << k
         << (need_bij ? " (bijectivity)" : " (surjectivity)");
      if (rep.failure.empty()) rep.failure = os.str();
    }
    rep.levels.push_back(v);
  }
  rep.ok = rep.failure.empty();
  return rep;
}

Pullback2Groupoid pullback_2groupoid(const SSetPtr& x, const PullbackInput& in) {
  if (x->top_dim() < 2) throw Error("pullback_2groupoid: X needs top_dim >= 2");
  const int nz0 = static_cast<int>(in.z0_ids.size());
  const int nz1 = static_cast<int>(in.z1_ids.size());
  // f01 must commute with the level-0/1 structure maps.
  for (int e = 0; e < nz1; ++e) {
    if (x->face(1, 0, in.f1[e]) != in.f0[in.d0[e]] ||
        x->face(1, 1, in.f1[e]) != in.f0[in.d1[e]])
      throw Error("pullback_2groupoid: f does not commute with faces at " +
                  in.z1_ids[e]);
  }
  for (int v = 0; v < nz0; ++v)
    if (x->degeneracy(0, 0, in.f0[v]) != in.f1[in.s0[v]])
      throw Error("pullback_2groupoid: f does not commute with s0 at " + in.z0_ids[v]);

  FiniteSimplicialSet::Builder b(2);
  for (int v = 0; v < nz0; ++v) b.add_cell(0, in.z0_ids[v]);
  for (int e = 0; e < nz1; ++e)
    b.add_cell(1, in.z1_ids[e], {in.d0[e], in.d1[e]});

  // Z2 = spheres in Z lying over an actual X 2-cell.
  struct Cell2 {
    int e0, e1, e2, x2;
  };
  std::vector<Cell2> cells;
  std::map<std::array<int, 4>, int> index;
  std::vector<int> f2;
  for (int e0 = 0; e0 < nz1; ++e0)
    for (int e1 = 0; e1 < nz1; ++e1) {
      if (in.d0[e1] != in.d0[e0]) continue;  // d0 d1 = d0 d0
      for (int e2 = 0; e2 < nz1; ++e2) {
        if (in.d1[e2] != in.d1[e1]) continue;  // d1 d2 = d1 d1
        if (in.d0[e2] != in.d1[e0]) continue;  // d0 d2 = d1 d0
        for (int x2 = 0; x2 < x->size(2); ++x2) {
          if (x->face(2, 0, x2) != in.f1[e0] || x->face(2, 1, x2) != in.f1[e1] ||
              x->face(2, 2, x2) != in.f1[e2])
            continue;
          std::ostringstream id;
          id << "(" << in.z1_ids[e0] << "," << in.z1_ids[e1] << "," << in.z1_ids[e2]
             << ";" << x->id(2, x2) << ")";
          int idx = b.add_cell(2, id.str(), {e0, e1, e2});
          index[{e0, e1, e2, x2}] = idx;
          cells.push_back({e0, e1, e2, x2});
          f2.push_back(x2);
        }
      }
    }
  for (int v = 0; v < nz0; ++v) b.set_degeneracy(0, 0, v, in.s0[v]);
  for (int e = 0; e < nz1; ++e) {
    // s0(h) = (h, h, s0 d1 h; s0 f1 h), s1(h) = (s0 d0 h, h, h; s1 f1 h)
    auto need = [&](std::array<int, 4> key, const char* which) {
      auto it = index.find(key);
      if (it == index.end())
        throw Error(std::string("pullback_2groupoid: fiber product lacks the ") +
                    which + " degeneracy of " + in.z1_ids[e]);
      return it->second;
    };
    int s0h = need({e, e, in.s0[in.d1[e]], x->degeneracy(1, 0, in.f1[e])}, "s0");
    int s1h = need({in.s0[in.d0[e]], e, e, x->degeneracy(1, 1, in.f1[e])}, "s1");
    b.set_degeneracy(1, 0, e, s0h);
    b.set_degeneracy(1, 1, e, s1h);
  }
  Pullback2Groupoid out;
  out.z = b.finalize();
  out.f.source = out.z;
  out.f.target = x;
  out.f.assign.resize(3);
  out.f.assign[0] = in.f0;
  out.f.assign[1] = in.f1;
  out.f.assign[2] = f2;
  out.f.validate();
  return out;
}

MoritaLemmaReport check_morita_lemma_conditions(const MoritaLemmaInput& in) {
  MoritaLemmaReport rep;
  const auto& k = *in.f.source;
  const auto& y = *in.f.target;
  if (in.g1.size() != in.h1.size() || in.h1.size() != in.alpha.size())
    throw Error("check_morita_lemma_conditions: Z1 arrays differ in size");

  // (1) K0 ~ Y0 via f0
  {
    std::vector<int> hits(y.size(0), 0);
    for (int c = 0; c < k.size(0); ++c) ++hits[in.f(0, c)];
    rep.level0_bijective =
        k.size(0) == y.size(0) &&
        std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  }
  // (2) surjectivity of g1, h1
  {
    std::vector<bool> hk(k.size(1), false), hy(y.size(1), false);
    for (int z = 0; z < static_cast<int>(in.g1.size()); ++z) {
      hk[in.g1[z]] = true;
      hy[in.h1[z]] = true;
    }
    rep.g1_surjective = std::all_of(hk.begin(), hk.end(), [](bool b) { return b; });
    rep.h1_surjective = std::all_of(hy.begin(), hy.end(), [](bool b) { return b; });
  }
  // (3) f1 . g1 = alpha . h1 with alpha acting by post-composition on the
  // h1-edge: alpha(z) is a bigon from h1(z) to f1(g1(z)).
  {
    rep.alpha_compatible = true;
    bool alt_ok = true;
    for (size_t z = 0; z < in.alpha.size(); ++z) {
      int a = in.alpha[z];
      if (!y.is_degenerate(1, y.face(2, 2, a))) {
        rep.alpha_compatible = false;
        rep.notes.push_back("alpha image is not a bigon at Z1 element " +
                            std::to_string(z));
        break;
      }
      bool main = y.face(2, 0, a) == in.h1[z] &&
                  y.face(2, 1, a) == in.f(1, in.g1[z]);
      bool alt = y.face(2, 1, a) == in.h1[z] &&
                 y.face(2, 0, a) == in.f(1, in.g1[z]);
      if (!main) rep.alpha_compatible = false;
      if (!alt) alt_ok = false;
    }
    if (!rep.alpha_compatible && alt_ok)
      rep.notes.push_back(
          "alpha satisfies the opposite bigon-action convention (d0/d1 swapped)");
  }
  // (4) K2 -> hom(dD[2], K) x_{hom(dD[2], Y)} Y2 bijective
  {
    std::map<std::array<int, 3>, std::vector<int>> y_by_boundary;
    for (int c = 0; c < y.size(2); ++c)
      y_by_boundary[{y.face(2, 0, c), y.face(2, 1, c), y.face(2, 2, c)}].push_back(c);
    // spheres in K with compatible vertices
    std::map<std::array<int, 4>, long long> hits;
    long long pb = 0;
    for (int e0 = 0; e0 < k.size(1); ++e0)
      for (int e1 = 0; e1 < k.size(1); ++e1) {
        if (k.face(1, 0, e1) != k.face(1, 0, e0)) continue;
        for (int e2 = 0; e2 < k.size(1); ++e2) {
          if (k.face(1, 1, e2) != k.face(1, 1, e1)) continue;
          if (k.face(1, 0, e2) != k.face(1, 1, e0)) continue;
          auto it = y_by_boundary.find(
              {in.f(1, e0), in.f(1, e1), in.f(1, e2)});
          if (it == y_by_boundary.end()) continue;
          for (int c : it->second) {
            hits[{e0, e1, e2, c}] = 0;
            ++pb;
          }
        }
      }
    for (int c = 0; c < k.size(2); ++c) {
      std::array<int, 4> key{k.face(2, 0, c), k.face(2, 1, c), k.face(2, 2, c),
                             in.f(2, c)};
      auto it = hits.find(key);
      if (it == hits.end())
        throw Error("check_morita_lemma_conditions: f2 is not over the pullback");
      ++it->second;
    }
    rep.level2_bijective = true;
    for (auto& [key, h] : hits) {
      (void)key;
      if (h != 1) rep.level2_bijective = false;
    }
    if (k.size(2) != pb) rep.level2_bijective = false;
  }
  return rep;
}

LocalGroupoid extract_local_groupoid(const SSetPtr& x, const std::vector<int>& v_edges,
                                     const std::vector<int>& rank2) {
  if (x->top_dim() < 2) throw Error("extract_local_groupoid: need top_dim >= 2");
  auto rank_of = [&](int cell2) {
    return rank2.empty() ? 0 : rank2[cell2];
  };
  std::set<int> vset(v_edges.begin(), v_edges.end());
  // V must contain every identity edge s0(vertex).
  for (int v = 0; v < x->size(0); ++v)
    if (!vset.count(x->degeneracy(0, 0, v)))
      throw Error("extract_local_groupoid: V misses the identity edge of vertex " +
                  x->id(0, v));

  // filler search: 2-cells indexed by (d2, d0) and by (d2, d1)
  std::map<std::pair<int, int>, std::vector<int>> by_20, by_21;
  for (int z = 0; z < x->size(2); ++z) {
    by_20[{x->face(2, 2, z), x->face(2, 0, z)}].push_back(z);
    by_21[{x->face(2, 2, z), x->face(2, 1, z)}].push_back(z);
  }
  auto unique_min_rank = [&](std::vector<int> const* cands, const std::string& what) {
    if (!cands || cands->empty())
      throw Error("extract_local_groupoid: no filler for " + what);
    int best = -1, best_rank = 0;
    bool dup = false;
    for (int z : *cands) {
      int r = rank_of(z);
      if (best < 0 || r < best_rank) {
        best = z;
        best_rank = r;
        dup = false;
      } else if (r == best_rank) {
        dup = true;
      }
    }
    if (dup)
      throw Error("extract_local_groupoid: non-unique minimal-rank filler for " + what);
    return best;
  };

  // arrows: V edges plus every multiplication / inverse image
  std::map<int, int> arrow_of_edge;
  LocalGroupoid l;
  for (int v = 0; v < x->size(0); ++v) l.objects.push_back(x->id(0, v));
  auto add_arrow = [&](int edge, bool in_v) {
    auto it = arrow_of_edge.find(edge);
    if (it != arrow_of_edge.end()) return it->second;
    LocalGroupoid::Arrow a;
    a.id = x->id(1, edge);
    a.src = x->face(1, 0, edge);
    a.tgt = x->face(1, 1, edge);
    a.in_v = in_v;
    l.arrows.push_back(a);
    int idx = static_cast<int>(l.arrows.size()) - 1;
    arrow_of_edge[edge] = idx;
    return idx;
  };
  std::vector<int> v_sorted(v_edges);
  std::sort(v_sorted.begin(), v_sorted.end());
  for (int e : v_sorted) add_arrow(e, true);

  struct Prod {
    int g, h, result_edge;
  };
  std::vector<Prod> prods;
  std::vector<std::pair<int, int>> invs;  // (edge, inverse edge)
  for (int g : v_sorted)
    for (int h : v_sorted) {
      if (x->face(1, 0, g) != x->face(1, 1, h)) continue;  // src g = tgt h
      auto it = by_20.find({g, h});
      int z = unique_min_rank(it == by_20.end() ? nullptr : &it->second,
                              "pair (" + x->id(1, g) + ", " + x->id(1, h) + ")");
      prods.push_back({g, h, x->face(2, 1, z)});
    }
  for (int g : v_sorted) {
    int ident = x->degeneracy(0, 0, x->face(1, 1, g));  // s0(t(g))
    auto it = by_21.find({g, ident});
    int z = unique_min_rank(it == by_21.end() ? nullptr : &it->second,
                            "inverse of " + x->id(1, g));
    invs.push_back({g, x->face(2, 0, z)});
  }
  for (const auto& p : prods) add_arrow(p.result_edge, vset.count(p.result_edge) > 0);
  for (const auto& [g, gi] : invs) {
    (void)g;
    if (!vset.count(gi))
      throw Error("extract_local_groupoid: inverse leaves V at edge " + x->id(1, gi));
    add_arrow(gi, true);
  }

  const int na = static_cast<int>(l.arrows.size());
  l.compose.assign(na, std::vector<int>(na, -1));
  for (const auto& p : prods)
    l.compose[arrow_of_edge[p.g]][arrow_of_edge[p.h]] = arrow_of_edge[p.result_edge];
  l.identity.resize(x->size(0));
  for (int v = 0; v < x->size(0); ++v)
    l.identity[v] = arrow_of_edge[x->degeneracy(0, 0, v)];
  l.inverse.assign(na, -1);
  for (const auto& [g, gi] : invs) l.inverse[arrow_of_edge[g]] = arrow_of_edge[gi];
  l.validate();
  return l;
}

ZigZag make_zigzag(const SimplicialMap& left, const SimplicialMap& right, int n) {
  if (left.source.get() != right.source.get())
    throw Error("make_zigzag: the zig-zag legs must share Z");
  ZigZag z;
  z.left = left;
  z.right = right;
  z.left_report = check_hypercover(left, n);
  if (!z.left_report.ok)
    throw Error("make_zigzag: left leg is not a hypercover: " + z.left_report.failure);
  return z;
}

std::optional<std::vector<std::vector<int>>> compare_generalized_morphisms(
    const ZigZag& a, const ZigZag& b, long long budget) {
  const auto& za = *a.left.source;
  const auto& zb = *b.left.source;
  if (a.left.target.get() != b.left.target.get() ||
      a.right.target.get() != b.right.target.get())
    return std::nullopt;
  const int top = std::min(za.top_dim(), zb.top_dim());
  for (int n = 0; n <= top; ++n)
    if (za.size(n) != zb.size(n)) return std::nullopt;

  std::vector<std::vector<int>> phi(top + 1);
  long long nodes = 0;
  // level-by-level backtracking; each level must commute with faces (into the
  // previous level), both legs, and (after the next level is placed)
  // degeneracies.
  std::function<bool(int, int)> place = [&](int n, int c) -> bool {
    if (++nodes > budget) throw BudgetError("compare_generalized_morphisms: budget");
    if (n > top) return true;
    if (c == za.size(n)) return place(n + 1, 0);
    for (int t = 0; t < zb.size(n); ++t) {
      bool used = false;
      for (int c2 = 0; c2 < c; ++c2)
        if (phi[n][c2] == t) used = true;
      if (used) continue;
      bool ok = true;
      for (int i = 0; i <= n && ok && n >= 1; ++i)
        if (zb.face(n, i, t) != phi[n - 1][za.face(n, i, c)]) ok = false;
      if (ok && a.left(n, c) != b.left(n, t)) ok = false;
      if (ok && a.right(n, c) != b.right(n, t)) ok = false;
      if (ok && n >= 1)
        for (int i = 0; i < n && ok; ++i)
          for (int c2 = 0; c2 < za.size(n - 1) && ok; ++c2)
            if (za.degeneracy(n - 1, i, c2) == c &&
                zb.degeneracy(n - 1, i, phi[n - 1][c2]) != t)
              ok = false;
      if (!ok) continue;
      phi[n].push_back(t);
      if (place(n, c + 1)) return true;
      phi[n].pop_back();
    }
    return false;
  };
  for (int n = 0; n <= top; ++n) phi[n].reserve(za.size(n));
  if (!place(0, 0)) return std::nullopt;
  return phi;
}

}  // namespace kanforge
