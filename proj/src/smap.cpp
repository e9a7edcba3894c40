#include "kanforge/smap.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace kanforge {

void SimplicialMap::validate() const {
  const int top = shared_top();
  if (top < 0) throw Error("SimplicialMap: empty assignment");
  for (int n = 0; n <= top; ++n) {
    if (static_cast<int>(assign[n].size()) != source->size(n))
      throw Error("SimplicialMap: level " + std::to_string(n) + " size mismatch");
    for (int c : assign[n])
      if (c < 0 || c >= target->size(n))
        throw Error("SimplicialMap: assignment out of range at level " +
                    std::to_string(n));
  }
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i)
      for (int c = 0; c < source->size(n); ++c)
        if (assign[n - 1][source->face(n, i, c)] !=
            target->face(n, i, assign[n][c])) {
          std::ostringstream os;
          os << "SimplicialMap: does not commute with d" << i << " at level " << n
             << " cell " << source->id(n, c);
          throw Error(os.str());
        }
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i)
      for (int c = 0; c < source->size(n); ++c)
        if (assign[n + 1][source->degeneracy(n, i, c)] !=
            target->degeneracy(n, i, assign[n][c])) {
          std::ostringstream os;
          os << "SimplicialMap: does not commute with s" << i << " at level " << n
             << " cell " << source->id(n, c);
          throw Error(os.str());
        }
}

SimplicialMap identity_map(const SSetPtr& x) {
  SimplicialMap f;
  f.source = f.target = x;
  f.assign.resize(x->top_dim() + 1);
  for (int n = 0; n <= x->top_dim(); ++n) {
    f.assign[n].resize(x->size(n));
    for (int c = 0; c < x->size(n); ++c) f.assign[n][c] = c;
  }
  return f;
}

std::vector<std::pair<int, int>> generator_list(const FiniteSimplicialSet& a) {
  std::vector<std::pair<int, int>> gens;
  for (int n = 0; n <= a.top_dim(); ++n)
    for (int c = 0; c < a.size(n); ++c)
      if (!a.is_degenerate(n, c)) gens.emplace_back(n, c);
  return gens;
}

namespace {

struct HomSearch {
  const FiniteSimplicialSet& a;
  const FiniteSimplicialSet& x;
  std::vector<std::pair<int, int>> gens;  // canonical (level, index) order
  std::vector<size_t> order;              // search order -> canonical position
  // image[n][cell] for nondegenerate source cells (-1 = unassigned)
  std::vector<std::vector<int>> image;
  std::vector<std::map<std::vector<int>, std::vector<int>>> by_boundary;

  HomSearch(const FiniteSimplicialSet& a_, const FiniteSimplicialSet& x_)
      : a(a_), x(x_) {
    gens = generator_list(a);
    for (const auto& [n, c] : gens) {
      (void)c;
      if (n > x.top_dim())
        throw Error("simplicial_maps: source generated above target top_dim (level " +
                    std::to_string(n) + ")");
    }
    image.resize(a.top_dim() + 1);
    for (int n = 0; n <= a.top_dim(); ++n) image[n].assign(a.size(n), -1);
    by_boundary.resize(x.top_dim() + 1);
    int max_gen_level = 0;
    for (const auto& g : gens) max_gen_level = std::max(max_gen_level, g.first);
    for (int n = 1; n <= std::min(max_gen_level, x.top_dim()); ++n)
      by_boundary[n] = x.cells_by_boundary(n);
    plan_order();
  }

  // Search order: vertices first, then greedily any generator of level >= 2
  // whose whole boundary is already determined (its constraint prunes), and
  // only when none is ready the next level-1 generator. Emission tuples stay
  // in canonical generator order.
  void plan_order() {
    const size_t m = gens.size();
    std::vector<bool> done(m, false);
    std::vector<std::vector<size_t>> gen_at(a.top_dim() + 1);
    std::map<std::pair<int, int>, size_t> pos;
    for (size_t k = 0; k < m; ++k) {
      gen_at[gens[k].first].push_back(k);
      pos[gens[k]] = k;
    }
    auto ready = [&](size_t k) {
      auto [n, c] = gens[k];
      for (int i = 0; i <= n; ++i) {
        const NormalForm& f = a.normal_form(n - 1, a.face(n, i, c));
        if (!done[pos.at({f.core_level, f.core_index})]) return false;
      }
      return true;
    };
    for (size_t k : gen_at[0]) {
      order.push_back(k);
      done[k] = true;
    }
    size_t next_edge = 0;
    while (order.size() < m) {
      bool took = false;
      for (int n = 2; n <= a.top_dim() && !took; ++n)
        for (size_t k : gen_at[n]) {
          if (done[k] || !ready(k)) continue;
          order.push_back(k);
          done[k] = true;
          took = true;
          break;
        }
      if (took) continue;
      while (next_edge < gen_at[1].size() && done[gen_at[1][next_edge]]) ++next_edge;
      if (next_edge < gen_at[1].size()) {
        size_t k = gen_at[1][next_edge];
        order.push_back(k);
        done[k] = true;
      } else {
        throw Error("simplicial_maps: generator ordering stuck");
      }
    }
  }

  // Image of an arbitrary source cell, resolving degeneracies through the
  // normal form; valid once all lower-level generators are assigned.
  int image_of(int n, int cell) const {
    const NormalForm& f = a.normal_form(n, cell);
    int core = image[f.core_level][f.core_index];
    if (core < 0) return -1;
    return f.word.empty() ? core : x.apply_word(f.core_level, core, f.word);
  }

  void run(const std::function<void(const std::vector<int>&)>& emit) {
    std::vector<int> tuple(gens.size(), -1);
    rec(0, tuple, emit);
  }

  void rec(size_t step, std::vector<int>& tuple,
           const std::function<void(const std::vector<int>&)>& emit) {
    if (step == order.size()) {
      emit(tuple);
      return;
    }
    size_t k = order[step];
    auto [n, c] = gens[k];
    if (n == 0) {
      for (int t = 0; t < x.size(0); ++t) {
        image[0][c] = t;
        tuple[k] = t;
        rec(step + 1, tuple, emit);
      }
      image[0][c] = -1;
      return;
    }
    std::vector<int> want(n + 1);
    for (int i = 0; i <= n; ++i) want[i] = image_of(n - 1, a.face(n, i, c));
    auto it = by_boundary[n].find(want);
    if (it == by_boundary[n].end()) return;
    for (int t : it->second) {
      image[n][c] = t;
      tuple[k] = t;
      rec(step + 1, tuple, emit);
    }
    image[n][c] = -1;
  }

  SimplicialMap materialize() const {
    SimplicialMap f;
    const int top = std::min(a.top_dim(), x.top_dim());
    f.assign.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      f.assign[n].resize(a.size(n));
      for (int c = 0; c < a.size(n); ++c) f.assign[n][c] = image_of(n, c);
    }
    return f;
  }
};

}  // namespace

void visit_simplicial_maps(const SSetPtr& a, const SSetPtr& x,
                           const std::function<void(const std::vector<int>&)>& visit) {
  HomSearch hs(*a, *x);
  // Collect and re-emit sorted so callers see tuples in lexicographic order
  // of the canonical generator list, independent of the search plan.
  std::vector<std::vector<int>> tuples;
  hs.run([&](const std::vector<int>& t) { tuples.push_back(t); });
  std::sort(tuples.begin(), tuples.end());
  for (const auto& t : tuples) visit(t);
}

std::vector<SimplicialMap> simplicial_maps(const SSetPtr& a, const SSetPtr& x) {
  HomSearch hs(*a, *x);
  std::vector<std::pair<std::vector<int>, SimplicialMap>> collected;
  hs.run([&](const std::vector<int>& t) {
    SimplicialMap f = hs.materialize();
    f.source = a;
    f.target = x;
    collected.emplace_back(t, std::move(f));
  });
  std::sort(collected.begin(), collected.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<SimplicialMap> out;
  out.reserve(collected.size());
  for (auto& p : collected) out.push_back(std::move(p.second));
  return out;
}

long long count_simplicial_maps(const SSetPtr& a, const SSetPtr& x) {
  HomSearch hs(*a, *x);
  long long n = 0;
  hs.run([&](const std::vector<int>&) { ++n; });
  return n;
}

std::vector<int> horn_restriction_key(const FiniteSimplicialSet& x, int m, int j,
                                      int cell) {
  // Horn generators are the strictly increasing monotone maps into [m] whose
  // image misses some vertex != j; enumerate them in the same (level, lex)
  // order the hom-set search uses, and evaluate each as an iterated face of
  // the given m-cell (delete complement indices from the top down).
  std::vector<int> key;
  for (int n = 0; n <= m - 1; ++n) {
    for (const auto& f : monotone_maps(n, m)) {
      if (!f.nondegenerate()) continue;
      std::vector<bool> hit(m + 1, false);
      for (int v : f.values) hit[v] = true;
      bool in_horn = false;
      for (int v = 0; v <= m; ++v)
        if (v != j && !hit[v]) in_horn = true;
      if (!in_horn) continue;
      std::vector<int> del;
      for (int v = m; v >= 0; --v)
        if (!hit[v]) del.push_back(v);
      key.push_back(x.apply_faces(m, cell, del));
    }
  }
  return key;
}

KanReport check_horn_filling(const SSetPtr& x, int m, int j, std::size_t miss_cap) {
  if (m < 1 || j < 0 || j > m) throw Error("check_horn_filling: bad (m,j)");
  if (m > x->top_dim()) throw Error("check_horn_filling: m exceeds top_dim");
  KanReport rep;
  rep.m = m;
  rep.j = j;
  rep.cell_count = x->size(m);

  SSetPtr h = horn(m, j, m - 1);
  std::map<std::vector<int>, long long> horn_maps;
  visit_simplicial_maps(h, x, [&](const std::vector<int>& tuple) {
    horn_maps[tuple] = 0;
  });
  rep.horn_count = static_cast<long long>(horn_maps.size());

  bool injective = true;
  for (int c = 0; c < x->size(m); ++c) {
    auto key = horn_restriction_key(*x, m, j, c);
    auto it = horn_maps.find(key);
    if (it == horn_maps.end())
      throw Error("check_horn_filling: restriction left the horn hom-set");
    if (++it->second > 1) injective = false;
  }
  rep.restriction_surjective = true;
  for (const auto& [key, hits] : horn_maps) {
    if (hits > 0) continue;
    rep.restriction_surjective = false;
    if (rep.witness_misses.size() < miss_cap) {
      std::ostringstream os;
      os << "horn(" << m << "," << j << ")[";
      for (size_t i = 0; i < key.size(); ++i) {
        if (i) os << ",";
        os << key[i];
      }
      os << "]";
      rep.witness_misses.push_back(os.str());
    }
  }
  rep.restriction_bijective = rep.restriction_surjective && injective;
  return rep;
}

NGroupoidVerdict classify_n_groupoid(const SSetPtr& x, int n_max) {
  NGroupoidVerdict v;
  const int D = x->top_dim();
  std::vector<std::vector<bool>> bij(D + 1);
  for (int m = 1; m <= D; ++m) {
    bij[m].resize(m + 1, false);
    for (int j = 0; j <= m; ++j) {
      KanReport r = check_horn_filling(x, m, j);
      if (!r.restriction_surjective && v.failure.empty()) {
        std::ostringstream os;
        os << "Kan(" << m << "," << j << ") fails: "
           << (r.witness_misses.empty() ? "unfilled horn" : r.witness_misses[0]);
        v.failure = os.str();
      }
      bij[m][j] = r.restriction_bijective;
      v.reports.push_back(std::move(r));
    }
  }
  if (!v.failure.empty()) return v;
  for (int n = 0; n <= n_max; ++n) {
    bool ok = true;
    for (int m = n + 1; m <= D && ok; ++m)
      for (int j = 0; j <= m && ok; ++j)
        if (!bij[m][j]) ok = false;
    if (ok) {
      v.ok = true;
      v.n = n;
      return v;
    }
  }
  std::ostringstream os;
  os << "Kan!(m,j) fails for every n <= " << n_max;
  v.failure = os.str();
  return v;
}

}  // namespace kanforge
