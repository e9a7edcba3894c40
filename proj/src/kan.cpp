#include "kanforge/kan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace kanforge {

namespace {

std::string word_suffix(const std::vector<int>& word) {
  std::ostringstream os;
  os << ":s";
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) os << '-';
    os << word[i];
  }
  return os.str();
}

// Insert a degeneracy index into a strictly increasing EZ word:
// s_i s_b = s_{b+1} s_i for i <= b, so entries >= i get bumped.
std::vector<int> word_insert(const std::vector<int>& word, int i) {
  std::vector<int> out;
  size_t t = 0;
  while (t < word.size() && word[t] < i) out.push_back(word[t++]);
  out.push_back(i);
  while (t < word.size()) out.push_back(word[t++] + 1);
  return out;
}

// Mutable staging area for one pushout step.
struct StageBuild {
  int D;
  std::vector<std::vector<std::string>> ids;
  std::vector<std::vector<std::vector<int>>> face;   // face[n][i][c]
  std::vector<std::vector<std::vector<int>>> degen;  // degen[n][i][c]
  std::vector<std::vector<CellProvenance>> prov;
  // registry for degeneracies of new cells: (root id, word) -> (level, index)
  std::map<std::pair<std::string, std::vector<int>>, std::pair<int, int>> registry;
  // new nondegenerate roots and their degeneracy closure, per level
  struct NewCell {
    int index;
    std::string root_id;
    std::vector<int> word;  // empty for roots
  };
  std::vector<std::vector<NewCell>> fresh;

  explicit StageBuild(const FiniteSimplicialSet& prev) {
    D = prev.top_dim();
    ids.resize(D + 1);
    face.resize(D + 1);
    degen.resize(D + 1);
    prov.resize(D + 1);
    fresh.resize(D + 1);
    for (int n = 0; n <= D; ++n) {
      ids[n].resize(prev.size(n));
      prov[n].resize(prev.size(n));
      for (int c = 0; c < prev.size(n); ++c) ids[n][c] = prev.id(n, c);
      if (n >= 1) {
        face[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
          face[n][i].resize(prev.size(n));
          for (int c = 0; c < prev.size(n); ++c) face[n][i][c] = prev.face(n, i, c);
        }
      }
      if (n < D) {
        degen[n].resize(n + 1);
        for (int i = 0; i <= n; ++i) {
          degen[n][i].resize(prev.size(n));
          for (int c = 0; c < prev.size(n); ++c)
            degen[n][i][c] = prev.degeneracy(n, i, c);
        }
      }
    }
  }

  long long total_cells() const {
    long long t = 0;
    for (const auto& l : ids) t += static_cast<long long>(l.size());
    return t;
  }

  int add_cell(int level, const std::string& id, const std::vector<int>& faces,
               const CellProvenance& p) {
    int idx = static_cast<int>(ids[level].size());
    ids[level].push_back(id);
    prov[level].push_back(p);
    if (level >= 1)
      for (int i = 0; i <= level; ++i) face[level][i].push_back(faces[i]);
    if (level < D)
      for (int i = 0; i <= level; ++i) degen[level][i].push_back(-1);
    return idx;
  }

  int add_root(int level, const std::string& id, const std::vector<int>& faces,
               const CellProvenance& p) {
    int idx = add_cell(level, id, faces, p);
    fresh[level].push_back({idx, id, {}});
    registry[{id, {}}] = {level, idx};
    return idx;
  }

  // Degeneracy closure of all fresh roots up to D, plus their degeneracy
  // table entries. Children are generated in canonical EZ order so each
  // degenerate cell appears exactly once.
  void close_degeneracies(int stage_number) {
    for (int lvl = 1; lvl < D; ++lvl) {
      for (size_t fi = 0; fi < fresh[lvl].size(); ++fi) {
        NewCell d = fresh[lvl][fi];  // by value: fresh[lvl+1] grows below
        int last = d.word.empty() ? -1 : d.word.back();
        for (int i = last + 1; i <= lvl; ++i) {
          std::vector<int> w = d.word;
          w.push_back(i);
          std::vector<int> faces(lvl + 2);
          for (int m = 0; m <= lvl + 1; ++m) {
            if (m == i || m == i + 1) {
              faces[m] = d.index;
            } else if (m < i) {
              int fm = face[lvl][m][d.index];
              faces[m] = degen[lvl - 1][i - 1][fm];
            } else {
              int fm = face[lvl][m - 1][d.index];
              faces[m] = degen[lvl - 1][i][fm];
            }
            if (faces[m] < 0) throw Error("kan_step: degeneracy closure face unset");
          }
          CellProvenance p;
          p.role = CellProvenance::Role::degeneracy;
          p.stage = stage_number;
          p.base_id = d.root_id;
          int idx = add_cell(lvl + 1, d.root_id + word_suffix(w), faces, p);
          fresh[lvl + 1].push_back({idx, d.root_id, w});
          registry[{d.root_id, w}] = {lvl + 1, idx};
        }
      }
      // With level lvl+1 complete, fill the degeneracy entries of the fresh
      // cells at level lvl.
      for (const auto& d : fresh[lvl]) {
        for (int i = 0; i <= lvl; ++i) {
          auto it = registry.find({d.root_id, word_insert(d.word, i)});
          if (it == registry.end()) throw Error("kan_step: missing degeneracy image");
          degen[lvl][i][d.index] = it->second.second;
        }
      }
    }
    // Cells at level D have no degeneracy rows; nothing else to fill.
  }

  SSetPtr finalize() {
    FiniteSimplicialSet::Builder b(D);
    for (int n = 0; n <= D; ++n)
      for (size_t c = 0; c < ids[n].size(); ++c) {
        std::vector<int> fs;
        if (n >= 1) {
          fs.resize(n + 1);
          for (int i = 0; i <= n; ++i) fs[i] = face[n][i][c];
        }
        b.add_cell(n, ids[n][c], fs);
      }
    for (int n = 0; n < D; ++n)
      for (size_t c = 0; c < ids[n].size(); ++c)
        for (int i = 0; i <= n; ++i) b.set_degeneracy(n, i, static_cast<int>(c),
                                                      degen[n][i][c]);
    return b.finalize();
  }
};

// Positions (in the canonical generator order of Lambda[k,j]) of the cells
// needed to wire a free fill: all (k-1)-faces of Delta[k] except j, and the
// faces of the missing j-face.
struct HornWiring {
  SSetPtr horn_complex;
  std::vector<int> face_gen_pos;      // i != j: generator position of face i; -1 at j
  std::vector<int> missing_face_pos;  // positions of d_i(face_j), i = 0..k-1
  std::vector<int> edge_gen_pos;      // principal edges (i-1,i), i = 1..k
};

HornWiring horn_wiring(int k, int j) {
  HornWiring w;
  w.horn_complex = horn(k, j, k - 1);
  auto gens = generator_list(*w.horn_complex);
  auto pos_of = [&](int level, const std::string& id) {
    int cell = w.horn_complex->index_of(level, id);
    for (size_t p = 0; p < gens.size(); ++p)
      if (gens[p].first == level && gens[p].second == cell) return static_cast<int>(p);
    return -1;
  };
  MonotoneMap top{k, {}};
  top.values.resize(k + 1);
  std::iota(top.values.begin(), top.values.end(), 0);
  w.face_gen_pos.assign(k + 1, -1);
  for (int i = 0; i <= k; ++i) {
    if (i == j) continue;
    w.face_gen_pos[i] = pos_of(k - 1, top.face(i).id());
    if (w.face_gen_pos[i] < 0) throw Error("horn_wiring: face generator missing");
  }
  MonotoneMap fj = top.face(j);
  for (int i = 0; i <= k - 1; ++i) {
    int p = pos_of(k - 2, fj.face(i).id());
    if (p < 0) throw Error("horn_wiring: missing-face boundary generator missing");
    w.missing_face_pos.push_back(p);
  }
  for (int i = 1; i <= k; ++i) {
    MonotoneMap e{k, {i - 1, i}};
    int p = pos_of(1, e.id());
    if (p < 0) throw Error("horn_wiring: principal edge generator missing");
    w.edge_gen_pos.push_back(p);
  }
  return w;
}

}  // namespace

int FilteredSimplicialSet::stage_of(int level, int cell) const {
  return stages.back().prov[level][cell].stage;
}

KanStage kan_step_stage(const KanStage& prev, int stage_number, int k_max,
                        long long cell_budget) {
  const SSetPtr& x = prev.complex;
  const int D = x->top_dim();
  StageBuild sb(*x);
  // carry provenance forward
  for (int n = 0; n <= D; ++n)
    for (int c = 0; c < x->size(n); ++c) sb.prov[n][c] = prev.prov[n][c];

  KanStage out;
  // J = {Lambda[2,1]} u {Lambda[k,j] : k >= 3}; k-1 <= D so the missing face
  // is representable.
  std::vector<std::pair<int, int>> shapes;
  if (k_max >= 2 && D >= 1) shapes.push_back({2, 1});
  for (int k = 3; k <= k_max && k - 1 <= D; ++k)
    for (int j = 0; j <= k; ++j) shapes.push_back({k, j});

  for (auto [k, j] : shapes) {
    HornWiring w = horn_wiring(k, j);
    std::vector<std::vector<int>> tuples;
    visit_simplicial_maps(w.horn_complex, x,
                          [&](const std::vector<int>& t) { tuples.push_back(t); });
    for (long long idx = 0; idx < static_cast<long long>(tuples.size()); ++idx) {
      const auto& tuple = tuples[idx];
      std::ostringstream base;
      base << stage_number << "k" << k << "j" << j << "#" << idx;
      HornFill fill;
      fill.k = k;
      fill.j = j;
      fill.index = idx;
      fill.tuple = tuple;

      // missing face at level k-1
      std::vector<int> wfaces(k);
      for (int i = 0; i <= k - 1; ++i) wfaces[i] = tuple[w.missing_face_pos[i]];
      CellProvenance pw;
      pw.role = CellProvenance::Role::new_face;
      pw.stage = stage_number;
      pw.k = k;
      pw.j = j;
      pw.horn_index = idx;
      int wi = sb.add_root(k - 1, "F" + base.str(), wfaces, pw);
      fill.face_cell = wi;

      // top cell at level k (when representable)
      if (k <= D) {
        std::vector<int> tfaces(k + 1);
        for (int i = 0; i <= k; ++i)
          tfaces[i] = (i == j) ? wi : tuple[w.face_gen_pos[i]];
        CellProvenance pt = pw;
        pt.role = CellProvenance::Role::new_top;
        fill.top_cell = sb.add_root(k, "T" + base.str(), tfaces, pt);
      }
      out.fills.push_back(std::move(fill));
      if (sb.total_cells() > cell_budget)
        throw BudgetError("kan_step: cell budget exceeded at stage " +
                    std::to_string(stage_number));
    }
  }
  sb.close_degeneracies(stage_number);
  if (sb.total_cells() > cell_budget)
    throw BudgetError("kan_step: cell budget exceeded at stage " +
                std::to_string(stage_number));
  out.complex = sb.finalize();
  out.prov = std::move(sb.prov);
  return out;
}

namespace {

long long count_horn21(const FiniteSimplicialSet& x) {
  // |hom(Lambda[2,1], X)| = matched edge pairs (d0 e01 = d1 e12).
  std::map<int, long long> by_d0, by_d1;
  for (int e = 0; e < x.size(1); ++e) {
    by_d0[x.face(1, 0, e)]++;
    by_d1[x.face(1, 1, e)]++;
  }
  long long total = 0;
  for (const auto& [v, c] : by_d0) {
    auto it = by_d1.find(v);
    if (it != by_d1.end()) total += c * it->second;
  }
  return total;
}

std::vector<long long> probe_row(const FiniteSimplicialSet& x) {
  std::vector<long long> row;
  for (int n = 0; n <= std::min(2, x.top_dim()); ++n) row.push_back(x.size(n));
  row.push_back(count_horn21(x));
  return row;
}

}  // namespace

SSetPtr kan_step(const SSetPtr& x, int k_max, long long cell_budget) {
  auto rep = check_local_kan_properties(x);
  if (!rep.property_A_ok || !rep.property_B_ok)
    throw Error("kan_step: input fails Properties A/B");
  KanStage s0;
  s0.complex = x;
  s0.prov.resize(x->top_dim() + 1);
  for (int n = 0; n <= x->top_dim(); ++n) s0.prov[n].resize(x->size(n));
  return kan_step_stage(s0, 1, k_max, cell_budget).complex;
}

FilteredSimplicialSet kan_replace(const SSetPtr& x, int depth, int k_max,
                                  long long cell_budget, bool check_properties) {
  if (depth < 0) throw Error("kan_replace: depth must be >= 0");
  if (check_properties) {
    auto rep = check_local_kan_properties(x);
    if (!rep.property_A_ok || !rep.property_B_ok)
      throw Error("kan_replace: input fails Properties A/B");
  }
  FilteredSimplicialSet f;
  f.k_max = k_max;
  KanStage s0;
  s0.complex = x;
  s0.prov.resize(x->top_dim() + 1);
  for (int n = 0; n <= x->top_dim(); ++n) s0.prov[n].resize(x->size(n));
  f.stages.push_back(std::move(s0));
  f.probe_counts.push_back(probe_row(*x));
  for (int b = 1; b <= depth; ++b) {
    try {
      f.stages.push_back(kan_step_stage(f.stages.back(), b, k_max, cell_budget));
    } catch (const BudgetError&) {
      f.budget_exceeded = true;
      break;
    }
    f.probe_counts.push_back(probe_row(*f.stages.back().complex));
    // Stage inclusions must be literal prefixes.
    const auto& a = *f.stages[b - 1].complex;
    const auto& c = *f.stages[b].complex;
    for (int n = 0; n <= a.top_dim(); ++n)
      for (int cc = 0; cc < a.size(n); ++cc)
        if (a.id(n, cc) != c.id(n, cc))
          throw Error("kan_replace: stage inclusion is not a prefix");
  }
  return f;
}

TruncationResult truncate(const SSetPtr& x, int n, int D_out) {
  if (n < 1) throw Error("truncate: n must be >= 1");
  if (x->top_dim() < n + 1) throw Error("truncate: need top_dim >= n+1");
  if (D_out < n || D_out > n + 1) throw Error("truncate: D_out must be n or n+1");

  TruncationResult res;
  res.n = n;
  const int N = x->size(n);

  // union-find
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };

  // Fixpoint over the footnote relation, with the degenerate-face matching
  // conditions taken up to the evolving partition.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int z = 0; z < x->size(n + 1); ++z) {
      int p = x->face(n + 1, n, z);
      int q = x->face(n + 1, n + 1, z);
      if (find(p) == find(q)) continue;
      if (x->boundary(n, p) != x->boundary(n, q)) continue;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        int want = x->degeneracy(n - 1, n - 1, x->face(n, i, p));
        if (find(x->face(n + 1, i, z)) != find(want)) ok = false;
      }
      if (!ok) continue;
      parent[find(p)] = find(q);
      res.witnesses.push_back({p, q, z});
      changed = true;
    }
  }

  // Classes numbered by smallest member for determinism.
  std::map<int, int> class_id;
  res.class_of.resize(N);
  std::vector<std::pair<int, int>> reps;  // (smallest member, root)
  {
    std::map<int, int> smallest;
    for (int c = 0; c < N; ++c) {
      int r = find(c);
      auto it = smallest.find(r);
      if (it == smallest.end()) smallest[r] = c;
    }
    for (auto& [r, s] : smallest) reps.push_back({s, r});
    std::sort(reps.begin(), reps.end());
    for (size_t i = 0; i < reps.size(); ++i) class_id[reps[i].second] = static_cast<int>(i);
  }
  for (int c = 0; c < N; ++c) res.class_of[c] = class_id[find(c)];

  FiniteSimplicialSet::Builder b(D_out);
  for (int lvl = 0; lvl < n; ++lvl)
    for (int c = 0; c < x->size(lvl); ++c) {
      std::vector<int> fs;
      if (lvl >= 1) {
        fs.resize(lvl + 1);
        for (int i = 0; i <= lvl; ++i) fs[i] = x->face(lvl, i, c);
      }
      b.add_cell(lvl, x->id(lvl, c), fs);
    }
  for (size_t cls = 0; cls < reps.size(); ++cls) {
    int rep = reps[cls].first;
    std::vector<int> fs(n + 1);
    for (int i = 0; i <= n; ++i) fs[i] = x->face(n, i, rep);
    b.add_cell(n, "[" + x->id(n, rep) + "]", fs);
  }
  // degeneracies below level n
  for (int lvl = 0; lvl + 1 < n; ++lvl)
    for (int c = 0; c < x->size(lvl); ++c)
      for (int i = 0; i <= lvl; ++i)
        b.set_degeneracy(lvl, i, c, x->degeneracy(lvl, i, c));
  if (n >= 1)
    for (int c = 0; c < x->size(n - 1); ++c)
      for (int i = 0; i <= n - 1; ++i)
        b.set_degeneracy(n - 1, i, c, res.class_of[x->degeneracy(n - 1, i, c)]);

  if (D_out == n + 1) {
    // Descended spheres: one level-(n+1) cell per realized tuple of face
    // classes.
    std::map<std::vector<int>, int> sphere_index;
    res.sphere_of.resize(x->size(n + 1));
    std::vector<std::vector<int>> sphere_keys;
    for (int z = 0; z < x->size(n + 1); ++z) {
      std::vector<int> key(n + 2);
      for (int i = 0; i <= n + 1; ++i) key[i] = res.class_of[x->face(n + 1, i, z)];
      auto it = sphere_index.find(key);
      if (it == sphere_index.end()) {
        it = sphere_index.emplace(key, static_cast<int>(sphere_keys.size())).first;
        sphere_keys.push_back(key);
      }
      res.sphere_of[z] = it->second;
    }
    for (size_t s = 0; s < sphere_keys.size(); ++s) {
      std::ostringstream id;
      id << "sph";
      for (int f : sphere_keys[s]) id << "." << f;
      b.add_cell(n + 1, id.str(), sphere_keys[s]);
    }
    for (size_t cls = 0; cls < reps.size(); ++cls) {
      int rep = reps[cls].first;
      for (int i = 0; i <= n; ++i)
        b.set_degeneracy(n, i, static_cast<int>(cls),
                         res.sphere_of[x->degeneracy(n, i, rep)]);
    }
  }
  res.quotient = b.finalize();
  return res;
}

void check_truncation_kan_bang(TruncationResult& t) {
  t.kan_bang.clear();
  const SSetPtr& q = t.quotient;
  if (q->top_dim() != t.n + 1)
    throw Error("check_truncation_kan_bang: quotient lacks level n+1");
  for (int j = 0; j <= t.n + 1; ++j) {
    auto rep = check_horn_filling(q, t.n + 1, j);
    TruncationResult::KanBangReport r;
    r.j = j;
    r.surjective = rep.restriction_surjective;
    r.unique = rep.restriction_bijective;
    if (!rep.witness_misses.empty()) r.detail = rep.witness_misses[0];
    t.kan_bang.push_back(std::move(r));
  }
}

namespace {

struct BaseNerve {
  const FiniteSimplicialSet& base;
  // arrow index of a level-1 cell and back
  std::vector<int> arrow_of_edge;   // edge cell -> arrow
  std::vector<int> edge_of_arrow;   // arrow -> edge cell
  std::function<int(int, int)> compose;  // arrow x arrow -> arrow or -1
  std::function<std::string(const std::vector<int>&)> string_id;  // arrows -> cell id
};

WordEvaluation evaluate_words_impl(const FilteredSimplicialSet& f, const BaseNerve& bn) {
  const SSetPtr base = f.stages[0].complex;
  const int depth = f.depth();
  // per stage: assignment arrays into the base complex
  std::vector<std::vector<std::vector<int>>> eval(depth + 1);
  {
    auto& e0 = eval[0];
    e0.resize(base->top_dim() + 1);
    for (int n = 0; n <= base->top_dim(); ++n) {
      e0[n].resize(base->size(n));
      std::iota(e0[n].begin(), e0[n].end(), 0);
    }
  }
  std::map<std::pair<int, int>, HornWiring> wirings;
  for (int b = 1; b <= depth; ++b) {
    const KanStage& st = f.stages[b];
    const SSetPtr& cx = st.complex;
    auto& ev = eval[b];
    ev = eval[b - 1];
    for (int n = 0; n <= cx->top_dim(); ++n) ev[n].resize(cx->size(n), -2);

    for (const auto& fill : st.fills) {
      auto wit = wirings.find({fill.k, fill.j});
      if (wit == wirings.end())
        wit = wirings.emplace(std::make_pair(fill.k, fill.j),
                              horn_wiring(fill.k, fill.j)).first;
      const HornWiring& w = wit->second;
      // Evaluate the principal edges through the previous stage.
      std::vector<int> arrows(fill.k, -1);
      bool ok = true;
      for (int i = 0; i < fill.k; ++i) {
        int prev_edge = fill.tuple[w.edge_gen_pos[i]];
        int base_edge = eval[b - 1][1][prev_edge];
        if (base_edge < 0) {
          ok = false;
          break;
        }
        arrows[i] = bn.arrow_of_edge[base_edge];
      }
      int sigma = -1;
      if (ok) {
        sigma = base->index_of(fill.k, bn.string_id(arrows));
        ok = sigma >= 0;
      }
      if (fill.face_cell >= 0)
        ev[fill.k - 1][fill.face_cell] = ok ? base->face(fill.k, fill.j, sigma) : -1;
      if (fill.top_cell >= 0) ev[fill.k][fill.top_cell] = ok ? sigma : -1;
    }
    // Degeneracies of new cells, resolved through normal forms.
    for (int n = 0; n <= cx->top_dim(); ++n)
      for (int c = 0; c < cx->size(n); ++c) {
        if (ev[n][c] != -2) continue;
        const NormalForm& nf = cx->normal_form(n, c);
        if (!nf.degenerate())
          throw Error("evaluate_words: unassigned nondegenerate cell " + cx->id(n, c));
        int core = ev[nf.core_level][nf.core_index];
        ev[n][c] = core < 0 ? -1 : base->apply_word(nf.core_level, core, nf.word);
      }
  }

  WordEvaluation out;
  out.map.source = f.final_complex();
  out.map.target = base;
  out.map.assign = eval[depth];
  const SSetPtr& cx = f.final_complex();
  out.defined.resize(cx->top_dim() + 1);
  for (int n = 0; n <= cx->top_dim(); ++n) {
    out.defined[n].resize(cx->size(n));
    for (int c = 0; c < cx->size(n); ++c) {
      out.defined[n][c] = out.map.assign[n][c] >= 0;
      if (!out.defined[n][c]) {
        out.total = false;
        ++out.undefined_cells;
      }
    }
  }
  // Exhaustive simplicial-map check where defined.
  for (int n = 1; n <= cx->top_dim(); ++n)
    for (int c = 0; c < cx->size(n); ++c) {
      if (!out.defined[n][c]) continue;
      for (int i = 0; i <= n; ++i) {
        int sf = cx->face(n, i, c);
        if (out.defined[n - 1][sf] &&
            out.map.assign[n - 1][sf] != base->face(n, i, out.map.assign[n][c]))
          throw Error("evaluate_words: face compatibility fails at " + cx->id(n, c));
      }
    }
  for (int n = 0; n < cx->top_dim(); ++n)
    for (int c = 0; c < cx->size(n); ++c) {
      if (!out.defined[n][c]) continue;
      for (int i = 0; i <= n; ++i) {
        int sc = cx->degeneracy(n, i, c);
        if (out.defined[n + 1][sc] &&
            out.map.assign[n + 1][sc] != base->degeneracy(n, i, out.map.assign[n][c]))
          throw Error("evaluate_words: degeneracy compatibility fails at " + cx->id(n, c));
      }
    }
  return out;
}

}  // namespace

WordEvaluation evaluate_words(const FilteredSimplicialSet& f, const FiniteGroupoid& g) {
  const SSetPtr base = f.stages[0].complex;
  BaseNerve bn{*base, {}, {}, {}, {}};
  bn.arrow_of_edge.resize(base->size(1), -1);
  bn.edge_of_arrow.resize(g.arrows.size(), -1);
  for (size_t a = 0; a < g.arrows.size(); ++a) {
    int e = base->index_of(1, g.arrows[a].id);
    if (e < 0) throw Error("evaluate_words: base is not the nerve of this groupoid");
    bn.arrow_of_edge[e] = static_cast<int>(a);
    bn.edge_of_arrow[a] = e;
  }
  bn.compose = [&g](int a, int c) { return g.compose[a][c]; };
  bn.string_id = [&g](const std::vector<int>& arrows) {
    std::ostringstream os;
    for (size_t i = 0; i < arrows.size(); ++i) {
      if (i) os << '|';
      os << g.arrows[arrows[i]].id;
    }
    return os.str();
  };
  auto out = evaluate_words_impl(f, bn);
  if (!out.total) throw Error("evaluate_words: groupoid evaluation must be total");
  return out;
}

WordEvaluation evaluate_words(const FilteredSimplicialSet& f, const LocalGroupoid& l) {
  const SSetPtr base = f.stages[0].complex;
  BaseNerve bn{*base, {}, {}, {}, {}};
  bn.arrow_of_edge.resize(base->size(1), -1);
  bn.edge_of_arrow.resize(l.arrows.size(), -1);
  for (size_t a = 0; a < l.arrows.size(); ++a) {
    if (!l.arrows[a].in_v) continue;
    int e = base->index_of(1, l.arrows[a].id);
    if (e < 0)
      throw Error("evaluate_words: base is not the local nerve of this local groupoid");
    bn.arrow_of_edge[e] = static_cast<int>(a);
    bn.edge_of_arrow[a] = e;
  }
  bn.compose = [&l](int a, int c) { return l.compose_at(a, c); };
  bn.string_id = [&l](const std::vector<int>& arrows) {
    std::ostringstream os;
    for (size_t i = 0; i < arrows.size(); ++i) {
      if (i) os << '|';
      os << l.arrows[arrows[i]].id;
    }
    return os.str();
  };
  return evaluate_words_impl(f, bn);
}

}  // namespace kanforge
