#include "kanforge/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "kanforge/groupoid.hpp"
#include "kanforge/kan.hpp"
#include "kanforge/smap.hpp"

namespace kanforge {

void FiniteGroupTable::validate() const {
  if (order <= 0) throw Error("group table: empty");
  for (int a = 0; a < order; ++a) {
    if (mul[identity][a] != a || mul[a][identity] != a)
      throw Error("group table: identity law fails");
    if (mul[inverse[a]][a] != identity || mul[a][inverse[a]] != identity)
      throw Error("group table: inverse law fails");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw Error("group table: associativity fails");
}

int FiniteGroupTable::element_order(int a) const {
  int e = a, n = 1;
  while (e != identity) {
    e = mul[e][a];
    ++n;
    if (n > order) throw Error("group table: order computation diverged");
  }
  return n;
}

namespace {

// Column layout for coset tables: 2*g columns, generator i forward at 2i,
// inverse at 2i+1.
int col_of(int signed_gen) {
  return signed_gen > 0 ? 2 * (signed_gen - 1) : 2 * (-signed_gen - 1) + 1;
}
int col_inv(int col) { return col ^ 1; }

struct CosetTable {
  int ncols;
  std::vector<std::vector<int>> row;  // -1 unknown
  std::vector<int> parent;            // union-find for coincidences
  std::queue<std::pair<int, int>> coincidences;
  int live = 0;
  int cap;

  explicit CosetTable(int ncols_, int cap_) : ncols(ncols_), cap(cap_) {
    new_coset();
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  int new_coset() {
    if (static_cast<int>(row.size()) >= cap)
      throw BudgetError("coset enumeration exceeded cap");
    row.push_back(std::vector<int>(ncols, -1));
    parent.push_back(static_cast<int>(row.size()) - 1);
    ++live;
    return static_cast<int>(row.size()) - 1;
  }
  void set(int a, int c, int b) {
    a = find(a);
    b = find(b);
    int cur = row[a][c] < 0 ? -1 : find(row[a][c]);
    if (cur == b) {
      row[a][c] = b;
    } else if (cur < 0) {
      row[a][c] = b;
    } else {
      coincidences.push({cur, b});
    }
    int back = row[b][col_inv(c)] < 0 ? -1 : find(row[b][col_inv(c)]);
    if (back < 0)
      row[b][col_inv(c)] = a;
    else if (back != a)
      coincidences.push({back, a});
    process();
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    --live;
    for (int c = 0; c < ncols; ++c) {
      if (row[b][c] < 0) continue;
      int t = find(row[b][c]);
      if (row[a][c] < 0) {
        row[a][c] = t;
        // back-pointer
        if (row[t][col_inv(c)] < 0)
          row[t][col_inv(c)] = a;
        else if (find(row[t][col_inv(c)]) != a)
          coincidences.push({find(row[t][col_inv(c)]), a});
      } else if (find(row[a][c]) != t) {
        coincidences.push({find(row[a][c]), t});
      }
    }
  }
  void process() {
    while (!coincidences.empty()) {
      auto [a, b] = coincidences.front();
      coincidences.pop();
      merge(a, b);
    }
  }
  int step(int a, int c) {
    a = find(a);
    return row[a][c] < 0 ? -1 : find(row[a][c]);
  }
};

}  // namespace

EnumeratedGroup enumerate_presentation(const GroupPresentation& p, int coset_cap) {
  const int g = static_cast<int>(p.generator_names.size());
  if (g == 0) {
    EnumeratedGroup out;
    out.table.order = 1;
    out.table.mul = {{0}};
    out.table.identity = 0;
    out.table.inverse = {0};
    return out;
  }
  CosetTable t(2 * g, coset_cap);

  auto scan = [&](int coset, const std::vector<int>& word) {
    // relator scans: trace the word, defining cosets as needed, and close.
    int cur = t.find(coset);
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      int c = col_of(word[i]);
      int nxt = t.step(cur, c);
      if (nxt < 0) {
        nxt = t.new_coset();
        t.set(cur, c, nxt);
        nxt = t.find(nxt);
      }
      cur = t.find(nxt);
    }
    if (!word.empty()) t.set(cur, col_of(word.back()), t.find(coset));
  };

  // HLT main loop: passes of relator scans plus entry filling, repeated until
  // a pass changes nothing (no new cosets, no merges, no new entries).
  auto signature = [&]() {
    long long defined = 0;
    for (int a = 0; a < static_cast<int>(t.row.size()); ++a) {
      if (t.find(a) != a) continue;
      for (int c = 0; c < t.ncols; ++c)
        if (t.step(a, c) >= 0) ++defined;
    }
    return std::make_pair(static_cast<long long>(t.row.size()) * 1000003 + t.live,
                          defined);
  };
  while (true) {
    auto before = signature();
    for (int a = 0; a < static_cast<int>(t.row.size()); ++a) {
      if (t.find(a) != a) continue;
      for (const auto& w : p.relators) scan(a, w);
      if (t.find(a) != a) continue;
      for (int c = 0; c < t.ncols; ++c)
        if (t.step(a, c) < 0) {
          int b = t.new_coset();
          t.set(a, c, b);
        }
    }
    bool complete = true;
    for (int a = 0; a < static_cast<int>(t.row.size()) && complete; ++a) {
      if (t.find(a) != a) continue;
      for (int c = 0; c < t.ncols; ++c)
        if (t.step(a, c) < 0) complete = false;
    }
    if (complete && signature() == before) break;
  }

  // Compact live cosets.
  std::map<int, int> index;
  for (int a = 0; a < static_cast<int>(t.row.size()); ++a)
    if (t.find(a) == a) index.emplace(a, static_cast<int>(index.size()));
  const int n = static_cast<int>(index.size());

  // Representative word (as column sequence) per coset via BFS from identity.
  std::vector<std::vector<int>> word(n);
  std::vector<bool> seen(n, false);
  std::queue<int> bfs;
  int id0 = index.at(t.find(0));
  seen[id0] = true;
  bfs.push(t.find(0));
  while (!bfs.empty()) {
    int a = bfs.front();
    bfs.pop();
    for (int c = 0; c < t.ncols; ++c) {
      int b = t.step(a, c);
      if (b < 0) throw Error("coset table incomplete after enumeration");
      int ib = index.at(b);
      if (!seen[ib]) {
        seen[ib] = true;
        word[ib] = word[index.at(a)];
        word[ib].push_back(c);
        bfs.push(b);
      }
    }
  }

  EnumeratedGroup out;
  out.table.order = n;
  out.table.mul.assign(n, std::vector<int>(n, -1));
  for (int a0 = 0; a0 < static_cast<int>(t.row.size()); ++a0) {
    if (t.find(a0) != a0) continue;
    int ia = index.at(a0);
    for (int b = 0; b < n; ++b) {
      int cur = a0;
      for (int c : word[b]) cur = t.step(cur, c);
      out.table.mul[ia][b] = index.at(cur);
    }
  }
  out.table.identity = id0;
  out.table.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (out.table.mul[a][b] == id0) out.table.inverse[a] = b;
  out.table.validate();
  out.generator_element.resize(g);
  for (int i = 0; i < g; ++i) {
    int b = t.step(t.find(0), 2 * i);
    out.generator_element[i] = index.at(b);
  }
  return out;
}

FiniteGroupTable group_table(const FiniteGroupoid& g) {
  if (g.objects.size() != 1) throw Error("group_table: groupoid must have one object");
  FiniteGroupTable t;
  t.order = static_cast<int>(g.arrows.size());
  t.mul = g.compose;
  t.identity = g.identity[0];
  t.inverse = g.inverse;
  t.validate();
  return t;
}

std::optional<std::vector<int>> group_isomorphism(const FiniteGroupTable& a,
                                                  const FiniteGroupTable& b,
                                                  long long budget) {
  if (a.order != b.order) return std::nullopt;
  const int n = a.order;
  // Greedy generating set of a.
  std::vector<int> gens;
  std::vector<bool> in_closure(n, false);
  auto closure = [&](const std::vector<int>& gs) {
    std::fill(in_closure.begin(), in_closure.end(), false);
    in_closure[a.identity] = true;
    std::queue<int> q;
    q.push(a.identity);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int g : gs) {
        int y = a.mul[x][g];
        if (!in_closure[y]) {
          in_closure[y] = true;
          q.push(y);
        }
      }
    }
    return static_cast<int>(std::count(in_closure.begin(), in_closure.end(), true));
  };
  int covered = closure(gens);
  while (covered < n) {
    for (int x = 0; x < n; ++x)
      if (!in_closure[x]) {
        gens.push_back(x);
        break;
      }
    covered = closure(gens);
  }
  // Backtrack over generator images with element-order pruning.
  std::vector<int> img(gens.size(), -1);
  long long nodes = 0;
  std::vector<int> phi(n, -1);
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (++nodes > budget) throw BudgetError("group_isomorphism: budget exceeded");
    if (k == gens.size()) {
      // Build phi on all of a by BFS words in the generators; verify.
      std::fill(phi.begin(), phi.end(), -1);
      phi[a.identity] = b.identity;
      std::queue<int> q;
      q.push(a.identity);
      while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (size_t i = 0; i < gens.size(); ++i) {
          int y = a.mul[x][gens[i]];
          int py = b.mul[phi[x]][img[i]];
          if (phi[y] < 0) {
            phi[y] = py;
            q.push(y);
          } else if (phi[y] != py) {
            return false;
          }
        }
      }
      std::vector<bool> hit(n, false);
      for (int x = 0; x < n; ++x) {
        if (phi[x] < 0 || hit[phi[x]]) return false;
        hit[phi[x]] = true;
      }
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (phi[a.mul[x][y]] != b.mul[phi[x]][phi[y]]) return false;
      return true;
    }
    int want = a.element_order(gens[k]);
    for (int c = 0; c < n; ++c) {
      if (b.element_order(c) != want) continue;
      img[k] = c;
      if (rec(k + 1)) return true;
    }
    img[k] = -1;
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return phi;
}

Pi0Result pi0(const FiniteSimplicialSet& x, int basepoint) {
  if (basepoint < 0 || basepoint >= x.size(0)) throw Error("pi0: bad basepoint");
  Pi0Result r;
  const int nv = x.size(0);
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  if (x.top_dim() >= 1)
    for (int e = 0; e < x.size(1); ++e)
      parent[find(x.face(1, 0, e))] = find(x.face(1, 1, e));
  std::map<int, int> ids;
  r.component_of.resize(nv);
  for (int v = 0; v < nv; ++v) {
    int root = find(v);
    auto [it, fresh] = ids.emplace(root, static_cast<int>(ids.size()));
    (void)fresh;
    r.component_of[v] = it->second;
  }
  r.component_count = static_cast<long long>(ids.size());
  r.basepoint_component = r.component_of[basepoint];
  return r;
}

Pi1Presentation pi1_presentation(const FiniteSimplicialSet& x, int basepoint) {
  if (x.top_dim() < 2) throw Error("pi1: need top_dim >= 2");
  if (basepoint < 0 || basepoint >= x.size(0)) throw Error("pi1: bad basepoint");
  Pi1Presentation out;
  const int nv = x.size(0);
  out.in_component.assign(nv, false);
  out.edge_generator.assign(x.size(1), -1);

  // BFS spanning tree over nondegenerate edges (either direction).
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (other vertex, edge)
  for (int e = 0; e < x.size(1); ++e) {
    if (x.is_degenerate(1, e)) continue;
    int v1 = x.face(1, 0, e), v0 = x.face(1, 1, e);
    adj[v0].push_back({v1, e});
    adj[v1].push_back({v0, e});
  }
  std::vector<bool> tree_edge(x.size(1), false);
  std::queue<int> q;
  out.in_component[basepoint] = true;
  q.push(basepoint);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [w, e] : adj[v])
      if (!out.in_component[w]) {
        out.in_component[w] = true;
        tree_edge[e] = true;
        q.push(w);
      }
  }

  for (int e = 0; e < x.size(1); ++e) {
    if (x.is_degenerate(1, e) || tree_edge[e]) continue;
    if (!out.in_component[x.face(1, 1, e)]) continue;
    out.edge_generator[e] = static_cast<int>(out.presentation.generator_names.size());
    out.presentation.generator_names.push_back(x.id(1, e));
  }

  // One relator per nondegenerate 2-cell in the component:
  // [d2][d0][d1]^{-1}, with tree and degenerate edges contributing nothing.
  auto push_edge = [&](std::vector<int>& w, int e, bool invert) {
    int g = out.edge_generator[e];
    if (g < 0) return;
    w.push_back(invert ? -(g + 1) : (g + 1));
  };
  for (int z = 0; z < x.size(2); ++z) {
    if (x.is_degenerate(2, z)) continue;
    int e1 = x.face(2, 1, z);
    if (!out.in_component[x.face(1, 1, e1)]) continue;
    std::vector<int> w;
    push_edge(w, x.face(2, 2, z), false);
    push_edge(w, x.face(2, 0, z), false);
    push_edge(w, e1, true);
    if (!w.empty()) out.presentation.relators.push_back(std::move(w));
  }
  return out;
}

Pi1Result pi1_group(const FiniteSimplicialSet& x, int basepoint, int coset_cap) {
  Pi1Result r;
  r.pres = pi1_presentation(x, basepoint);
  r.grp = enumerate_presentation(r.pres.presentation, coset_cap);
  r.edge_element.assign(x.size(1), r.grp.table.identity);
  for (int e = 0; e < x.size(1); ++e) {
    int g = r.pres.edge_generator[e];
    if (g >= 0) r.edge_element[e] = r.grp.generator_element[g];
  }
  return r;
}

namespace {

// Sparse integer matrix supporting rank / Smith elimination with unit-pivot
// preference. Rows and columns carry live flags; entries are exact.
struct SparseIntMat {
  int nrows = 0, ncols = 0;
  std::vector<std::map<int, long long>> rows;  // row -> (col -> value)
  std::vector<std::set<int>> cols;             // col -> rows with entry

  SparseIntMat(int nr, int nc) : nrows(nr), ncols(nc), rows(nr), cols(nc) {}

  void add(int r, int c, long long v) {
    if (v == 0) return;
    if (v > (1LL << 48) || v < -(1LL << 48))
      throw Error("integer homology: coefficient overflow");
    auto it = rows[r].find(c);
    if (it == rows[r].end()) {
      rows[r][c] = v;
      cols[c].insert(r);
    } else {
      it->second += v;
      if (it->second == 0) {
        rows[r].erase(it);
        cols[c].erase(r);
      }
    }
  }

  // Eliminate with +-1 pivots (Markowitz-ish choice); returns the count of
  // pivots removed. Remaining nonzero entries stay in place.
  long long eliminate_units() {
    long long rank = 0;
    bool found = true;
    while (found) {
      found = false;
      int best_r = -1, best_c = -1;
      long long best_score = -1;
      for (int c = 0; c < ncols; ++c) {
        if (cols[c].empty()) continue;
        for (int r : cols[c]) {
          auto v = rows[r].at(c);
          if (v != 1 && v != -1) continue;
          long long score = static_cast<long long>(rows[r].size() - 1) *
                            static_cast<long long>(cols[c].size() - 1);
          if (best_score < 0 || score < best_score) {
            best_score = score;
            best_r = r;
            best_c = c;
          }
          if (best_score == 0) break;
        }
        if (best_score == 0) break;
      }
      if (best_r < 0) break;
      found = true;
      ++rank;
      // clear column best_c using row best_r
      long long piv = rows[best_r].at(best_c);
      std::vector<int> col_rows(cols[best_c].begin(), cols[best_c].end());
      std::map<int, long long> prow = rows[best_r];
      for (int r : col_rows) {
        if (r == best_r) continue;
        long long factor = rows[r].at(best_c) * piv;  // piv^{-1} = piv for +-1
        for (const auto& [c, v] : prow) add(r, c, -factor * v);
      }
      // remove pivot row and column
      for (const auto& [c, v] : prow) {
        (void)v;
        cols[c].erase(best_r);
      }
      rows[best_r].clear();
      std::vector<int> rest(cols[best_c].begin(), cols[best_c].end());
      for (int r : rest) {
        rows[r].erase(best_c);
        cols[best_c].erase(r);
      }
    }
    return rank;
  }

  // Extract remaining nonzero block as a dense matrix.
  std::vector<std::vector<long long>> dense_rest() const {
    std::vector<int> rmap, cmap(ncols, -1);
    std::vector<std::vector<long long>> d;
    std::vector<int> live_cols;
    for (int c = 0; c < ncols; ++c)
      if (!cols[c].empty()) {
        cmap[c] = static_cast<int>(live_cols.size());
        live_cols.push_back(c);
      }
    for (int r = 0; r < nrows; ++r) {
      if (rows[r].empty()) continue;
      std::vector<long long> row(live_cols.size(), 0);
      for (const auto& [c, v] : rows[r]) row[cmap[c]] = v;
      d.push_back(std::move(row));
    }
    return d;
  }
};

void checked_update(long long& x, long long delta) {
  __int128 t = static_cast<__int128>(x) + delta;
  if (t > INT64_MAX / 4 || t < INT64_MIN / 4)
    throw Error("integer homology: coefficient overflow");
  x = static_cast<long long>(t);
}

// Textbook Smith elimination on a small dense remainder: returns the
// elementary divisors (all entries eventually diagonal).
std::vector<long long> dense_smith(std::vector<std::vector<long long>> m) {
  std::vector<long long> divisors;
  size_t r0 = 0, c0 = 0;
  auto rowsz = m.size();
  size_t colsz = rowsz ? m[0].size() : 0;
  while (r0 < rowsz && c0 < colsz) {
    // find min |v| nonzero
    size_t pr = rowsz, pc = colsz;
    long long best = 0;
    for (size_t r = r0; r < rowsz; ++r)
      for (size_t c = c0; c < colsz; ++c)
        if (m[r][c] != 0 && (best == 0 || std::llabs(m[r][c]) < best)) {
          best = std::llabs(m[r][c]);
          pr = r;
          pc = c;
        }
    if (pr == rowsz) break;
    std::swap(m[r0], m[pr]);
    for (size_t r = 0; r < rowsz; ++r) std::swap(m[r][c0], m[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t r = r0 + 1; r < rowsz; ++r) {
        if (m[r][c0] == 0) continue;
        long long f = m[r][c0] / m[r0][c0];
        for (size_t c = c0; c < colsz; ++c) checked_update(m[r][c], -f * m[r0][c]);
        if (m[r][c0] != 0) {
          std::swap(m[r], m[r0]);
          clean = false;
        }
      }
      for (size_t c = c0 + 1; c < colsz; ++c) {
        if (m[r0][c] == 0) continue;
        long long f = m[r0][c] / m[r0][c0];
        for (size_t r = r0; r < rowsz; ++r) checked_update(m[r][c], -f * m[r][c0]);
        if (m[r0][c] != 0) {
          for (size_t r = r0; r < rowsz; ++r) std::swap(m[r][c], m[r][c0]);
          clean = false;
        }
      }
    }
    divisors.push_back(std::llabs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  // Normalize divisibility chain d1 | d2 | ...
  for (size_t i = 0; i + 1 < divisors.size(); ++i)
    for (size_t j = i + 1; j < divisors.size(); ++j) {
      long long a = divisors[i], b = divisors[j];
      long long g = std::gcd(a, b);
      divisors[i] = g;
      divisors[j] = a / g * b;
    }
  return divisors;
}

struct RankAndDivisors {
  long long rank = 0;
  std::vector<long long> nontrivial_divisors;
};

RankAndDivisors rank_and_divisors(SparseIntMat& m) {
  RankAndDivisors out;
  out.rank = m.eliminate_units();
  auto rest = m.dense_rest();
  if (!rest.empty()) {
    if (rest.size() > 4000 || rest[0].size() > 4000)
      throw Error("integer homology: dense remainder too large");
    auto div = dense_smith(std::move(rest));
    for (long long d : div)
      if (d != 0) {
        ++out.rank;
        if (d != 1) out.nontrivial_divisors.push_back(d);
      }
  }
  return out;
}

}  // namespace

Pi2Result pi2_via_cover(const FiniteSimplicialSet& x, int basepoint,
                        const Pi1Result& p1) {
  if (x.top_dim() < 3) throw Error("pi2: need top_dim >= 3");
  const FiniteGroupTable& G = p1.grp.table;
  const int go = G.order;
  const auto& comp = p1.pres.in_component;
  (void)basepoint;

  // Cocycle check: every nondegenerate 2-cell satisfies l(d1) = l(d2)*l(d0).
  for (int z = 0; z < x.size(2); ++z) {
    if (x.is_degenerate(2, z)) continue;
    if (!comp[x.face(1, 1, x.face(2, 1, z))]) continue;
    int l2 = p1.edge_element[x.face(2, 2, z)];
    int l0 = p1.edge_element[x.face(2, 0, z)];
    int l1 = p1.edge_element[x.face(2, 1, z)];
    if (G.mul[l2][l0] != l1) throw Error("pi2: edge labels are not a cocycle");
  }

  // Bases: nondegenerate component cells at levels 1..3, crossed with G.
  auto in_comp_cell = [&](int n, int c) {
    // vertex 0 of the cell: delete the last position at every level
    int v = c;
    for (int lvl = n; lvl >= 1; --lvl) v = x.face(lvl, lvl, v);
    return comp[v];
  };
  std::vector<std::vector<int>> idx(4);
  std::vector<std::vector<int>> cells(4);
  for (int n = 1; n <= 3; ++n) {
    idx[n].assign(x.size(n), -1);
    for (int c = 0; c < x.size(n); ++c) {
      if (x.is_degenerate(n, c) || !in_comp_cell(n, c)) continue;
      idx[n][c] = static_cast<int>(cells[n].size());
      cells[n].push_back(c);
    }
  }
  const long long C1 = static_cast<long long>(cells[1].size()) * go;
  const long long C2 = static_cast<long long>(cells[2].size()) * go;
  const long long C3 = static_cast<long long>(cells[3].size()) * go;
  if (C2 + C3 > 2000000)
    throw BudgetError("pi2: cover complex too large (" + std::to_string(C2) + "+" +
                      std::to_string(C3) + " cells); rerun with smaller caps");

  auto e01_label = [&](int n, int c) {
    // (0,1)-edge: delete vertices n, n-1, ..., 2
    int cur = c;
    for (int i = n; i >= 2; --i) cur = x.face(i, i, cur);
    return p1.edge_element[cur];
  };

  // boundary matrices over the cover
  SparseIntMat d2(static_cast<int>(C1), static_cast<int>(C2));
  for (size_t zi = 0; zi < cells[2].size(); ++zi) {
    int z = cells[2][zi];
    int tw = e01_label(2, z);
    for (int g = 0; g < go; ++g) {
      int col = static_cast<int>(zi) * go + g;
      int f0 = x.face(2, 0, z);
      if (idx[1][f0] >= 0) d2.add(idx[1][f0] * go + G.mul[g][tw], col, 1);
      int f1 = x.face(2, 1, z);
      if (idx[1][f1] >= 0) d2.add(idx[1][f1] * go + g, col, -1);
      int f2 = x.face(2, 2, z);
      if (idx[1][f2] >= 0) d2.add(idx[1][f2] * go + g, col, 1);
    }
  }
  SparseIntMat d3(static_cast<int>(C2), static_cast<int>(C3));
  for (size_t wi = 0; wi < cells[3].size(); ++wi) {
    int w = cells[3][wi];
    int tw = e01_label(3, w);
    for (int g = 0; g < go; ++g) {
      int col = static_cast<int>(wi) * go + g;
      for (int i = 0; i <= 3; ++i) {
        int f = x.face(3, i, w);
        if (idx[2][f] < 0) continue;
        int sheet = (i == 0) ? G.mul[g][tw] : g;
        d3.add(idx[2][f] * go + sheet, col, (i % 2 == 0) ? 1 : -1);
      }
    }
  }

  auto r2 = rank_and_divisors(d2);
  auto r3 = rank_and_divisors(d3);

  Pi2Result out;
  out.cover_cells2 = C2;
  out.cover_cells3 = C3;
  out.free_rank = (C2 - r2.rank) - r3.rank;
  out.torsion = r3.nontrivial_divisors;
  if (out.free_rank < 0) throw Error("pi2: negative rank (inconsistent complex)");
  return out;
}

KanPiResult kan_pi(const SSetPtr& x, int basepoint, int n) {
  if (n != 1 && n != 2) throw Error("kan_pi: n must be 1 or 2");
  if (x->top_dim() < n + 1) throw Error("kan_pi: need top_dim >= n+1");
  KanPiResult out;
  // iterated degenerate basepoint at levels 1 and 2
  int bp1 = x->degeneracy(0, 0, basepoint);
  int bp2 = n == 2 ? x->degeneracy(1, 0, bp1) : -1;

  auto is_candidate = [&](int c) {
    for (int i = 0; i <= n; ++i)
      if (x->face(n, i, c) != (n == 1 ? basepoint : bp1)) return false;
    return true;
  };
  for (int c = 0; c < x->size(n); ++c)
    if (is_candidate(c)) out.candidates.push_back(c);
  std::map<int, int> pos;
  for (size_t i = 0; i < out.candidates.size(); ++i) pos[out.candidates[i]] = i;

  // homotopy relation witnessed by (n+1)-cells:
  // d_i z = * for i < n, d_n z = alpha, d_{n+1} z = beta
  std::vector<int> parent(out.candidates.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int z = 0; z < x->size(n + 1); ++z) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (x->face(n + 1, i, z) != (n == 1 ? bp1 : bp2)) ok = false;
    if (!ok) continue;
    auto pa = pos.find(x->face(n + 1, n, z));
    auto pb = pos.find(x->face(n + 1, n + 1, z));
    if (pa == pos.end() || pb == pos.end()) continue;
    parent[find(pa->second)] = find(pb->second);
  }
  std::map<int, int> cls;
  out.class_of.resize(out.candidates.size());
  for (size_t i = 0; i < out.candidates.size(); ++i) {
    int r = find(static_cast<int>(i));
    auto [it, fresh] = cls.emplace(r, static_cast<int>(cls.size()));
    (void)fresh;
    out.class_of[i] = it->second;
  }
  const int order = static_cast<int>(cls.size());

  // group law via horn filling: for n=1, z with d2 z = a, d0 z = b gives
  // a*b = d1 z; for n=2, w with d1 w = a, d3 w = b, d0 w = * gives a*b = d2 w.
  out.table.order = order;
  out.table.mul.assign(order, std::vector<int>(order, -1));
  for (int z = 0; z < x->size(n + 1); ++z) {
    int a, b, p;
    if (n == 1) {
      a = x->face(2, 2, z);
      b = x->face(2, 0, z);
      p = x->face(2, 1, z);
    } else {
      if (x->face(3, 0, z) != bp2) continue;
      a = x->face(3, 1, z);
      b = x->face(3, 3, z);
      p = x->face(3, 2, z);
    }
    auto ia = pos.find(a), ib = pos.find(b), ip = pos.find(p);
    if (ia == pos.end() || ib == pos.end() || ip == pos.end()) continue;
    int ca = out.class_of[ia->second], cb = out.class_of[ib->second],
        cp = out.class_of[ip->second];
    int& slot = out.table.mul[ca][cb];
    if (slot < 0)
      slot = cp;
    else if (slot != cp)
      throw Error("kan_pi: product not well defined on classes (horn (" +
                  x->id(n, a) + "," + x->id(n, b) + "))");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (out.table.mul[a][b] < 0)
        throw Error("kan_pi: unfillable horn for the product of classes " +
                    std::to_string(a) + ", " + std::to_string(b));
  // identity = class of the degenerate basepoint cell
  int bp_cell = n == 1 ? bp1 : bp2;
  auto ibp = pos.find(bp_cell);
  if (ibp == pos.end()) throw Error("kan_pi: degenerate basepoint is not a candidate");
  out.table.identity = out.class_of[ibp->second];
  out.table.inverse.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (out.table.mul[a][b] == out.table.identity) out.table.inverse[a] = b;
  out.table.validate();
  return out;
}

HomotopyGroupResult homotopy_group(const SSetPtr& x, int basepoint, int n,
                                   PiMode mode, int coset_cap) {
  HomotopyGroupResult r;
  r.n = n;
  if (n == 0) {
    auto p = pi0(*x, basepoint);
    r.mode = "components";
    r.pi0_count = p.component_count;
    r.trivial = p.component_count == 1;
    return r;
  }
  if (n > 2) throw Error("homotopy_group: n must be 0, 1 or 2");

  bool use_kan = false;
  if (mode == PiMode::kan) {
    use_kan = true;
  } else if (mode == PiMode::automatic) {
    // Kan surjectivity spot-checks up to level n+1, cheapest first; fall back
    // to the covering route on the first failure.
    use_kan = x->top_dim() >= n + 1;
    for (int m = 2; m <= n + 1 && use_kan; ++m)
      for (int j = 0; j <= m && use_kan; ++j) {
        auto rep = check_horn_filling(x, m, j);
        if (!rep.restriction_surjective) use_kan = false;
      }
  }

  if (use_kan) {
    auto kp = kan_pi(x, basepoint, n);
    r.mode = "kan";
    r.table = kp.table;
    r.trivial = kp.table.order == 1;
    for (int i = 0; i < kp.table.order; ++i)
      r.presentation.generator_names.push_back("c" + std::to_string(i));
    for (int a = 0; a < kp.table.order; ++a)
      for (int b = 0; b < kp.table.order; ++b)
        r.presentation.relators.push_back(
            {a + 1, b + 1, -(kp.table.mul[a][b] + 1)});
    return r;
  }

  r.mode = "covering";
  auto p1 = pi1_group(*x, basepoint, coset_cap);
  if (n == 1) {
    r.presentation = p1.pres.presentation;
    r.table = p1.grp.table;
    r.trivial = p1.grp.table.order == 1;
    std::ostringstream os;
    os << "pi1 via edge-path presentation, " << p1.pres.presentation.generator_names.size()
       << " generators, " << p1.pres.presentation.relators.size() << " relators";
    r.notes = os.str();
    return r;
  }
  auto p2 = pi2_via_cover(*x, basepoint, p1);
  r.trivial = p2.trivial();
  std::ostringstream os;
  os << "pi2 = H2 of the pi1-cover: free rank " << p2.free_rank;
  if (!p2.torsion.empty()) {
    os << ", torsion";
    for (long long d : p2.torsion) os << " Z/" << d;
  }
  os << " (cover cells: " << p2.cover_cells2 << "/" << p2.cover_cells3 << ")";
  r.notes = os.str();
  for (long long i = 0; i < p2.free_rank; ++i)
    r.presentation.generator_names.push_back("f" + std::to_string(i));
  for (size_t i = 0; i < p2.torsion.size(); ++i) {
    int g = static_cast<int>(r.presentation.generator_names.size());
    r.presentation.generator_names.push_back("t" + std::to_string(i));
    std::vector<int> rel(p2.torsion[i], g + 1);
    r.presentation.relators.push_back(rel);
  }
  return r;
}

}  // namespace kanforge
