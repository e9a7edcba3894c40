#include "kanforge/sset.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kanforge {

bool MonotoneMap::weakly_increasing() const {
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[i - 1]) return false;
  return true;
}

bool MonotoneMap::nondegenerate() const {
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1]) return false;
  return true;
}

MonotoneMap MonotoneMap::face(int i) const {
  MonotoneMap r{target_dim, values};
  r.values.erase(r.values.begin() + i);
  return r;
}

MonotoneMap MonotoneMap::degeneracy(int i) const {
  MonotoneMap r{target_dim, values};
  r.values.insert(r.values.begin() + i, values[i]);
  return r;
}

std::string MonotoneMap::id() const {
  std::ostringstream os;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << '.';
    os << values[i];
  }
  return os.str();
}

std::vector<MonotoneMap> monotone_maps(int n, int m) {
  std::vector<MonotoneMap> out;
  std::vector<int> cur(n + 1, 0);
  while (true) {
    out.push_back(MonotoneMap{m, cur});
    int k = n;
    while (k >= 0 && cur[k] == m) --k;
    if (k < 0) break;
    int v = cur[k] + 1;
    for (int t = k; t <= n; ++t) cur[t] = v;
  }
  return out;
}

int FiniteSimplicialSet::size(int n) const {
  if (!has_level(n)) return 0;
  return static_cast<int>(levels_[n].size());
}

int FiniteSimplicialSet::index_of(int n, const std::string& id) const {
  if (!has_level(n)) return -1;
  auto it = id_index_[n].find(id);
  return it == id_index_[n].end() ? -1 : it->second;
}

std::vector<int> FiniteSimplicialSet::boundary(int n, int cell) const {
  std::vector<int> b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = face_[n][i][cell];
  return b;
}

long long FiniteSimplicialSet::nondegenerate_count(int n) const {
  long long c = 0;
  for (size_t i = 0; i < nf_[n].size(); ++i)
    if (!nf_[n][i].degenerate()) ++c;
  return c;
}

std::vector<long long> FiniteSimplicialSet::census(bool nondeg) const {
  std::vector<long long> out;
  for (int n = 0; n <= top_dim(); ++n)
    out.push_back(nondeg ? nondegenerate_count(n) : size(n));
  return out;
}

int FiniteSimplicialSet::apply_word(int level, int cell,
                                    const std::vector<int>& word) const {
  int n = level, c = cell;
  for (int i : word) {
    c = degen_[n][i][c];
    ++n;
  }
  return c;
}

int FiniteSimplicialSet::apply_faces(int level, int cell,
                                     const std::vector<int>& idx) const {
  int n = level, c = cell;
  for (int i : idx) {
    c = face_[n][i][c];
    --n;
  }
  return c;
}

std::map<std::vector<int>, std::vector<int>> FiniteSimplicialSet::cells_by_boundary(
    int n) const {
  std::map<std::vector<int>, std::vector<int>> out;
  for (int c = 0; c < size(n); ++c) out[boundary(n, c)].push_back(c);
  return out;
}

namespace {
[[noreturn]] void fail(const std::string& what) { throw Error(what); }
}  // namespace

void FiniteSimplicialSet::validate() const {
  const int D = top_dim();
  // d_i d_j = d_{j-1} d_i for i < j
  for (int n = 2; n <= D; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (int c = 0; c < size(n); ++c)
          if (face_[n - 1][i][face_[n][j][c]] != face_[n - 1][j - 1][face_[n][i][c]]) {
            std::ostringstream os;
            os << "simplicial identity d" << i << " d" << j
               << " violated at level " << n << " cell " << id(n, c);
            fail(os.str());
          }
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int n = 0; n + 2 <= D; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (int c = 0; c < size(n); ++c)
          if (degen_[n + 1][i][degen_[n][j][c]] !=
              degen_[n + 1][j + 1][degen_[n][i][c]]) {
            std::ostringstream os;
            os << "simplicial identity s" << i << " s" << j
               << " violated at level " << n << " cell " << id(n, c);
            fail(os.str());
          }
  // d_i s_j identity table
  for (int n = 0; n + 1 <= D; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i)
        for (int c = 0; c < size(n); ++c) {
          int lhs = face_[n + 1][i][degen_[n][j][c]];
          int rhs;
          if (i < j)
            rhs = n >= 1 ? degen_[n - 1][j - 1][face_[n][i][c]] : -2;
          else if (i == j || i == j + 1)
            rhs = c;
          else
            rhs = n >= 1 ? degen_[n - 1][j][face_[n][i - 1][c]] : -2;
          if (rhs == -2) continue;  // cannot occur: i<j or i>j+1 forces n>=1
          if (lhs != rhs) {
            std::ostringstream os;
            os << "simplicial identity d" << i << " s" << j
               << " violated at level " << n << " cell " << id(n, c) << " (n,i,j)=("
               << n << "," << i << "," << j << ")";
            fail(os.str());
          }
        }
  // Normal forms: every degenerate cell equals its word applied to its core,
  // and the core is nondegenerate.
  for (int n = 0; n <= D; ++n)
    for (int c = 0; c < size(n); ++c) {
      const NormalForm& f = nf_[n][c];
      if (!f.degenerate()) {
        if (f.core_level != n || f.core_index != c)
          fail("normal form of nondegenerate cell must be itself: " + id(n, c));
        continue;
      }
      if (nf_[f.core_level][f.core_index].degenerate())
        fail("normal-form core is degenerate: " + id(n, c));
      for (size_t k = 1; k < f.word.size(); ++k)
        if (f.word[k] <= f.word[k - 1])
          fail("normal-form word not strictly increasing: " + id(n, c));
      if (apply_word(f.core_level, f.core_index, f.word) != c)
        fail("normal-form word does not reproduce cell: " + id(n, c));
    }
}

FiniteSimplicialSet::Builder::Builder(int top_dim) {
  if (top_dim < 0) throw Error("top_dim must be >= 0");
  s_.levels_.resize(top_dim + 1);
  s_.id_index_.resize(top_dim + 1);
  s_.face_.resize(top_dim + 1);
  s_.degen_.resize(top_dim + 1);
  s_.nf_.resize(top_dim + 1);
  for (int n = 1; n <= top_dim; ++n) s_.face_[n].resize(n + 1);
  for (int n = 0; n < top_dim; ++n) s_.degen_[n].resize(n + 1);
}

int FiniteSimplicialSet::Builder::add_cell(int level, const std::string& id,
                                           const std::vector<int>& faces) {
  if (!s_.has_level(level)) throw Error("add_cell: level out of range: " + id);
  if (s_.id_index_[level].count(id)) throw Error("duplicate cell id: " + id);
  if (level >= 1 && static_cast<int>(faces.size()) != level + 1)
    throw Error("add_cell: need " + std::to_string(level + 1) + " faces for " + id);
  int idx = static_cast<int>(s_.levels_[level].size());
  s_.levels_[level].push_back(id);
  s_.id_index_[level][id] = idx;
  if (level >= 1)
    for (int i = 0; i <= level; ++i) {
      if (faces[i] < 0 || faces[i] >= static_cast<int>(s_.levels_[level - 1].size()))
        throw Error("add_cell: face index out of range for " + id);
      s_.face_[level][i].push_back(faces[i]);
    }
  if (level < s_.top_dim())
    for (int i = 0; i <= level; ++i) s_.degen_[level][i].push_back(-1);
  return idx;
}

void FiniteSimplicialSet::Builder::set_degeneracy(int level, int i, int cell,
                                                  int image) {
  s_.degen_[level][i][cell] = image;
}

std::shared_ptr<const FiniteSimplicialSet> FiniteSimplicialSet::Builder::finalize(
    bool validate) {
  const int D = s_.top_dim();
  for (int n = 0; n < D; ++n)
    for (int i = 0; i <= n; ++i)
      for (size_t c = 0; c < s_.degen_[n][i].size(); ++c)
        if (s_.degen_[n][i][c] < 0)
          throw Error("degeneracy s" + std::to_string(i) + " unset at level " +
                      std::to_string(n) + " cell " + s_.levels_[n][c]);
  // Compute normal forms bottom-up: a cell z is degenerate via s_i iff
  // s_i(d_i z) == z; take the smallest such i.
  for (int n = 0; n <= D; ++n) {
    s_.nf_[n].resize(s_.levels_[n].size());
    for (int c = 0; c < static_cast<int>(s_.levels_[n].size()); ++c) {
      NormalForm f;
      f.core_level = n;
      f.core_index = c;
      if (n >= 1) {
        for (int i = 0; i < n; ++i) {
          int y = s_.face_[n][i][c];
          if (s_.degen_[n - 1][i][y] == c) {
            const NormalForm& g = s_.nf_[n - 1][y];
            f.core_level = g.core_level;
            f.core_index = g.core_index;
            // s_i s_b = s_{b+1} s_i for i <= b: pushing s_i inward bumps every
            // word entry >= i, and i lands before them.
            f.word.clear();
            size_t t = 0;
            while (t < g.word.size() && g.word[t] < i) f.word.push_back(g.word[t++]);
            f.word.push_back(i);
            while (t < g.word.size()) f.word.push_back(g.word[t++] + 1);
            break;
          }
        }
      }
      s_.nf_[n][c] = f;
    }
  }
  auto out = std::make_shared<FiniteSimplicialSet>(std::move(s_));
  if (validate) out->validate();
  return out;
}

namespace {

// Shared construction for Delta[m] and its subcomplexes: keep the monotone
// maps accepted by `keep`, which must be closed under faces.
SSetPtr build_sub_simplex(int m, int D, const std::function<bool(const MonotoneMap&)>& keep,
                          const std::string& what) {
  if (D < 0) throw Error(what + ": truncation dimension must be >= 0");
  FiniteSimplicialSet::Builder b(D);
  std::vector<std::vector<MonotoneMap>> cells(D + 1);
  for (int n = 0; n <= D; ++n) {
    for (const auto& f : monotone_maps(n, m)) {
      if (!keep(f)) continue;
      cells[n].push_back(f);
      std::vector<int> faces;
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) {
          int fi = b.index_of(n - 1, f.face(i).id());
          if (fi < 0) throw Error(what + ": keep-set not closed under faces");
          faces.push_back(fi);
        }
      }
      b.add_cell(n, f.id(), faces);
    }
  }
  for (int n = 0; n < D; ++n)
    for (size_t c = 0; c < cells[n].size(); ++c)
      for (int i = 0; i <= n; ++i) {
        int im = b.index_of(n + 1, cells[n][c].degeneracy(i).id());
        if (im < 0) throw Error(what + ": keep-set not closed under degeneracies");
        b.set_degeneracy(n, i, static_cast<int>(c), im);
      }
  return b.finalize();
}

}  // namespace

SSetPtr standard_simplex(int m, int D) {
  if (m < 0) throw Error("standard_simplex: m must be >= 0");
  if (D < m) throw Error("standard_simplex: D < m would lose the top cell");
  return build_sub_simplex(m, D, [](const MonotoneMap&) { return true; },
                           "standard_simplex");
}

SSetPtr horn(int m, int j, int D) {
  if (m < 1 || j < 0 || j > m) throw Error("horn: need m >= 1 and 0 <= j <= m");
  if (D < m - 1) throw Error("horn: D < m-1 would lose cells of the horn");
  return build_sub_simplex(
      m, D,
      [m, j](const MonotoneMap& f) {
        // Keep f iff image(f) does not contain {0..m} \ {j}.
        std::vector<bool> hit(m + 1, false);
        for (int v : f.values) hit[v] = true;
        for (int v = 0; v <= m; ++v)
          if (v != j && !hit[v]) return true;
        return false;
      },
      "horn");
}

SSetPtr boundary_complex(int m, int D) {
  if (m < 1) throw Error("boundary_complex: m must be >= 1");
  if (D < 0) throw Error("boundary_complex: D must be >= 0");
  return build_sub_simplex(
      m, D,
      [m](const MonotoneMap& f) {
        std::vector<bool> hit(m + 1, false);
        for (int v : f.values) hit[v] = true;
        for (int v = 0; v <= m; ++v)
          if (!hit[v]) return true;
        return false;
      },
      "boundary_complex");
}

bool levelwise_subset(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b) {
  for (int n = 0; n <= a.top_dim(); ++n) {
    if (n > b.top_dim()) {
      if (a.size(n) > 0) return false;
      continue;
    }
    for (int c = 0; c < a.size(n); ++c)
      if (b.index_of(n, a.id(n, c)) < 0) return false;
  }
  return true;
}

}  // namespace kanforge
