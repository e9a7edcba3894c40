#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace kanforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : Error {
  using Error::Error;
};

// Eilenberg-Zilber normal form. A cell equals
//   s_{word[k-1]}( ... s_{word[1]}( s_{word[0]}(core) ) ... )
// with word strictly increasing; nondegenerate cells have an empty word.
struct NormalForm {
  int core_level = 0;
  int core_index = 0;
  std::vector<int> word;
  bool degenerate() const { return !word.empty(); }
};

// A weakly monotone map [n] -> [m]; the simplices of Delta[m] and its
// subcomplexes. Nondegenerate iff strictly increasing.
struct MonotoneMap {
  int target_dim = 0;
  std::vector<int> values;  // size n+1

  int source_dim() const { return static_cast<int>(values.size()) - 1; }
  bool weakly_increasing() const;
  bool nondegenerate() const;
  MonotoneMap face(int i) const;        // delete entry i
  MonotoneMap degeneracy(int i) const;  // duplicate entry i
  std::string id() const;
};

// Finite truncated simplicial set with dense face/degeneracy tables.
// Immutable after construction; all operations on it are pure.
class FiniteSimplicialSet {
public:
  int top_dim() const { return static_cast<int>(levels_.size()) - 1; }
  int size(int n) const;
  bool has_level(int n) const { return n >= 0 && n <= top_dim(); }

  const std::string& id(int n, int i) const { return levels_[n][i]; }
  int index_of(int n, const std::string& id) const;  // -1 if absent

  int face(int n, int i, int cell) const { return face_[n][i][cell]; }
  int degeneracy(int n, int i, int cell) const { return degen_[n][i][cell]; }
  const NormalForm& normal_form(int n, int cell) const { return nf_[n][cell]; }
  bool is_degenerate(int n, int cell) const { return nf_[n][cell].degenerate(); }

  // Faces d_0..d_n of a cell, in order.
  std::vector<int> boundary(int n, int cell) const;

  long long nondegenerate_count(int n) const;
  std::vector<long long> census(bool nondegenerate_only = false) const;

  // Exhaustive check of every simplicial identity on the stored tables plus
  // normal-form consistency. Throws Error naming the first violation.
  void validate() const;

  // Apply an EZ word (increasing indices, innermost first) to a cell.
  int apply_word(int level, int cell, const std::vector<int>& word) const;

  // Iterated face: apply d_{idx[0]} then d_{idx[1]} ...
  int apply_faces(int level, int cell, const std::vector<int>& idx) const;

  // Cells of level n indexed by boundary tuple (for filler searches).
  std::map<std::vector<int>, std::vector<int>> cells_by_boundary(int n) const;

  class Builder;

private:
  friend class Builder;
  std::vector<std::vector<std::string>> levels_;
  // face_[n][i][cell], 1 <= n <= top_dim, 0 <= i <= n
  std::vector<std::vector<std::vector<int>>> face_;
  // degen_[n][i][cell], 0 <= n < top_dim, 0 <= i <= n
  std::vector<std::vector<std::vector<int>>> degen_;
  std::vector<std::vector<NormalForm>> nf_;
  std::vector<std::map<std::string, int>> id_index_;
};

// Incremental construction: add cells level by level with explicit face and
// degeneracy wiring; finalize() computes normal forms and validates.
class FiniteSimplicialSet::Builder {
public:
  explicit Builder(int top_dim);

  int add_cell(int level, const std::string& id,
               const std::vector<int>& faces = {});
  void set_degeneracy(int level, int i, int cell, int image);
  int size(int level) const { return static_cast<int>(s_.levels_[level].size()); }
  int index_of(int level, const std::string& id) const { return s_.index_of(level, id); }

  std::shared_ptr<const FiniteSimplicialSet> finalize(bool validate = true);

private:
  FiniteSimplicialSet s_;
};

using SSetPtr = std::shared_ptr<const FiniteSimplicialSet>;

// Delta[m] truncated at dimension D >= m.
SSetPtr standard_simplex(int m, int D);

// Horn Lambda[m,j] truncated at D >= m-1 (cells of Delta[m] whose image does
// not contain {0..m} \ {j}).
SSetPtr horn(int m, int j, int D);

// Boundary dDelta[m]: cells with non-surjective image, truncated at D.
SSetPtr boundary_complex(int m, int D);

// Enumerate all monotone maps [n] -> [m] in lexicographic order.
std::vector<MonotoneMap> monotone_maps(int n, int m);

// Levelwise subset test by cell ids (A and B need not share objects).
bool levelwise_subset(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b);

}  // namespace kanforge
