#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kanforge/sset.hpp"

namespace kanforge {

// Level-indexed map between finite simplicial sets, defined on all shared
// levels and commuting with every face and degeneracy map.
struct SimplicialMap {
  SSetPtr source, target;
  std::vector<std::vector<int>> assign;  // assign[n][cell], 0 <= n <= shared top

  int shared_top() const { return static_cast<int>(assign.size()) - 1; }
  int operator()(int n, int cell) const { return assign[n][cell]; }
  void validate() const;  // throws Error naming the first violation
};

SimplicialMap identity_map(const SSetPtr& x);

// Complete hom-set, enumerated by backtracking over nondegenerate generators
// in increasing level then lexicographic cell order; deterministic output.
// Errors if `a` has a nondegenerate cell above x.top_dim.
std::vector<SimplicialMap> simplicial_maps(const SSetPtr& a, const SSetPtr& x);

// Count-only variant (same traversal, no map materialization).
long long count_simplicial_maps(const SSetPtr& a, const SSetPtr& x);

// Visitor over the generator-assignment tuples of hom(a, x); generators are
// the nondegenerate cells of `a` sorted by (level, index).
void visit_simplicial_maps(const SSetPtr& a, const SSetPtr& x,
                           const std::function<void(const std::vector<int>&)>& visit);

// Nondegenerate cells of `a` as (level, index), sorted.
std::vector<std::pair<int, int>> generator_list(const FiniteSimplicialSet& a);

struct KanReport {
  int m = 0, j = 0;
  bool restriction_surjective = false;
  bool restriction_bijective = false;
  long long horn_count = 0;   // |hom(Lambda[m,j], X)|
  long long cell_count = 0;   // |hom(Delta[m], X)| = |X_m|
  std::vector<std::string> witness_misses;  // unfilled horn maps (capped)
};

// Surjectivity / bijectivity of X_m -> hom(Lambda[m,j], X) in the discrete
// model, with unfilled horns listed.
KanReport check_horn_filling(const SSetPtr& x, int m, int j,
                             std::size_t miss_cap = 8);

// For an m-cell of X, the images of the horn generators of Lambda[m,j]
// (sorted generator order); used to key restriction maps.
std::vector<int> horn_restriction_key(const FiniteSimplicialSet& x, int m, int j,
                                      int cell);

struct NGroupoidVerdict {
  bool ok = false;
  int n = -1;                 // smallest n passing, when ok
  std::string failure;        // first violated condition, when !ok
  std::vector<KanReport> reports;
};

// Smallest n <= n_max with Kan(m,j) surjective for all m <= top_dim and
// Kan!(m,j) bijective for n < m <= top_dim.
NGroupoidVerdict classify_n_groupoid(const SSetPtr& x, int n_max);

}  // namespace kanforge
