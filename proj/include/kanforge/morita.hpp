#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanforge/groupoid.hpp"
#include "kanforge/smap.hpp"
#include "kanforge/sset.hpp"

namespace kanforge {

struct HypercoverReport {
  bool ok = false;
  int n = 0;
  struct LevelVerdict {
    int k;
    bool surjective = false;
    bool bijective = false;
    long long pullback_size = 0;
  };
  std::vector<LevelVerdict> levels;
  std::string failure;
};

// f : Z -> X is a hypercover up to degree n if Z_k -> PB(hom(dD[k],Z),
// hom(dD[k],X), X_k) is surjective for k <= n-1 and bijective for k = n.
HypercoverReport check_hypercover(const SimplicialMap& f, int n);

// Boundary-sphere key of an m-cell (images of the dD[m] generators, in the
// canonical generator order).
std::vector<int> boundary_restriction_key(const FiniteSimplicialSet& x, int m,
                                          int cell);

// Input data for the pull-back 2-groupoid: levels 0-1 of Z with structure
// maps and a map to X on those levels.
struct PullbackInput {
  std::vector<std::string> z0_ids, z1_ids;
  std::vector<int> d0, d1;  // per Z1 edge
  std::vector<int> s0;      // per Z0 vertex
  std::vector<int> f0, f1;  // to X levels 0, 1
};

struct Pullback2Groupoid {
  SSetPtr z;
  SimplicialMap f;  // levelwise projection Z -> X
};

// Z2 := hom(dD[2], Z) x_{hom(dD[2], X)} X_2 with the degeneracies
// s0(h) = (h, h, s0 d1 h; s0 f1 h), s1(h) = (s0 d0 h, h, h; s1 f1 h).
Pullback2Groupoid pullback_2groupoid(const SSetPtr& x, const PullbackInput& in);

struct MoritaLemmaInput {
  SimplicialMap f;          // K -> Y, both with top_dim >= 2
  std::vector<int> g1;      // Z1 -> K1
  std::vector<int> h1;      // Z1 -> Y1
  std::vector<int> alpha;   // Z1 -> level-2 bigons of Y
};

struct MoritaLemmaReport {
  bool level0_bijective = false;
  bool g1_surjective = false;
  bool h1_surjective = false;
  bool alpha_compatible = false;   // f1 . g1 = alpha . h1 (bigon post-composition)
  bool level2_bijective = false;
  std::vector<std::string> notes;
  bool all() const {
    return level0_bijective && g1_surjective && h1_surjective && alpha_compatible &&
           level2_bijective;
  }
};

MoritaLemmaReport check_morita_lemma_conditions(const MoritaLemmaInput& in);

// Local groupoid extracted from a 2-groupoid: multiplication d1 . sigma_m and
// inverse via sigma_i, where the sections pick the unique filler of minimal
// provenance rank (rank 0 = original cells). Errors name the offending pair.
LocalGroupoid extract_local_groupoid(const SSetPtr& x, const std::vector<int>& v_edges,
                                     const std::vector<int>& rank2 = {});

// A generalized morphism X <- Z -> Y stored as a verified zig-zag.
struct ZigZag {
  SimplicialMap left;   // hypercover Z -> X
  SimplicialMap right;  // Z -> Y
  HypercoverReport left_report;
};

ZigZag make_zigzag(const SimplicialMap& left, const SimplicialMap& right, int n);

// 2-morphism between generalized morphisms: a levelwise isomorphism Z ~ Z'
// commuting with both legs. Backtracking with a node budget.
std::optional<std::vector<std::vector<int>>> compare_generalized_morphisms(
    const ZigZag& a, const ZigZag& b, long long budget = 1000000);

}  // namespace kanforge
