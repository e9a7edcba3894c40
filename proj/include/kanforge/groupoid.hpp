#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanforge/rng.hpp"
#include "kanforge/smap.hpp"
#include "kanforge/sset.hpp"

namespace kanforge {

// Finite groupoid with a dense composition table. compose[g][h] is "g after h"
// (defined iff src(g) == tgt(h)); -1 marks non-composable pairs.
struct FiniteGroupoid {
  struct Arrow {
    std::string id;
    int src = 0, tgt = 0;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> compose;
  std::vector<int> identity;  // per object
  std::vector<int> inverse;   // per arrow

  int compose_or_throw(int g, int h) const;
  void validate() const;  // associativity, identity, inverse laws, exhaustive

  static FiniteGroupoid cyclic_group(int n);  // Z/n, one object
  static FiniteGroupoid symmetric_group3();   // S3, one object
  static FiniteGroupoid pair_groupoid(int k);
  // Seeded generator: disjoint components, each a pair groupoid on <= 4
  // objects crossed with a small cyclic group; always has a non-identity
  // arrow, <= max_objects objects and <= max_arrows arrows.
  static FiniteGroupoid random(SplitMix64& rng, int max_objects, int max_arrows);
};

// Local groupoid (U, V) => M: multiplication only on composable V-pairs,
// inverse only on V. Arrows list is U; in_v flags the V subset.
struct LocalGroupoid {
  struct Arrow {
    std::string id;
    int src = 0, tgt = 0;
    bool in_v = false;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> compose;  // indexed by V-arrows (full arrow ids), -1 undefined
  std::vector<int> identity;              // per object, must land in V
  std::vector<int> inverse;               // per arrow, -1 outside V

  bool composable(int g, int h) const;
  int compose_at(int g, int h) const;  // -1 if undefined
  void validate() const;

  // Window -w..w of (Z,+) with V = -v..v; the running example of the text.
  static LocalGroupoid integer_window(int v, int w);
  static LocalGroupoid from_groupoid(const FiniteGroupoid& g);  // V = U = all
};

// Nerve of a finite groupoid, truncated at dimension D: level n is the set of
// strings (g_1,...,g_n) with src(g_i) == tgt(g_{i+1}).
SSetPtr nerve(const FiniteGroupoid& g, int D);

// Nerve of a local groupoid: tuples in V with every contiguous product in V.
SSetPtr local_nerve(const LocalGroupoid& l, int D);

struct PropertyReport {
  bool property_A_ok = false;  // discrete model: plain submersions are vacuous
  bool property_B_ok = false;
  std::vector<KanReport> surjectivity;  // recorded per (m,j), diagnostic data
  std::vector<std::string> counterexamples;
};

// Properties A and B of the text in the discrete model. A records the
// per-(m,j) surjectivity verdicts as data; B demands the three Lambda[2,j]
// hom-sets admit bijections compatible with the restriction maps from
// hom(Delta[2], X) (equal sizes + identical restriction kernels).
PropertyReport check_local_kan_properties(const SSetPtr& x);

// Bigons b(Y_2) = d_2^{-1}(s_0(Y_0)): 2-cells whose d2 face is a degenerate
// vertex edge. Returns cell indices at level 2.
std::vector<int> bigons(const FiniteSimplicialSet& y);

struct BigonGroupoid {
  FiniteGroupoid groupoid;       // objects = level-1 cells, arrows = bigons
  std::vector<int> bigon_cells;  // arrow index -> level-2 cell index
};

// The groupoid d_0, d_1 : b(Y_2) => Y_1 with composition by unique
// Lambda[3,1] fillers; errors on missing or non-unique fillers.
BigonGroupoid bigon_groupoid(const SSetPtr& y);

}  // namespace kanforge
