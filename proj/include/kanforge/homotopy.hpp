#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kanforge/sset.hpp"

namespace kanforge {

// Finite group presentation; relators are signed 1-based generator indices
// (+i = generator i-1, -i = its inverse), read left to right.
struct GroupPresentation {
  std::vector<std::string> generator_names;
  std::vector<std::vector<int>> relators;
};

struct FiniteGroupTable {
  int order = 0;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inverse;
  void validate() const;
  int element_order(int a) const;
};

struct EnumeratedGroup {
  FiniteGroupTable table;
  std::vector<int> generator_element;  // image of each presentation generator
};

// Coset enumeration over the trivial subgroup (HLT with coincidences).
// Throws BudgetError when the coset cap is hit.
EnumeratedGroup enumerate_presentation(const GroupPresentation& p, int coset_cap);

// Multiplication table of a one-object groupoid.
FiniteGroupTable group_table(const struct FiniteGroupoid& g);

std::optional<std::vector<int>> group_isomorphism(const FiniteGroupTable& a,
                                                  const FiniteGroupTable& b,
                                                  long long budget = 10000000);

struct Pi0Result {
  long long component_count = 0;
  std::vector<int> component_of;  // per vertex
  int basepoint_component = 0;
};

Pi0Result pi0(const FiniteSimplicialSet& x, int basepoint);

// Edge-path presentation of pi_1 of the 2-skeleton at a basepoint: one
// generator per nondegenerate non-tree edge of the basepoint component, one
// relator per nondegenerate 2-cell.
struct Pi1Presentation {
  GroupPresentation presentation;
  std::vector<int> edge_generator;  // level-1 cell -> generator or -1
  std::vector<bool> in_component;   // per vertex
};

Pi1Presentation pi1_presentation(const FiniteSimplicialSet& x, int basepoint);

struct Pi1Result {
  Pi1Presentation pres;
  EnumeratedGroup grp;
  std::vector<int> edge_element;  // level-1 cell -> group element (identity off-generators)
};

Pi1Result pi1_group(const FiniteSimplicialSet& x, int basepoint, int coset_cap = 200000);

// pi_2 as H_2 of the pi_1-regular cover (Hurewicz); exact over Z.
struct Pi2Result {
  long long free_rank = 0;
  std::vector<long long> torsion;  // elementary divisors > 1
  long long cover_cells2 = 0, cover_cells3 = 0;
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

Pi2Result pi2_via_cover(const FiniteSimplicialSet& x, int basepoint,
                        const Pi1Result& p1);

// Moore-style route for Kan complexes: candidates with faces at the
// iterated-degenerate basepoint modulo the (n+1)-cell homotopy relation,
// group law via horn filling. Errors name the unfillable horn.
struct KanPiResult {
  std::vector<int> candidates;  // level-n cell indices
  std::vector<int> class_of;    // per candidate
  FiniteGroupTable table;
};

KanPiResult kan_pi(const SSetPtr& x, int basepoint, int n);

enum class PiMode { automatic, kan, covering };

struct HomotopyGroupResult {
  int n = 0;
  std::string mode;  // "components", "kan", "covering"
  long long pi0_count = 0;
  GroupPresentation presentation;
  std::optional<FiniteGroupTable> table;
  bool trivial = false;
  std::string notes;
};

// The homotopy-group front end. Automatic mode uses the Moore construction
// when the Kan surjectivity spot-checks up to level n+1 pass and the
// covering-space route otherwise (depth-capped Kan replacements are not Kan
// at finite stage; the covering route computes the realization's groups).
HomotopyGroupResult homotopy_group(const SSetPtr& x, int basepoint, int n,
                                   PiMode mode = PiMode::automatic,
                                   int coset_cap = 200000);

}  // namespace kanforge
