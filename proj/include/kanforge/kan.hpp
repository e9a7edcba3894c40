#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kanforge/groupoid.hpp"
#include "kanforge/smap.hpp"
#include "kanforge/sset.hpp"

namespace kanforge {

// Where a cell of a Kan-replacement stage came from.
struct CellProvenance {
  enum class Role { original, new_face, new_top, degeneracy };
  Role role = Role::original;
  int stage = 0;       // 0 for original cells
  int k = 0, j = 0;    // horn shape for new_face / new_top
  long long horn_index = -1;
  std::string base_id;  // for degeneracies of new cells: the underlying cell
};

struct HornFill {
  int k = 0, j = 0;
  long long index = -1;          // position in the stage's (k,j) enumeration
  std::vector<int> tuple;        // generator assignments into the previous stage
  int face_cell = -1;            // new (k-1)-cell in the new complex (-1 if above D)
  int top_cell = -1;             // new k-cell (-1 if above D)
};

struct KanStage {
  SSetPtr complex;
  std::vector<std::vector<CellProvenance>> prov;  // per level, per cell
  std::vector<HornFill> fills;                    // fills creating this stage
};

// The pushout tower X = X^0 -> X^1 -> ... with full provenance. Stage
// inclusions are literal prefixes of the cell lists.
struct FilteredSimplicialSet {
  std::vector<KanStage> stages;
  int k_max = 4;
  bool budget_exceeded = false;
  std::vector<std::vector<long long>> probe_counts;  // per stage: |X_0|,|X_1|,|X_2|,|hom(L21)|

  int depth() const { return static_cast<int>(stages.size()) - 1; }
  const SSetPtr& final_complex() const { return stages.back().complex; }
  // birth stage of a cell of the final complex
  int stage_of(int level, int cell) const;
};

// One pushout step over the horn set J = {L[2,1]} u {L[k,j] : 3 <= k}, capped
// at k <= k_max: every horn map gains a free missing face and top cell (plus
// their degeneracies up to the truncation dimension).
KanStage kan_step_stage(const KanStage& prev, int stage_number, int k_max,
                        long long cell_budget);

// Convenience single step from a plain complex; checks Properties A and B.
SSetPtr kan_step(const SSetPtr& x, int k_max, long long cell_budget = 5000000);

// Iterated replacement with caps; checks Properties A and B of the input.
FilteredSimplicialSet kan_replace(const SSetPtr& x, int depth, int k_max,
                                  long long cell_budget = 5000000,
                                  bool check_properties = true);

// n-truncation. Level n is quotiented by the reflexive-symmetric-transitive
// closure of the relation "x ~ y iff same boundary and some z in X_{n+1} has
// d_n z = x, d_{n+1} z = y and d_i z degenerate-matching for i < n"; the
// witness conditions are taken up to the quotient and iterated to a fixpoint.
// Level n+1 (when D_out == n+1) is rebuilt from the descended boundary
// spheres, one cell per filled sphere.
struct TruncationResult {
  SSetPtr quotient;
  int n = 0;
  std::vector<int> class_of;                  // source level-n cell -> quotient cell
  std::vector<std::array<int, 3>> witnesses;  // union events (x, y, z)
  std::vector<int> sphere_of;                 // source level-(n+1) cell -> quotient cell
  struct KanBangReport {
    int j;
    bool surjective, unique;
    std::string detail;
  };
  // Kan!(n+1, j) verdicts on the quotient (filled on request).
  std::vector<KanBangReport> kan_bang;
};

TruncationResult truncate(const SSetPtr& x, int n, int D_out);

// Kan!(n+1, j) checks on a truncation's quotient (can be expensive).
void check_truncation_kan_bang(TruncationResult& t);

// Evaluation of formal composites back into the base (local) nerve: stage
// cells map to the (unique) fillers their horns evaluate to. Partial for
// local bases when a product leaves the window.
struct WordEvaluation {
  SimplicialMap map;  // final stage -> stage-0 complex; -1 entries where undefined
  std::vector<std::vector<bool>> defined;
  bool total = true;
  long long undefined_cells = 0;
};

WordEvaluation evaluate_words(const FilteredSimplicialSet& f, const FiniteGroupoid& g);
WordEvaluation evaluate_words(const FilteredSimplicialSet& f, const LocalGroupoid& l);

}  // namespace kanforge
