#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsu/lie_algebra.hpp"
#include "gsu/matrix_core.hpp"
#include "gsu/su_structure.hpp"

namespace gsu {

// All distinct words over a gate set explored breadth-first, identity first.
// Elements are pairwise distinct under the dedup tolerance; provenance is a
// parent/gate trail per element.
struct WordClosure {
  int d = 0;
  std::vector<ComplexMatrix> elements;  // elements[0] = identity
  std::vector<int> parent;              // -1 for the identity
  std::vector<int> via_gate;            // gate index appended, -1 for identity
  std::vector<int> word_length;
  std::vector<int> ball_elements;       // indices with center distance < 1/sqrt(2)
  int max_len_reached = 0;              // deepest fully generated word length
  bool is_finite = false;               // a full round produced nothing new
  bool budget_exhausted = false;
  bool stopped_early = false;           // a stop predicate fired
  long element_budget = 0;

  std::vector<int> word_of(int index) const;  // gate indices, empty for identity
};

// Breadth-first closure of words over `gates` (special unitary within 1e-8).
// Halts on a fixed point (is_finite), on exceeding max_len, or on reaching
// the element budget. Deterministic for fixed inputs.
WordClosure bfs_words(const std::vector<ComplexMatrix>& gates, int max_len,
                      long element_budget, const Tolerances& tol);

// Same, but also stops (stopped_early) as soon as `stop` returns true for a
// newly inserted element index.
WordClosure bfs_words_until(
    const std::vector<ComplexMatrix>& gates, int max_len, long element_budget,
    const Tolerances& tol,
    const std::function<bool(const WordClosure&, int)>& stop);

// Distance to the center of SU(d) and the nearest center element w^k I,
// w = exp(2 pi i / d).
std::pair<double, ComplexMatrix> center_distance(const ComplexMatrix& g);

// Strictly inside the ball around the center: center distance < 1/sqrt(2).
bool is_in_ball(const ComplexMatrix& g);

// Traceless skew-hermitian parts x(g), y(g) with g = x(g) + i y(g) + tr(g)/d.
// Requires special unitary input.
std::pair<AlgebraElement, AlgebraElement> xy_parts(const ComplexMatrix& g,
                                                   const SuStructure& s);

// Span of the x, y parts of every ball element of the closure.
RealSubspace space_a(const WordClosure& closure, const SuStructure& s,
                     const Tolerances& tol);

enum class Answer { Yes, No, Inconclusive };

enum class WitnessReason { BallNonCenter, BallNonCommuting };

struct GroupWitness {
  ComplexMatrix element;
  std::vector<int> word;  // gate indices over the searched gate set
  WitnessReason reason = WitnessReason::BallNonCenter;
};

struct BudgetReport {
  int max_word_length = 0;      // requested cap
  long element_budget = 0;      // requested cap
  int max_len_reached = 0;
  long elements_explored = 0;
  bool closure_finite = false;
};

// The four commutant comparisons of the membership problem:
//   top:    C(Ad_S1) vs C(Ad_S2)        (dims a1, a2)
//   bottom: C(ad_X1) vs C(ad_X2)        (dims b1, b2)
//   left:   C(Ad_S1) vs C(ad_X1)        (equal or proper inclusion)
//   right:  C(Ad_S2) vs C(ad_X2)
// decidable marks the two shapes the group membership theorems can act on:
// everything equal, or right equal with bottom unequal.
struct DiagramCase {
  Eigen::Index dim_commutant_Ad_S1 = 0;
  Eigen::Index dim_commutant_Ad_S2 = 0;
  Eigen::Index dim_commutant_ad_X1 = 0;
  Eigen::Index dim_commutant_ad_X2 = 0;
  bool top_equal = false;
  bool bottom_equal = false;
  bool left_equal = false;   // false = proper inclusion
  bool right_equal = false;
  bool decidable = false;
};

struct GroupVerdict {
  Answer answer = Answer::Inconclusive;
  ConditionReport commutant;  // the commutant comparison that gates the verdict
  std::optional<GroupWitness> witness;
  BudgetReport budget;
  std::optional<DiagramCase> diagram;  // membership decisions only
  std::string reason;                  // which condition fired, human-readable
};

// Is the closure of <gates> all of SU(d)? Yes needs a trivial Ad-commutant
// plus a ball element away from the center; a finite closure without such a
// witness is No; otherwise Inconclusive.
GroupVerdict decide_group_universality(const std::vector<ComplexMatrix>& gates,
                                       int max_len, long element_budget,
                                       const Tolerances& tol);

// Is the closure of exp(Y) all of the compact connected subgroup generated
// by <X>? Requires Y inside <X> and <X> simple (HypothesisError otherwise).
GroupVerdict decide_subgroup_universality(const std::vector<AlgebraElement>& xs,
                                          const std::vector<AlgebraElement>& ys,
                                          const SuStructure& s, int max_len,
                                          long element_budget,
                                          const Tolerances& tol);

// Computes the inclusion diagram for S1 = exp(X1) against S2 = S1 union
// exp(Y_h).
DiagramCase classify_diagram(const std::vector<AlgebraElement>& x1,
                             const std::vector<AlgebraElement>& yh,
                             const SuStructure& s, const Tolerances& tol);

// Does adding the gates exp(Y_h) change the closure of exp(X1)? Requires
// <X1 union Y_h> simple. No when the Ad-commutants differ; Yes when the
// all-equal diagram holds and a ball witness not commuting with X1 exists;
// Inconclusive otherwise (carrying the diagram).
GroupVerdict decide_group_membership(const std::vector<AlgebraElement>& x1,
                                     const std::vector<AlgebraElement>& yh,
                                     const SuStructure& s, int max_len,
                                     long element_budget,
                                     const Tolerances& tol);

}  // namespace gsu
