#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsu/matrix_core.hpp"
#include "gsu/su_structure.hpp"

namespace gsu {

// One compared quantity of an algebra decision, with both sides' dimensions.
struct ConditionReport {
  bool equal = false;
  Eigen::Index dim_lhs = 0;
  Eigen::Index dim_rhs = 0;
};

struct AlgebraVerdict {
  bool yes = false;
  ConditionReport commutant;   // operator commutant dimensions
  ConditionReport dimension;   // projected-span dimensions
  std::optional<RealVector> witness;  // vector exhibiting an inequality
  std::string witness_note;
};

// Smallest bracket-closed subspace containing X: W_0 = span X,
// W_{i+1} = W_i + [W_i, W_i], iterated to a fixed point. Throws InputError
// on an empty generator list; zero generators are allowed and span nothing.
RealSubspace generate_subalgebra(const std::vector<AlgebraElement>& xs,
                                 const SuStructure& s, const Tolerances& tol);

// Centralizer of X inside the subalgebra g: {v in g : [v, x] = 0 for all x}.
RealSubspace centralizer_in(const RealSubspace& g,
                            const std::vector<AlgebraElement>& xs,
                            const SuStructure& s, const Tolerances& tol);

// Commutant of a set of real operators on R^n inside gl(n, R), returned as a
// subspace of R^{n^2} (column-major vectorization). Empty op list gives all
// of gl(n, R).
RealSubspace commutant_of_operators(const std::vector<RealMatrix>& ops,
                                    Eigen::Index ambient_n,
                                    const Tolerances& tol);

// Orthogonal projector (n x n) onto the centralizer of X in su(d). Its
// kernel is the orthogonal complement, which for su(d) equals
// derived(su(d)) intersected with that complement.
RealMatrix projector_PX(const std::vector<AlgebraElement>& xs,
                        const SuStructure& s, const Tolerances& tol);

// Derived algebra [g, g] of a bracket-closed subspace. Throws InputError if
// g is not closed under the bracket within tolerance.
RealSubspace derived_algebra(const RealSubspace& g, const SuStructure& s,
                             const Tolerances& tol);

// Splits <X> into its center Span(P_X(X)) and derived part <(1-P_X)(X)>.
// Returns {center, derived}; the two are orthogonal and sum to <X>.
std::pair<RealSubspace, RealSubspace> split_center_derived(
    const std::vector<AlgebraElement>& xs, const SuStructure& s,
    const Tolerances& tol);

// Does X generate all of su(d)? Yes iff the commutant of {ad_x} matches the
// commutant of the full adjoint family and the projected span of X matches
// the center of su(d). Both reference values are computed, not assumed.
AlgebraVerdict decide_algebra_universality(const std::vector<AlgebraElement>& xs,
                                           const SuStructure& s,
                                           const Tolerances& tol);

// Which projector drives the dimension condition of the membership test.
enum class ProjectorVariant { FromFirstSet, FromUnion };

// Is <X1 union Y> = <X1>? Yes iff the ad-commutants of X1 and X1 union Y
// have equal dimension and the chosen projector maps both sets onto spans of
// equal dimension. Both projector variants decide the same predicate.
AlgebraVerdict decide_algebra_membership(const std::vector<AlgebraElement>& x1,
                                         const std::vector<AlgebraElement>& y,
                                         const SuStructure& s,
                                         ProjectorVariant variant,
                                         const Tolerances& tol);

// A compact subalgebra is simple iff it equals its derived algebra and its
// restricted adjoint representation has a one-dimensional commutant. The
// zero subspace is not simple.
bool is_simple(const RealSubspace& g, const SuStructure& s,
               const Tolerances& tol);

// dim of the commutant of {ad_b : b basis of su(d)} inside gl(n, R);
// the computed reference for universality decisions.
Eigen::Index full_adjoint_commutant_dim(const SuStructure& s,
                                        const Tolerances& tol);

}  // namespace gsu
