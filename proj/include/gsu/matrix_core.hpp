#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gsu/errors.hpp"

namespace gsu {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Knobs shared by every numerical decision in the library.
//   rank_tol:    relative singular-value cutoff for rank/null-space calls
//   dedup_tol:   Frobenius distance below which two group elements merge
//   commute_tol: distance at or above which a conjugation counts as
//                "does not commute"
struct Tolerances {
  double rank_tol = 1e-9;
  double dedup_tol = 1e-8;
  double commute_tol = 1e-8;

  void validate() const;  // throws InputError on nonsense values
};

bool is_finite_matrix(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& a, double tol);
bool is_special_unitary(const ComplexMatrix& a, double tol);
bool is_skew_hermitian(const ComplexMatrix& a, double tol);
bool is_traceless(const ComplexMatrix& a, double tol);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// exp of a skew-hermitian matrix via eigendecomposition of -iX.
// Result is unitary to machine precision. Throws InputError if X is not
// square or not skew-hermitian within 1e-8 (relative).
ComplexMatrix mat_exp(const ComplexMatrix& x);

// Principal logarithm of a unitary matrix: eigenphases taken in (-pi, pi],
// so an eigenvalue of exactly -1 maps to +i*pi. Throws InputError if U is
// not unitary within 1e-8.
ComplexMatrix principal_log(const ComplexMatrix& u);

// A linear subspace of R^n held as an orthonormal column basis.
struct RealSubspace {
  Eigen::Index ambient_dim = 0;
  RealMatrix basis;  // ambient_dim x dim(), orthonormal columns

  Eigen::Index dim() const { return basis.cols(); }
  RealMatrix projector() const;  // basis * basis^T
  bool contains(const RealVector& v, double tol) const;
  static RealSubspace zero(Eigen::Index ambient);
  static RealSubspace full(Eigen::Index ambient);
};

// Null space of a real matrix with singular-value threshold
// sigma_i < rank_tol * max(sigma_max, scale). `scale` anchors the cutoff to
// the magnitude of the data the matrix was built from, so a matrix that is
// pure cancellation noise ranks as zero instead of full. Deterministic
// basis: SVD order with each vector's largest-magnitude coordinate (first
// index on ties) made positive.
RealSubspace real_null_space(const RealMatrix& m, double rank_tol,
                             double scale = 0.0);

// Orthonormal span of the given column vectors, same threshold and
// determinism rules.
RealSubspace orthonormal_span(const RealMatrix& vectors_as_columns,
                              double rank_tol, double scale = 0.0);

RealSubspace subspace_intersection(const RealSubspace& a, const RealSubspace& b,
                                   double rank_tol);
RealSubspace orthogonal_complement(const RealSubspace& a, double rank_tol);

// Frobenius norm of the difference of orthogonal projectors; 0 iff equal
// subspaces, and >= sqrt(2) for subspaces of different dimension.
double subspace_distance(const RealSubspace& a, const RealSubspace& b);

// g h g^{-1} h^{-1} for unitary g, h (inverse = adjoint).
ComplexMatrix group_commutator(const ComplexMatrix& g, const ComplexMatrix& h);

// Checks ||ghg^{-1}h^{-1} - 1|| <= sqrt(2) ||g - 1|| ||h - 1|| with
// 1e-12 additive slack. Throws InputError on non-unitary input.
bool commutator_bound_holds(const ComplexMatrix& g, const ComplexMatrix& h);

enum class LogTraceVerdict {
  InSuD,                      // hypotheses hold and tr(log U) vanished
  BoundViolatedPreconditions, // hypotheses hold but the trace did not vanish
  NotApplicable,              // hypotheses not satisfied
};

// Decides whether the principal log of U in SU(d) is guaranteed (and
// observed) traceless: requires 0 < r <= 1, d >= ceil(40 / r^2),
// ||U - 1|| < r, and ||U - 1|| < 2 sqrt(d) sin(pi/d). The two norm
// comparisons subtract a 1e-12 guard so exact-equality edge cases stay
// NotApplicable. InSuD iff |tr log U| < 1e-8.
LogTraceVerdict log_trace_bound_verdict(const ComplexMatrix& u, double r);

}  // namespace gsu
