#include "gsu/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gsu {

namespace {

constexpr double kInputTol = 1e-8;

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    std::ostringstream os;
    os << who << ": expected a nonempty square matrix, got " << a.rows() << "x"
       << a.cols();
    throw InputError(os.str());
  }
}

// Largest-magnitude coordinate positive, first index wins ties.
void fix_sign(Eigen::Ref<RealVector> v) {
  Eigen::Index imax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (v[imax] < 0.0) v = -v;
}

}  // namespace

void Tolerances::validate() const {
  if (!(rank_tol > 0.0) || !std::isfinite(rank_tol))
    throw InputError("tolerances: rank_tol must be positive and finite");
  if (!(dedup_tol > 0.0) || !std::isfinite(dedup_tol))
    throw InputError("tolerances: dedup_tol must be positive and finite");
  if (!(dedup_tol < 1.0 / std::sqrt(2.0)))
    throw InputError("tolerances: dedup_tol must stay below 1/sqrt(2)");
  if (!(commute_tol > 0.0) || !std::isfinite(commute_tol))
    throw InputError("tolerances: commute_tol must be positive and finite");
}

bool is_finite_matrix(const ComplexMatrix& a) {
  return a.allFinite();
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite()) return false;
  const ComplexMatrix gram = a.adjoint() * a;
  return (gram - ComplexMatrix::Identity(a.rows(), a.cols())).norm() <= tol;
}

bool is_special_unitary(const ComplexMatrix& a, double tol) {
  if (!is_unitary(a, tol)) return false;
  return std::abs(a.determinant() - std::complex<double>(1.0, 0.0)) <= tol;
}

bool is_skew_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite()) return false;
  return (a + a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

bool is_traceless(const ComplexMatrix& a, double tol) {
  if (!a.allFinite()) return false;
  return std::abs(a.trace()) <= tol * std::max(1.0, a.norm());
}

double frobenius_norm(const ComplexMatrix& a) {
  return a.norm();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

ComplexMatrix mat_exp(const ComplexMatrix& x) {
  require_square(x, "mat_exp");
  if (!x.allFinite()) throw InputError("mat_exp: non-finite entries");
  if (!is_skew_hermitian(x, kInputTol))
    throw InputError("mat_exp: input is not skew-hermitian within 1e-8");
  // X = iA with A hermitian; exp(X) = V e^{i diag} V^*.
  const std::complex<double> mi(0.0, -1.0);
  ComplexMatrix a = mi * x;
  a = (a + ComplexMatrix(a.adjoint())) * 0.5;  // kill roundoff asymmetry
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success)
    throw InputError("mat_exp: eigendecomposition failed");
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases[i] = std::polar(1.0, lam[i]);
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix principal_log(const ComplexMatrix& u) {
  require_square(u, "principal_log");
  if (!is_unitary(u, kInputTol))
    throw InputError("principal_log: input is not unitary within 1e-8");
  // For a unitary matrix the Schur form is diagonal; Q stays unitary, which
  // keeps the reconstructed log exactly skew-hermitian up to roundoff.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw InputError("principal_log: Schur decomposition failed");
  const ComplexMatrix& q = schur.matrixU();
  Eigen::VectorXcd logs(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const std::complex<double> lam = schur.matrixT()(i, i);
    double theta = std::atan2(lam.imag(), lam.real());
    if (theta <= -M_PI) theta = M_PI;  // branch: eigenvalue -1 -> +i pi
    logs[i] = std::complex<double>(0.0, theta);
  }
  return q * logs.asDiagonal() * q.adjoint();
}

RealMatrix RealSubspace::projector() const {
  if (dim() == 0) return RealMatrix::Zero(ambient_dim, ambient_dim);
  return basis * basis.transpose();
}

bool RealSubspace::contains(const RealVector& v, double tol) const {
  if (v.size() != ambient_dim)
    throw InputError("RealSubspace::contains: ambient dimension mismatch");
  const double scale = std::max(1.0, v.norm());
  if (dim() == 0) return v.norm() <= tol * scale;
  const RealVector residual = v - basis * (basis.transpose() * v);
  return residual.norm() <= tol * scale;
}

RealSubspace RealSubspace::zero(Eigen::Index ambient) {
  RealSubspace s;
  s.ambient_dim = ambient;
  s.basis = RealMatrix::Zero(ambient, 0);
  return s;
}

RealSubspace RealSubspace::full(Eigen::Index ambient) {
  RealSubspace s;
  s.ambient_dim = ambient;
  s.basis = RealMatrix::Identity(ambient, ambient);
  return s;
}

RealSubspace real_null_space(const RealMatrix& m, double rank_tol,
                             double scale) {
  if (!(rank_tol > 0.0)) throw InputError("real_null_space: rank_tol <= 0");
  const Eigen::Index n = m.cols();
  if (n == 0) return RealSubspace::zero(0);
  if (m.rows() == 0 || m.norm() == 0.0) return RealSubspace::full(n);
  // JacobiSVD over BDCSVD: the divide-and-conquer kernel miscomputes (down
  // to NaN singular values) on matrices with clustered spectra, which the
  // commutant constraints produce constantly. Sizes here are small.
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (!sv.allFinite()) throw Error("real_null_space: SVD failed");
  const double cutoff = rank_tol * std::max(sv[0], scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] >= cutoff) ++rank;
  // rows() < cols() leaves cols-rows columns of V with no singular value;
  // they belong to the null space as well.
  RealSubspace out;
  out.ambient_dim = n;
  out.basis = svd.matrixV().rightCols(n - rank);
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j)
    fix_sign(out.basis.col(j));
  return out;
}

RealSubspace orthonormal_span(const RealMatrix& vectors_as_columns,
                              double rank_tol, double scale) {
  if (!(rank_tol > 0.0)) throw InputError("orthonormal_span: rank_tol <= 0");
  const Eigen::Index n = vectors_as_columns.rows();
  if (vectors_as_columns.cols() == 0 || n == 0 ||
      vectors_as_columns.norm() == 0.0)
    return RealSubspace::zero(n);
  Eigen::JacobiSVD<RealMatrix> svd(vectors_as_columns, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  if (!sv.allFinite()) throw Error("orthonormal_span: SVD failed");
  const double cutoff = rank_tol * std::max(sv[0], scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] >= cutoff) ++rank;
  RealSubspace out;
  out.ambient_dim = n;
  out.basis = svd.matrixU().leftCols(rank);
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j)
    fix_sign(out.basis.col(j));
  return out;
}

RealSubspace subspace_intersection(const RealSubspace& a, const RealSubspace& b,
                                   double rank_tol) {
  if (a.ambient_dim != b.ambient_dim)
    throw InputError("subspace_intersection: ambient dimension mismatch");
  const Eigen::Index n = a.ambient_dim;
  // v in both spans iff both complementary projections kill v.
  RealMatrix stacked(2 * n, n);
  stacked.topRows(n) = RealMatrix::Identity(n, n) - a.projector();
  stacked.bottomRows(n) = RealMatrix::Identity(n, n) - b.projector();
  // Projectors have unit scale; without the anchor, two full spaces would
  // intersect to zero on cancellation noise.
  return real_null_space(stacked, rank_tol, 1.0);
}

RealSubspace orthogonal_complement(const RealSubspace& a, double rank_tol) {
  if (a.dim() == 0) return RealSubspace::full(a.ambient_dim);
  return real_null_space(a.basis.transpose(), rank_tol);
}

double subspace_distance(const RealSubspace& a, const RealSubspace& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw InputError("subspace_distance: ambient dimension mismatch");
  return (a.projector() - b.projector()).norm();
}

ComplexMatrix group_commutator(const ComplexMatrix& g, const ComplexMatrix& h) {
  require_square(g, "group_commutator");
  if (g.rows() != h.rows() || g.cols() != h.cols())
    throw InputError("group_commutator: shape mismatch");
  if (!is_unitary(g, kInputTol) || !is_unitary(h, kInputTol))
    throw InputError("group_commutator: inputs must be unitary within 1e-8");
  return g * h * g.adjoint() * h.adjoint();
}

bool commutator_bound_holds(const ComplexMatrix& g, const ComplexMatrix& h) {
  const ComplexMatrix c = group_commutator(g, h);
  const ComplexMatrix id = ComplexMatrix::Identity(g.rows(), g.cols());
  const double lhs = (c - id).norm();
  const double rhs = std::sqrt(2.0) * (g - id).norm() * (h - id).norm();
  return lhs <= rhs + 1e-12;
}

LogTraceVerdict log_trace_bound_verdict(const ComplexMatrix& u, double r) {
  require_square(u, "log_trace_bound_verdict");
  if (!(r > 0.0) || r > 1.0 || !std::isfinite(r))
    throw InputError("log_trace_bound_verdict: r must lie in (0, 1]");
  if (!is_special_unitary(u, kInputTol))
    throw InputError(
        "log_trace_bound_verdict: input is not special unitary within 1e-8");
  const auto d = static_cast<double>(u.rows());
  const double dist =
      frobenius_distance(u, ComplexMatrix::Identity(u.rows(), u.cols()));
  const double dim_floor = std::ceil(40.0 / (r * r));
  // Strict inequalities with a guard: exact-boundary inputs (the tightness
  // case ||U-1|| = 2 sqrt(d) sin(pi/d)) must never pass the hypotheses.
  const bool hypotheses = d >= dim_floor && dist < r - 1e-12 &&
                          dist < 2.0 * std::sqrt(d) * std::sin(M_PI / d) - 1e-12;
  if (!hypotheses) return LogTraceVerdict::NotApplicable;
  const ComplexMatrix x = principal_log(u);
  return std::abs(x.trace()) < 1e-8 ? LogTraceVerdict::InSuD
                                    : LogTraceVerdict::BoundViolatedPreconditions;
}

}  // namespace gsu
