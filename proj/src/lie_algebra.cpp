#include "gsu/lie_algebra.hpp"

#include <cmath>
#include <sstream>

namespace gsu {

namespace {

RealMatrix coords_as_columns(const std::vector<AlgebraElement>& xs,
                             Eigen::Index n) {
  RealMatrix m(n, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (xs[j].coords.size() != n)
      throw InputError("algebra element has wrong coordinate count");
    m.col(static_cast<Eigen::Index>(j)) = xs[j].coords;
  }
  return m;
}

AlgebraElement column_element(const RealMatrix& basis, Eigen::Index j) {
  AlgebraElement e;
  e.coords = basis.col(j);
  return e;
}

// One round of bracket enrichment: span of current basis plus all pairwise
// brackets. Returns the new span and whether the dimension grew.
RealSubspace bracket_enrich(const RealSubspace& w, const SuStructure& s,
                            const Tolerances& tol, bool* grew) {
  const Eigen::Index m = w.dim();
  if (m < 2) {
    *grew = false;
    return w;
  }
  RealMatrix cand(w.ambient_dim, m + m * (m - 1) / 2);
  cand.leftCols(m) = w.basis;
  Eigen::Index col = m;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      cand.col(col++) =
          s.bracket(column_element(w.basis, i), column_element(w.basis, j))
              .coords;
  RealSubspace next = orthonormal_span(cand, tol.rank_tol);
  *grew = next.dim() > m;
  return next;
}

RealSubspace close_under_brackets(RealSubspace w, const SuStructure& s,
                                  const Tolerances& tol) {
  bool grew = true;
  // Each growth step adds at least one dimension; n + 1 rounds is a hard cap.
  for (int round = 0; grew && round <= s.n() + 1; ++round)
    w = bracket_enrich(w, s, tol, &grew);
  return w;
}

}  // namespace

RealSubspace generate_subalgebra(const std::vector<AlgebraElement>& xs,
                                 const SuStructure& s, const Tolerances& tol) {
  tol.validate();
  if (xs.empty()) throw InputError("generate_subalgebra: empty generator set");
  const RealSubspace w0 =
      orthonormal_span(coords_as_columns(xs, s.n()), tol.rank_tol);
  return close_under_brackets(w0, s, tol);
}

RealSubspace centralizer_in(const RealSubspace& g,
                            const std::vector<AlgebraElement>& xs,
                            const SuStructure& s, const Tolerances& tol) {
  tol.validate();
  if (g.ambient_dim != s.n())
    throw InputError("centralizer_in: subspace has wrong ambient dimension");
  const Eigen::Index m = g.dim();
  if (m == 0 || xs.empty()) return g;
  RealMatrix stacked(static_cast<Eigen::Index>(xs.size()) * s.n(), m);
  double scale = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const RealMatrix ad = s.ad_matrix(xs[k]);
    scale = std::max(scale, ad.norm());
    stacked.middleRows(static_cast<Eigen::Index>(k) * s.n(), s.n()) =
        ad * g.basis;
  }
  // Anchor the rank cutoff to the size of the ad operators; when every
  // bracket vanishes the stack is cancellation noise and must rank zero.
  const RealSubspace coeffs = real_null_space(stacked, tol.rank_tol, scale);
  RealSubspace out;
  out.ambient_dim = s.n();
  out.basis = g.basis * coeffs.basis;  // isometry composed with isometry
  return out;
}

RealSubspace commutant_of_operators(const std::vector<RealMatrix>& ops,
                                    Eigen::Index ambient_n,
                                    const Tolerances& tol) {
  tol.validate();
  if (ambient_n <= 0)
    throw InputError("commutant_of_operators: ambient dimension must be > 0");
  const Eigen::Index nn = ambient_n * ambient_n;
  // Cut the solution space down one operator at a time; the unknown A is a
  // column-major vectorized n x n matrix constrained by A M = M A.
  RealMatrix q = RealMatrix::Identity(nn, nn);
  for (const RealMatrix& m : ops) {
    if (m.rows() != ambient_n || m.cols() != ambient_n)
      throw InputError("commutant_of_operators: operator has wrong shape");
    if (q.cols() == 0) break;
    RealMatrix constraint(nn, q.cols());
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      const Eigen::Map<const RealMatrix> a(q.col(j).data(), ambient_n,
                                           ambient_n);
      const RealMatrix comm = a * m - m * a;
      constraint.col(j) =
          Eigen::Map<const RealVector>(comm.data(), nn);
    }
    // Columns of q are unit vectors, so the commutators scale with ||m||.
    const RealSubspace ns = real_null_space(constraint, tol.rank_tol, m.norm());
    q = q * ns.basis;
  }
  RealSubspace out;
  out.ambient_dim = nn;
  out.basis = std::move(q);
  return out;
}

RealMatrix projector_PX(const std::vector<AlgebraElement>& xs,
                        const SuStructure& s, const Tolerances& tol) {
  const RealSubspace c =
      centralizer_in(RealSubspace::full(s.n()), xs, s, tol);
  return c.projector();
}

RealSubspace derived_algebra(const RealSubspace& g, const SuStructure& s,
                             const Tolerances& tol) {
  tol.validate();
  if (g.ambient_dim != s.n())
    throw InputError("derived_algebra: subspace has wrong ambient dimension");
  const Eigen::Index m = g.dim();
  if (m == 0) return RealSubspace::zero(s.n());
  RealMatrix brackets(s.n(), m * (m - 1) / 2);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      brackets.col(col++) =
          s.bracket(column_element(g.basis, i), column_element(g.basis, j))
              .coords;
  if (col == 0) return RealSubspace::zero(s.n());
  RealMatrix widened(s.n(), m + brackets.cols());
  widened.leftCols(m) = g.basis;
  widened.rightCols(brackets.cols()) = brackets;
  if (orthonormal_span(widened, tol.rank_tol).dim() > m)
    throw InputError(
        "derived_algebra: input is not bracket-closed (dimension grows)");
  // Unit basis vectors put genuine brackets at unit scale; an abelian input
  // must yield the zero space, not a span of roundoff.
  return close_under_brackets(orthonormal_span(brackets, tol.rank_tol, 1.0), s,
                              tol);
}

std::pair<RealSubspace, RealSubspace> split_center_derived(
    const std::vector<AlgebraElement>& xs, const SuStructure& s,
    const Tolerances& tol) {
  if (xs.empty()) throw InputError("split_center_derived: empty generator set");
  const RealMatrix p = projector_PX(xs, s, tol);
  const RealMatrix cols = coords_as_columns(xs, s.n());
  double scale = 0.0;
  for (Eigen::Index j = 0; j < cols.cols(); ++j)
    scale = std::max(scale, cols.col(j).norm());
  const RealSubspace center = orthonormal_span(p * cols, tol.rank_tol, scale);
  // Residues below the rank cutoff of their source are projection roundoff;
  // fully central input has an empty derived part.
  std::vector<AlgebraElement> residue;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    AlgebraElement r;
    r.coords = xs[k].coords - p * xs[k].coords;
    if (r.coords.norm() > tol.rank_tol * xs[k].coords.norm())
      residue.push_back(std::move(r));
  }
  RealSubspace derived = residue.empty() ? RealSubspace::zero(s.n())
                                         : generate_subalgebra(residue, s, tol);
  return {center, derived};
}

namespace {

// Pulls a witness for C(small) being a proper subspace of C(big): the
// basis vector of `big` with the largest residual outside `small`.
std::optional<RealVector> proper_part_witness(const RealSubspace& big,
                                              const RealSubspace& small) {
  double best = 0.0;
  std::optional<RealVector> out;
  for (Eigen::Index j = 0; j < big.dim(); ++j) {
    RealVector r = big.basis.col(j);
    if (small.dim() > 0) r -= small.basis * (small.basis.transpose() * r);
    if (r.norm() > best) {
      best = r.norm();
      out = big.basis.col(j);
    }
  }
  return out;
}

RealSubspace full_adjoint_commutant(const SuStructure& s,
                                    const Tolerances& tol) {
  std::vector<RealMatrix> ops;
  ops.reserve(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) {
    AlgebraElement e;
    e.coords = RealVector::Zero(s.n());
    e.coords[i] = 1.0;
    ops.push_back(s.ad_matrix(e));
  }
  return commutant_of_operators(ops, s.n(), tol);
}

}  // namespace

Eigen::Index full_adjoint_commutant_dim(const SuStructure& s,
                                        const Tolerances& tol) {
  return full_adjoint_commutant(s, tol).dim();
}

AlgebraVerdict decide_algebra_universality(const std::vector<AlgebraElement>& xs,
                                           const SuStructure& s,
                                           const Tolerances& tol) {
  tol.validate();
  if (xs.empty())
    throw InputError("decide_algebra_universality: empty generator set");
  std::vector<RealMatrix> ops;
  ops.reserve(xs.size());
  for (const AlgebraElement& x : xs) ops.push_back(s.ad_matrix(x));
  const RealSubspace cx = commutant_of_operators(ops, s.n(), tol);
  const RealSubspace cref = full_adjoint_commutant(s, tol);

  AlgebraVerdict v;
  v.commutant = {cx.dim() == cref.dim(), cx.dim(), cref.dim()};

  // Center condition: P projects onto the centralizer of the whole algebra,
  // so Span(P(X)) must fill it. For su(d) both sides come out zero; they are
  // computed anyway.
  std::vector<AlgebraElement> basis_elements(static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); ++i) {
    basis_elements[static_cast<std::size_t>(i)].coords =
        RealVector::Zero(s.n());
    basis_elements[static_cast<std::size_t>(i)].coords[i] = 1.0;
  }
  const RealSubspace center =
      centralizer_in(RealSubspace::full(s.n()), basis_elements, s, tol);
  const RealMatrix p = center.projector();
  RealMatrix projected(s.n(), static_cast<Eigen::Index>(xs.size()));
  double x_scale = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    projected.col(static_cast<Eigen::Index>(k)) = p * xs[k].coords;
    x_scale = std::max(x_scale, xs[k].coords.norm());
  }
  const RealSubspace span_px =
      orthonormal_span(projected, tol.rank_tol, x_scale);
  v.dimension = {span_px.dim() == center.dim(), span_px.dim(), center.dim()};

  v.yes = v.commutant.equal && v.dimension.equal;
  if (!v.commutant.equal) {
    v.witness = proper_part_witness(cx, cref);
    v.witness_note =
        "operator commuting with every ad_x but not with the full adjoint "
        "family (vectorized)";
  } else if (!v.dimension.equal) {
    v.witness = proper_part_witness(center, span_px);
    v.witness_note = "central direction not reached by Span(P(X))";
  }
  return v;
}

AlgebraVerdict decide_algebra_membership(const std::vector<AlgebraElement>& x1,
                                         const std::vector<AlgebraElement>& y,
                                         const SuStructure& s,
                                         ProjectorVariant variant,
                                         const Tolerances& tol) {
  tol.validate();
  if (x1.empty())
    throw InputError("decide_algebra_membership: empty base set X1");
  std::vector<AlgebraElement> x2 = x1;
  x2.insert(x2.end(), y.begin(), y.end());

  std::vector<RealMatrix> ops1, ops2;
  for (const AlgebraElement& x : x1) ops1.push_back(s.ad_matrix(x));
  for (const AlgebraElement& x : x2) ops2.push_back(s.ad_matrix(x));
  const RealSubspace c1 = commutant_of_operators(ops1, s.n(), tol);
  const RealSubspace c2 = commutant_of_operators(ops2, s.n(), tol);

  const std::vector<AlgebraElement>& pivot =
      variant == ProjectorVariant::FromFirstSet ? x1 : x2;
  const RealMatrix p = projector_PX(pivot, s, tol);
  RealMatrix proj1(s.n(), static_cast<Eigen::Index>(x1.size()));
  RealMatrix proj2(s.n(), static_cast<Eigen::Index>(x2.size()));
  double x_scale = 0.0;
  for (std::size_t k = 0; k < x2.size(); ++k) {
    proj2.col(static_cast<Eigen::Index>(k)) = p * x2[k].coords;
    if (k < x1.size())
      proj1.col(static_cast<Eigen::Index>(k)) =
          proj2.col(static_cast<Eigen::Index>(k));
    x_scale = std::max(x_scale, x2[k].coords.norm());
  }
  const RealSubspace s1 = orthonormal_span(proj1, tol.rank_tol, x_scale);
  const RealSubspace s2 = orthonormal_span(proj2, tol.rank_tol, x_scale);

  AlgebraVerdict v;
  v.commutant = {c1.dim() == c2.dim(), c1.dim(), c2.dim()};
  v.dimension = {s1.dim() == s2.dim(), s1.dim(), s2.dim()};
  v.yes = v.commutant.equal && v.dimension.equal;
  if (!v.commutant.equal) {
    v.witness = proper_part_witness(c1, c2);
    v.witness_note =
        "operator commuting with ad over X1 but not over X1 union Y "
        "(vectorized)";
  } else if (!v.dimension.equal) {
    v.witness = proper_part_witness(s2, s1);
    v.witness_note = "projected direction reached by Y but not by X1";
  }
  return v;
}

bool is_simple(const RealSubspace& g, const SuStructure& s,
               const Tolerances& tol) {
  tol.validate();
  const Eigen::Index m = g.dim();
  if (m == 0) return false;
  const RealSubspace der = derived_algebra(g, s, tol);
  if (der.dim() != m) return false;
  std::vector<RealMatrix> restricted;
  restricted.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    AlgebraElement u;
    u.coords = g.basis.col(j);
    restricted.push_back(g.basis.transpose() * s.ad_matrix(u) * g.basis);
  }
  return commutant_of_operators(restricted, m, tol).dim() == 1;
}

}  // namespace gsu
