#pragma once

#include <vector>

#include "gsu/matrix_core.hpp"

namespace gsu {

// Coordinates of an su(d) element in the orthonormal basis of an SuStructure.
struct AlgebraElement {
  RealVector coords;
};

// Orthonormal basis of su(d) under <x, y> = -tr(xy): the generalized
// Gell-Mann matrices times i/sqrt(2), ordered symmetric off-diagonal pairs,
// then antisymmetric pairs, then the d-1 diagonal elements. For d = 2 this
// is i*sigma_x/sqrt(2), i*sigma_y/sqrt(2), i*sigma_z/sqrt(2).
class SuStructure {
 public:
  explicit SuStructure(int d);  // throws InputError if d < 2

  int dim_d() const { return d_; }
  int n() const { return d_ * d_ - 1; }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  // Orthogonal projection onto basis coordinates; inverse of from_coords on
  // traceless skew-hermitian input.
  AlgebraElement to_coords(const ComplexMatrix& x) const;
  ComplexMatrix from_coords(const AlgebraElement& v) const;

  // Matrix of ad_x = [x, .] in basis coordinates (n x n, antisymmetric).
  RealMatrix ad_matrix(const AlgebraElement& x) const;

  // Matrix of Ad_g = g . g^{-1} in basis coordinates (n x n, orthogonal).
  // Throws InputError if g is not unitary within 1e-8.
  RealMatrix Ad_matrix(const ComplexMatrix& g) const;

  // -tr(xy) pushed to coordinates: the plain dot product.
  double inner_product(const AlgebraElement& x, const AlgebraElement& y) const;

  // Coordinates of [x, y].
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

 private:
  int d_;
  std::vector<ComplexMatrix> basis_;
};

}  // namespace gsu
