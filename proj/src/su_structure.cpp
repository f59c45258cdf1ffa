#include "gsu/su_structure.hpp"

#include <cmath>
#include <sstream>

namespace gsu {

namespace {
constexpr double kInputTol = 1e-8;
}

SuStructure::SuStructure(int d) : d_(d) {
  if (d < 2) throw InputError("SuStructure: d must be at least 2");
  const std::complex<double> i_unit(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  basis_.reserve(static_cast<std::size_t>(n()));
  // Symmetric off-diagonal family: i(E_jk + E_kj)/sqrt(2).
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(d, d);
      b(j, k) = i_unit * inv_sqrt2;
      b(k, j) = i_unit * inv_sqrt2;
      basis_.push_back(b);
    }
  }
  // Antisymmetric family: i * (-i)(E_jk - E_kj)/sqrt(2) = (E_jk - E_kj)/sqrt(2).
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix b = ComplexMatrix::Zero(d, d);
      b(j, k) = inv_sqrt2;
      b(k, j) = -inv_sqrt2;
      basis_.push_back(b);
    }
  }
  // Diagonal family: i * diag(1,..,1,-l,0,..,0) / sqrt(l(l+1)).
  for (int l = 1; l < d; ++l) {
    ComplexMatrix b = ComplexMatrix::Zero(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) b(j, j) = i_unit * scale;
    b(l, l) = -i_unit * scale * static_cast<double>(l);
    basis_.push_back(b);
  }
}

AlgebraElement SuStructure::to_coords(const ComplexMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_)
    throw InputError("to_coords: matrix has wrong shape");
  RealVector v(n());
  for (int i = 0; i < n(); ++i) {
    // <b_i, x> = -tr(b_i x); real for skew-hermitian input.
    v[i] = -(basis_[static_cast<std::size_t>(i)] * x).trace().real();
  }
  AlgebraElement out;
  out.coords = std::move(v);
  return out;
}

ComplexMatrix SuStructure::from_coords(const AlgebraElement& v) const {
  if (v.coords.size() != n()) {
    std::ostringstream os;
    os << "from_coords: expected " << n() << " coordinates, got "
       << v.coords.size();
    throw InputError(os.str());
  }
  ComplexMatrix x = ComplexMatrix::Zero(d_, d_);
  for (int i = 0; i < n(); ++i)
    x += v.coords[i] * basis_[static_cast<std::size_t>(i)];
  return x;
}

RealMatrix SuStructure::ad_matrix(const AlgebraElement& x) const {
  const ComplexMatrix xm = from_coords(x);
  RealMatrix m(n(), n());
  for (int j = 0; j < n(); ++j) {
    const ComplexMatrix& bj = basis_[static_cast<std::size_t>(j)];
    const ComplexMatrix br = xm * bj - bj * xm;
    for (int i = 0; i < n(); ++i)
      m(i, j) = -(basis_[static_cast<std::size_t>(i)] * br).trace().real();
  }
  return m;
}

RealMatrix SuStructure::Ad_matrix(const ComplexMatrix& g) const {
  if (g.rows() != d_ || g.cols() != d_)
    throw InputError("Ad_matrix: matrix has wrong shape");
  if (!is_unitary(g, kInputTol))
    throw InputError("Ad_matrix: g is not unitary within 1e-8");
  RealMatrix m(n(), n());
  for (int j = 0; j < n(); ++j) {
    const ComplexMatrix conj =
        g * basis_[static_cast<std::size_t>(j)] * g.adjoint();
    for (int i = 0; i < n(); ++i)
      m(i, j) = -(basis_[static_cast<std::size_t>(i)] * conj).trace().real();
  }
  return m;
}

double SuStructure::inner_product(const AlgebraElement& x,
                                  const AlgebraElement& y) const {
  if (x.coords.size() != n() || y.coords.size() != n())
    throw InputError("inner_product: coordinate size mismatch");
  return x.coords.dot(y.coords);
}

AlgebraElement SuStructure::bracket(const AlgebraElement& x,
                                    const AlgebraElement& y) const {
  const ComplexMatrix xm = from_coords(x);
  const ComplexMatrix ym = from_coords(y);
  return to_coords(xm * ym - ym * xm);
}

}  // namespace gsu
