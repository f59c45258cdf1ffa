#pragma once

#include <cstdint>
#include <random>

#include "gsu/matrix_core.hpp"
#include "gsu/su_structure.hpp"

namespace gsu {

// Seeded random source for sampling experiments. Gaussians are produced by
// Box-Muller on raw mt19937_64 output so streams are identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  ComplexMatrix ginibre(int d) {
    ComplexMatrix z(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        z(i, j) = std::complex<double>(gaussian(), gaussian());
    return z;
  }

  // Haar measure on U(d): QR of a Ginibre matrix with the R-diagonal phases
  // folded into Q.
  ComplexMatrix haar_unitary(int d) {
    const ComplexMatrix z = ginibre(d);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
      const std::complex<double> rjj = r(j, j);
      const double m = std::abs(rjj);
      q.col(j) *= (m > 0.0) ? rjj / m : std::complex<double>(1.0, 0.0);
    }
    return q;
  }

  // Haar measure on SU(d): the determinant phase is removed with the
  // principal d-th root, which commutes with left SU(d) translation.
  ComplexMatrix haar_special_unitary(int d) {
    const ComplexMatrix u = haar_unitary(d);
    const double phi = std::arg(u.determinant());
    return std::polar(1.0, -phi / static_cast<double>(d)) * u;
  }

  // Standard gaussian coordinates in the su(d) basis.
  AlgebraElement algebra_element(const SuStructure& s) {
    AlgebraElement x;
    x.coords = RealVector(s.n());
    for (int i = 0; i < s.n(); ++i) x.coords[i] = gaussian();
    return x;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace gsu
