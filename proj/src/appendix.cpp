#include "gsu/appendix.hpp"

#include <cmath>

#include "gsu/random.hpp"
#include "gsu/su_structure.hpp"

namespace gsu {

namespace {

constexpr double kLogR = 1.0;  // d = 41 >= ceil(40 / r^2) already at r = 1

ComplexMatrix near_identity_unitary(Rng& rng, const SuStructure& s,
                                    double norm) {
  AlgebraElement x = rng.algebra_element(s);
  const double have = x.coords.norm();
  if (have > 0.0) x.coords *= norm / have;
  return mat_exp(s.from_coords(x));
}

}  // namespace

AppendixReport verify_appendix(std::uint64_t seed, int samples) {
  AppendixReport report;
  report.seed = seed;
  report.samples = samples;
  Rng rng(seed);

  for (const int d : {2, 3, 5}) {
    const SuStructure s(d);
    for (int i = 0; i < samples; ++i) {
      // Alternate Haar draws with near-identity ones; the bound is only
      // tight near the identity.
      ComplexMatrix a, b;
      if (i % 2 == 0) {
        a = rng.haar_unitary(d);
        b = rng.haar_unitary(d);
      } else {
        a = near_identity_unitary(rng, s, 0.05 + 0.6 * rng.uniform());
        b = near_identity_unitary(rng, s, 0.05 + 0.6 * rng.uniform());
      }
      ++report.commutator_pairs_checked;
      if (!commutator_bound_holds(a, b)) ++report.commutator_failures;
    }
  }

  {
    const int d = 41;
    const SuStructure s(d);
    // ||exp(x) - 1|| <= ||x|| for skew-hermitian x, so norms up to 0.9 stay
    // inside both hypothesis radii (r = 1 and 2 sqrt(41) sin(pi/41) = 0.980).
    const int count = samples / 10;
    for (int i = 0; i < count; ++i) {
      const double norm = 0.1 + 0.8 * rng.uniform();
      const ComplexMatrix u = near_identity_unitary(rng, s, norm);
      ++report.log_trace_checked;
      if (log_trace_bound_verdict(u, kLogR) != LogTraceVerdict::InSuD)
        ++report.log_trace_failures;
    }

    const ComplexMatrix u =
        std::polar(1.0, 2.0 * M_PI / d) * ComplexMatrix::Identity(d, d);
    report.counterexample_not_applicable =
        log_trace_bound_verdict(u, kLogR) == LogTraceVerdict::NotApplicable;
    const double bound = 2.0 * std::sqrt(static_cast<double>(d)) *
                         std::sin(M_PI / static_cast<double>(d));
    report.counterexample_norm_gap =
        std::abs(frobenius_distance(u, ComplexMatrix::Identity(d, d)) - bound);
    report.counterexample_trace_log = std::abs(principal_log(u).trace());
  }
  return report;
}

}  // namespace gsu
