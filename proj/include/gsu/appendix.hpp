#pragma once

#include <cstdint>

#include "gsu/matrix_core.hpp"

namespace gsu {

// Outcome of the numeric verification suite for the commutator and
// log-trace bounds. Counterexample fields describe U = e^{2 pi i / 41} I_41,
// which sits exactly on the distance bound and must come back NotApplicable.
struct AppendixReport {
  std::uint64_t seed = 0;
  int samples = 0;
  long commutator_pairs_checked = 0;
  long commutator_failures = 0;
  long log_trace_checked = 0;
  long log_trace_failures = 0;
  bool counterexample_not_applicable = false;
  double counterexample_norm_gap = 0.0;   // | ||U-1|| - 2 sqrt(d) sin(pi/d) |
  double counterexample_trace_log = 0.0;  // |tr log U|, nonzero by design

  bool all_passed() const {
    return commutator_failures == 0 && log_trace_failures == 0 &&
           counterexample_not_applicable && counterexample_norm_gap < 1e-10;
  }
};

// Checks the sqrt(2) commutator inequality on `samples` random unitary pairs
// for each d in {2, 3, 5} (alternating Haar and near-identity draws), the
// zero-trace property of the principal logarithm on samples/10 constructed
// near-identity elements of SU(41), and the tightness counterexample.
AppendixReport verify_appendix(std::uint64_t seed, int samples);

}  // namespace gsu
