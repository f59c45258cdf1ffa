#pragma once

#include <stdexcept>
#include <string>

namespace gsu {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-contract input: bad files, non-unitary gates,
// empty generator sets, invalid tolerances.
struct InputError : Error {
  explicit InputError(const std::string& what) : Error(what) {}
};

// A decision procedure was called on data that violates the hypotheses it
// needs (e.g. target algebra not simple, Y outside the generated algebra).
// Distinct from an Inconclusive verdict: the question was not well-posed.
struct HypothesisError : Error {
  explicit HypothesisError(const std::string& what) : Error(what) {}
};

}  // namespace gsu
