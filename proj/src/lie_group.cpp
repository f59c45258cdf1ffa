#include "gsu/lie_group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace gsu {

namespace {

constexpr double kInputTol = 1e-8;
constexpr double kBallRadius = M_SQRT1_2;  // 1/sqrt(2)

// Hash store over quantized matrix entries (cell = dedup_tol / sqrt(2 d^2)).
// Same-cell points are at most dedup_tol apart, and candidates are confirmed
// with an exact Frobenius check, so merges are never false. Lookups probe
// neighbor cells for coordinates within a small guard of a cell boundary so
// floating-point twins straddling a boundary still merge.
class DedupStore {
 public:
  DedupStore(int d, double dedup_tol)
      : cell_(dedup_tol / std::sqrt(2.0 * d * d)), tol_(dedup_tol) {}

  int find(const ComplexMatrix& m,
           const std::vector<ComplexMatrix>& elements) const {
    const std::size_t comps = component_count(m);
    std::vector<std::int64_t> base(comps);
    std::vector<std::uint8_t> low(comps), high(comps);
    std::size_t probes = 1;
    const double* raw = reinterpret_cast<const double*>(m.data());
    for (std::size_t c = 0; c < comps; ++c) {
      const double x = raw[c];
      const double k = std::floor(x / cell_);
      base[c] = static_cast<std::int64_t>(k);
      const double frac = x - k * cell_;
      low[c] = frac < kGuard ? 1 : 0;
      high[c] = cell_ - frac < kGuard ? 1 : 0;
      probes *= static_cast<std::size_t>(1 + low[c] + high[c]);
      if (probes > kProbeCap) break;
    }
    if (probes > kProbeCap) return scan_all(m, elements);

    std::vector<std::int64_t> key(comps);
    std::vector<int> state(comps, 0);  // 0 = base, 1 = -1, 2 = +1
    while (true) {
      for (std::size_t c = 0; c < comps; ++c)
        key[c] = base[c] + (state[c] == 1 ? -1 : state[c] == 2 ? 1 : 0);
      const auto it = buckets_.find(hash_key(key));
      if (it != buckets_.end()) {
        for (const int idx : it->second)
          if ((elements[static_cast<std::size_t>(idx)] - m).norm() < tol_)
            return idx;
      }
      // odometer over the allowed offsets of each component
      std::size_t c = 0;
      for (; c < comps; ++c) {
        if (state[c] == 0 && low[c]) {
          state[c] = 1;
          break;
        }
        if ((state[c] == 0 || state[c] == 1) && high[c]) {
          state[c] = 2;
          break;
        }
        state[c] = 0;
      }
      if (c == comps) return -1;
    }
  }

  void insert(const ComplexMatrix& m, int index) {
    const std::size_t comps = component_count(m);
    std::vector<std::int64_t> key(comps);
    const double* raw = reinterpret_cast<const double*>(m.data());
    for (std::size_t c = 0; c < comps; ++c)
      key[c] = static_cast<std::int64_t>(std::floor(raw[c] / cell_));
    buckets_[hash_key(key)].push_back(index);
  }

 private:
  static constexpr double kGuard = 1e-11;
  static constexpr std::size_t kProbeCap = 4096;

  static std::size_t component_count(const ComplexMatrix& m) {
    return static_cast<std::size_t>(m.size()) * 2;
  }

  static std::uint64_t hash_key(const std::vector<std::int64_t>& key) {
    std::uint64_t h = 1469598103934665603ull;
    for (const std::int64_t v : key) {
      auto u = static_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return h;
  }

  int scan_all(const ComplexMatrix& m,
               const std::vector<ComplexMatrix>& elements) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if ((elements[i] - m).norm() < tol_) return static_cast<int>(i);
    return -1;
  }

  double cell_;
  double tol_;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

void validate_gates(const std::vector<ComplexMatrix>& gates) {
  if (gates.empty()) throw InputError("word closure: empty gate set");
  const Eigen::Index d = gates.front().rows();
  if (d < 2) throw InputError("word closure: gates must be at least 2x2");
  for (const ComplexMatrix& g : gates) {
    if (g.rows() != d || g.cols() != d)
      throw InputError("word closure: gates have mismatched shapes");
    if (!is_special_unitary(g, kInputTol))
      throw InputError("word closure: gate is not special unitary within 1e-8");
  }
}

}  // namespace

std::vector<int> WordClosure::word_of(int index) const {
  std::vector<int> word;
  int cur = index;
  while (cur > 0) {
    word.push_back(via_gate[static_cast<std::size_t>(cur)]);
    cur = parent[static_cast<std::size_t>(cur)];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

WordClosure bfs_words_until(
    const std::vector<ComplexMatrix>& gates, int max_len, long element_budget,
    const Tolerances& tol,
    const std::function<bool(const WordClosure&, int)>& stop) {
  tol.validate();
  validate_gates(gates);
  if (max_len < 0) throw InputError("word closure: max_len must be >= 0");
  if (element_budget < 1)
    throw InputError("word closure: element budget must be >= 1");

  const int d = static_cast<int>(gates.front().rows());
  WordClosure closure;
  closure.d = d;
  closure.element_budget = element_budget;

  DedupStore store(d, tol.dedup_tol);
  const auto add_element = [&](const ComplexMatrix& m, int parent, int gate,
                               int len) {
    const int idx = static_cast<int>(closure.elements.size());
    closure.elements.push_back(m);
    closure.parent.push_back(parent);
    closure.via_gate.push_back(gate);
    closure.word_length.push_back(len);
    store.insert(m, idx);
    if (is_in_ball(m)) closure.ball_elements.push_back(idx);
    return idx;
  };

  add_element(ComplexMatrix::Identity(d, d), -1, -1, 0);
  if (stop && stop(closure, 0)) {
    closure.stopped_early = true;
    return closure;
  }

  std::vector<int> frontier{0};
  int len = 0;
  while (!frontier.empty() && len < max_len) {
    std::vector<int> next_frontier;
    for (const int f : frontier) {
      for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const ComplexMatrix p =
            closure.elements[static_cast<std::size_t>(f)] * gates[gi];
        if (store.find(p, closure.elements) >= 0) continue;
        if (static_cast<long>(closure.elements.size()) >= element_budget) {
          closure.budget_exhausted = true;
          return closure;
        }
        const int idx = add_element(p, f, static_cast<int>(gi), len + 1);
        next_frontier.push_back(idx);
        if (stop && stop(closure, idx)) {
          closure.stopped_early = true;
          return closure;
        }
      }
    }
    ++len;
    closure.max_len_reached = len;
    if (next_frontier.empty()) {
      closure.is_finite = true;
      break;
    }
    frontier = std::move(next_frontier);
  }
  return closure;
}

WordClosure bfs_words(const std::vector<ComplexMatrix>& gates, int max_len,
                      long element_budget, const Tolerances& tol) {
  return bfs_words_until(gates, max_len, element_budget, tol, nullptr);
}

std::pair<double, ComplexMatrix> center_distance(const ComplexMatrix& g) {
  if (g.rows() == 0 || g.rows() != g.cols())
    throw InputError("center_distance: expected a nonempty square matrix");
  const Eigen::Index d = g.rows();
  // ||g - w^k I||^2 = ||g||^2 + d - 2 Re(conj(w^k) tr g), so the nearest
  // center element maximizes Re(conj(w^k) tr g). The distance itself is
  // recomputed by subtraction: the closed form cancels to roundoff near the
  // center and its square root would inflate that noise past dedup_tol.
  const std::complex<double> tr = g.trace();
  double best = 0.0;
  int best_k = 0;
  for (int k = 0; k < d; ++k) {
    const double phase = 2.0 * M_PI * k / static_cast<double>(d);
    const double overlap = (std::polar(1.0, -phase) * tr).real();
    if (k == 0 || overlap > best) {
      best = overlap;
      best_k = k;
    }
  }
  const std::complex<double> w =
      std::polar(1.0, 2.0 * M_PI * best_k / static_cast<double>(d));
  const ComplexMatrix nearest = w * ComplexMatrix::Identity(d, d);
  return {(g - nearest).norm(), nearest};
}

bool is_in_ball(const ComplexMatrix& g) {
  return center_distance(g).first < kBallRadius;
}

std::pair<AlgebraElement, AlgebraElement> xy_parts(const ComplexMatrix& g,
                                                   const SuStructure& s) {
  if (g.rows() != s.dim_d() || g.cols() != s.dim_d())
    throw InputError("xy_parts: matrix has wrong shape");
  if (!is_special_unitary(g, kInputTol))
    throw InputError("xy_parts: input is not special unitary within 1e-8");
  const auto d = static_cast<double>(g.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(g.rows(), g.cols());
  ComplexMatrix x = (g - g.adjoint()) / 2.0;
  x -= (x.trace() / d) * id;
  ComplexMatrix y = std::complex<double>(0.0, -0.5) * (g + g.adjoint());
  y -= (y.trace() / d) * id;
  return {s.to_coords(x), s.to_coords(y)};
}

RealSubspace space_a(const WordClosure& closure, const SuStructure& s,
                     const Tolerances& tol) {
  if (closure.d != s.dim_d())
    throw InputError("space_a: closure and structure dimensions differ");
  RealMatrix cols(s.n(),
                  2 * static_cast<Eigen::Index>(closure.ball_elements.size()));
  Eigen::Index col = 0;
  for (const int idx : closure.ball_elements) {
    const auto [x, y] =
        xy_parts(closure.elements[static_cast<std::size_t>(idx)], s);
    cols.col(col++) = x.coords;
    cols.col(col++) = y.coords;
  }
  // Ball elements sitting at a center element contribute only roundoff;
  // anchoring at unit scale keeps them out of the span.
  return orthonormal_span(cols, tol.rank_tol, 1.0);
}

namespace {

BudgetReport budget_report(int max_len, long element_budget,
                           const WordClosure& closure) {
  BudgetReport b;
  b.max_word_length = max_len;
  b.element_budget = element_budget;
  b.max_len_reached = closure.max_len_reached;
  b.elements_explored = static_cast<long>(closure.elements.size());
  b.closure_finite = closure.is_finite;
  return b;
}

BudgetReport empty_budget_report(int max_len, long element_budget) {
  BudgetReport b;
  b.max_word_length = max_len;
  b.element_budget = element_budget;
  return b;
}

GroupWitness make_witness(const WordClosure& closure, int idx,
                          WitnessReason reason) {
  GroupWitness w;
  w.element = closure.elements[static_cast<std::size_t>(idx)];
  w.word = closure.word_of(idx);
  w.reason = reason;
  return w;
}

// Ball element not essentially central: the universality witness.
bool ball_non_center(const ComplexMatrix& g, const Tolerances& tol) {
  const auto [dist, center] = center_distance(g);
  return dist < kBallRadius && dist >= tol.dedup_tol;
}

// Ball element that moves some x under conjugation: the subgroup witness.
bool ball_non_commuting(const ComplexMatrix& g,
                        const std::vector<ComplexMatrix>& xs,
                        const Tolerances& tol) {
  if (!is_in_ball(g)) return false;
  for (const ComplexMatrix& x : xs)
    if ((g * x * g.adjoint() - x).norm() >= tol.commute_tol) return true;
  return false;
}

std::vector<RealMatrix> Ad_of_all(const std::vector<ComplexMatrix>& gates,
                                  const SuStructure& s) {
  std::vector<RealMatrix> ops;
  ops.reserve(gates.size());
  for (const ComplexMatrix& g : gates) ops.push_back(s.Ad_matrix(g));
  return ops;
}

std::vector<RealMatrix> ad_of_all(const std::vector<AlgebraElement>& xs,
                                  const SuStructure& s) {
  std::vector<RealMatrix> ops;
  ops.reserve(xs.size());
  for (const AlgebraElement& x : xs) ops.push_back(s.ad_matrix(x));
  return ops;
}

}  // namespace

GroupVerdict decide_group_universality(const std::vector<ComplexMatrix>& gates,
                                       int max_len, long element_budget,
                                       const Tolerances& tol) {
  tol.validate();
  validate_gates(gates);
  const int d = static_cast<int>(gates.front().rows());
  const SuStructure s(d);

  const Eigen::Index dim_s =
      commutant_of_operators(Ad_of_all(gates, s), s.n(), tol).dim();
  const Eigen::Index dim_full = full_adjoint_commutant_dim(s, tol);

  GroupVerdict v;
  v.commutant = {dim_s == dim_full, dim_s, dim_full};
  if (!v.commutant.equal) {
    v.answer = Answer::No;
    v.reason = "Ad commutant is larger than the full adjoint commutant";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }

  std::optional<int> witness_idx;
  const WordClosure closure = bfs_words_until(
      gates, max_len, element_budget, tol,
      [&](const WordClosure& c, int idx) {
        if (ball_non_center(c.elements[static_cast<std::size_t>(idx)], tol)) {
          witness_idx = idx;
          return true;
        }
        return false;
      });
  v.budget = budget_report(max_len, element_budget, closure);
  if (witness_idx) {
    v.answer = Answer::Yes;
    v.witness = make_witness(closure, *witness_idx, WitnessReason::BallNonCenter);
    v.reason = "trivial Ad commutant and a non-central ball element";
  } else if (closure.is_finite) {
    v.answer = Answer::No;
    v.reason = "closure is finite and every ball element sits at the center";
  } else {
    v.answer = Answer::Inconclusive;
    v.reason = "no ball witness within the word-length/element budget";
  }
  return v;
}

GroupVerdict decide_subgroup_universality(const std::vector<AlgebraElement>& xs,
                                          const std::vector<AlgebraElement>& ys,
                                          const SuStructure& s, int max_len,
                                          long element_budget,
                                          const Tolerances& tol) {
  tol.validate();
  if (xs.empty())
    throw InputError("decide_subgroup_universality: empty generator set X");
  if (ys.empty())
    throw InputError("decide_subgroup_universality: empty accessible set Y");
  const AlgebraVerdict member =
      decide_algebra_membership(xs, ys, s, ProjectorVariant::FromFirstSet, tol);
  if (!member.yes)
    throw HypothesisError(
        "decide_subgroup_universality: Y is not contained in the algebra "
        "generated by X");
  if (!is_simple(generate_subalgebra(xs, s, tol), s, tol))
    throw HypothesisError(
        "decide_subgroup_universality: the algebra generated by X is not "
        "simple");

  std::vector<ComplexMatrix> gates;
  gates.reserve(ys.size());
  for (const AlgebraElement& y : ys) gates.push_back(mat_exp(s.from_coords(y)));

  const Eigen::Index dim_group =
      commutant_of_operators(Ad_of_all(gates, s), s.n(), tol).dim();
  const Eigen::Index dim_alg =
      commutant_of_operators(ad_of_all(xs, s), s.n(), tol).dim();

  GroupVerdict v;
  v.commutant = {dim_group == dim_alg, dim_group, dim_alg};
  if (!v.commutant.equal) {
    v.answer = Answer::No;
    v.reason = "Ad commutant of exp(Y) exceeds the ad commutant of X";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }

  std::vector<ComplexMatrix> x_matrices;
  x_matrices.reserve(xs.size());
  for (const AlgebraElement& x : xs) x_matrices.push_back(s.from_coords(x));

  std::optional<int> witness_idx;
  const WordClosure closure = bfs_words_until(
      gates, max_len, element_budget, tol,
      [&](const WordClosure& c, int idx) {
        if (ball_non_commuting(c.elements[static_cast<std::size_t>(idx)],
                               x_matrices, tol)) {
          witness_idx = idx;
          return true;
        }
        return false;
      });
  v.budget = budget_report(max_len, element_budget, closure);
  if (witness_idx) {
    v.answer = Answer::Yes;
    v.witness =
        make_witness(closure, *witness_idx, WitnessReason::BallNonCommuting);
    v.reason = "matching commutants and a ball element moving X";
  } else if (closure.is_finite) {
    v.answer = Answer::No;
    v.reason = "closure is finite and its ball elements commute with X";
  } else {
    v.answer = Answer::Inconclusive;
    v.reason = "no ball witness within the word-length/element budget";
  }
  return v;
}

DiagramCase classify_diagram(const std::vector<AlgebraElement>& x1,
                             const std::vector<AlgebraElement>& yh,
                             const SuStructure& s, const Tolerances& tol) {
  tol.validate();
  if (x1.empty()) throw InputError("classify_diagram: empty base set X1");
  std::vector<AlgebraElement> x2 = x1;
  x2.insert(x2.end(), yh.begin(), yh.end());

  std::vector<ComplexMatrix> s1, s2;
  for (const AlgebraElement& x : x1) s1.push_back(mat_exp(s.from_coords(x)));
  s2 = s1;
  for (const AlgebraElement& y : yh) s2.push_back(mat_exp(s.from_coords(y)));

  DiagramCase dc;
  dc.dim_commutant_Ad_S1 =
      commutant_of_operators(Ad_of_all(s1, s), s.n(), tol).dim();
  dc.dim_commutant_Ad_S2 =
      commutant_of_operators(Ad_of_all(s2, s), s.n(), tol).dim();
  dc.dim_commutant_ad_X1 =
      commutant_of_operators(ad_of_all(x1, s), s.n(), tol).dim();
  dc.dim_commutant_ad_X2 =
      commutant_of_operators(ad_of_all(x2, s), s.n(), tol).dim();
  dc.top_equal = dc.dim_commutant_Ad_S1 == dc.dim_commutant_Ad_S2;
  dc.bottom_equal = dc.dim_commutant_ad_X1 == dc.dim_commutant_ad_X2;
  dc.left_equal = dc.dim_commutant_Ad_S1 == dc.dim_commutant_ad_X1;
  dc.right_equal = dc.dim_commutant_Ad_S2 == dc.dim_commutant_ad_X2;
  // The two actionable shapes: everything equal (closures can coincide), or
  // right edge equal with a strictly smaller bottom-right algebra (the added
  // generators enlarge the algebra, so the closures must differ).
  dc.decidable = (dc.left_equal && dc.right_equal && dc.bottom_equal) ||
                 (dc.right_equal && !dc.bottom_equal);
  return dc;
}

GroupVerdict decide_group_membership(const std::vector<AlgebraElement>& x1,
                                     const std::vector<AlgebraElement>& yh,
                                     const SuStructure& s, int max_len,
                                     long element_budget,
                                     const Tolerances& tol) {
  tol.validate();
  if (x1.empty())
    throw InputError("decide_group_membership: empty base set X1");
  if (yh.empty()) {
    // S2 = S1, so the closures coincide by definition.
    const DiagramCase dc = classify_diagram(x1, yh, s, tol);
    GroupVerdict v;
    v.diagram = dc;
    v.commutant = {true, dc.dim_commutant_Ad_S1, dc.dim_commutant_Ad_S2};
    v.answer = Answer::Yes;
    v.reason = "no added generators; the two closures are identical";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }

  std::vector<AlgebraElement> x2 = x1;
  x2.insert(x2.end(), yh.begin(), yh.end());
  if (!is_simple(generate_subalgebra(x2, s, tol), s, tol))
    throw HypothesisError(
        "decide_group_membership: the algebra generated by X1 union Y is not "
        "simple");

  const DiagramCase dc = classify_diagram(x1, yh, s, tol);
  GroupVerdict v;
  v.diagram = dc;
  v.commutant = {dc.top_equal, dc.dim_commutant_Ad_S1, dc.dim_commutant_Ad_S2};

  if (!dc.top_equal) {
    v.answer = Answer::No;
    v.reason = "Ad commutants of the two gate sets differ";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }

  const bool all_equal_shape =
      dc.left_equal && dc.right_equal && dc.bottom_equal;
  const bool extension_shape = dc.right_equal && !dc.bottom_equal;
  if (!all_equal_shape && !extension_shape) {
    v.answer = Answer::Inconclusive;
    v.reason = "inclusion diagram is one of the undecidable shapes";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }
  if (extension_shape && !is_simple(generate_subalgebra(x1, s, tol), s, tol)) {
    v.answer = Answer::Inconclusive;
    v.reason = "extension diagram needs a simple base algebra";
    v.budget = empty_budget_report(max_len, element_budget);
    return v;
  }

  std::vector<ComplexMatrix> s1_gates, x_matrices;
  for (const AlgebraElement& x : x1) {
    x_matrices.push_back(s.from_coords(x));
    s1_gates.push_back(mat_exp(x_matrices.back()));
  }
  std::optional<int> witness_idx;
  const WordClosure closure = bfs_words_until(
      s1_gates, max_len, element_budget, tol,
      [&](const WordClosure& c, int idx) {
        if (ball_non_commuting(c.elements[static_cast<std::size_t>(idx)],
                               x_matrices, tol)) {
          witness_idx = idx;
          return true;
        }
        return false;
      });
  v.budget = budget_report(max_len, element_budget, closure);
  if (!witness_idx) {
    v.answer = Answer::Inconclusive;
    v.reason = "no ball element moving X1 within the budget";
    return v;
  }
  v.witness =
      make_witness(closure, *witness_idx, WitnessReason::BallNonCommuting);
  if (all_equal_shape) {
    v.answer = Answer::Yes;
    v.reason = "all-equal diagram with a ball element moving X1";
  } else {
    v.answer = Answer::No;
    v.reason = "added generators enlarge the algebra under an equal right edge";
  }
  return v;
}

}  // namespace gsu
