#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "gsu/errors.hpp"
#include "gsu/lie_group.hpp"
#include "gsu/random.hpp"

using namespace gsu;

namespace {

const std::complex<double> kI(0.0, 1.0);
const Tolerances kTol;

ComplexMatrix i_sigma(int axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case 0: m << 0, kI, kI, 0; break;
    case 1: m << 0, 1, -1, 0; break;
    default: m << kI, 0, 0, -kI; break;
  }
  return m;
}

ComplexMatrix embed(const ComplexMatrix& blk, int d, int at = 0) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m.block(at, at, 2, 2) = blk;
  return m;
}

// Identity outside the block, so the result stays special unitary.
ComplexMatrix embed_gate(const ComplexMatrix& blk, int d, int at = 0) {
  ComplexMatrix m = ComplexMatrix::Identity(d, d);
  m.block(at, at, 2, 2) = blk;
  return m;
}

ComplexMatrix hadamard_su() {  // -iH, the special unitary form of Hadamard
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return -kI * m / M_SQRT2;
}

ComplexMatrix phase_su(double theta) {  // diag(e^{-i t/2}, e^{i t/2})
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m.diagonal() << std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2);
  return m;
}

ComplexMatrix product_of_word(const std::vector<ComplexMatrix>& gates,
                              const std::vector<int>& word) {
  ComplexMatrix out = ComplexMatrix::Identity(gates[0].rows(), gates[0].cols());
  for (int g : word) out = out * gates[g];
  return out;
}

std::vector<AlgebraElement> block_su2_basis(const SuStructure& s) {
  return {s.to_coords(embed(i_sigma(0), s.dim_d())),
          s.to_coords(embed(i_sigma(1), s.dim_d())),
          s.to_coords(embed(i_sigma(2), s.dim_d()))};
}

}  // namespace

TEST_CASE("closure_of_the_identity_alone") {
  const WordClosure wc =
      bfs_words({ComplexMatrix::Identity(2, 2)}, 16, 1000, kTol);
  CHECK(wc.elements.size() == 1);
  CHECK(wc.is_finite);
  CHECK(wc.word_of(0).empty());
}

TEST_CASE("closure_of_an_order_four_rotation") {
  const ComplexMatrix g = mat_exp(M_PI / 2.0 * i_sigma(2));  // diag(i, -i)
  const WordClosure wc = bfs_words({g}, 16, 1000, kTol);
  REQUIRE(wc.elements.size() == 4);
  CHECK(wc.is_finite);
  for (int k = 0; k < 4; ++k) {
    const auto word = wc.word_of(k);
    CHECK((wc.elements[k] - product_of_word({g}, word)).norm() < 1e-12);
  }
}

TEST_CASE("closure_of_hadamard_and_s_has_48_elements") {
  const WordClosure wc =
      bfs_words({hadamard_su(), phase_su(M_PI / 2)}, 16, 200000, kTol);
  CHECK(wc.elements.size() == 48);
  CHECK(wc.is_finite);
  for (const auto& g : wc.elements) CHECK(is_special_unitary(g, 1e-8));
}

TEST_CASE("closure_words_reproduce_their_elements") {
  const std::vector<ComplexMatrix> gates = {hadamard_su(),
                                            phase_su(M_PI / 4)};
  const WordClosure wc = bfs_words(gates, 6, 200000, kTol);
  for (std::size_t k = 0; k < wc.elements.size(); ++k) {
    const auto word = wc.word_of(static_cast<int>(k));
    CHECK(static_cast<int>(word.size()) == wc.word_length[k]);
    CHECK((wc.elements[k] - product_of_word(gates, word)).norm() < 1e-10);
  }
}

TEST_CASE("duplicate_gates_do_not_enlarge_the_closure") {
  const ComplexMatrix g = mat_exp(M_PI / 2.0 * i_sigma(2));
  const WordClosure once = bfs_words({g}, 16, 1000, kTol);
  const WordClosure twice = bfs_words({g, g}, 16, 1000, kTol);
  CHECK(once.elements.size() == twice.elements.size());
}

TEST_CASE("element_budget_exhaustion_is_flagged") {
  const std::vector<ComplexMatrix> gates = {mat_exp(1.0 * i_sigma(2)),
                                            mat_exp(1.0 * i_sigma(0))};
  const WordClosure wc = bfs_words(gates, 16, 3, kTol);
  CHECK(wc.budget_exhausted);
  CHECK(!wc.is_finite);
  CHECK(wc.elements.size() <= 3);
}

TEST_CASE("stop_predicate_halts_the_search_early") {
  const std::vector<ComplexMatrix> gates = {hadamard_su(),
                                            phase_su(M_PI / 4)};
  const WordClosure wc = bfs_words_until(
      gates, 16, 200000, kTol,
      [](const WordClosure& c, int idx) { return c.word_length[idx] >= 1; });
  CHECK(wc.stopped_early);
  CHECK(wc.elements.size() == 2);  // identity plus the first insertion
}

TEST_CASE("closure_is_deterministic") {
  const std::vector<ComplexMatrix> gates = {hadamard_su(),
                                            phase_su(M_PI / 4)};
  const WordClosure a = bfs_words(gates, 6, 200000, kTol);
  const WordClosure b = bfs_words(gates, 6, 200000, kTol);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t k = 0; k < a.elements.size(); ++k)
    CHECK((a.elements[k] - b.elements[k]).norm() == 0.0);
}

TEST_CASE("center_distance_frozen_values") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(center_distance(id).first == Catch::Approx(0.0).margin(1e-14));

  const std::complex<double> omega = std::polar(1.0, 2.0 * M_PI / 3);
  const ComplexMatrix central = omega * ComplexMatrix::Identity(3, 3);
  const auto [dist_c, nearest_c] = center_distance(central);
  CHECK(dist_c < 1e-12);
  CHECK((nearest_c - central).norm() < 1e-12);

  const auto [dist_r, nearest_r] = center_distance(mat_exp(0.1 * i_sigma(2)));
  CHECK(dist_r == Catch::Approx(2.0 * M_SQRT2 * std::sin(0.05)));
  CHECK((nearest_r - id).norm() < 1e-12);

  CHECK(center_distance(kI * ComplexMatrix(i_sigma(0) / kI)).first ==
        Catch::Approx(2.0));
}

TEST_CASE("ball_boundary_sits_at_sin_quarter") {
  // exp(phi i sigma_z) has center distance 2 sqrt(2) |sin(phi/2)|.
  const double phi_edge = 2.0 * std::asin(0.25);
  CHECK(is_in_ball(mat_exp(phi_edge * 0.999 * i_sigma(2))));
  CHECK(!is_in_ball(mat_exp(phi_edge * 1.001 * i_sigma(2))));
  CHECK(is_in_ball(ComplexMatrix::Identity(2, 2)));
  CHECK(!is_in_ball(kI * ComplexMatrix(i_sigma(0) / kI)));
}

TEST_CASE("xy_parts_of_a_plain_rotation") {
  SuStructure s(2);
  const double t = 0.3;
  const auto [x, y] = xy_parts(mat_exp(t * i_sigma(2)), s);
  CHECK(x.coords.norm() == Catch::Approx(M_SQRT2 * std::sin(t)));
  CHECK(y.coords.norm() < 1e-12);
  const AlgebraElement zdir = s.to_coords(i_sigma(2));
  CHECK(std::abs(x.coords.dot(zdir.coords)) ==
        Catch::Approx(x.coords.norm() * zdir.coords.norm()));
}

TEST_CASE("xy_parts_vanish_on_central_elements_and_rebuild_the_input") {
  SuStructure s(3);
  const std::complex<double> omega = std::polar(1.0, 2.0 * M_PI / 3);
  const auto [xc, yc] = xy_parts(omega * ComplexMatrix::Identity(3, 3), s);
  CHECK(xc.coords.norm() < 1e-12);
  CHECK(yc.coords.norm() < 1e-12);

  Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix g = rng.haar_special_unitary(3);
    const auto [x, y] = xy_parts(g, s);
    const ComplexMatrix rebuilt = s.from_coords(x) + kI * s.from_coords(y) +
                                  g.trace() / 3.0 *
                                      ComplexMatrix::Identity(3, 3);
    CHECK((rebuilt - g).norm() < 1e-12);
  }
}

TEST_CASE("space_a_of_the_cyclic_16_closure") {
  SuStructure s(2);
  const WordClosure wc =
      bfs_words({mat_exp(M_PI / 8.0 * i_sigma(2))}, 32, 1000, kTol);
  REQUIRE(wc.elements.size() == 16);
  REQUIRE(wc.is_finite);
  // In the ball: the identity, both pi/8 neighbours, -1, and both
  // neighbours of -1.
  CHECK(wc.ball_elements.size() == 6);
  const RealSubspace a = space_a(wc, s, kTol);
  REQUIRE(a.dim() == 1);
  CHECK(a.contains(s.to_coords(i_sigma(2) / M_SQRT2).coords, 1e-10));

  // Ad-invariance of the span under every closure element.
  for (const auto& h : wc.elements) {
    const RealMatrix ad_h = s.Ad_matrix(h);
    for (Eigen::Index j = 0; j < a.dim(); ++j)
      CHECK(a.contains(ad_h * a.basis.col(j), 1e-8));
  }
}

TEST_CASE("space_a_of_the_48_element_closure_is_zero") {
  SuStructure s(2);
  const WordClosure wc =
      bfs_words({hadamard_su(), phase_su(M_PI / 2)}, 16, 200000, kTol);
  REQUIRE(wc.is_finite);
  for (int idx : wc.ball_elements)
    CHECK(center_distance(wc.elements[idx]).first < kTol.dedup_tol);
  CHECK(space_a(wc, s, kTol).dim() == 0);
}

TEST_CASE("space_a_of_the_hadamard_t_closure_reaches_dimension_three") {
  SuStructure s(2);
  const WordClosure wc =
      bfs_words({hadamard_su(), phase_su(M_PI / 4)}, 12, 200000, kTol);
  CHECK(!wc.is_finite);
  CHECK(space_a(wc, s, kTol).dim() == 3);
}

TEST_CASE("ball_of_a_finite_closure_is_abelian") {
  SuStructure s(2);
  for (const auto& gates : {std::vector<ComplexMatrix>{
                                mat_exp(M_PI / 8.0 * i_sigma(2))},
                            std::vector<ComplexMatrix>{
                                hadamard_su(), phase_su(M_PI / 2)}}) {
    const WordClosure wc = bfs_words(gates, 32, 200000, kTol);
    REQUIRE(wc.is_finite);
    for (int ia : wc.ball_elements)
      for (int ib : wc.ball_elements) {
        const ComplexMatrix& g = wc.elements[ia];
        const ComplexMatrix& h = wc.elements[ib];
        CHECK((g * h - h * g).norm() < 1e-8);
      }
  }
}

TEST_CASE("universality_yes_for_hadamard_and_t") {
  const GroupVerdict v = decide_group_universality(
      {hadamard_su(), phase_su(M_PI / 4)}, 16, 200000, kTol);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.commutant.equal);
  CHECK(v.commutant.dim_lhs == 1);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->reason == WitnessReason::BallNonCenter);
  CHECK(v.witness->word == std::vector<int>{1});  // T itself is the witness
  CHECK(is_in_ball(v.witness->element));
  CHECK(center_distance(v.witness->element).first >= kTol.dedup_tol);
}

TEST_CASE("universality_no_for_hadamard_and_s") {
  const GroupVerdict v = decide_group_universality(
      {hadamard_su(), phase_su(M_PI / 2)}, 16, 200000, kTol);
  CHECK(v.answer == Answer::No);
  CHECK(v.budget.closure_finite);
  CHECK(v.budget.elements_explored == 48);
  CHECK(!v.witness.has_value());
}

TEST_CASE("universality_no_for_a_single_rotation_via_the_commutant") {
  const GroupVerdict v = decide_group_universality(
      {mat_exp(M_PI / 2.0 * i_sigma(2))}, 16, 200000, kTol);
  CHECK(v.answer == Answer::No);
  CHECK(!v.commutant.equal);
  CHECK(v.commutant.dim_lhs == 5);
  CHECK(v.commutant.dim_rhs == 1);
  CHECK(v.budget.elements_explored == 0);  // no search needed
}

TEST_CASE("universality_inconclusive_until_the_witness_length_is_reachable") {
  const std::vector<ComplexMatrix> gates = {mat_exp(1.0 * i_sigma(2)),
                                            mat_exp(1.0 * i_sigma(0))};
  const GroupVerdict shallow = decide_group_universality(gates, 2, 200000, kTol);
  CHECK(shallow.answer == Answer::Inconclusive);
  CHECK(shallow.commutant.equal);

  const GroupVerdict deep = decide_group_universality(gates, 3, 200000, kTol);
  CHECK(deep.answer == Answer::Yes);
  REQUIRE(deep.witness.has_value());
  CHECK(deep.witness->word == std::vector<int>{0, 0, 0});
}

TEST_CASE("universality_inconclusive_on_budget_exhaustion") {
  const std::vector<ComplexMatrix> gates = {mat_exp(1.0 * i_sigma(2)),
                                            mat_exp(1.0 * i_sigma(0))};
  const GroupVerdict v = decide_group_universality(gates, 16, 3, kTol);
  CHECK(v.answer == Answer::Inconclusive);
  CHECK(!v.budget.closure_finite);
  CHECK(v.budget.elements_explored <= 3);
}

TEST_CASE("subgroup_universality_yes_inside_a_block") {
  SuStructure s(3);
  const auto xs = block_su2_basis(s);
  std::vector<AlgebraElement> ys = {xs[0], xs[2]};
  ys[0].coords *= 0.35;
  ys[1].coords *= 0.71;
  const GroupVerdict v =
      decide_subgroup_universality(xs, ys, s, 16, 200000, kTol);
  CHECK(v.answer == Answer::Yes);
  CHECK(v.commutant.equal);
  CHECK(v.commutant.dim_lhs == 6);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->reason == WitnessReason::BallNonCommuting);
}

TEST_CASE("subgroup_universality_no_for_octahedral_angles") {
  SuStructure s(3);
  const auto xs = block_su2_basis(s);
  AlgebraElement y1 = xs[0];
  y1.coords = -(M_PI / 2.0) * (xs[0].coords + xs[2].coords) / M_SQRT2;
  AlgebraElement y2 = xs[2];
  y2.coords *= -M_PI / 4.0;
  const GroupVerdict v =
      decide_subgroup_universality(xs, {y1, y2}, s, 16, 200000, kTol);
  CHECK(v.answer == Answer::No);
  CHECK(v.budget.closure_finite);
  CHECK(v.budget.elements_explored == 48);
}

TEST_CASE("subgroup_universality_rejects_y_outside_the_algebra") {
  SuStructure s(3);
  const auto xs = block_su2_basis(s);
  ComplexMatrix other = ComplexMatrix::Zero(3, 3);
  other(1, 2) = 1.0;
  other(2, 1) = -1.0;
  CHECK_THROWS_AS(decide_subgroup_universality(
                      {xs[0], xs[1], xs[2]}, {s.to_coords(other)}, s, 16,
                      200000, kTol),
                  HypothesisError);
}

TEST_CASE("subgroup_universality_rejects_a_non_simple_algebra") {
  SuStructure s(2);
  const AlgebraElement z = s.to_coords(i_sigma(2));
  CHECK_THROWS_AS(
      decide_subgroup_universality({z}, {z}, s, 16, 200000, kTol),
      HypothesisError);
}

TEST_CASE("diagram_all_equal_for_generic_su2_rotations") {
  SuStructure s(2);
  std::vector<AlgebraElement> x1 = {s.to_coords(0.80 * i_sigma(0)),
                                    s.to_coords(0.77 * i_sigma(1))};
  std::vector<AlgebraElement> yh = {s.to_coords(0.60 * i_sigma(2))};
  const DiagramCase dc = classify_diagram(x1, yh, s, kTol);
  CHECK(dc.dim_commutant_Ad_S1 == 1);
  CHECK(dc.dim_commutant_Ad_S2 == 1);
  CHECK(dc.dim_commutant_ad_X1 == 1);
  CHECK(dc.dim_commutant_ad_X2 == 1);
  CHECK(dc.top_equal);
  CHECK(dc.bottom_equal);
  CHECK(dc.left_equal);
  CHECK(dc.right_equal);
  CHECK(dc.decidable);
}

TEST_CASE("diagram_second_decidable_shape_for_z_then_x") {
  SuStructure s(2);
  const DiagramCase dc = classify_diagram({s.to_coords(0.80 * i_sigma(2))},
                                          {s.to_coords(0.77 * i_sigma(0))},
                                          s, kTol);
  CHECK(dc.dim_commutant_Ad_S1 == 3);
  CHECK(dc.dim_commutant_Ad_S2 == 1);
  CHECK(dc.dim_commutant_ad_X1 == 3);
  CHECK(dc.dim_commutant_ad_X2 == 1);
  CHECK(!dc.top_equal);
  CHECK(!dc.bottom_equal);
  CHECK(dc.left_equal);
  CHECK(dc.right_equal);
  CHECK(dc.decidable);
}

TEST_CASE("diagram_undecidable_shape_for_the_quaternion_closure") {
  SuStructure s(2);
  std::vector<AlgebraElement> x1 = {s.to_coords(M_PI / 2.0 * i_sigma(0)),
                                    s.to_coords(M_PI / 2.0 * i_sigma(1))};
  std::vector<AlgebraElement> yh = {s.to_coords(M_PI / 2.0 * i_sigma(2))};
  const DiagramCase dc = classify_diagram(x1, yh, s, kTol);
  CHECK(dc.dim_commutant_Ad_S1 == 3);
  CHECK(dc.dim_commutant_Ad_S2 == 3);
  CHECK(dc.dim_commutant_ad_X1 == 1);
  CHECK(dc.dim_commutant_ad_X2 == 1);
  CHECK(dc.top_equal);
  CHECK(dc.bottom_equal);
  CHECK(!dc.left_equal);
  CHECK(!dc.right_equal);
  CHECK(!dc.decidable);
}

TEST_CASE("diagram_with_no_added_generators_is_all_equal") {
  SuStructure s(2);
  const DiagramCase dc =
      classify_diagram({s.to_coords(0.80 * i_sigma(2))}, {}, s, kTol);
  CHECK(dc.top_equal);
  CHECK(dc.bottom_equal);
  CHECK(dc.decidable);
}

TEST_CASE("membership_yes_for_generic_rotations") {
  SuStructure s(2);
  std::vector<AlgebraElement> x1 = {s.to_coords(0.80 * i_sigma(0)),
                                    s.to_coords(0.77 * i_sigma(1))};
  std::vector<AlgebraElement> yh = {s.to_coords(0.60 * i_sigma(2))};
  const GroupVerdict v = decide_group_membership(x1, yh, s, 16, 200000, kTol);
  CHECK(v.answer == Answer::Yes);
  REQUIRE(v.diagram.has_value());
  CHECK(v.diagram->decidable);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->reason == WitnessReason::BallNonCommuting);
  CHECK(is_in_ball(v.witness->element));
}

TEST_CASE("membership_no_via_the_necessary_condition") {
  SuStructure s(2);
  const GroupVerdict v = decide_group_membership(
      {s.to_coords(0.80 * i_sigma(2))}, {s.to_coords(0.77 * i_sigma(0))}, s,
      16, 200000, kTol);
  CHECK(v.answer == Answer::No);
  CHECK(!v.commutant.equal);
  REQUIRE(v.diagram.has_value());
  CHECK(!v.diagram->top_equal);
}

TEST_CASE("membership_inconclusive_for_the_quaternion_instance") {
  SuStructure s(2);
  std::vector<AlgebraElement> x1 = {s.to_coords(M_PI / 2.0 * i_sigma(0)),
                                    s.to_coords(M_PI / 2.0 * i_sigma(1))};
  std::vector<AlgebraElement> yh = {s.to_coords(M_PI / 2.0 * i_sigma(2))};
  const GroupVerdict v = decide_group_membership(x1, yh, s, 16, 200000, kTol);
  CHECK(v.answer == Answer::Inconclusive);
  REQUIRE(v.diagram.has_value());
  CHECK(!v.diagram->decidable);
}

TEST_CASE("group_membership_with_an_empty_y_is_trivially_yes") {
  SuStructure s(2);
  const GroupVerdict v = decide_group_membership(
      {s.to_coords(0.80 * i_sigma(2))}, {}, s, 16, 200000, kTol);
  CHECK(v.answer == Answer::Yes);
}

TEST_CASE("membership_rejects_a_non_simple_union") {
  SuStructure s(2);
  CHECK_THROWS_AS(
      decide_group_membership({s.to_coords(0.80 * i_sigma(2))},
                              {s.to_coords(0.60 * i_sigma(2))}, s, 16,
                              200000, kTol),
      HypothesisError);
}

TEST_CASE("adjoint_commutant_is_stable_under_taking_words") {
  SuStructure s(2);
  const std::vector<ComplexMatrix> gates = {hadamard_su(),
                                            phase_su(M_PI / 2)};
  const WordClosure wc = bfs_words(gates, 16, 200000, kTol);
  REQUIRE(wc.is_finite);
  std::vector<RealMatrix> gate_ops, all_ops;
  for (const auto& g : gates) gate_ops.push_back(s.Ad_matrix(g));
  for (const auto& g : wc.elements) all_ops.push_back(s.Ad_matrix(g));
  CHECK(commutant_of_operators(gate_ops, s.n(), kTol).dim() ==
        commutant_of_operators(all_ops, s.n(), kTol).dim());
}

TEST_CASE("bfs_rejects_non_special_unitary_gates") {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= M_SQRT2;  // unitary but det = -1
  CHECK_THROWS_AS(bfs_words({h}, 4, 100, kTol), InputError);
  CHECK_THROWS_AS(bfs_words({}, 4, 100, kTol), InputError);
}

TEST_CASE("embedded_block_gates_stay_inside_the_block_closure") {
  const ComplexMatrix g = embed_gate(hadamard_su(), 3);
  const ComplexMatrix h = embed_gate(phase_su(M_PI / 2), 3);
  const WordClosure wc = bfs_words({g, h}, 16, 200000, kTol);
  CHECK(wc.elements.size() == 48);
  CHECK(wc.is_finite);
}
