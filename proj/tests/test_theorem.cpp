#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bcbound/sampling.hpp"
#include "bcbound/theorem.hpp"
#include "support/brute.hpp"

using namespace bcbound;

namespace {

BroadcastChannel identity_pair() {
  auto id = TransitionMatrix::validate({{1.0, 0.0}, {0.0, 1.0}}, 1e-12);
  return BroadcastChannel::make(id, id);
}

BroadcastChannel ss1_channel() {
  // both outputs independent of X
  auto ty = TransitionMatrix::validate({{0.6, 0.4}, {0.6, 0.4}}, 1e-12);
  auto tz = TransitionMatrix::validate({{0.3, 0.7}, {0.3, 0.7}}, 1e-12);
  return BroadcastChannel::make(ty, tz);
}

BroadcastChannel identity_y_noise_z() {
  auto id = TransitionMatrix::validate({{1.0, 0.0}, {0.0, 1.0}}, 1e-12);
  auto noise = TransitionMatrix::validate({{0.5, 0.5}, {0.5, 0.5}}, 1e-12);
  return BroadcastChannel::make(id, noise);
}

GateJoint gj(const Gate& g, std::vector<double> puv) {
  return GateJoint{JointPMF::exact({2, 2}, std::move(puv)), g};
}

OptimizerConfig small_cfg() {
  OptimizerConfig cfg;
  cfg.grid_resolution = 41;
  cfg.refine_iterations = 6;
  cfg.oracle_resolution = 8;
  return cfg;
}

}  // namespace

TEST_CASE("lhs closed forms") {
  // gate ignoring U with independent (U,V): LHS = I(V;Z)
  auto bc = bssc(0.5);
  auto g = kGatePassV;
  auto joint = gj(g, {0.4 * 0.7, 0.4 * 0.3, 0.6 * 0.7, 0.6 * 0.3});
  brute::Tensor5 t = brute::Tensor5::from(gate_joint_uvx(joint, 2), bc);
  CHECK(lhs_value(joint, bc) == doctest::Approx(t.mi(1, 4)).epsilon(1e-12));

  // constant gate: LHS = -I(U;V) <= 0
  auto cj = gj(kGateConst0, {0.4, 0.1, 0.1, 0.4});
  CHECK(lhs_value(cj, bc) == doctest::Approx(-mutual_information(cj.puv)).epsilon(1e-12));
  CHECK(lhs_value(cj, bc) <= 1e-12);

  // AND gate, uniform p(u,v), identity channels
  auto andj = gj(kGateAnd, {0.25, 0.25, 0.25, 0.25});
  CHECK(lhs_value(andj, identity_pair()) ==
        doctest::Approx(0.622556248918266).epsilon(1e-12));
}

TEST_CASE("rhs closed forms") {
  auto uni = Distribution::exact({0.5, 0.5});
  CHECK(rhs_value(uni, ss1_channel()) == doctest::Approx(0.0));
  CHECK(rhs_value(uni, identity_pair()) == doctest::Approx(1.0));
  CHECK(rhs_value(uni, bssc(0.5)) ==
        doctest::Approx(0.311278124459133).epsilon(1e-12));
}

TEST_CASE("margin closed forms and DPI") {
  auto bc = bssc(0.5);
  // constant gate: margin = I(U;V) at the point-mass input
  auto cj = gj(kGateConst0, {0.4, 0.1, 0.1, 0.4});
  CHECK(margin(cj, bc) == doctest::Approx(mutual_information(cj.puv)).epsilon(1e-12));

  // AND uniform, identity channels
  auto andj = gj(kGateAnd, {0.25, 0.25, 0.25, 0.25});
  CHECK(margin(andj, identity_pair()) ==
        doctest::Approx(0.188721875540867).epsilon(1e-12));

  // pass gate: margin >= 0 by data processing
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    auto joint = gj(kGatePassU, brute::simplex_point(4, rng));
    auto ch = random_channel(2, 3, Seed{500 + static_cast<std::uint64_t>(i)});
    CHECK(margin(joint, ch) >= -1e-12);
  }
}

TEST_CASE("margin agrees with the tensor oracle") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 100; ++i) {
    auto joint = random_gate_joint(Seed{static_cast<std::uint64_t>(9000 + i)});
    auto ch = random_channel(2 + static_cast<int>(rng() % 2), 2 + static_cast<int>(rng() % 2),
                             Seed{600 + static_cast<std::uint64_t>(i)});
    CHECK(margin(joint, ch) == doctest::Approx(brute::margin(joint, ch)).epsilon(1e-11));
  }
}

TEST_CASE("gate canonicalization: paper bijections") {
  // X = not(U) and V  ->  AND via U-flip with p00<->r10, p01<->r11, ...
  Gate not_u_and_v{{0, 1, 0, 0}};
  auto c = gate_canonicalize(not_u_and_v);
  CHECK(c.case_id == CanonicalGate::And);
  CHECK(c.relabeling.flip_u);
  CHECK_FALSE(c.relabeling.swap_uv);
  CHECK_FALSE(c.relabeling.flip_x);
  CHECK_FALSE(c.flip_channel);
  auto r = JointPMF::exact({2, 2}, {0.1, 0.2, 0.3, 0.4});
  auto p = transport_puv(r, c.relabeling);
  CHECK(p.masses() == std::vector<double>{0.3, 0.4, 0.1, 0.2});
  CHECK(transport_gate(not_u_and_v, c.relabeling) == kGateAnd);

  // X = U or V  ->  AND with p00<->q11, p01<->q01, p10<->q10, p11<->q00, flip
  auto c2 = gate_canonicalize(kGateOr);
  CHECK(c2.case_id == CanonicalGate::And);
  CHECK(c2.flip_channel);
  auto q = JointPMF::exact({2, 2}, {0.1, 0.2, 0.3, 0.4});
  auto p2 = transport_puv(q, c2.relabeling);
  CHECK(p2.masses() == std::vector<double>{0.4, 0.2, 0.3, 0.1});
  CHECK(transport_gate(kGateOr, c2.relabeling) == kGateAnd);

  // X = not(V)  ->  PASS via (U,V) swap and X flip
  Gate not_v{{1, 0, 1, 0}};
  auto c3 = gate_canonicalize(not_v);
  CHECK(c3.case_id == CanonicalGate::Pass);
  CHECK(c3.relabeling.swap_uv);
  CHECK(c3.relabeling.flip_x);
  CHECK(c3.flip_channel);
  CHECK(transport_gate(not_v, c3.relabeling) == kGatePassU);
}

TEST_CASE("canonicalization transport preserves lhs and margin") {
  std::mt19937_64 rng(79);
  for (int id = 0; id < 16; ++id) {
    Gate g = all_binary_gates()[static_cast<size_t>(id)];
    CanonicalCase c = gate_canonicalize(g);
    CHECK(transport_gate(g, c.relabeling) == canonical_gate_table(c.case_id));
    CHECK(c.flip_channel == c.relabeling.flip_x);
    for (int i = 0; i < 20; ++i) {
      auto joint = gj(g, brute::simplex_point(4, rng));
      auto bc = random_channel(2, 3, Seed{800 + static_cast<std::uint64_t>(16 * i + id)});
      GateJoint moved = transport(joint, c.relabeling);
      BroadcastChannel moved_bc = transport_channel(bc, c.relabeling);
      CHECK(lhs_value(moved, moved_bc) == doctest::Approx(lhs_value(joint, bc)).epsilon(1e-12));
      CHECK(margin(moved, moved_bc) == doctest::Approx(margin(joint, bc)).epsilon(1e-12));
    }
  }
}

TEST_CASE("equivalent conditional-entropy form equals the margin") {
  // constant gate identity case
  auto bc = bssc(0.5);
  auto cj = gj(kGateConst0, {0.4, 0.1, 0.1, 0.4});
  CHECK(equivalent_form_margin(cj, bc) == doctest::Approx(margin(cj, bc)).epsilon(1e-12));

  auto andj = gj(kGateAnd, {0.25, 0.25, 0.25, 0.25});
  CHECK(equivalent_form_margin(andj, identity_pair()) ==
        doctest::Approx(0.188721875540867).epsilon(1e-10));

  for (int i = 0; i < 200; ++i) {
    auto joint = random_gate_joint(Seed{static_cast<std::uint64_t>(i)});
    auto ch = random_channel(2, 2, Seed{static_cast<std::uint64_t>(10000 + i)});
    CHECK(std::abs(equivalent_form_margin(joint, ch) - margin(joint, ch)) <= 1e-10);
  }

  GateJoint bad{JointPMF::exact({2, 2}, {0.25, 0.25, 0.25, 0.25}), Gate{{0, 1, 2, 0}}};
  CHECK_THROWS_AS(equivalent_form_margin(bad, bc), std::invalid_argument);
}

TEST_CASE("max_lhs_for_gate on special channels") {
  auto cfg = small_cfg();
  // SS1: every information term through the channel vanishes
  for (CanonicalGate c : {CanonicalGate::Const, CanonicalGate::Pass,
                          CanonicalGate::And, CanonicalGate::Xor}) {
    auto r = max_lhs_for_gate(ss1_channel(), canonical_gate_table(c), cfg);
    CHECK(std::abs(r.max_lhs) <= 1e-10);
    CHECK(r.min_margin >= -1e-12);
  }
  // AND with Y identity, Z noise: maximum at the {X=U, V=1} vertex
  auto r = max_lhs_for_gate(identity_y_noise_z(), kGateAnd, cfg);
  CHECK(r.max_lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.argmax.puv.masses()[0] == doctest::Approx(0.0));  // p00 = 0
  CHECK(r.argmax.puv.masses()[2] == doctest::Approx(0.0));  // p10 = 0
  // XOR with Z noise: LHS <= I(X;Y); equality with V degenerate
  auto rx = max_lhs_for_gate(identity_y_noise_z(), kGateXor, cfg);
  CHECK(rx.max_lhs == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("max_lhs_for_gate exact re-evaluation and restricted mode") {
  auto bc = bssc(0.5);
  auto cfg = small_cfg();
  auto r = max_lhs_for_gate(bc, kGateAnd, cfg);
  CHECK(lhs_value(r.argmax, bc) == r.max_lhs);  // bit-exact
  CHECK(r.margin_at_argmax == r.rhs_at_argmax - r.max_lhs);

  auto fixed = Distribution::exact({0.75, 0.25});
  auto rf = max_lhs_for_gate(bc, kGateAnd, cfg, fixed);
  auto px = induced_px(rf.argmax, 2);
  CHECK(px[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rf.max_lhs <= r.max_lhs + 1e-9);
  // constant gate cannot induce a non-degenerate p(x)
  CHECK_THROWS_AS(max_lhs_for_gate(bc, kGateConst0, cfg, fixed), std::invalid_argument);
}

TEST_CASE("or/and channel-flip duality") {
  auto flip_rows = [](const BroadcastChannel& bc) {
    SymbolRelabeling r;
    r.flip_x = true;
    return transport_channel(bc, r);
  };
  auto cfg = small_cfg();
  for (int i = 0; i < 10; ++i) {
    auto bc = random_channel(2, 2, Seed{static_cast<std::uint64_t>(20000 + i)});
    auto r_or = max_lhs_for_gate(bc, kGateOr, cfg);
    auto r_and = max_lhs_for_gate(flip_rows(bc), kGateAnd, cfg);
    CHECK(std::abs(r_or.max_lhs - r_and.max_lhs) <= 1e-9);
  }
}

TEST_CASE("verify_binary_channel") {
  auto cfg = small_cfg();
  auto rep = verify_binary_channel(ss1_channel(), cfg);
  CHECK(rep.holds);
  CHECK(std::abs(rep.global_min_margin) <= 1e-10);
  CHECK(rep.per_gate.size() == 4);
  for (const auto& pg : rep.per_gate) {
    CHECK(pg.margin == pg.rhs_at_argmax - pg.max_lhs);
  }

  auto repb = verify_binary_channel(bssc(0.5), cfg);
  CHECK(repb.holds);
  CHECK(repb.global_min_margin >= -1e-9);
  CHECK(repb.global_min_margin <= 1e-3);  // the inequality is tight somewhere
  CHECK(repb.oracle_points > 0);
  CHECK(repb.oracle_min_margin >= -1e-9);

  for (int i = 0; i < 15; ++i) {
    auto bc = random_channel(2, 2, Seed{static_cast<std::uint64_t>(30000 + i)});
    CHECK(verify_binary_channel(bc, cfg).holds);
  }
}

TEST_CASE("verify is invariant under output relabeling") {
  auto cfg = small_cfg();
  auto bc = random_channel(3, 2, Seed{424242});
  // permute Y outputs (0 1 2) -> (2 0 1)
  std::vector<std::vector<double>> ry(2, std::vector<double>(3));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 3; ++y) ry[static_cast<size_t>(x)][static_cast<size_t>((y + 2) % 3)] = bc.to_y.at(x, y);
  }
  auto bc2 = BroadcastChannel::make(TransitionMatrix::validate(ry, 1e-12), bc.to_z);
  auto r1 = verify_binary_channel(bc, cfg);
  auto r2 = verify_binary_channel(bc2, cfg);
  for (size_t g = 0; g < r1.per_gate.size(); ++g) {
    CHECK(std::abs(r1.per_gate[g].max_lhs - r2.per_gate[g].max_lhs) <= 1e-10);
  }
}

TEST_CASE("search_violation finds the Blackwell witness") {
  OptimizerConfig cfg;
  cfg.grid_resolution = 7;  // keeps the 3x3 gate scan small
  auto w = search_violation(blackwell(), cfg);
  REQUIRE(w.has_value());
  CHECK(w->margin < -1e-3);
  CHECK(w->margin <= -0.69);
  CHECK(w->margin == w->rhs - w->lhs);
}

TEST_CASE("search_violation is empty on binary-like ternary channels") {
  OptimizerConfig cfg;
  cfg.grid_resolution = 7;
  // padded: x=2 behaves exactly like x=1
  auto ty = TransitionMatrix::validate({{0.9, 0.1}, {0.2, 0.8}, {0.2, 0.8}}, 1e-12);
  auto tz = TransitionMatrix::validate({{0.6, 0.4}, {0.3, 0.7}, {0.3, 0.7}}, 1e-12);
  CHECK_FALSE(search_violation(BroadcastChannel::make(ty, tz), cfg).has_value());

  // ternary SS1: both outputs ignore X entirely
  auto sy = TransitionMatrix::validate({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}, 1e-12);
  auto sz = TransitionMatrix::validate({{0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}}, 1e-12);
  CHECK_FALSE(search_violation(BroadcastChannel::make(sy, sz), cfg).has_value());

  CHECK_THROWS_AS(search_violation(bssc(0.5), cfg), std::invalid_argument);
}

TEST_CASE("local maxima collection is deterministic and refined") {
  auto cfg = small_cfg();
  auto bc = bssc(0.5);
  auto a = local_maxima_for_gate(bc, kGateXor, cfg, 6);
  auto b = local_maxima_for_gate(bc, kGateXor, cfg, 6);
  REQUIRE(a.size() == b.size());
  CHECK(!a.empty());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].puv.masses() == b[i].puv.masses());
  }
}
