#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bcbound/info_core.hpp"
#include "bcbound/optimizer.hpp"

// The central inequality
//     I(U;Y) + I(V;Z) - I(U;V) <= max{I(X;Y), I(X;Z)}
// for (U,V) -> X -> (Y,Z) with binary X, checked over the reduced search
// space of deterministic gates X = f(U,V) with binary U, V.

namespace bcbound {

// Deterministic map {0,1}^2 -> X symbol; table order (0,0),(0,1),(1,0),(1,1).
struct Gate {
  std::array<int, 4> table{0, 0, 0, 0};

  int operator()(int u, int v) const { return table[static_cast<size_t>(2 * u + v)]; }
  // For gates into binary X: 4-bit id, MSB = f(0,0).
  int id() const { return table[0] << 3 | table[1] << 2 | table[2] << 1 | table[3]; }
  bool operator==(const Gate&) const = default;
};

inline constexpr Gate kGateConst0{{0, 0, 0, 0}};
inline constexpr Gate kGateConst1{{1, 1, 1, 1}};
inline constexpr Gate kGatePassU{{0, 0, 1, 1}};
inline constexpr Gate kGatePassV{{0, 1, 0, 1}};
inline constexpr Gate kGateAnd{{0, 0, 0, 1}};
inline constexpr Gate kGateOr{{0, 1, 1, 1}};
inline constexpr Gate kGateXor{{0, 1, 1, 0}};

// All 16 binary gates, indexed by Gate::id().
const std::array<Gate, 16>& all_binary_gates();

struct GateJoint {
  JointPMF puv;  // 2x2 over (U,V)
  Gate gate;
};

// Induced input distribution p(x) of a gate joint, over nx symbols.
Distribution induced_px(const GateJoint& gj, int nx);

// Full joint p(u,v,x) with X = gate(U,V).
JointPMF gate_joint_uvx(const GateJoint& gj, int nx);

double lhs_value(const GateJoint& gj, const BroadcastChannel& bc);
double rhs_value(const Distribution& px, const BroadcastChannel& bc);
double margin(const GateJoint& gj, const BroadcastChannel& bc);

// margin computed through the conditional-entropy identity
//     H(U|Y) + H(V|Z) - min{H(UV|Y), H(UV|Z)};
// agrees with margin() to 1e-10 whenever X is a deterministic gate.
double equivalent_form_margin(const GateJoint& gj, const BroadcastChannel& bc);

enum class CanonicalGate { Const, Pass, And, Xor };
const char* canonical_gate_name(CanonicalGate g);
Gate canonical_gate_table(CanonicalGate g);

// Symbol relabeling applied in the fixed order: swap (U,V) roles (which also
// exchanges the Y/Z channels), then flip U, flip V, and finally flip X
// (which swaps the input rows of both channels).
struct SymbolRelabeling {
  bool swap_uv = false;
  bool flip_u = false;
  bool flip_v = false;
  bool flip_x = false;
};

struct CanonicalCase {
  CanonicalGate case_id;
  SymbolRelabeling relabeling;
  bool flip_channel;  // true iff the transport lands on the row-flipped channel
};

CanonicalCase gate_canonicalize(const Gate& g);

Gate transport_gate(const Gate& g, const SymbolRelabeling& rel);
JointPMF transport_puv(const JointPMF& puv, const SymbolRelabeling& rel);
BroadcastChannel transport_channel(const BroadcastChannel& bc,
                                   const SymbolRelabeling& rel);
GateJoint transport(const GateJoint& gj, const SymbolRelabeling& rel);

struct GateSearchResult {
  double max_lhs = 0;
  GateJoint argmax;
  double rhs_at_argmax = 0;
  double margin_at_argmax = 0;
  // Most violating point seen anywhere during the search.
  double min_margin = 0;
  GateJoint min_margin_point;
  long points_evaluated = 0;
};

// Deterministic lattice + refinement maximum of the LHS for one gate.
// With fixed_px, the search is restricted to joints inducing that p(x)
// (mass moves only within gate preimage classes); all vertices of the
// feasible region are included in the start set.
GateSearchResult max_lhs_for_gate(const BroadcastChannel& bc, const Gate& g,
                                  const OptimizerConfig& cfg,
                                  const std::optional<Distribution>& fixed_px = {});

// Distinct refined local maxima of the LHS for one gate (multi-start).
std::vector<GateJoint> local_maxima_for_gate(const BroadcastChannel& bc,
                                             const Gate& g,
                                             const OptimizerConfig& cfg,
                                             int max_points = 8);

struct PerGateResult {
  CanonicalGate case_id;
  Gate gate;
  double max_lhs;
  GateJoint argmax;
  double rhs_at_argmax;
  double margin;      // rhs_at_argmax - max_lhs
  double min_margin;  // over every searched point of this gate
  GateJoint min_margin_point;
};

struct VerificationReport {
  std::string channel_digest;
  std::vector<PerGateResult> per_gate;
  double global_min_margin = 0;
  bool holds = false;
  OptimizerConfig config;
  long points_evaluated = 0;
  // Coarse cross-check over non-deterministic p(u,v,x).
  double oracle_min_margin = 0;
  long oracle_points = 0;
};

VerificationReport verify_binary_channel(const BroadcastChannel& bc,
                                         const OptimizerConfig& cfg);

// Gate over general (U,V) alphabets used for |X| >= 3 counterexample hunts.
struct GeneralGate {
  int u_size = 2, v_size = 2;
  std::vector<int> table;  // row-major u * v_size + v -> x
  int operator()(int u, int v) const { return table[static_cast<size_t>(u * v_size + v)]; }
};

struct ViolationWitness {
  GeneralGate gate;
  std::vector<double> puv;  // row-major u_size x v_size
  double lhs, rhs, margin;
};

// Searches deterministic gates and p(u,v) grids over alphabets up to the
// input size for a point with margin < -1e-9; returns the most negative
// witness found, if any.
std::optional<ViolationWitness> search_violation(const BroadcastChannel& bc,
                                                 const OptimizerConfig& cfg);

}  // namespace bcbound
