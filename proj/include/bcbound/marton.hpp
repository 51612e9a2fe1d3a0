#pragma once

#include <array>

#include "bcbound/info_core.hpp"
#include "bcbound/optimizer.hpp"
#include "bcbound/theorem.hpp"

// Sum-rate functionals for binary-input broadcast channels: Marton inner
// bound, randomized time-division, and the two-auxiliary outer bound.

namespace bcbound {

struct RtdPoint {
  JointPMF joint_wx;  // 2x2 over (W,X)
};

// min{I(W;Y), I(W;Z)} + P(W=0) I(X;Y|W=0) + P(W=1) I(X;Z|W=1).
// Slices with P(W=w) = 0 contribute nothing.
double rtd_objective(const RtdPoint& pt, const BroadcastChannel& bc);

struct RtdMax {
  double value;
  RtdPoint argmax;
};

RtdMax rtd_sum_rate_max(const BroadcastChannel& bc, const OptimizerConfig& cfg);

// Witness for the structured Marton search: per-W deterministic gate plus
// per-W p(u,v).
struct MartonWitness {
  Distribution pw;                    // |W| = 2
  std::array<Gate, 2> per_w_gate;
  std::array<JointPMF, 2> per_w_puv;  // 2x2 each
};

// p(u,v,w,x) = p(w) p(u,v|w) [x = gate_w(u,v)], axis order (U,V,W,X).
JointPMF compose_witness(const MartonWitness& w);

// min{I(W;Y), I(W;Z)} + I(U;Y|W) + I(V;Z|W) - I(U;V|W) for any joint over
// (U,V,W,X) with axes at most 2.
double marton_objective(const JointPMF& joint_uvwx, const BroadcastChannel& bc);

struct MartonMax {
  double value;
  MartonWitness witness;
};

MartonMax marton_sum_rate_max(const BroadcastChannel& bc,
                              const OptimizerConfig& cfg);

// min{I(U;Y) + I(V;Z|U), I(V;Z) + I(U;Y|V)} for a joint over (U,V,X).
double outer_bound_objective(const JointPMF& joint_uvx,
                             const BroadcastChannel& bc);

struct OuterEstimate {
  double value;
  JointPMF argmax;  // |U| = |V| = 3
};

// Lower estimate of the outer-bound sum rate over |U| = |V| = 3 joints
// (binary auxiliaries provably undershoot the inner bound on the BSSC);
// an estimate, not a certified maximum.
OuterEstimate outer_bound_sum_rate_estimate(const BroadcastChannel& bc,
                                            const OptimizerConfig& cfg);

}  // namespace bcbound
