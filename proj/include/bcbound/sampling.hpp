#pragma once

#include <cstdint>

#include "bcbound/info_core.hpp"
#include "bcbound/theorem.hpp"

// Named channels and seeded random objects. Every sampler is a pure function
// of its seed; identical seeds give bit-identical outputs on any platform
// (mt19937_64 with explicit bit-to-double mapping).

namespace bcbound {

struct Seed {
  std::uint64_t value = 0;
};

// Binary skew-symmetric broadcast channel, as a pair of mirrored Z-channels:
//   to_y = [[1, 0], [skew, 1-skew]]
//   to_z = [[1-skew, skew], [0, 1]]
// skew = 1/2 is the canonical BSSC. The matrix convention is internal to
// this artifact; relabeling-invariant results do not depend on it.
BroadcastChannel bssc(double skew);

// Ternary-input deterministic channel: y(x) = {0,0,1}, z(x) = {0,1,1}.
BroadcastChannel blackwell();

// Binary-input channel with rows drawn uniformly from the output simplex
// (exponential-spacings construction). ny, nz in [2, 8].
BroadcastChannel random_channel(int ny, int nz, Seed seed);

// Gate uniform over the 16 binary gates, p(u,v) uniform over the 3-simplex.
GateJoint random_gate_joint(Seed seed);

}  // namespace bcbound
