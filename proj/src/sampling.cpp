#include "bcbound/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bcbound {

namespace {

// (0,1) strictly, from the standard-pinned mt19937_64 stream.
double next_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform on the (n-1)-simplex via normalized exponential spacings.
std::vector<double> uniform_simplex(int n, std::mt19937_64& rng) {
  std::vector<double> e(static_cast<size_t>(n));
  double total = 0;
  for (double& x : e) {
    x = -std::log(next_unit(rng));
    total += x;
  }
  for (double& x : e) x /= total;
  return e;
}

}  // namespace

BroadcastChannel bssc(double skew) {
  if (!(skew > 0.0 && skew < 1.0)) {
    throw std::invalid_argument("bssc skew must lie in (0,1)");
  }
  auto to_y = TransitionMatrix::validate({{1.0, 0.0}, {skew, 1.0 - skew}},
                                         kInternalTol);
  auto to_z = TransitionMatrix::validate({{1.0 - skew, skew}, {0.0, 1.0}},
                                         kInternalTol);
  return BroadcastChannel::make(std::move(to_y), std::move(to_z));
}

BroadcastChannel blackwell() {
  auto to_y = TransitionMatrix::validate({{1, 0}, {1, 0}, {0, 1}}, kInternalTol);
  auto to_z = TransitionMatrix::validate({{1, 0}, {0, 1}, {0, 1}}, kInternalTol);
  return BroadcastChannel::make(std::move(to_y), std::move(to_z));
}

BroadcastChannel random_channel(int ny, int nz, Seed seed) {
  if (ny < 2 || ny > 8 || nz < 2 || nz > 8) {
    throw std::invalid_argument("random_channel output sizes must be in [2,8]");
  }
  std::mt19937_64 rng(seed.value);
  std::vector<std::vector<double>> ry, rz;
  for (int x = 0; x < 2; ++x) ry.push_back(uniform_simplex(ny, rng));
  for (int x = 0; x < 2; ++x) rz.push_back(uniform_simplex(nz, rng));
  return BroadcastChannel::make(TransitionMatrix::validate(ry, kInternalTol),
                                TransitionMatrix::validate(rz, kInternalTol));
}

GateJoint random_gate_joint(Seed seed) {
  std::mt19937_64 rng(seed.value);
  int id = static_cast<int>(rng() % 16);  // 16 divides 2^64: no bias
  GateJoint gj;
  gj.gate = all_binary_gates()[static_cast<size_t>(id)];
  gj.puv = JointPMF::exact({2, 2}, uniform_simplex(4, rng));
  return gj;
}

}  // namespace bcbound
