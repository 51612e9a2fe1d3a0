#pragma once

#include <array>
#include <cmath>

#include "bcbound/info_core.hpp"
#include "bcbound/theorem.hpp"

// Allocation-free evaluation of the inequality terms for binary-input
// channels; the public lhs_value / rhs_value go through induced_pairs and
// serve as the slow reference path for these kernels.

namespace bcbound::detail {

inline double entropy_bits_n(const double* p, int n) {
  double h = 0;
  for (int i = 0; i < n; ++i) {
    if (p[i] > 0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

struct BinaryChannelView {
  int ny, nz;
  std::array<double, 8> a0, a1;  // rows of to_y
  std::array<double, 8> b0, b1;  // rows of to_z
  double h_a0, h_a1, h_b0, h_b1;

  static BinaryChannelView from(const BroadcastChannel& bc) {
    BinaryChannelView v{};
    v.ny = bc.to_y.output_size();
    v.nz = bc.to_z.output_size();
    for (int y = 0; y < v.ny; ++y) {
      v.a0[static_cast<size_t>(y)] = bc.to_y.at(0, y);
      v.a1[static_cast<size_t>(y)] = bc.to_y.at(1, y);
    }
    for (int z = 0; z < v.nz; ++z) {
      v.b0[static_cast<size_t>(z)] = bc.to_z.at(0, z);
      v.b1[static_cast<size_t>(z)] = bc.to_z.at(1, z);
    }
    v.h_a0 = entropy_bits_n(v.a0.data(), v.ny);
    v.h_a1 = entropy_bits_n(v.a1.data(), v.ny);
    v.h_b0 = entropy_bits_n(v.b0.data(), v.nz);
    v.h_b1 = entropy_bits_n(v.b1.data(), v.nz);
    return v;
  }
};

struct GatePointEval {
  double lhs, rhs, margin, px0;
};

// p = (p00, p01, p10, p11); gate into binary X.
inline GatePointEval eval_gate_point(const BinaryChannelView& cv, const Gate& g,
                                     const double* p) {
  const double* ya[2] = {cv.a0.data(), cv.a1.data()};
  const double* zb[2] = {cv.b0.data(), cv.b1.data()};
  const int ny = cv.ny, nz = cv.nz;
  double juy[16], jvz[16], py[8], pz[8];
  for (int y = 0; y < ny; ++y) {
    juy[y] = p[0] * ya[g.table[0]][y] + p[1] * ya[g.table[1]][y];
    juy[ny + y] = p[2] * ya[g.table[2]][y] + p[3] * ya[g.table[3]][y];
    py[y] = juy[y] + juy[ny + y];
  }
  for (int z = 0; z < nz; ++z) {
    jvz[z] = p[0] * zb[g.table[0]][z] + p[2] * zb[g.table[2]][z];
    jvz[nz + z] = p[1] * zb[g.table[1]][z] + p[3] * zb[g.table[3]][z];
    pz[z] = jvz[z] + jvz[nz + z];
  }
  double pu[2] = {p[0] + p[1], p[2] + p[3]};
  double pv[2] = {p[0] + p[2], p[1] + p[3]};
  double px0 = 0, px1 = 0;
  for (int i = 0; i < 4; ++i) (g.table[static_cast<size_t>(i)] == 0 ? px0 : px1) += p[i];

  double hpu = entropy_bits_n(pu, 2);
  double hpv = entropy_bits_n(pv, 2);
  double hpy = entropy_bits_n(py, ny);
  double hpz = entropy_bits_n(pz, nz);
  double iuy = hpu + hpy - entropy_bits_n(juy, 2 * ny);
  double ivz = hpv + hpz - entropy_bits_n(jvz, 2 * nz);
  double iuv = hpu + hpv - entropy_bits_n(p, 4);
  double ixy = hpy - px0 * cv.h_a0 - px1 * cv.h_a1;
  double ixz = hpz - px0 * cv.h_b0 - px1 * cv.h_b1;

  GatePointEval e;
  e.lhs = iuy + ivz - iuv;
  e.rhs = ixy > ixz ? ixy : ixz;
  e.margin = e.rhs - e.lhs;
  e.px0 = px0;
  return e;
}

// Non-deterministic p(u,v,x) over binary (U,V,X); flat index 4u + 2v + x.
inline GatePointEval eval_uvx_point(const BinaryChannelView& cv,
                                    const double* p) {
  const int ny = cv.ny, nz = cv.nz;
  double juy[16], jvz[16], py[8], pz[8];
  double u0x0 = p[0] + p[2], u0x1 = p[1] + p[3];
  double u1x0 = p[4] + p[6], u1x1 = p[5] + p[7];
  double v0x0 = p[0] + p[4], v0x1 = p[1] + p[5];
  double v1x0 = p[2] + p[6], v1x1 = p[3] + p[7];
  for (int y = 0; y < ny; ++y) {
    juy[y] = u0x0 * cv.a0[static_cast<size_t>(y)] + u0x1 * cv.a1[static_cast<size_t>(y)];
    juy[ny + y] = u1x0 * cv.a0[static_cast<size_t>(y)] + u1x1 * cv.a1[static_cast<size_t>(y)];
    py[y] = juy[y] + juy[ny + y];
  }
  for (int z = 0; z < nz; ++z) {
    jvz[z] = v0x0 * cv.b0[static_cast<size_t>(z)] + v0x1 * cv.b1[static_cast<size_t>(z)];
    jvz[nz + z] = v1x0 * cv.b0[static_cast<size_t>(z)] + v1x1 * cv.b1[static_cast<size_t>(z)];
    pz[z] = jvz[z] + jvz[nz + z];
  }
  double puv[4] = {p[0] + p[1], p[2] + p[3], p[4] + p[5], p[6] + p[7]};
  double pu[2] = {puv[0] + puv[1], puv[2] + puv[3]};
  double pv[2] = {puv[0] + puv[2], puv[1] + puv[3]};
  double px0 = u0x0 + u1x0, px1 = u0x1 + u1x1;

  double hpu = entropy_bits_n(pu, 2);
  double hpv = entropy_bits_n(pv, 2);
  double hpy = entropy_bits_n(py, ny);
  double hpz = entropy_bits_n(pz, nz);
  double iuy = hpu + hpy - entropy_bits_n(juy, 2 * ny);
  double ivz = hpv + hpz - entropy_bits_n(jvz, 2 * nz);
  double iuv = hpu + hpv - entropy_bits_n(puv, 4);
  double ixy = hpy - px0 * cv.h_a0 - px1 * cv.h_a1;
  double ixz = hpz - px0 * cv.h_b0 - px1 * cv.h_b1;

  GatePointEval e;
  e.lhs = iuy + ivz - iuv;
  e.rhs = ixy > ixz ? ixy : ixz;
  e.margin = e.rhs - e.lhs;
  e.px0 = px0;
  return e;
}

}  // namespace bcbound::detail
