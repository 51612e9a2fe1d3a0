#include "bcbound/marton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcbound/detail/binary_eval.hpp"

namespace bcbound {

using detail::BinaryChannelView;
using detail::entropy_bits_n;
using detail::eval_gate_point;

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void require_binary_input(const BroadcastChannel& bc) {
  if (bc.input_size != 2) fail("channel input alphabet must be binary");
}

// joint (W,X) flat as 2w + x
double rtd_value_raw(const BinaryChannelView& cv, const double* p) {
  const int ny = cv.ny, nz = cv.nz;
  double pw[2] = {p[0] + p[1], p[2] + p[3]};
  double jwy[16], jwz[16], py[8], pz[8];
  for (int y = 0; y < ny; ++y) {
    jwy[y] = p[0] * cv.a0[static_cast<size_t>(y)] + p[1] * cv.a1[static_cast<size_t>(y)];
    jwy[ny + y] = p[2] * cv.a0[static_cast<size_t>(y)] + p[3] * cv.a1[static_cast<size_t>(y)];
    py[y] = jwy[y] + jwy[ny + y];
  }
  for (int z = 0; z < nz; ++z) {
    jwz[z] = p[0] * cv.b0[static_cast<size_t>(z)] + p[1] * cv.b1[static_cast<size_t>(z)];
    jwz[nz + z] = p[2] * cv.b0[static_cast<size_t>(z)] + p[3] * cv.b1[static_cast<size_t>(z)];
    pz[z] = jwz[z] + jwz[nz + z];
  }
  double hw = entropy_bits_n(pw, 2);
  double iwy = hw + entropy_bits_n(py, ny) - entropy_bits_n(jwy, 2 * ny);
  double iwz = hw + entropy_bits_n(pz, nz) - entropy_bits_n(jwz, 2 * nz);
  double value = iwy < iwz ? iwy : iwz;

  if (pw[0] > 0) {
    double q0 = p[0] / pw[0], q1 = p[1] / pw[0];
    double row[8], h_cond = q0 * cv.h_a0 + q1 * cv.h_a1;
    for (int y = 0; y < ny; ++y) {
      row[y] = q0 * cv.a0[static_cast<size_t>(y)] + q1 * cv.a1[static_cast<size_t>(y)];
    }
    value += pw[0] * (entropy_bits_n(row, ny) - h_cond);
  }
  if (pw[1] > 0) {
    double q0 = p[2] / pw[1], q1 = p[3] / pw[1];
    double row[8], h_cond = q0 * cv.h_b0 + q1 * cv.h_b1;
    for (int z = 0; z < nz; ++z) {
      row[z] = q0 * cv.b0[static_cast<size_t>(z)] + q1 * cv.b1[static_cast<size_t>(z)];
    }
    value += pw[1] * (entropy_bits_n(row, nz) - h_cond);
  }
  return value;
}

}  // namespace

double rtd_objective(const RtdPoint& pt, const BroadcastChannel& bc) {
  require_binary_input(bc);
  if (pt.joint_wx.rank() != 2 || pt.joint_wx.dim(0) != 2 || pt.joint_wx.dim(1) != 2) {
    fail("rtd point must be a 2x2 joint over (W,X)");
  }
  BinaryChannelView cv = BinaryChannelView::from(bc);
  return rtd_value_raw(cv, pt.joint_wx.masses().data());
}

RtdMax rtd_sum_rate_max(const BroadcastChannel& bc, const OptimizerConfig& cfg) {
  require_binary_input(bc);
  check_config(cfg);
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  const int denom = cfg.grid_resolution - 1;

  struct Acc {
    bool init = false;
    double value = 0;
    std::array<double, 4> p{};
  };
  Acc best = parallel_reduce<Acc>(
      denom + 1,
      [&](long k0) {
        Acc a;
        double p[4];
        p[0] = static_cast<double>(k0) / denom;
        int rest = denom - static_cast<int>(k0);
        for (int k1 = 0; k1 <= rest; ++k1) {
          p[1] = static_cast<double>(k1) / denom;
          for (int k2 = 0; k2 <= rest - k1; ++k2) {
            p[2] = static_cast<double>(k2) / denom;
            p[3] = static_cast<double>(rest - k1 - k2) / denom;
            double v = rtd_value_raw(cv, p);
            if (!a.init || v > a.value) {
              a.init = true;
              a.value = v;
              std::copy(p, p + 4, a.p.begin());
            }
          }
        }
        return a;
      },
      [](Acc& acc, const Acc& a) {
        if (a.init && (!acc.init || a.value > acc.value)) acc = a;
      });

  std::vector<double> p(best.p.begin(), best.p.end());
  refine_on_simplex(p, [&](const double* q) { return rtd_value_raw(cv, q); },
                    1.0 / denom, cfg.refine_shrink, cfg.refine_iterations);

  RtdMax out;
  out.argmax = RtdPoint{JointPMF::exact({2, 2}, {p[0], p[1], p[2], p[3]})};
  out.value = rtd_objective(out.argmax, bc);
  return out;
}

JointPMF compose_witness(const MartonWitness& w) {
  // axis order (U, V, W, X), binary everywhere
  std::vector<double> t(16, 0.0);
  for (int wi = 0; wi < 2; ++wi) {
    const auto& puv = w.per_w_puv[static_cast<size_t>(wi)].masses();
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) {
        int x = w.per_w_gate[static_cast<size_t>(wi)](u, v);
        if (x < 0 || x > 1) fail("witness gate is not binary");
        t[static_cast<size_t>(((u * 2 + v) * 2 + wi) * 2 + x)] +=
            w.pw[wi] * puv[static_cast<size_t>(2 * u + v)];
      }
    }
  }
  return JointPMF::exact({2, 2, 2, 2}, std::move(t));
}

double marton_objective(const JointPMF& joint_uvwx, const BroadcastChannel& bc) {
  if (joint_uvwx.rank() != 4) fail("marton objective expects a 4-d joint");
  for (int k = 0; k < 4; ++k) {
    if (joint_uvwx.dim(k) > 2) fail("marton objective expects axes of size <= 2");
  }
  if (joint_uvwx.dim(3) != bc.input_size) fail("joint X axis must match the channel");

  JointPMF wx = joint_uvwx.pair_marginal(2, 3);
  double iwy = mutual_information(push_axis(wx, 1, bc.to_y));
  double iwz = mutual_information(push_axis(wx, 1, bc.to_z));

  double hw = entropy(joint_uvwx.marginal(2));
  // I(U;Y|W) = H(UW) + H(WY) - H(W) - H(UWY)
  JointPMF uwy = push_axis(joint_uvwx.drop_axis(1), 2, bc.to_y);
  double iuy_w = entropy_bits(uwy.drop_axis(2).masses()) +
                 entropy_bits(uwy.drop_axis(0).masses()) - hw -
                 entropy_bits(uwy.masses());
  JointPMF vwz = push_axis(joint_uvwx.drop_axis(0), 2, bc.to_z);
  double ivz_w = entropy_bits(vwz.drop_axis(2).masses()) +
                 entropy_bits(vwz.drop_axis(0).masses()) - hw -
                 entropy_bits(vwz.masses());
  JointPMF uvw = joint_uvwx.drop_axis(3);
  double iuv_w = entropy_bits(uvw.drop_axis(1).masses()) +
                 entropy_bits(uvw.drop_axis(0).masses()) - hw -
                 entropy_bits(uvw.masses());

  return std::min(iwy, iwz) + iuy_w + ivz_w - iuv_w;
}

namespace {

struct SliceCand {
  double lhs = 0;
  int gate_id = 0;
  std::array<double, 4> puv{};
  bool init = false;
};

struct WitnessParams {
  double pw0;
  Gate g0, g1;
  std::array<double, 4> p0, p1;
};

double witness_value_raw(const BinaryChannelView& cv, const WitnessParams& w) {
  auto e0 = eval_gate_point(cv, w.g0, w.p0.data());
  auto e1 = eval_gate_point(cv, w.g1, w.p1.data());
  const double pw0 = w.pw0, pw1 = 1.0 - w.pw0;
  const int ny = cv.ny, nz = cv.nz;
  double row0[8], row1[8], py[8], pz[8];
  for (int y = 0; y < ny; ++y) {
    row0[y] = e0.px0 * cv.a0[static_cast<size_t>(y)] + (1 - e0.px0) * cv.a1[static_cast<size_t>(y)];
    row1[y] = e1.px0 * cv.a0[static_cast<size_t>(y)] + (1 - e1.px0) * cv.a1[static_cast<size_t>(y)];
    py[y] = pw0 * row0[y] + pw1 * row1[y];
  }
  double iwy = entropy_bits_n(py, ny) - pw0 * entropy_bits_n(row0, ny) -
               pw1 * entropy_bits_n(row1, ny);
  for (int z = 0; z < nz; ++z) {
    row0[z] = e0.px0 * cv.b0[static_cast<size_t>(z)] + (1 - e0.px0) * cv.b1[static_cast<size_t>(z)];
    row1[z] = e1.px0 * cv.b0[static_cast<size_t>(z)] + (1 - e1.px0) * cv.b1[static_cast<size_t>(z)];
    pz[z] = pw0 * row0[z] + pw1 * row1[z];
  }
  double iwz = entropy_bits_n(pz, nz) - pw0 * entropy_bits_n(row0, nz) -
               pw1 * entropy_bits_n(row1, nz);
  return std::min(iwy, iwz) + pw0 * e0.lhs + pw1 * e1.lhs;
}

MartonWitness to_witness(const WitnessParams& w) {
  MartonWitness out;
  out.pw = Distribution::exact({w.pw0, 1.0 - w.pw0});
  out.per_w_gate = {w.g0, w.g1};
  out.per_w_puv = {
      JointPMF::exact({2, 2}, {w.p0[0], w.p0[1], w.p0[2], w.p0[3]}),
      JointPMF::exact({2, 2}, {w.p1[0], w.p1[1], w.p1[2], w.p1[3]})};
  return out;
}

// deterministic local refinement over (pw, puv0, puv1) with gates fixed;
// paired cross-block transfers keep progress possible along min{} creases
double refine_witness(const BinaryChannelView& cv, WitnessParams& w,
                      double initial_step, double shrink, int rounds) {
  double best = witness_value_raw(cv, w);
  double step = initial_step;

  auto transfer = [](WitnessParams& c, int blk, int a, int b, double d) {
    auto& p = blk == 0 ? c.p0 : c.p1;
    double amount = d < p[static_cast<size_t>(b)] ? d : p[static_cast<size_t>(b)];
    if (amount <= 0) return false;
    p[static_cast<size_t>(a)] += amount;
    p[static_cast<size_t>(b)] -= amount;
    return true;
  };

  for (int round = 0; round < rounds; ++round) {
    for (int sweep = 0; sweep < 200; ++sweep) {
      bool improved = false;
      auto try_point = [&](const WitnessParams& cand) {
        double v = witness_value_raw(cv, cand);
        if (v > best + 1e-14) {
          best = v;
          w = cand;
          improved = true;
        }
      };
      for (double d : {step, 0.5 * step}) {
        for (int dir = -1; dir <= 1; dir += 2) {
          double npw = w.pw0 + dir * d;
          if (npw >= 0.0 && npw <= 1.0) {
            WitnessParams c = w;
            c.pw0 = npw;
            try_point(c);
          }
        }
        for (int blk = 0; blk < 2; ++blk) {
          for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
              if (a == b) continue;
              WitnessParams c = w;
              if (transfer(c, blk, a, b, d)) try_point(c);
              // same move combined with a pw shift
              for (int dir = -1; dir <= 1; dir += 2) {
                WitnessParams c2 = w;
                c2.pw0 += dir * d;
                if (c2.pw0 < 0.0 || c2.pw0 > 1.0) continue;
                if (transfer(c2, blk, a, b, d)) try_point(c2);
              }
            }
          }
        }
        // simultaneous transfers in both slices
        for (int a = 0; a < 4; ++a) {
          for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            for (int c2 = 0; c2 < 4; ++c2) {
              for (int e = 0; e < 4; ++e) {
                if (c2 == e) continue;
                WitnessParams c = w;
                if (transfer(c, 0, a, b, d) && transfer(c, 1, c2, e, d)) {
                  try_point(c);
                }
              }
            }
          }
        }
      }
      if (!improved) break;
    }
    step *= shrink;
  }
  return best;
}

}  // namespace

MartonMax marton_sum_rate_max(const BroadcastChannel& bc,
                              const OptimizerConfig& cfg) {
  require_binary_input(bc);
  check_config(cfg);
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  const int denom = cfg.grid_resolution - 1;

  // Stage 1: per-slice candidates. For every gate and lattice p(u,v), the
  // slice contributes (q = P(X=0), s = I(U;Y)+I(V;Z)-I(U;V)); only the best
  // s per q-bucket can appear in a maximizer.
  std::vector<SliceCand> best_s = parallel_reduce<std::vector<SliceCand>>(
      16,
      [&](long gi) {
        const Gate& g = all_binary_gates()[static_cast<size_t>(gi)];
        std::vector<SliceCand> cands(static_cast<size_t>(denom + 1));
        double p[4];
        for_each_composition(4, denom, [&](const int* c) {
          int k = 0;
          for (int i = 0; i < 4; ++i) {
            p[i] = static_cast<double>(c[i]) / denom;
            if (g.table[static_cast<size_t>(i)] == 0) k += c[i];
          }
          double lhs = eval_gate_point(cv, g, p).lhs;
          SliceCand& sc = cands[static_cast<size_t>(k)];
          if (!sc.init || lhs > sc.lhs) {
            sc.init = true;
            sc.lhs = lhs;
            sc.gate_id = g.id();
            std::copy(p, p + 4, sc.puv.begin());
          }
        });
        return cands;
      },
      [denom](std::vector<SliceCand>& acc, const std::vector<SliceCand>& c) {
        if (acc.empty()) acc.resize(static_cast<size_t>(denom + 1));
        for (size_t k = 0; k < c.size(); ++k) {
          if (c[k].init && (!acc[k].init || c[k].lhs > acc[k].lhs)) acc[k] = c[k];
        }
      });

  // Stage 2: sweep p(w) and the two bucket indices.
  std::vector<double> h_rowy(static_cast<size_t>(denom + 1)),
      h_rowz(static_cast<size_t>(denom + 1));
  std::vector<std::array<double, 8>> rowy(static_cast<size_t>(denom + 1)),
      rowz(static_cast<size_t>(denom + 1));
  for (int k = 0; k <= denom; ++k) {
    double q = static_cast<double>(k) / denom;
    for (int y = 0; y < cv.ny; ++y) {
      rowy[static_cast<size_t>(k)][static_cast<size_t>(y)] =
          q * cv.a0[static_cast<size_t>(y)] + (1 - q) * cv.a1[static_cast<size_t>(y)];
    }
    for (int z = 0; z < cv.nz; ++z) {
      rowz[static_cast<size_t>(k)][static_cast<size_t>(z)] =
          q * cv.b0[static_cast<size_t>(z)] + (1 - q) * cv.b1[static_cast<size_t>(z)];
    }
    h_rowy[static_cast<size_t>(k)] = entropy_bits_n(rowy[static_cast<size_t>(k)].data(), cv.ny);
    h_rowz[static_cast<size_t>(k)] = entropy_bits_n(rowz[static_cast<size_t>(k)].data(), cv.nz);
  }

  struct StageTwo {
    bool init = false;
    double value = 0;
    double pw0 = 0;
    int k0 = 0, k1 = 0;
  };
  StageTwo s2 = parallel_reduce<StageTwo>(
      denom + 1,
      [&](long ipw) {
        StageTwo s;
        double pw0 = static_cast<double>(ipw) / denom;
        double pw1 = 1.0 - pw0;
        double py[8], pz[8];
        for (int k0 = 0; k0 <= denom; ++k0) {
          if (!best_s[static_cast<size_t>(k0)].init) continue;
          for (int k1 = 0; k1 <= denom; ++k1) {
            if (!best_s[static_cast<size_t>(k1)].init) continue;
            for (int y = 0; y < cv.ny; ++y) {
              py[y] = pw0 * rowy[static_cast<size_t>(k0)][static_cast<size_t>(y)] +
                      pw1 * rowy[static_cast<size_t>(k1)][static_cast<size_t>(y)];
            }
            for (int z = 0; z < cv.nz; ++z) {
              pz[z] = pw0 * rowz[static_cast<size_t>(k0)][static_cast<size_t>(z)] +
                      pw1 * rowz[static_cast<size_t>(k1)][static_cast<size_t>(z)];
            }
            double iwy = entropy_bits_n(py, cv.ny) -
                         pw0 * h_rowy[static_cast<size_t>(k0)] -
                         pw1 * h_rowy[static_cast<size_t>(k1)];
            double iwz = entropy_bits_n(pz, cv.nz) -
                         pw0 * h_rowz[static_cast<size_t>(k0)] -
                         pw1 * h_rowz[static_cast<size_t>(k1)];
            double v = std::min(iwy, iwz) + pw0 * best_s[static_cast<size_t>(k0)].lhs +
                       pw1 * best_s[static_cast<size_t>(k1)].lhs;
            if (!s.init || v > s.value) {
              s.init = true;
              s.value = v;
              s.pw0 = pw0;
              s.k0 = k0;
              s.k1 = k1;
            }
          }
        }
        return s;
      },
      [](StageTwo& acc, const StageTwo& s) {
        if (s.init && (!acc.init || s.value > acc.value)) acc = s;
      });

  WitnessParams incumbent;
  incumbent.pw0 = s2.pw0;
  incumbent.g0 = all_binary_gates()[static_cast<size_t>(best_s[static_cast<size_t>(s2.k0)].gate_id)];
  incumbent.g1 = all_binary_gates()[static_cast<size_t>(best_s[static_cast<size_t>(s2.k1)].gate_id)];
  incumbent.p0 = best_s[static_cast<size_t>(s2.k0)].puv;
  incumbent.p1 = best_s[static_cast<size_t>(s2.k1)].puv;

  // Embed the R-TD argmax as a witness candidate; this makes the
  // restriction dominance rtd <= marton structural.
  RtdMax rtd = rtd_sum_rate_max(bc, cfg);
  WitnessParams embed;
  {
    const auto& j = rtd.argmax.joint_wx.masses();
    double pw0 = j[0] + j[1], pw1 = j[2] + j[3];
    embed.pw0 = pw0;
    embed.g0 = kGatePassU;
    embed.g1 = kGatePassV;
    double q0 = pw0 > 0 ? j[0] / pw0 : 0.5;
    double q1 = pw1 > 0 ? j[2] / pw1 : 0.5;
    embed.p0 = {q0, 0.0, 1.0 - q0, 0.0};   // U = X, V constant
    embed.p1 = {q1, 1.0 - q1, 0.0, 0.0};   // V = X, U constant
  }

  double v_inc = refine_witness(cv, incumbent, 1.0 / denom, cfg.refine_shrink,
                                cfg.refine_iterations);
  double v_emb = refine_witness(cv, embed, 1.0 / denom, cfg.refine_shrink,
                                cfg.refine_iterations);
  WitnessParams& winner = v_emb > v_inc ? embed : incumbent;

  MartonMax out;
  out.witness = to_witness(winner);
  out.value = marton_objective(compose_witness(out.witness), bc);
  return out;
}

double outer_bound_objective(const JointPMF& joint_uvx,
                             const BroadcastChannel& bc) {
  if (joint_uvx.rank() != 3) fail("outer objective expects a 3-d joint");
  if (joint_uvx.dim(0) > 4 || joint_uvx.dim(1) > 4) {
    fail("outer objective expects auxiliary axes of size <= 4");
  }
  if (joint_uvx.dim(2) != bc.input_size) {
    fail("joint X axis must match the channel");
  }
  JointPMF juvy = push_axis(joint_uvx, 2, bc.to_y);
  JointPMF juvz = push_axis(joint_uvx, 2, bc.to_z);
  double hu = entropy(joint_uvx.marginal(0));
  double hv = entropy(joint_uvx.marginal(1));
  double huv = entropy_bits(joint_uvx.drop_axis(2).masses());
  double hy = entropy(juvy.marginal(2));
  double hz = entropy(juvz.marginal(2));
  double huy = entropy_bits(juvy.drop_axis(1).masses());
  double hvy = entropy_bits(juvy.drop_axis(0).masses());
  double huz = entropy_bits(juvz.drop_axis(1).masses());
  double hvz = entropy_bits(juvz.drop_axis(0).masses());
  double huvy = entropy_bits(juvy.masses());
  double huvz = entropy_bits(juvz.masses());

  double iuy = hu + hy - huy;
  double ivz = hv + hz - hvz;
  double ivz_u = huv + huz - hu - huvz;
  double iuy_v = huv + hvy - hv - huvy;
  return std::min(iuy + ivz_u, ivz + iuy_v);
}

namespace {

// hot path for |U| = |V| = 3, binary X; flat index (u*3 + v)*2 + x
double outer_value_raw(const BinaryChannelView& cv, const double* p) {
  const int ny = cv.ny, nz = cv.nz;
  double juvy[9 * 8], juvz[9 * 8];
  double puv[9], pu[3] = {0, 0, 0}, pv[3] = {0, 0, 0};
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      int c = u * 3 + v;
      double m0 = p[2 * c], m1 = p[2 * c + 1];
      puv[c] = m0 + m1;
      pu[u] += puv[c];
      pv[v] += puv[c];
      for (int y = 0; y < ny; ++y) {
        juvy[c * ny + y] = m0 * cv.a0[static_cast<size_t>(y)] + m1 * cv.a1[static_cast<size_t>(y)];
      }
      for (int z = 0; z < nz; ++z) {
        juvz[c * nz + z] = m0 * cv.b0[static_cast<size_t>(z)] + m1 * cv.b1[static_cast<size_t>(z)];
      }
    }
  }
  double juy[3 * 8] = {0}, jvy[3 * 8] = {0}, juz[3 * 8] = {0}, jvz[3 * 8] = {0};
  double py[8] = {0}, pz[8] = {0};
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      int c = u * 3 + v;
      for (int y = 0; y < ny; ++y) {
        juy[u * ny + y] += juvy[c * ny + y];
        jvy[v * ny + y] += juvy[c * ny + y];
      }
      for (int z = 0; z < nz; ++z) {
        juz[u * nz + z] += juvz[c * nz + z];
        jvz[v * nz + z] += juvz[c * nz + z];
      }
    }
  }
  for (int u = 0; u < 3; ++u) {
    for (int y = 0; y < ny; ++y) py[y] += juy[u * ny + y];
    for (int z = 0; z < nz; ++z) pz[z] += juz[u * nz + z];
  }
  double hu = entropy_bits_n(pu, 3), hv = entropy_bits_n(pv, 3);
  double huv = entropy_bits_n(puv, 9);
  double hy = entropy_bits_n(py, ny), hz = entropy_bits_n(pz, nz);
  double iuy = hu + hy - entropy_bits_n(juy, 3 * ny);
  double ivz = hv + hz - entropy_bits_n(jvz, 3 * nz);
  double ivz_u = huv + entropy_bits_n(juz, 3 * nz) - hu - entropy_bits_n(juvz, 9 * nz);
  double iuy_v = huv + entropy_bits_n(jvy, 3 * ny) - hv - entropy_bits_n(juvy, 9 * ny);
  double f1 = iuy + ivz_u, f2 = ivz + iuy_v;
  return f1 < f2 ? f1 : f2;
}

}  // namespace

OuterEstimate outer_bound_sum_rate_estimate(const BroadcastChannel& bc,
                                            const OptimizerConfig& cfg) {
  require_binary_input(bc);
  check_config(cfg);
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  // 17-simplex: a coarse lattice feeds a deterministic transfer refinement
  const int denom = std::max(2, std::min(cfg.grid_resolution - 1, 6));
  constexpr int kCells = 18;
  constexpr int kStarts = 10;

  using Cand = std::pair<double, std::array<double, kCells>>;
  struct Tops {
    std::vector<Cand> v;
  };
  auto cand_less = [](const Cand& a, const Cand& b) { return a.first > b.first; };
  Tops tops = parallel_reduce<Tops>(
      denom + 1,
      [&](long k0) {
        Tops t;
        std::array<double, kCells> p{};
        p[0] = static_cast<double>(k0) / denom;
        for_each_composition(kCells - 1, denom - static_cast<int>(k0), [&](const int* c) {
          for (int i = 1; i < kCells; ++i) {
            p[static_cast<size_t>(i)] = static_cast<double>(c[i - 1]) / denom;
          }
          double v = outer_value_raw(cv, p.data());
          t.v.push_back({v, p});
          std::push_heap(t.v.begin(), t.v.end(),
                         [](const Cand& a, const Cand& b) { return a.first > b.first; });
          if (t.v.size() > 24) {
            std::pop_heap(t.v.begin(), t.v.end(),
                          [](const Cand& a, const Cand& b) { return a.first > b.first; });
            t.v.pop_back();
          }
        });
        return t;
      },
      [](Tops& acc, const Tops& t) {
        acc.v.insert(acc.v.end(), t.v.begin(), t.v.end());
      });
  std::stable_sort(tops.v.begin(), tops.v.end(), cand_less);

  auto l1 = [](const std::array<double, kCells>& a, const std::array<double, kCells>& b) {
    double d = 0;
    for (int i = 0; i < kCells; ++i) d += std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]);
    return d;
  };
  std::vector<std::array<double, kCells>> starts;
  for (const auto& c : tops.v) {
    bool near = false;
    for (const auto& s : starts) {
      if (l1(c.second, s) < 0.15) {
        near = true;
        break;
      }
    }
    if (!near) starts.push_back(c.second);
    if (static_cast<int>(starts.size()) >= kStarts) break;
  }

  double best = -1;
  std::vector<double> best_p;
  for (const auto& s : starts) {
    std::vector<double> p(s.begin(), s.end());
    double v = refine_on_simplex(
        p, [&](const double* q) { return outer_value_raw(cv, q); }, 1.0 / denom,
        cfg.refine_shrink, cfg.refine_iterations);
    if (v > best) {
      best = v;
      best_p = p;
    }
  }

  OuterEstimate out;
  out.argmax = JointPMF::exact({3, 3, 2}, best_p);
  out.value = outer_bound_objective(out.argmax, bc);
  return out;
}

}  // namespace bcbound
