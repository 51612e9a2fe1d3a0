#include "bcbound/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bcbound/detail/binary_eval.hpp"

namespace bcbound {

using detail::BinaryChannelView;
using detail::eval_gate_point;
using detail::eval_uvx_point;

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void require_binary_gate(const Gate& g) {
  for (int e : g.table) {
    if (e != 0 && e != 1) fail("gate is not binary");
  }
}

void require_binary_input(const BroadcastChannel& bc) {
  if (bc.input_size != 2) fail("channel input alphabet must be binary");
}

}  // namespace

const std::array<Gate, 16>& all_binary_gates() {
  static const std::array<Gate, 16> gates = [] {
    std::array<Gate, 16> out{};
    for (int id = 0; id < 16; ++id) {
      out[static_cast<size_t>(id)] =
          Gate{{id >> 3 & 1, id >> 2 & 1, id >> 1 & 1, id & 1}};
    }
    return out;
  }();
  return gates;
}

Distribution induced_px(const GateJoint& gj, int nx) {
  std::vector<double> px(static_cast<size_t>(nx), 0.0);
  const auto& m = gj.puv.masses();
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      int x = gj.gate(u, v);
      if (x < 0 || x >= nx) fail("gate value outside the X alphabet");
      px[static_cast<size_t>(x)] += m[static_cast<size_t>(2 * u + v)];
    }
  }
  return Distribution::exact(std::move(px));
}

JointPMF gate_joint_uvx(const GateJoint& gj, int nx) {
  std::vector<double> t(static_cast<size_t>(4 * nx), 0.0);
  const auto& m = gj.puv.masses();
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      int x = gj.gate(u, v);
      if (x < 0 || x >= nx) fail("gate value outside the X alphabet");
      t[static_cast<size_t>((2 * u + v) * nx + x)] += m[static_cast<size_t>(2 * u + v)];
    }
  }
  return JointPMF::exact({2, 2, nx}, std::move(t));
}

double lhs_value(const GateJoint& gj, const BroadcastChannel& bc) {
  InducedPairs ip = induced_pairs(gate_joint_uvx(gj, bc.input_size), bc);
  return mutual_information(ip.uy) + mutual_information(ip.vz) -
         mutual_information(gj.puv);
}

double rhs_value(const Distribution& px, const BroadcastChannel& bc) {
  return std::max(channel_mutual_information(px, bc.to_y),
                  channel_mutual_information(px, bc.to_z));
}

double margin(const GateJoint& gj, const BroadcastChannel& bc) {
  return rhs_value(induced_px(gj, bc.input_size), bc) - lhs_value(gj, bc);
}

double equivalent_form_margin(const GateJoint& gj, const BroadcastChannel& bc) {
  for (int e : gj.gate.table) {
    if (e < 0 || e >= bc.input_size) {
      fail("equivalent_form_margin: gate is not a function into the X alphabet");
    }
  }
  JointPMF juvx = gate_joint_uvx(gj, bc.input_size);
  InducedPairs ip = induced_pairs(juvx, bc);
  JointPMF juvy = push_axis(juvx, 2, bc.to_y);
  JointPMF juvz = push_axis(juvx, 2, bc.to_z);
  double hy = entropy(juvy.marginal(2));
  double hz = entropy(juvz.marginal(2));
  double h_u_given_y = entropy_bits(ip.uy.masses()) - hy;
  double h_v_given_z = entropy_bits(ip.vz.masses()) - hz;
  double h_uv_given_y = entropy_bits(juvy.masses()) - hy;
  double h_uv_given_z = entropy_bits(juvz.masses()) - hz;
  return h_u_given_y + h_v_given_z - std::min(h_uv_given_y, h_uv_given_z);
}

const char* canonical_gate_name(CanonicalGate g) {
  switch (g) {
    case CanonicalGate::Const: return "CONST";
    case CanonicalGate::Pass: return "PASS";
    case CanonicalGate::And: return "AND";
    case CanonicalGate::Xor: return "XOR";
  }
  return "?";
}

Gate canonical_gate_table(CanonicalGate g) {
  switch (g) {
    case CanonicalGate::Const: return kGateConst0;
    case CanonicalGate::Pass: return kGatePassU;
    case CanonicalGate::And: return kGateAnd;
    case CanonicalGate::Xor: return kGateXor;
  }
  fail("unknown canonical gate");
}

CanonicalCase gate_canonicalize(const Gate& g) {
  require_binary_gate(g);
  struct Entry {
    CanonicalGate c;
    SymbolRelabeling r;
  };
  // Indexed by Gate::id(). The AND group entries for X = u AND v variants are
  // plain input flips; the OR group goes through X-flip onto the row-swapped
  // channel, with X = U OR V using the swap-both-inputs bijection.
  static const Entry table[16] = {
      /* 0000 */ {CanonicalGate::Const, {}},
      /* 0001 */ {CanonicalGate::And, {}},
      /* 0010 */ {CanonicalGate::And, {.flip_v = true}},
      /* 0011 */ {CanonicalGate::Pass, {}},
      /* 0100 */ {CanonicalGate::And, {.flip_u = true}},
      /* 0101 */ {CanonicalGate::Pass, {.swap_uv = true}},
      /* 0110 */ {CanonicalGate::Xor, {}},
      /* 0111 */ {CanonicalGate::And,
                  {.swap_uv = true, .flip_u = true, .flip_v = true, .flip_x = true}},
      /* 1000 */ {CanonicalGate::And, {.flip_u = true, .flip_v = true}},
      /* 1001 */ {CanonicalGate::Xor, {.flip_u = true}},
      /* 1010 */ {CanonicalGate::Pass, {.swap_uv = true, .flip_x = true}},
      /* 1011 */ {CanonicalGate::And, {.flip_u = true, .flip_x = true}},
      /* 1100 */ {CanonicalGate::Pass, {.flip_u = true}},
      /* 1101 */ {CanonicalGate::And, {.flip_v = true, .flip_x = true}},
      /* 1110 */ {CanonicalGate::And, {.flip_x = true}},
      /* 1111 */ {CanonicalGate::Const, {.flip_x = true}},
  };
  const Entry& e = table[g.id()];
  return CanonicalCase{e.c, e.r, e.r.flip_x};
}

Gate transport_gate(const Gate& g, const SymbolRelabeling& rel) {
  Gate out = g;
  if (rel.swap_uv) {
    out = Gate{{out.table[0], out.table[2], out.table[1], out.table[3]}};
  }
  if (rel.flip_u) {
    out = Gate{{out.table[2], out.table[3], out.table[0], out.table[1]}};
  }
  if (rel.flip_v) {
    out = Gate{{out.table[1], out.table[0], out.table[3], out.table[2]}};
  }
  if (rel.flip_x) {
    require_binary_gate(out);
    for (int& e : out.table) e = 1 - e;
  }
  return out;
}

JointPMF transport_puv(const JointPMF& puv, const SymbolRelabeling& rel) {
  if (puv.rank() != 2 || puv.dim(0) != 2 || puv.dim(1) != 2) {
    fail("transport_puv expects a 2x2 joint");
  }
  std::array<double, 4> m;
  std::copy(puv.masses().begin(), puv.masses().end(), m.begin());
  if (rel.swap_uv) m = {m[0], m[2], m[1], m[3]};
  if (rel.flip_u) m = {m[2], m[3], m[0], m[1]};
  if (rel.flip_v) m = {m[1], m[0], m[3], m[2]};
  return JointPMF::exact({2, 2}, {m[0], m[1], m[2], m[3]});
}

BroadcastChannel transport_channel(const BroadcastChannel& bc,
                                   const SymbolRelabeling& rel) {
  require_binary_input(bc);
  auto rows_of = [](const TransitionMatrix& tm) {
    std::vector<std::vector<double>> rows;
    for (int x = 0; x < tm.input_size(); ++x) {
      rows.emplace_back(tm.row(x).begin(), tm.row(x).end());
    }
    return rows;
  };
  auto ry = rows_of(bc.to_y), rz = rows_of(bc.to_z);
  if (rel.swap_uv) std::swap(ry, rz);
  if (rel.flip_x) {
    std::swap(ry[0], ry[1]);
    std::swap(rz[0], rz[1]);
  }
  return BroadcastChannel::make(TransitionMatrix::validate(ry, kInternalTol),
                                TransitionMatrix::validate(rz, kInternalTol));
}

GateJoint transport(const GateJoint& gj, const SymbolRelabeling& rel) {
  return GateJoint{transport_puv(gj.puv, rel), transport_gate(gj.gate, rel)};
}

namespace {

struct PointRecord {
  bool init = false;
  double value = 0;
  std::array<double, 4> p{};
};

// first-seen wins ties, so lexicographic enumeration order is the tie-break
void track_max(PointRecord& r, double v, const double* p) {
  if (!r.init || v > r.value) {
    r.init = true;
    r.value = v;
    std::copy(p, p + 4, r.p.begin());
  }
}

void track_min(PointRecord& r, double v, const double* p) {
  if (!r.init || v < r.value) {
    r.init = true;
    r.value = v;
    std::copy(p, p + 4, r.p.begin());
  }
}

struct GateScan {
  PointRecord best_lhs;
  PointRecord worst_margin;
  long points = 0;
};

void fold_scan(GateScan& acc, const GateScan& r) {
  if (r.best_lhs.init) {
    if (!acc.best_lhs.init || r.best_lhs.value > acc.best_lhs.value) {
      acc.best_lhs = r.best_lhs;
    }
  }
  if (r.worst_margin.init) {
    if (!acc.worst_margin.init || r.worst_margin.value < acc.worst_margin.value) {
      acc.worst_margin = r.worst_margin;
    }
  }
  acc.points += r.points;
}

GateScan scan_full_simplex(const BinaryChannelView& cv, const Gate& g, int denom) {
  return parallel_reduce<GateScan>(
      denom + 1,
      [&cv, &g, denom](long k0) {
        GateScan s;
        double p[4];
        p[0] = static_cast<double>(k0) / denom;
        int rest = denom - static_cast<int>(k0);
        for (int k1 = 0; k1 <= rest; ++k1) {
          p[1] = static_cast<double>(k1) / denom;
          for (int k2 = 0; k2 <= rest - k1; ++k2) {
            p[2] = static_cast<double>(k2) / denom;
            p[3] = static_cast<double>(rest - k1 - k2) / denom;
            auto e = eval_gate_point(cv, g, p);
            track_max(s.best_lhs, e.lhs, p);
            track_min(s.worst_margin, e.margin, p);
            ++s.points;
          }
        }
        return s;
      },
      fold_scan);
}

GateScan scan_fixed_px(const BinaryChannelView& cv, const Gate& g, int denom,
                       const Distribution& px) {
  std::vector<int> cls0, cls1;
  for (int i = 0; i < 4; ++i) {
    (g.table[static_cast<size_t>(i)] == 0 ? cls0 : cls1).push_back(i);
  }
  double px0 = px[0], px1 = px[1];
  if ((cls0.empty() && px0 > kIngestTol) || (cls1.empty() && px1 > kIngestTol)) {
    fail("fixed_px is infeasible for this gate");
  }
  // enumerate each class independently on its own lattice
  std::vector<std::array<double, 4>> pts0, pts1;
  auto expand = [denom](const std::vector<int>& cls, double mass) {
    std::vector<std::array<double, 4>> out;
    if (cls.empty() || mass == 0.0) {
      std::array<double, 4> z{};
      out.push_back(z);
      return out;
    }
    for_each_composition(static_cast<int>(cls.size()), denom, [&](const int* c) {
      std::array<double, 4> p{};
      for (size_t i = 0; i < cls.size(); ++i) {
        p[static_cast<size_t>(cls[i])] = mass * c[i] / denom;
      }
      out.push_back(p);
    });
    return out;
  };
  pts0 = expand(cls0, px0);
  pts1 = expand(cls1, px1);

  GateScan s;
  double p[4];
  for (const auto& q0 : pts0) {
    for (const auto& q1 : pts1) {
      for (int i = 0; i < 4; ++i) p[i] = q0[static_cast<size_t>(i)] + q1[static_cast<size_t>(i)];
      auto e = eval_gate_point(cv, g, p);
      track_max(s.best_lhs, e.lhs, p);
      track_min(s.worst_margin, e.margin, p);
      ++s.points;
    }
  }
  return s;
}

}  // namespace

GateSearchResult max_lhs_for_gate(const BroadcastChannel& bc, const Gate& g,
                                  const OptimizerConfig& cfg,
                                  const std::optional<Distribution>& fixed_px) {
  require_binary_input(bc);
  require_binary_gate(g);
  check_config(cfg);
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  const int denom = cfg.grid_resolution - 1;

  GateScan scan = fixed_px ? scan_fixed_px(cv, g, denom, *fixed_px)
                           : scan_full_simplex(cv, g, denom);

  // refine the incumbent; track margins of every refined evaluation as well
  PointRecord worst = scan.worst_margin;
  long refine_points = 0;
  std::vector<double> p(scan.best_lhs.p.begin(), scan.best_lhs.p.end());
  std::function<bool(int, int)> movable;
  if (fixed_px) {
    movable = [&g](int a, int b) {
      return g.table[static_cast<size_t>(a)] == g.table[static_cast<size_t>(b)];
    };
  }
  refine_on_simplex(
      p,
      [&](const double* q) {
        auto e = eval_gate_point(cv, g, q);
        track_min(worst, e.margin, q);
        ++refine_points;
        return e.lhs;
      },
      1.0 / denom, cfg.refine_shrink, cfg.refine_iterations, movable);

  GateSearchResult out;
  out.argmax = GateJoint{JointPMF::exact({2, 2}, {p[0], p[1], p[2], p[3]}), g};
  out.max_lhs = lhs_value(out.argmax, bc);
  out.rhs_at_argmax = rhs_value(induced_px(out.argmax, 2), bc);
  out.margin_at_argmax = out.rhs_at_argmax - out.max_lhs;
  out.min_margin = worst.value;
  out.min_margin_point = GateJoint{
      JointPMF::exact({2, 2}, {worst.p[0], worst.p[1], worst.p[2], worst.p[3]}), g};
  out.points_evaluated = scan.points + refine_points;
  return out;
}

std::vector<GateJoint> local_maxima_for_gate(const BroadcastChannel& bc,
                                             const Gate& g,
                                             const OptimizerConfig& cfg,
                                             int max_points) {
  require_binary_input(bc);
  require_binary_gate(g);
  check_config(cfg);
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  const int denom = cfg.grid_resolution - 1;

  using Cand = std::pair<double, std::array<double, 4>>;
  struct Tops {
    std::vector<Cand> v;
  };
  Tops tops = parallel_reduce<Tops>(
      denom + 1,
      [&](long k0) {
        Tops t;
        double p[4];
        p[0] = static_cast<double>(k0) / denom;
        int rest = denom - static_cast<int>(k0);
        for (int k1 = 0; k1 <= rest; ++k1) {
          p[1] = static_cast<double>(k1) / denom;
          for (int k2 = 0; k2 <= rest - k1; ++k2) {
            p[2] = static_cast<double>(k2) / denom;
            p[3] = static_cast<double>(rest - k1 - k2) / denom;
            double lhs = eval_gate_point(cv, g, p).lhs;
            t.v.push_back({lhs, {p[0], p[1], p[2], p[3]}});
            std::push_heap(t.v.begin(), t.v.end(),
                           [](const Cand& a, const Cand& b) { return a.first > b.first; });
            if (t.v.size() > 48) {
              std::pop_heap(t.v.begin(), t.v.end(),
                            [](const Cand& a, const Cand& b) { return a.first > b.first; });
              t.v.pop_back();
            }
          }
        }
        return t;
      },
      [](Tops& acc, const Tops& t) {
        acc.v.insert(acc.v.end(), t.v.begin(), t.v.end());
      });

  std::stable_sort(tops.v.begin(), tops.v.end(), [](const Cand& a, const Cand& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  auto l1 = [](const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double d = 0;
    for (int i = 0; i < 4; ++i) d += std::abs(a[static_cast<size_t>(i)] - b[static_cast<size_t>(i)]);
    return d;
  };

  std::vector<std::array<double, 4>> starts;
  for (const auto& c : tops.v) {
    bool near = false;
    for (const auto& s : starts) {
      if (l1(c.second, s) < 0.08) {
        near = true;
        break;
      }
    }
    if (!near) starts.push_back(c.second);
    if (static_cast<int>(starts.size()) >= max_points) break;
  }

  std::vector<std::pair<double, std::array<double, 4>>> refined;
  for (const auto& s : starts) {
    std::vector<double> p(s.begin(), s.end());
    double v = refine_on_simplex(
        p, [&](const double* q) { return eval_gate_point(cv, g, q).lhs; },
        1.0 / denom, cfg.refine_shrink, cfg.refine_iterations);
    refined.push_back({v, {p[0], p[1], p[2], p[3]}});
  }
  std::stable_sort(refined.begin(), refined.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<GateJoint> out;
  for (const auto& [v, p] : refined) {
    bool dup = false;
    for (const auto& gj : out) {
      std::array<double, 4> q;
      std::copy(gj.puv.masses().begin(), gj.puv.masses().end(), q.begin());
      if (l1(p, q) < 1e-7) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.push_back(GateJoint{JointPMF::exact({2, 2}, {p[0], p[1], p[2], p[3]}), g});
    }
  }
  return out;
}

VerificationReport verify_binary_channel(const BroadcastChannel& bc,
                                         const OptimizerConfig& cfg) {
  require_binary_input(bc);
  check_config(cfg);
  VerificationReport rep;
  rep.channel_digest = channel_digest(bc);
  rep.config = cfg;

  const CanonicalGate cases[4] = {CanonicalGate::Const, CanonicalGate::Pass,
                                  CanonicalGate::And, CanonicalGate::Xor};
  double global_min = 0;
  bool first = true;
  for (CanonicalGate c : cases) {
    Gate g = canonical_gate_table(c);
    GateSearchResult r = max_lhs_for_gate(bc, g, cfg);
    PerGateResult pg;
    pg.case_id = c;
    pg.gate = g;
    pg.max_lhs = r.max_lhs;
    pg.argmax = r.argmax;
    pg.rhs_at_argmax = r.rhs_at_argmax;
    pg.margin = r.margin_at_argmax;
    pg.min_margin = r.min_margin;
    pg.min_margin_point = r.min_margin_point;
    rep.per_gate.push_back(std::move(pg));
    rep.points_evaluated += r.points_evaluated;
    if (first || r.min_margin < global_min) global_min = r.min_margin;
    first = false;
  }

  // coarse cross-check without the deterministic-gate restriction
  const BinaryChannelView cv = BinaryChannelView::from(bc);
  const int od = cfg.oracle_resolution;
  struct OracleScan {
    double min_margin = 0;
    bool init = false;
    long points = 0;
  };
  OracleScan os = parallel_reduce<OracleScan>(
      od + 1,
      [&cv, od](long k0) {
        OracleScan s;
        double p[8];
        int rest0 = od - static_cast<int>(k0);
        p[0] = static_cast<double>(k0) / od;
        std::array<int, 7> c{};
        // remaining 7 cells
        std::function<void(int, int)> rec = [&](int pos, int left) {
          if (pos == 6) {
            c[6] = left;
            for (int i = 0; i < 7; ++i) p[i + 1] = static_cast<double>(c[static_cast<size_t>(i)]) / od;
            auto e = eval_uvx_point(cv, p);
            if (!s.init || e.margin < s.min_margin) {
              s.init = true;
              s.min_margin = e.margin;
            }
            ++s.points;
            return;
          }
          for (int k = 0; k <= left; ++k) {
            c[static_cast<size_t>(pos)] = k;
            rec(pos + 1, left - k);
          }
        };
        rec(0, rest0);
        return s;
      },
      [](OracleScan& acc, const OracleScan& s) {
        if (s.init && (!acc.init || s.min_margin < acc.min_margin)) {
          acc.init = true;
          acc.min_margin = s.min_margin;
        }
        acc.points += s.points;
      });
  rep.oracle_min_margin = os.min_margin;
  rep.oracle_points = os.points;

  rep.global_min_margin = std::min(global_min, os.min_margin);
  rep.holds = rep.global_min_margin >= -1e-9;
  return rep;
}

namespace {

// ---- general-alphabet path for counterexample hunts ----

struct GeneralView {
  int nx, ny, nz;
  std::vector<double> ay, bz;  // nx rows each
  std::vector<double> h_ay, h_bz;
};

GeneralView make_general_view(const BroadcastChannel& bc) {
  GeneralView v;
  v.nx = bc.input_size;
  v.ny = bc.to_y.output_size();
  v.nz = bc.to_z.output_size();
  for (int x = 0; x < v.nx; ++x) {
    auto ry = bc.to_y.row(x);
    v.ay.insert(v.ay.end(), ry.begin(), ry.end());
    v.h_ay.push_back(entropy_bits(ry));
    auto rz = bc.to_z.row(x);
    v.bz.insert(v.bz.end(), rz.begin(), rz.end());
    v.h_bz.push_back(entropy_bits(rz));
  }
  return v;
}

double eval_general_margin(const GeneralView& gv, const GeneralGate& g,
                           const double* p, double* lhs_out = nullptr,
                           double* rhs_out = nullptr) {
  const int nu = g.u_size, nv = g.v_size;
  const int ny = gv.ny, nz = gv.nz, nx = gv.nx;
  double juy[3 * 8] = {0}, jvz[3 * 8] = {0};
  double pu[3] = {0}, pv[3] = {0}, px[4] = {0};
  double py[8] = {0}, pz[8] = {0};
  for (int u = 0; u < nu; ++u) {
    for (int v = 0; v < nv; ++v) {
      double m = p[u * nv + v];
      pu[u] += m;
      pv[v] += m;
      int x = g(u, v);
      px[x] += m;
      if (m == 0) continue;
      for (int y = 0; y < ny; ++y) juy[u * ny + y] += m * gv.ay[static_cast<size_t>(x * ny + y)];
      for (int z = 0; z < nz; ++z) jvz[v * nz + z] += m * gv.bz[static_cast<size_t>(x * nz + z)];
    }
  }
  for (int u = 0; u < nu; ++u) {
    for (int y = 0; y < ny; ++y) py[y] += juy[u * ny + y];
  }
  for (int v = 0; v < nv; ++v) {
    for (int z = 0; z < nz; ++z) pz[z] += jvz[v * nz + z];
  }
  double hpu = detail::entropy_bits_n(pu, nu);
  double hpv = detail::entropy_bits_n(pv, nv);
  double hpy = detail::entropy_bits_n(py, ny);
  double hpz = detail::entropy_bits_n(pz, nz);
  double iuy = hpu + hpy - detail::entropy_bits_n(juy, nu * ny);
  double ivz = hpv + hpz - detail::entropy_bits_n(jvz, nv * nz);
  double iuv = hpu + hpv - detail::entropy_bits_n(p, nu * nv);
  double hyx = 0, hzx = 0;
  for (int x = 0; x < nx; ++x) {
    hyx += px[x] * gv.h_ay[static_cast<size_t>(x)];
    hzx += px[x] * gv.h_bz[static_cast<size_t>(x)];
  }
  double rhs = std::max(hpy - hyx, hpz - hzx);
  double lhs = iuy + ivz - iuv;
  if (lhs_out) *lhs_out = lhs;
  if (rhs_out) *rhs_out = rhs;
  return rhs - lhs;
}

// lexicographically-least table over independent relabelings of U and V
bool is_orbit_representative(const GeneralGate& g) {
  std::vector<int> pu(static_cast<size_t>(g.u_size)), pv(static_cast<size_t>(g.v_size));
  std::iota(pu.begin(), pu.end(), 0);
  std::vector<int> t(g.table.size());
  do {
    std::iota(pv.begin(), pv.end(), 0);
    do {
      for (int u = 0; u < g.u_size; ++u) {
        for (int v = 0; v < g.v_size; ++v) {
          t[static_cast<size_t>(u * g.v_size + v)] =
              g(pu[static_cast<size_t>(u)], pv[static_cast<size_t>(v)]);
        }
      }
      if (t < g.table) return false;
    } while (std::next_permutation(pv.begin(), pv.end()));
  } while (std::next_permutation(pu.begin(), pu.end()));
  return true;
}

int violation_grid_denom(int nu, int nv, int grid_resolution) {
  int cells = nu * nv;
  int cap = cells <= 4 ? 24 : (cells <= 6 ? 12 : 8);
  return std::min(grid_resolution - 1, cap);
}

}  // namespace

std::optional<ViolationWitness> search_violation(const BroadcastChannel& bc,
                                                 const OptimizerConfig& cfg) {
  if (bc.input_size < 3) fail("search_violation expects input alphabet >= 3");
  check_config(cfg);
  const GeneralView gv = make_general_view(bc);
  const int max_aux = std::min(bc.input_size, 3);

  struct Best {
    bool init = false;
    double margin = 0;
    GeneralGate gate;
    std::vector<double> puv;
  };
  Best best;

  for (int nu = 2; nu <= max_aux; ++nu) {
    for (int nv = 2; nv <= max_aux; ++nv) {
      const int cells = nu * nv;
      std::vector<GeneralGate> gates;
      long total = 1;
      for (int i = 0; i < cells; ++i) total *= bc.input_size;
      for (long code = 0; code < total; ++code) {
        GeneralGate g;
        g.u_size = nu;
        g.v_size = nv;
        g.table.resize(static_cast<size_t>(cells));
        long c = code;
        for (int i = cells - 1; i >= 0; --i) {
          g.table[static_cast<size_t>(i)] = static_cast<int>(c % bc.input_size);
          c /= bc.input_size;
        }
        if (is_orbit_representative(g)) gates.push_back(std::move(g));
      }
      const int denom = violation_grid_denom(nu, nv, cfg.grid_resolution);

      Best local = parallel_reduce<Best>(
          static_cast<long>(gates.size()),
          [&](long gi) {
            const GeneralGate& g = gates[static_cast<size_t>(gi)];
            Best b;
            std::vector<double> p(static_cast<size_t>(cells));
            for_each_composition(cells, denom, [&](const int* counts) {
              for (int i = 0; i < cells; ++i) p[static_cast<size_t>(i)] = static_cast<double>(counts[i]) / denom;
              double m = eval_general_margin(gv, g, p.data());
              if (!b.init || m < b.margin) {
                b.init = true;
                b.margin = m;
                b.gate = g;
                b.puv = p;
              }
            });
            return b;
          },
          [](Best& acc, const Best& b) {
            if (b.init && (!acc.init || b.margin < acc.margin)) acc = b;
          });
      if (local.init && (!best.init || local.margin < best.margin)) best = local;
    }
  }

  if (!best.init) return std::nullopt;

  // polish the most negative point
  {
    const GeneralGate& g = best.gate;
    std::vector<double> p = best.puv;
    refine_on_simplex(
        p,
        [&](const double* q) { return -eval_general_margin(gv, g, q); },
        1.0 / violation_grid_denom(g.u_size, g.v_size, cfg.grid_resolution),
        cfg.refine_shrink, cfg.refine_iterations);
    double m = eval_general_margin(gv, g, p.data());
    if (m < best.margin) {
      best.margin = m;
      best.puv = p;
    }
  }

  if (best.margin >= -1e-9) return std::nullopt;
  ViolationWitness w;
  w.gate = best.gate;
  w.puv = best.puv;
  w.margin = eval_general_margin(gv, w.gate, w.puv.data(), &w.lhs, &w.rhs);
  return w;
}

}  // namespace bcbound
