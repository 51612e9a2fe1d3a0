// Standalone dense-grid oracle. Generates the golden numbers that the
// acceptance suite asserts against. Deliberately self-contained: it shares
// no code with the library it cross-checks, only the channel conventions.
//
// Run manually:  ./dense_oracle [quick]
// Output: one "name value" line per golden, %.15g.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

namespace {

double H2(const double* p, int n) {
  double h = 0;
  for (int i = 0; i < n; ++i) {
    if (p[i] > 0) h -= p[i] * std::log2(p[i]);
  }
  return h;
}

struct Channel {
  int nx, ny, nz;
  double ay[4][8];  // p(y|x)
  double bz[4][8];
};

Channel make_bssc(double s) {
  Channel c{};
  c.nx = 2;
  c.ny = 2;
  c.nz = 2;
  c.ay[0][0] = 1;
  c.ay[0][1] = 0;
  c.ay[1][0] = s;
  c.ay[1][1] = 1 - s;
  c.bz[0][0] = 1 - s;
  c.bz[0][1] = s;
  c.bz[1][0] = 0;
  c.bz[1][1] = 1;
  return c;
}

Channel make_blackwell() {
  Channel c{};
  c.nx = 3;
  c.ny = 2;
  c.nz = 2;
  int y_of[3] = {0, 0, 1}, z_of[3] = {0, 1, 1};
  for (int x = 0; x < 3; ++x) {
    c.ay[x][y_of[x]] = 1;
    c.bz[x][z_of[x]] = 1;
  }
  return c;
}

// ---- RTD objective on the p(w,x) simplex (flat 2w+x) ----
double rtd_value(const Channel& c, const double* p) {
  double pw0 = p[0] + p[1], pw1 = p[2] + p[3];
  double jwy[16], jwz[16], py[8], pz[8];
  for (int y = 0; y < c.ny; ++y) {
    jwy[y] = p[0] * c.ay[0][y] + p[1] * c.ay[1][y];
    jwy[c.ny + y] = p[2] * c.ay[0][y] + p[3] * c.ay[1][y];
    py[y] = jwy[y] + jwy[c.ny + y];
  }
  for (int z = 0; z < c.nz; ++z) {
    jwz[z] = p[0] * c.bz[0][z] + p[1] * c.bz[1][z];
    jwz[c.nz + z] = p[2] * c.bz[0][z] + p[3] * c.bz[1][z];
    pz[z] = jwz[z] + jwz[c.nz + z];
  }
  double pw[2] = {pw0, pw1};
  double v = std::min(H2(pw, 2) + H2(py, c.ny) - H2(jwy, 2 * c.ny),
                      H2(pw, 2) + H2(pz, c.nz) - H2(jwz, 2 * c.nz));
  if (pw0 > 0) {
    double row[8], hc;
    for (int y = 0; y < c.ny; ++y) row[y] = (p[0] * c.ay[0][y] + p[1] * c.ay[1][y]) / pw0;
    hc = (p[0] / pw0) * H2(c.ay[0], c.ny) + (p[1] / pw0) * H2(c.ay[1], c.ny);
    v += pw0 * (H2(row, c.ny) - hc);
  }
  if (pw1 > 0) {
    double row[8], hc;
    for (int z = 0; z < c.nz; ++z) row[z] = (p[2] * c.bz[0][z] + p[3] * c.bz[1][z]) / pw1;
    hc = (p[2] / pw1) * H2(c.bz[0], c.nz) + (p[3] / pw1) * H2(c.bz[1], c.nz);
    v += pw1 * (H2(row, c.nz) - hc);
  }
  return v;
}

// ---- theorem LHS / margin for a general gate ----
double margin_value(const Channel& c, int nu, int nv, const int* gate,
                    const double* p, double* lhs_out = nullptr) {
  double juy[24] = {0}, jvz[24] = {0}, pu[3] = {0}, pv[3] = {0}, px[4] = {0};
  for (int u = 0; u < nu; ++u) {
    for (int v = 0; v < nv; ++v) {
      double m = p[u * nv + v];
      int x = gate[u * nv + v];
      pu[u] += m;
      pv[v] += m;
      px[x] += m;
      for (int y = 0; y < c.ny; ++y) juy[u * c.ny + y] += m * c.ay[x][y];
      for (int z = 0; z < c.nz; ++z) jvz[v * c.nz + z] += m * c.bz[x][z];
    }
  }
  double py[8] = {0}, pz[8] = {0};
  for (int u = 0; u < nu; ++u)
    for (int y = 0; y < c.ny; ++y) py[y] += juy[u * c.ny + y];
  for (int v = 0; v < nv; ++v)
    for (int z = 0; z < c.nz; ++z) pz[z] += jvz[v * c.nz + z];
  double iuy = H2(pu, nu) + H2(py, c.ny) - H2(juy, nu * c.ny);
  double ivz = H2(pv, nv) + H2(pz, c.nz) - H2(jvz, nv * c.nz);
  double iuv = H2(pu, nu) + H2(pv, nv) - H2(p, nu * nv);
  double hyx = 0, hzx = 0;
  for (int x = 0; x < c.nx; ++x) {
    hyx += px[x] * H2(c.ay[x], c.ny);
    hzx += px[x] * H2(c.bz[x], c.nz);
  }
  double rhs = std::max(H2(py, c.ny) - hyx, H2(pz, c.nz) - hzx);
  double lhs = iuy + ivz - iuv;
  if (lhs_out) *lhs_out = lhs;
  return rhs - lhs;
}

// ---- outer objective for |U|=|V|=3 on a binary-input channel ----
double outer_value(const Channel& c, const double* p) {
  const int ny = c.ny, nz = c.nz;
  double juvy[72], juvz[72], puv[9], pu[3] = {0}, pv[3] = {0};
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      int q = u * 3 + v;
      double m0 = p[2 * q], m1 = p[2 * q + 1];
      puv[q] = m0 + m1;
      pu[u] += puv[q];
      pv[v] += puv[q];
      for (int y = 0; y < ny; ++y) juvy[q * ny + y] = m0 * c.ay[0][y] + m1 * c.ay[1][y];
      for (int z = 0; z < nz; ++z) juvz[q * nz + z] = m0 * c.bz[0][z] + m1 * c.bz[1][z];
    }
  }
  double juy[24] = {0}, jvy[24] = {0}, juz[24] = {0}, jvz[24] = {0}, py[8] = {0}, pz[8] = {0};
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      int q = u * 3 + v;
      for (int y = 0; y < ny; ++y) {
        juy[u * ny + y] += juvy[q * ny + y];
        jvy[v * ny + y] += juvy[q * ny + y];
        py[y] += juvy[q * ny + y];
      }
      for (int z = 0; z < nz; ++z) {
        juz[u * nz + z] += juvz[q * nz + z];
        jvz[v * nz + z] += juvz[q * nz + z];
        pz[z] += juvz[q * nz + z];
      }
    }
  }
  double hu = H2(pu, 3), hv = H2(pv, 3), huv = H2(puv, 9);
  double iuy = hu + H2(py, ny) - H2(juy, 3 * ny);
  double ivz = hv + H2(pz, nz) - H2(jvz, 3 * nz);
  double ivz_u = huv + H2(juz, 3 * nz) - hu - H2(juvz, 9 * nz);
  double iuy_v = huv + H2(jvy, 3 * ny) - hv - H2(juvy, 9 * ny);
  return std::min(iuy + ivz_u, ivz + iuy_v);
}

// greedy mass-transfer descent to convergence, with disjoint paired moves
double polish(std::vector<double>& p, const std::function<double(const double*)>& f,
              double step0, bool maximize, int pair_limit) {
  const int n = static_cast<int>(p.size());
  double sgn = maximize ? 1.0 : -1.0;
  double best = sgn * f(p.data());
  double step = step0;
  std::vector<double> cand(p.size());
  while (step > 1e-12) {
    bool improved = false;
    auto move = [](int a, int b, double d, std::vector<double>& q) {
      double amt = std::min(d, q[static_cast<size_t>(b)]);
      if (amt <= 0) return false;
      q[static_cast<size_t>(a)] += amt;
      q[static_cast<size_t>(b)] -= amt;
      return true;
    };
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        for (double d : {step, 0.5 * step}) {
          cand = p;
          if (!move(a, b, d, cand)) continue;
          double v = sgn * f(cand.data());
          if (v > best + 1e-15) {
            best = v;
            p = cand;
            improved = true;
          }
        }
        if (n <= pair_limit) {
          for (int c2 = 0; c2 < n; ++c2) {
            for (int e = 0; e < n; ++e) {
              if (c2 == e || (c2 == a && e == b)) continue;
              if (c2 == b && e == a) continue;  // exact inverse
              cand = p;
              if (!move(a, b, step, cand) || !move(c2, e, step, cand)) continue;
              double v = sgn * f(cand.data());
              if (v > best + 1e-15) {
                best = v;
                p = cand;
                improved = true;
              }
            }
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return sgn * best;
}

void lattice(int cells, int denom, const std::function<void(const double*)>& fn) {
  std::vector<int> k(static_cast<size_t>(cells));
  std::vector<double> p(static_cast<size_t>(cells));
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == cells - 1) {
      k[static_cast<size_t>(pos)] = left;
      for (int i = 0; i < cells; ++i) {
        p[static_cast<size_t>(i)] = static_cast<double>(k[static_cast<size_t>(i)]) / denom;
      }
      fn(p.data());
      return;
    }
    for (int i = 0; i <= left; ++i) {
      k[static_cast<size_t>(pos)] = i;
      rec(pos + 1, left - i);
    }
  };
  rec(0, denom);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "quick") == 0;
  const Channel bssc = make_bssc(0.5);

  // closed forms as self-checks of this oracle's entropy kernel
  {
    double p[2] = {0.25, 0.75};
    std::printf("check_h_quarter %.15g\n", H2(p, 2));  // 2 - 0.75*log2(3)
    double bsc0[2] = {0.9, 0.1}, bsc1[2] = {0.1, 0.9};
    double py[2] = {0.5, 0.5};
    std::printf("check_mi_bsc01 %.15g\n",
                H2(py, 2) - 0.5 * H2(bsc0, 2) - 0.5 * H2(bsc1, 2));
  }

  // 1. RTD sum rate on bssc:0.5 over the p(w,x) simplex
  {
    int D = quick ? 200 : 1000;
    double best = -1;
    std::vector<double> arg(4);
    lattice(4, D, [&](const double* p) {
      double v = rtd_value(bssc, p);
      if (v > best) {
        best = v;
        std::copy(p, p + 4, arg.begin());
      }
    });
    std::printf("bssc_rtd_grid %.15g\n", best);
    double refined = polish(arg, [&](const double* p) { return rtd_value(bssc, p); },
                            1.0 / D, true, 4);
    std::printf("bssc_rtd %.15g\n", refined);
    std::printf("bssc_rtd_argmax %.15g %.15g %.15g %.15g\n", arg[0], arg[1],
                arg[2], arg[3]);
  }

  // 2. outer-bound sum-rate estimate on bssc:0.5, |U|=|V|=3
  {
    int D = 6;
    using Top = std::pair<double, std::vector<double>>;
    std::vector<Top> tops;
    lattice(18, D, [&](const double* p) {
      double v = outer_value(bssc, p);
      if (tops.size() < 20 || v > tops.back().first) {
        tops.push_back({v, std::vector<double>(p, p + 18)});
        std::sort(tops.begin(), tops.end(),
                  [](const Top& a, const Top& b) { return a.first > b.first; });
        if (tops.size() > 20) tops.pop_back();
      }
    });
    double best = -1;
    for (auto& t : tops) {
      double v = polish(t.second,
                        [&](const double* p) { return outer_value(bssc, p); },
                        1.0 / D, true, 0);
      if (v > best) best = v;
    }
    std::printf("bssc_outer %.15g\n", best);
  }

  // 3. most negative margin on the Blackwell channel
  {
    const Channel bw = make_blackwell();
    double worst = 1e9;
    std::vector<double> warg;
    std::vector<int> wgate;
    int wnu = 0, wnv = 0;
    auto scan_gates = [&](int nu, int nv, int D) {
      int cells = nu * nv;
      long total = 1;
      for (int i = 0; i < cells; ++i) total *= 3;
      std::vector<int> gate(static_cast<size_t>(cells));
      for (long code = 0; code < total; ++code) {
        long t = code;
        for (int i = cells - 1; i >= 0; --i) {
          gate[static_cast<size_t>(i)] = static_cast<int>(t % 3);
          t /= 3;
        }
        lattice(cells, D, [&](const double* p) {
          double m = margin_value(bw, nu, nv, gate.data(), p);
          if (m < worst) {
            worst = m;
            warg.assign(p, p + cells);
            wgate = gate;
            wnu = nu;
            wnv = nv;
          }
        });
      }
    };
    scan_gates(2, 2, quick ? 24 : 60);
    scan_gates(2, 3, quick ? 8 : 16);
    scan_gates(3, 2, quick ? 8 : 16);
    scan_gates(3, 3, quick ? 4 : 6);
    std::printf("blackwell_grid_margin %.15g (nu=%d nv=%d)\n", worst, wnu, wnv);
    double refined = polish(
        warg,
        [&](const double* p) { return margin_value(bw, wnu, wnv, wgate.data(), p); },
        0.02, false, 4);
    std::printf("blackwell_margin %.15g\n", refined);
    std::printf("blackwell_gate");
    for (int g : wgate) std::printf(" %d", g);
    std::printf("\nblackwell_puv");
    for (double v : warg) std::printf(" %.15g", v);
    std::printf("\n");
  }

  return 0;
}
