#include "bcbound/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcbound {

namespace {

constexpr double kStationaryTol = 1e-8;  // gradient norm, nats

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

struct Rows {
  int ny, nz;
  const TransitionMatrix* ty;
  const TransitionMatrix* tz;
  double a(int i) const { return ty->at(0, i); }
  double ahat(int i) const { return ty->at(1, i); }
  double b(int i) const { return tz->at(0, i); }
  double bhat(int i) const { return tz->at(1, i); }
};

Rows rows_of(const BroadcastChannel& bc) {
  if (bc.input_size != 2) fail("channel input alphabet must be binary");
  return Rows{bc.to_y.output_size(), bc.to_z.output_size(), &bc.to_y, &bc.to_z};
}

void require_positive_entries(const Rows& r) {
  for (int i = 0; i < r.ny; ++i) {
    if (r.a(i) <= 0 || r.ahat(i) <= 0) fail("zero channel entry (Y side)");
  }
  for (int i = 0; i < r.nz; ++i) {
    if (r.b(i) <= 0 || r.bhat(i) <= 0) fail("zero channel entry (Z side)");
  }
}

void require_interior(const AndPoint& pt) {
  if (!(pt.p10 > 0 && pt.p01 > 0 && pt.p11 > 0 && pt.p00() > 0)) {
    fail("point is not interior");
  }
}

double max_row_gap(const TransitionMatrix& tm) {
  double g = 0;
  for (int i = 0; i < tm.output_size(); ++i) {
    g = std::max(g, std::abs(tm.at(0, i) - tm.at(1, i)));
  }
  return g;
}

double nlog(double x) { return std::log(x); }

double neg_xlogx(double x) { return x > 0 ? -x * std::log(x) : 0.0; }

}  // namespace

double and_objective(const AndPoint& pt, const BroadcastChannel& bc) {
  Rows r = rows_of(bc);
  const double p00 = pt.p00(), p01 = pt.p01, p10 = pt.p10, p11 = pt.p11;
  if (p00 < -1e-12 || p01 < -1e-12 || p10 < -1e-12 || p11 < -1e-12) {
    fail("point outside the simplex");
  }
  double huv = neg_xlogx(p00) + neg_xlogx(p01) + neg_xlogx(p10) + neg_xlogx(p11);
  double huy = 0;
  for (int i = 0; i < r.ny; ++i) {
    huy += neg_xlogx(r.a(i) * (p00 + p01));
    huy += neg_xlogx(r.a(i) * p10 + r.ahat(i) * p11);
  }
  double hvz = 0;
  for (int i = 0; i < r.nz; ++i) {
    hvz += neg_xlogx(r.b(i) * (p00 + p10));
    hvz += neg_xlogx(r.b(i) * p01 + r.bhat(i) * p11);
  }
  return huv - huy - hvz;
}

AndGradient and_gradient(const AndPoint& pt, const BroadcastChannel& bc) {
  Rows r = rows_of(bc);
  require_interior(pt);
  require_positive_entries(r);
  const double p00 = pt.p00(), p01 = pt.p01, p10 = pt.p10, p11 = pt.p11;
  double d10 = nlog(p00 / p10);
  for (int i = 0; i < r.ny; ++i) {
    d10 -= r.a(i) * nlog(r.a(i) * (p00 + p01) / (r.a(i) * p10 + r.ahat(i) * p11));
  }
  double d01 = nlog(p00 / p01);
  for (int i = 0; i < r.nz; ++i) {
    d01 -= r.b(i) * nlog(r.b(i) * (p00 + p10) / (r.b(i) * p01 + r.bhat(i) * p11));
  }
  return {d10, d01};
}

HessianG and_hessian(const AndPoint& pt, const BroadcastChannel& bc) {
  Rows r = rows_of(bc);
  require_interior(pt);
  const double p00 = pt.p00(), p01 = pt.p01, p10 = pt.p10, p11 = pt.p11;
  double g11 = -1.0 / p00 - 1.0 / p10 + 1.0 / (p00 + p01);
  for (int i = 0; i < r.ny; ++i) {
    g11 += r.a(i) * r.a(i) / (r.a(i) * p10 + r.ahat(i) * p11);
  }
  double g22 = -1.0 / p00 - 1.0 / p01 + 1.0 / (p00 + p10);
  for (int i = 0; i < r.nz; ++i) {
    g22 += r.b(i) * r.b(i) / (r.b(i) * p01 + r.bhat(i) * p11);
  }
  return HessianG{g11, -1.0 / p00, g22};
}

const char* certificate_name(InteriorCertificate c) {
  switch (c) {
    case InteriorCertificate::RejectedSaddle: return "REJECTED_SADDLE";
    case InteriorCertificate::DegenerateChannel: return "DEGENERATE_CHANNEL";
    case InteriorCertificate::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

CertificateResult and_interior_certificate(const AndPoint& pt,
                                           const BroadcastChannel& bc,
                                           double tol) {
  AndGradient g = and_gradient(pt, bc);
  double gnorm = std::hypot(g.df_dp10, g.df_dp01);
  if (gnorm > kStationaryTol) {
    fail("and_interior_certificate called at a non-stationary point");
  }
  CertificateResult res;
  res.grad_norm = gnorm;
  res.channel_gap_a = max_row_gap(bc.to_y);
  res.channel_gap_b = max_row_gap(bc.to_z);
  res.det_g = and_hessian(pt, bc).det();
  if (res.channel_gap_a <= tol && res.channel_gap_b <= tol) {
    res.kind = InteriorCertificate::DegenerateChannel;
  } else if (res.det_g < -tol) {
    res.kind = InteriorCertificate::RejectedSaddle;
  } else {
    res.kind = InteriorCertificate::Inconclusive;
  }
  return res;
}

EdgeResidual and_edge_residuals(const AndPoint& pt, const BroadcastChannel& bc) {
  Rows r = rows_of(bc);
  require_positive_entries(r);
  const double p00 = pt.p00(), p01 = pt.p01, p10 = pt.p10, p11 = pt.p11;
  const double eps = 1e-14;
  int zeros = (std::abs(p00) <= eps) + (std::abs(p01) <= eps) + (std::abs(p10) <= eps);
  if (zeros != 1 || p11 <= eps) {
    fail("and_edge_residuals expects exactly one of p00, p01, p10 to be zero");
  }
  EdgeResidual out{};
  if (std::abs(p01) <= eps) {
    out.kind = AndEdgeCase::P01Zero;
    double gap = 0;
    for (int i = 0; i < r.ny; ++i) {
      gap += r.a(i) * nlog((r.a(i) * p10 + r.ahat(i) * p11) / (r.a(i) * p10));
    }
    out.value = gap;
  } else if (std::abs(p10) <= eps) {
    out.kind = AndEdgeCase::P10Zero;
    double gap = 0;
    for (int i = 0; i < r.nz; ++i) {
      gap += r.b(i) * nlog((r.b(i) * p01 + r.bhat(i) * p11) / (r.b(i) * p01));
    }
    out.value = gap;
  } else {
    out.kind = AndEdgeCase::P00Zero;
    double excess = 0;
    for (int i = 0; i < r.ny; ++i) {
      excess += r.a(i) * r.a(i) * p10 * p10 / (r.a(i) * p10 + r.ahat(i) * p11);
    }
    for (int i = 0; i < r.nz; ++i) {
      excess += r.b(i) * r.b(i) * p01 * p01 / (r.b(i) * p01 + r.bhat(i) * p11);
    }
    out.value = excess;
  }
  return out;
}

XorResiduals xor_first_order_residuals(const JointPMF& puv,
                                       const BroadcastChannel& bc) {
  Rows r = rows_of(bc);
  require_positive_entries(r);
  if (puv.rank() != 2 || puv.dim(0) != 2 || puv.dim(1) != 2) {
    fail("xor residuals expect a 2x2 joint");
  }
  const auto& m = puv.masses();
  const double p00 = m[0], p01 = m[1], p10 = m[2], p11 = m[3];
  if (!(p00 > 0 && p01 > 0 && p10 > 0 && p11 > 0)) fail("point is not interior");

  // S_i: Y-side log ratios; R_i: Z-side
  double sum_a_logS = 0, sum_ahat_logS = 0, sum_b_logR = 0, sum_bhat_logR = 0;
  for (int i = 0; i < r.ny; ++i) {
    double s = nlog((r.a(i) * p00 + r.ahat(i) * p01) /
                    (r.a(i) * p11 + r.ahat(i) * p10));
    sum_a_logS += r.a(i) * s;
    sum_ahat_logS += r.ahat(i) * s;
  }
  for (int i = 0; i < r.nz; ++i) {
    double t = nlog((r.b(i) * p00 + r.bhat(i) * p10) /
                    (r.b(i) * p11 + r.bhat(i) * p01));
    sum_b_logR += r.b(i) * t;
    sum_bhat_logR += r.bhat(i) * t;
  }

  XorResiduals out;
  out.eq_110 = sum_a_logS + sum_b_logR - nlog(p00 / p11);
  out.eq_101 = sum_ahat_logS - sum_bhat_logR - nlog(p01 / p10);
  out.slack_free1 = sum_b_logR - nlog(p00 / p01);
  out.slack_free2 = sum_a_logS - nlog(p00 / p10);
  out.slack_free3 = -sum_bhat_logR - nlog(p01 / p00);
  out.slack_free4 = sum_ahat_logS - nlog(p01 / p11);
  out.det_residual = p00 * p11 - p01 * p10;
  return out;
}

const char* xor_class_name(XorClass c) {
  switch (c) {
    case XorClass::ChannelDegenerate: return "CHANNEL_DEGENERATE";
    case XorClass::UniformIndependent: return "UNIFORM_INDEPENDENT";
    case XorClass::NotLocalMax: return "NOT_LOCAL_MAX";
  }
  return "?";
}

XorClass xor_degeneracy_classifier(const JointPMF& puv,
                                   const BroadcastChannel& bc, double tol) {
  double gap_a = max_row_gap(bc.to_y);
  double gap_b = max_row_gap(bc.to_z);
  if (gap_a <= tol || gap_b <= tol) return XorClass::ChannelDegenerate;
  const auto& m = puv.masses();
  const double p00 = m[0], p01 = m[1], p10 = m[2], p11 = m[3];
  // (p01 - p11)(b_i - bhat_i) == 0 and (p10 - p11)(a_i - ahat_i) == 0
  if (std::abs(p01 - p11) * gap_b > tol) return XorClass::NotLocalMax;
  if (std::abs(p10 - p11) * gap_a > tol) return XorClass::NotLocalMax;
  (void)p00;
  return XorClass::UniformIndependent;
}

AndGradient finite_difference_gradient(
    const std::function<double(const AndPoint&)>& evaluate, const AndPoint& pt,
    double step) {
  if (!(step > 0)) fail("step must be positive");
  // both perturbed points must stay inside the triangle
  if (pt.p10 - step <= 0 || pt.p01 - step <= 0 || pt.p00() - step <= 0) {
    fail("step too large for the feasible region");
  }
  AndPoint a = pt, b = pt;
  a.p10 = pt.p10 + step;
  b.p10 = pt.p10 - step;
  double d10 = (evaluate(a) - evaluate(b)) / (2 * step);
  a = pt;
  b = pt;
  a.p01 = pt.p01 + step;
  b.p01 = pt.p01 - step;
  double d01 = (evaluate(a) - evaluate(b)) / (2 * step);
  return {d10, d01};
}

std::vector<StationaryPoint> and_stationary_sweep(const BroadcastChannel& bc,
                                                  double p11,
                                                  int scan_resolution) {
  Rows r = rows_of(bc);
  require_positive_entries(r);
  if (!(p11 > 0 && p11 < 1)) fail("p11 must lie in (0,1)");
  if (scan_resolution < 4) fail("scan_resolution too small");
  const double s = 1.0 - p11;

  auto d10_at = [&](double p10, double p01) {
    return and_gradient(AndPoint{p10, p01, p11}, bc).df_dp10;
  };
  // df/dp10 is strictly decreasing in p10, so the root is unique
  auto solve_p10 = [&](double p01) {
    double lo = (s - p01) * 1e-12;
    double hi = (s - p01) * (1.0 - 1e-12);
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (d10_at(mid, p01) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto d01_on_curve = [&](double p01) {
    double p10 = solve_p10(p01);
    return and_gradient(AndPoint{p10, p01, p11}, bc).df_dp01;
  };

  std::vector<std::pair<double, double>> scan;  // (p01, residual)
  for (int j = 1; j < scan_resolution; ++j) {
    double p01 = s * j / scan_resolution;
    scan.push_back({p01, d01_on_curve(p01)});
  }

  std::vector<StationaryPoint> out;
  for (size_t i = 0; i + 1 < scan.size(); ++i) {
    double ra = scan[i].second, rb = scan[i + 1].second;
    if (ra == 0 || ra * rb < 0) {
      double lo = scan[i].first, hi = scan[i + 1].first;
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double rm = d01_on_curve(mid);
        if ((rm > 0) == (ra > 0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      double p01 = 0.5 * (lo + hi);
      AndPoint pt{solve_p10(p01), p01, p11};
      AndGradient g = and_gradient(pt, bc);
      out.push_back({pt, std::hypot(g.df_dp10, g.df_dp01)});
    }
  }
  return out;
}

}  // namespace bcbound
