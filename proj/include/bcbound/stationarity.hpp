#pragma once

#include <functional>
#include <vector>

#include "bcbound/info_core.hpp"

// Executable first- and second-order optimality certificates for the
// AND-gate and XOR-gate cases. The AND-case objective
//     f(p10, p01) = H(U,V) - H(U,Y) - H(V,Z)   (at fixed p11)
// and everything derived from it uses natural logarithms, so the closed
// forms below (notably G12 = -1/p00) hold exactly; the certificates only
// consume signs, zeros and equalities, which are base-invariant.

namespace bcbound {

struct AndPoint {
  double p10 = 0, p01 = 0, p11 = 0;
  double p00() const { return 1.0 - p11 - p01 - p10; }
};

struct HessianG {
  double g11, g12, g22;  // g12 = -1/p00 by construction
  double det() const { return g11 * g22 - g12 * g12; }
};

// f itself (nats); valid on the closed triangle.
double and_objective(const AndPoint& pt, const BroadcastChannel& bc);

struct AndGradient {
  double df_dp10, df_dp01;
};

// Closed-form gradient; requires an interior point and positive channel
// entries.
AndGradient and_gradient(const AndPoint& pt, const BroadcastChannel& bc);

HessianG and_hessian(const AndPoint& pt, const BroadcastChannel& bc);

enum class InteriorCertificate {
  RejectedSaddle,     // det(G) < -tol: not a local maximum
  DegenerateChannel,  // a == a_hat and b == b_hat within tol
  Inconclusive,       // neither; surfaced as a finding
};
const char* certificate_name(InteriorCertificate c);

struct CertificateResult {
  InteriorCertificate kind;
  double det_g;
  double grad_norm;
  double channel_gap_a;  // max_i |a_i - a_hat_i|
  double channel_gap_b;
};

// Classifies a numerically stationary interior point. Throws if the gradient
// norm exceeds tol (the certificate is only meaningful at stationary points).
CertificateResult and_interior_certificate(const AndPoint& pt,
                                           const BroadcastChannel& bc,
                                           double tol);

enum class AndEdgeCase { P00Zero, P01Zero, P10Zero };

struct EdgeResidual {
  AndEdgeCase kind;
  // P01Zero / P10Zero: the log-sum gap whose positivity rules out a local
  // maximum on that edge. P00Zero: the second-derivative excess.
  double value;
};

// Requires exactly one of p00, p01, p10 to be zero.
EdgeResidual and_edge_residuals(const AndPoint& pt, const BroadcastChannel& bc);

struct XorResiduals {
  double eq_110;         // coefficient of lambda_110 (equality)
  double eq_101;         // coefficient of lambda_101 (equality)
  double slack_free1;    // sum_i b_i log R_i  - log(p00/p01)
  double slack_free2;    // sum_i a_i log S_i  - log(p00/p10)
  double slack_free3;    // -sum_i bhat_i log R_i - log(p01/p00)
  double slack_free4;    // sum_i ahat_i log S_i  - log(p01/p11)
  double det_residual;   // p00 p11 - p01 p10
};

// First-order conditions of the lambda-perturbation system at an interior
// p(u,v) for X = U xor V; all logs natural.
XorResiduals xor_first_order_residuals(const JointPMF& puv,
                                       const BroadcastChannel& bc);

enum class XorClass { ChannelDegenerate, UniformIndependent, NotLocalMax };
const char* xor_class_name(XorClass c);

XorClass xor_degeneracy_classifier(const JointPMF& puv,
                                   const BroadcastChannel& bc, double tol);

// Central finite differences of `evaluate` in (p10, p01); oracle for the
// closed forms above.
AndGradient finite_difference_gradient(
    const std::function<double(const AndPoint&)>& evaluate, const AndPoint& pt,
    double step);

struct StationaryPoint {
  AndPoint pt;
  double grad_norm;
};

// Deterministic stationary-point sweep at fixed p11: for each p01 on a scan
// grid, solves df/dp10 = 0 by bisection (f is strictly concave in p10), then
// brackets sign changes of df/dp01 along that curve.
std::vector<StationaryPoint> and_stationary_sweep(const BroadcastChannel& bc,
                                                  double p11,
                                                  int scan_resolution);

}  // namespace bcbound
