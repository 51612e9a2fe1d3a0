#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bcbound/report.hpp"

// Exit codes: 0 success; 1 usage or parse error; 2 a finding that should not
// exist (negative margin on a binary channel, inconclusive certificate);
// 3 counterexample search exhausted without a witness.

namespace {

using namespace bcbound;

struct CommonArgs {
  std::string channel;
  std::string out;
  OptimizerConfig cfg;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_channel = true) {
  if (with_channel) {
    cmd->add_option("--channel", a.channel,
                    "channel file or name (bssc[:skew], blackwell)")
        ->required();
  }
  cmd->add_option("--grid", a.cfg.grid_resolution, "lattice points per simplex axis");
  cmd->add_option("--refine", a.cfg.refine_iterations, "refinement rounds");
  cmd->add_option("--shrink", a.cfg.refine_shrink, "refinement shrink factor");
  cmd->add_option("--seed", a.cfg.seed, "seed echoed into the report");
  cmd->add_option("--oracle-grid", a.cfg.oracle_resolution,
                  "lattice denominator of the non-deterministic cross-check");
  cmd->add_option("--out", a.out, "write the JSON report here (default: stdout)");
}

void emit(const Json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_report(report, out);
  }
}

Json echo_args(const CommonArgs& a) {
  Json j = config_to_json(a.cfg);
  if (!a.channel.empty()) j["channel"] = a.channel;
  return j;
}

int run_verify(const CommonArgs& a, const std::string& csv_path, int csv_grid) {
  BroadcastChannel bc = load_channel(a.channel);
  VerificationReport rep = verify_binary_channel(bc, a.cfg);
  Json payload = verification_report_to_json(rep);
  emit(make_report("verify", echo_args(a), &bc, std::move(payload)), a.out);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) {
      std::cerr << "cannot write csv to '" << csv_path << "'\n";
      return 1;
    }
    f << margins_csv(bc, csv_grid);
  }
  if (!a.out.empty()) {
    std::cerr << (rep.holds ? "holds" : "VIOLATED") << ", min margin "
              << rep.global_min_margin << "\n";
  }
  return rep.holds ? 0 : 2;
}

int run_sumrate(const CommonArgs& a) {
  BroadcastChannel bc = load_channel(a.channel);
  RtdMax rtd = rtd_sum_rate_max(bc, a.cfg);
  MartonMax marton = marton_sum_rate_max(bc, a.cfg);
  OuterEstimate outer = outer_bound_sum_rate_estimate(bc, a.cfg);
  Json payload;
  payload["rtd"] = rtd_max_to_json(rtd);
  payload["marton"] = marton_max_to_json(marton);
  payload["outer_estimate"] = outer_estimate_to_json(outer);
  payload["abs_gap_rtd_marton"] = std::abs(marton.value - rtd.value);
  payload["outer_minus_marton"] = outer.value - marton.value;
  emit(make_report("sumrate", echo_args(a), &bc, std::move(payload)), a.out);
  if (!a.out.empty()) {
    std::cerr << "rtd " << rtd.value << ", marton " << marton.value
              << ", outer estimate " << outer.value << "\n";
  }
  return 0;
}

int run_hunt(CommonArgs a, long trials, int ny, int nz) {
  Json worst_channel;
  double min_margin = 0;
  bool init = false;
  std::uint64_t worst_seed = 0;
  long violations = 0;
  for (long t = 0; t < trials; ++t) {
    Seed s{a.cfg.seed + static_cast<std::uint64_t>(t)};
    BroadcastChannel bc = random_channel(ny, nz, s);
    VerificationReport rep = verify_binary_channel(bc, a.cfg);
    if (!rep.holds) ++violations;
    if (!init || rep.global_min_margin < min_margin) {
      init = true;
      min_margin = rep.global_min_margin;
      worst_seed = s.value;
      worst_channel = channel_to_json(bc);
    }
  }
  Json payload;
  payload["trials"] = trials;
  payload["ny"] = ny;
  payload["nz"] = nz;
  payload["violations"] = violations;
  payload["min_margin"] = min_margin;
  payload["worst_seed"] = worst_seed;
  payload["worst_channel"] = std::move(worst_channel);
  emit(make_report("hunt", echo_args(a), nullptr, std::move(payload)), a.out);
  if (!a.out.empty()) {
    std::cerr << trials << " trials, " << violations << " violations, min margin "
              << min_margin << "\n";
  }
  return violations == 0 ? 0 : 2;
}

int run_counterexample(const CommonArgs& a) {
  BroadcastChannel bc = load_channel(a.channel);
  if (bc.input_size < 3) {
    std::cerr << "counterexample search needs input alphabet >= 3 "
                 "(use `verify` for binary channels)\n";
    return 1;
  }
  auto witness = search_violation(bc, a.cfg);
  Json payload;
  payload["found"] = witness.has_value();
  if (witness) payload["witness"] = violation_witness_to_json(*witness);
  emit(make_report("counterexample", echo_args(a), &bc, std::move(payload)), a.out);
  if (!a.out.empty()) {
    if (witness) {
      std::cerr << "violation found, margin " << witness->margin << "\n";
    } else {
      std::cerr << "no violation found\n";
    }
  }
  return witness ? 0 : 3;
}

int run_stationarity(const CommonArgs& a, const std::string& gate) {
  BroadcastChannel bc = load_channel(a.channel);
  if (bc.input_size != 2) {
    std::cerr << "stationarity analysis needs a binary-input channel\n";
    return 1;
  }
  const double tol = 1e-9;
  Json points = Json::array();
  long inconclusive = 0;
  if (gate == "and") {
    const int slices = std::min(a.cfg.grid_resolution, 51);
    for (int k = 1; k < slices; ++k) {
      double p11 = static_cast<double>(k) / slices;
      for (const StationaryPoint& sp :
           and_stationary_sweep(bc, p11, a.cfg.grid_resolution)) {
        Json e;
        e["p11"] = sp.pt.p11;
        e["p10"] = sp.pt.p10;
        e["p01"] = sp.pt.p01;
        e["grad_norm"] = sp.grad_norm;
        CertificateResult cert = and_interior_certificate(sp.pt, bc, tol);
        e["certificate"] = certificate_name(cert.kind);
        e["det_g"] = cert.det_g;
        if (cert.kind == InteriorCertificate::Inconclusive) ++inconclusive;
        points.push_back(std::move(e));
      }
    }
  } else if (gate == "xor") {
    for (const GateJoint& gj :
         local_maxima_for_gate(bc, kGateXor, a.cfg, 8)) {
      const auto& m = gj.puv.masses();
      double interior = std::min(std::min(m[0], m[1]), std::min(m[2], m[3]));
      if (interior < 1e-4) continue;
      XorResiduals res = xor_first_order_residuals(gj.puv, bc);
      bool survives = std::abs(res.eq_110) <= 1e-6 && std::abs(res.eq_101) <= 1e-6 &&
                      res.slack_free1 >= -1e-6 && res.slack_free2 >= -1e-6 &&
                      res.slack_free3 >= -1e-6 && res.slack_free4 >= -1e-6;
      Json e;
      e["puv"] = m;
      e["eq_residuals"] = {res.eq_110, res.eq_101};
      e["slacks"] = {res.slack_free1, res.slack_free2, res.slack_free3,
                     res.slack_free4};
      e["det_residual"] = res.det_residual;
      e["survives_first_order"] = survives;
      if (survives) {
        if (std::abs(res.det_residual) <= 1e-6) {
          e["classification"] = "DETERMINANT_ZERO";
        } else {
          XorClass cls = xor_degeneracy_classifier(gj.puv, bc, tol);
          e["classification"] = xor_class_name(cls);
          if (cls != XorClass::ChannelDegenerate &&
              cls != XorClass::UniformIndependent) {
            // survived first order with nonzero determinant and no
            // degeneracy: contradicts the certificate chain
            e["classification"] = "INCONCLUSIVE";
            ++inconclusive;
          }
        }
      }
      points.push_back(std::move(e));
    }
  } else {
    std::cerr << "--gate must be 'and' or 'xor'\n";
    return 1;
  }
  Json payload;
  payload["gate"] = gate;
  payload["stationary_points"] = std::move(points);
  payload["inconclusive"] = inconclusive;
  Json args = echo_args(a);
  args["gate"] = gate;
  emit(make_report("stationarity", args, &bc, std::move(payload)), a.out);
  if (!a.out.empty()) {
    std::cerr << payload["stationary_points"].size() << " points, "
              << inconclusive << " inconclusive\n";
  }
  return inconclusive == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-rate bounds and inequality verification for binary-input "
               "two-receiver broadcast channels"};
  app.require_subcommand(1);

  CommonArgs va;
  std::string csv_path;
  int csv_grid = 20;
  auto* verify = app.add_subcommand("verify", "verify the sum-rate inequality");
  add_common(verify, va);
  verify->add_option("--csv", csv_path, "also dump a per-point margin table");
  verify->add_option("--csv-grid", csv_grid, "lattice denominator for --csv");

  CommonArgs sa;
  auto* sumrate = app.add_subcommand("sumrate", "rtd / marton / outer sum rates");
  add_common(sumrate, sa);

  CommonArgs ha;
  long trials = 100;
  int ny = 2, nz = 2;
  auto* hunt = app.add_subcommand("hunt", "verify a batch of random channels");
  add_common(hunt, ha, /*with_channel=*/false);
  hunt->add_option("--trials", trials, "number of random channels");
  hunt->add_option("--ny", ny, "Y output alphabet size");
  hunt->add_option("--nz", nz, "Z output alphabet size");

  CommonArgs ca;
  auto* cex = app.add_subcommand("counterexample",
                                 "search for a violation on a |X|>=3 channel");
  add_common(cex, ca);

  CommonArgs ta;
  std::string gate = "and";
  auto* stat = app.add_subcommand("stationarity",
                                  "stationary-point certificates");
  add_common(stat, ta);
  stat->add_option("--gate", gate, "and | xor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (verify->parsed()) return run_verify(va, csv_path, csv_grid);
    if (sumrate->parsed()) return run_sumrate(sa);
    if (hunt->parsed()) return run_hunt(ha, trials, ny, nz);
    if (cex->parsed()) return run_counterexample(ca);
    if (stat->parsed()) return run_stationarity(ta, gate);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
