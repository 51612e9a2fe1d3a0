#include "bcbound/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcbound/detail/binary_eval.hpp"
#include "bcbound/optimizer.hpp"

namespace bcbound {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

TransitionMatrix matrix_from_json(const Json& j, const char* field) {
  if (!j.is_array() || j.empty()) {
    fail(std::string(field) + " must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (size_t x = 0; x < j.size(); ++x) {
    const Json& row = j[x];
    if (!row.is_array()) {
      std::ostringstream os;
      os << field << " row " << x << " must be an array";
      fail(os.str());
    }
    std::vector<double> r;
    for (size_t y = 0; y < row.size(); ++y) {
      if (!row[y].is_number()) {
        std::ostringstream os;
        os << field << " entry [" << x << "][" << y << "] is not a number";
        fail(os.str());
      }
      r.push_back(row[y].get<double>());
    }
    rows.push_back(std::move(r));
  }
  try {
    return TransitionMatrix::validate(rows, kIngestTol);
  } catch (const std::invalid_argument& e) {
    fail(std::string(field) + ": " + e.what());
  }
}

BroadcastChannel named_channel(const std::string& name) {
  if (name == "blackwell") return blackwell();
  if (name == "bssc") return bssc(0.5);
  if (name.rfind("bssc:", 0) == 0) {
    std::string arg = name.substr(5);
    size_t pos = 0;
    double skew;
    try {
      skew = std::stod(arg, &pos);
    } catch (const std::exception&) {
      fail("cannot parse bssc skew '" + arg + "'");
    }
    if (pos != arg.size()) fail("trailing characters in bssc skew '" + arg + "'");
    return bssc(skew);
  }
  fail("unknown named channel '" + name + "' (expected bssc[:skew] or blackwell)");
}

}  // namespace

BroadcastChannel load_channel(const std::string& path_or_name) {
  if (path_or_name == "blackwell" || path_or_name == "bssc" ||
      path_or_name.rfind("bssc:", 0) == 0) {
    return named_channel(path_or_name);
  }
  std::ifstream in(path_or_name);
  if (!in) fail("cannot open channel file '" + path_or_name + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail("channel file '" + path_or_name + "': " + e.what());
  }
  if (j.contains("named")) {
    if (!j["named"].is_string()) fail("'named' must be a string");
    return named_channel(j["named"].get<std::string>());
  }
  if (!j.contains("to_y") || !j.contains("to_z")) {
    fail("channel file must contain 'to_y' and 'to_z' (or 'named')");
  }
  TransitionMatrix ty = matrix_from_json(j["to_y"], "to_y");
  TransitionMatrix tz = matrix_from_json(j["to_z"], "to_z");
  if (j.contains("input_size")) {
    int n = j["input_size"].get<int>();
    if (n != ty.input_size()) {
      std::ostringstream os;
      os << "input_size " << n << " does not match to_y rows (" << ty.input_size() << ")";
      fail(os.str());
    }
  }
  try {
    return BroadcastChannel::make(std::move(ty), std::move(tz));
  } catch (const std::invalid_argument& e) {
    fail(std::string("channel file: ") + e.what());
  }
}

Json channel_to_json(const BroadcastChannel& bc) {
  Json j;
  j["input_size"] = bc.input_size;
  j["digest"] = channel_digest(bc);
  auto rows = [](const TransitionMatrix& tm) {
    Json out = Json::array();
    for (int x = 0; x < tm.input_size(); ++x) {
      Json row = Json::array();
      for (int y = 0; y < tm.output_size(); ++y) row.push_back(tm.at(x, y));
      out.push_back(std::move(row));
    }
    return out;
  };
  j["to_y"] = rows(bc.to_y);
  j["to_z"] = rows(bc.to_z);
  return j;
}

Json config_to_json(const OptimizerConfig& cfg) {
  Json j;
  j["grid"] = cfg.grid_resolution;
  j["refine"] = cfg.refine_iterations;
  j["shrink"] = cfg.refine_shrink;
  j["seed"] = cfg.seed;
  j["oracle_grid"] = cfg.oracle_resolution;
  return j;
}

Json gate_joint_to_json(const GateJoint& gj) {
  Json j;
  j["gate"] = gj.gate.table;
  j["puv"] = gj.puv.masses();
  return j;
}

Json verification_report_to_json(const VerificationReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["global_min_margin"] = r.global_min_margin;
  Json gates = Json::array();
  for (const auto& pg : r.per_gate) {
    Json g;
    g["case"] = canonical_gate_name(pg.case_id);
    g["gate"] = pg.gate.table;
    g["max_lhs"] = pg.max_lhs;
    g["argmax"] = gate_joint_to_json(pg.argmax);
    g["rhs_at_argmax"] = pg.rhs_at_argmax;
    g["margin"] = pg.margin;
    g["min_margin"] = pg.min_margin;
    g["min_margin_point"] = gate_joint_to_json(pg.min_margin_point);
    gates.push_back(std::move(g));
  }
  j["per_gate"] = std::move(gates);
  j["search"] = {{"points_evaluated", r.points_evaluated}};
  j["remark1_oracle"] = {{"resolution", r.config.oracle_resolution},
                         {"points", r.oracle_points},
                         {"min_margin", r.oracle_min_margin}};
  return j;
}

Json rtd_max_to_json(const RtdMax& r) {
  Json j;
  j["value"] = r.value;
  j["argmax_joint_wx"] = r.argmax.joint_wx.masses();
  return j;
}

Json marton_max_to_json(const MartonMax& m) {
  Json j;
  j["value"] = m.value;
  Json w;
  w["pw"] = m.witness.pw.masses();
  w["gate_w0"] = m.witness.per_w_gate[0].table;
  w["gate_w1"] = m.witness.per_w_gate[1].table;
  w["puv_w0"] = m.witness.per_w_puv[0].masses();
  w["puv_w1"] = m.witness.per_w_puv[1].masses();
  j["witness"] = std::move(w);
  return j;
}

Json outer_estimate_to_json(const OuterEstimate& o) {
  Json j;
  j["value"] = o.value;
  j["argmax_uvx"] = o.argmax.masses();
  j["u_size"] = o.argmax.dim(0);
  j["v_size"] = o.argmax.dim(1);
  return j;
}

Json violation_witness_to_json(const ViolationWitness& w) {
  Json j;
  j["u_size"] = w.gate.u_size;
  j["v_size"] = w.gate.v_size;
  j["gate"] = w.gate.table;
  j["puv"] = w.puv;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  j["margin"] = w.margin;
  return j;
}

Json make_report(const std::string& command, const Json& args_echo,
                 const BroadcastChannel* bc, Json payload) {
  Json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = command;
  j["args"] = args_echo;
  if (bc != nullptr) j["channel"] = channel_to_json(*bc);
  j["payload"] = std::move(payload);
  return j;
}

void write_report(const Json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write report to '" + path + "'");
  out << report.dump(2) << '\n';
}

std::string margins_csv(const BroadcastChannel& bc, int denom) {
  const detail::BinaryChannelView cv = detail::BinaryChannelView::from(bc);
  std::ostringstream os;
  os.precision(12);
  os << "case,p00,p01,p10,p11,lhs,rhs,margin\n";
  for (CanonicalGate c : {CanonicalGate::Const, CanonicalGate::Pass,
                          CanonicalGate::And, CanonicalGate::Xor}) {
    Gate g = canonical_gate_table(c);
    double p[4];
    for_each_composition(4, denom, [&](const int* counts) {
      for (int i = 0; i < 4; ++i) p[i] = static_cast<double>(counts[i]) / denom;
      auto e = detail::eval_gate_point(cv, g, p);
      os << canonical_gate_name(c) << ',' << p[0] << ',' << p[1] << ',' << p[2]
         << ',' << p[3] << ',' << e.lhs << ',' << e.rhs << ',' << e.margin
         << '\n';
    });
  }
  return os.str();
}

}  // namespace bcbound
