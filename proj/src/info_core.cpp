#include "bcbound/info_core.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace bcbound {

namespace {

double sum(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

}  // namespace

Distribution Distribution::validate(std::vector<double> raw, double tolerance) {
  if (raw.empty()) fail("distribution must be non-empty");
  for (size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= -tolerance)) {
      std::ostringstream os;
      os << "negative mass at index " << i << ": " << raw[i];
      fail(os.str());
    }
  }
  double s = sum(raw);
  if (std::abs(s - 1.0) > tolerance) {
    std::ostringstream os;
    os << "sum " << s << " deviates from 1";
    fail(os.str());
  }
  bool dirty = false;
  for (double& x : raw) {
    if (x < 0) {
      x = 0;
      dirty = true;
    }
  }
  if (dirty || s != 1.0) {
    s = sum(raw);
    for (double& x : raw) x /= s;
  }
  return Distribution(std::move(raw));
}

Distribution Distribution::exact(std::vector<double> masses) {
  return validate(std::move(masses), kInternalTol);
}

Distribution validate_distribution(std::vector<double> raw, double tolerance) {
  return Distribution::validate(std::move(raw), tolerance);
}

TransitionMatrix TransitionMatrix::validate(
    std::vector<std::vector<double>> rows, double tolerance) {
  if (rows.empty()) fail("transition matrix must have at least one row");
  TransitionMatrix tm;
  tm.input_size_ = static_cast<int>(rows.size());
  tm.output_size_ = static_cast<int>(rows[0].size());
  for (size_t x = 0; x < rows.size(); ++x) {
    if (static_cast<int>(rows[x].size()) != tm.output_size_) {
      fail("ragged transition matrix");
    }
    Distribution row;
    try {
      row = Distribution::validate(rows[x], tolerance);
    } catch (const std::invalid_argument& e) {
      std::ostringstream os;
      os << "row " << x << ": " << e.what();
      fail(os.str());
    }
    tm.data_.insert(tm.data_.end(), row.masses().begin(), row.masses().end());
  }
  return tm;
}

BroadcastChannel BroadcastChannel::make(TransitionMatrix to_y,
                                        TransitionMatrix to_z) {
  if (to_y.input_size() != to_z.input_size()) {
    fail("receiver channels disagree on the input alphabet");
  }
  BroadcastChannel bc;
  bc.input_size = to_y.input_size();
  bc.to_y = std::move(to_y);
  bc.to_z = std::move(to_z);
  return bc;
}

JointPMF JointPMF::validate(std::vector<int> dims, std::vector<double> masses,
                            double tolerance) {
  size_t cells = 1;
  for (int d : dims) {
    if (d <= 0) fail("non-positive joint dimension");
    cells *= static_cast<size_t>(d);
  }
  if (masses.size() != cells) fail("joint mass table has the wrong size");
  Distribution flat = Distribution::validate(std::move(masses), tolerance);
  return JointPMF(std::move(dims), flat.masses());
}

JointPMF JointPMF::exact(std::vector<int> dims, std::vector<double> masses) {
  return validate(std::move(dims), std::move(masses), kInternalTol);
}

double JointPMF::at(std::span<const int> idx) const {
  size_t flat = 0;
  for (size_t k = 0; k < dims_.size(); ++k) {
    flat = flat * static_cast<size_t>(dims_[k]) + static_cast<size_t>(idx[k]);
  }
  return masses_[flat];
}

Distribution JointPMF::marginal(int axis) const {
  std::vector<double> out(static_cast<size_t>(dims_[static_cast<size_t>(axis)]), 0.0);
  size_t inner = 1;
  for (size_t k = static_cast<size_t>(axis) + 1; k < dims_.size(); ++k) {
    inner *= static_cast<size_t>(dims_[k]);
  }
  size_t n = static_cast<size_t>(dims_[static_cast<size_t>(axis)]);
  for (size_t i = 0; i < masses_.size(); ++i) {
    out[(i / inner) % n] += masses_[i];
  }
  return Distribution::exact(std::move(out));
}

JointPMF JointPMF::pair_marginal(int axis_a, int axis_b) const {
  int na = dims_[static_cast<size_t>(axis_a)];
  int nb = dims_[static_cast<size_t>(axis_b)];
  std::vector<double> out(static_cast<size_t>(na) * nb, 0.0);
  std::vector<size_t> inner(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k) {
    inner[static_cast<size_t>(k)] =
        inner[static_cast<size_t>(k + 1)] * static_cast<size_t>(dims_[static_cast<size_t>(k + 1)]);
  }
  for (size_t i = 0; i < masses_.size(); ++i) {
    size_t ia = (i / inner[static_cast<size_t>(axis_a)]) % static_cast<size_t>(na);
    size_t ib = (i / inner[static_cast<size_t>(axis_b)]) % static_cast<size_t>(nb);
    out[ia * static_cast<size_t>(nb) + ib] += masses_[i];
  }
  return JointPMF({na, nb}, std::move(out));
}

JointPMF JointPMF::drop_axis(int axis) const {
  std::vector<int> nd;
  for (size_t k = 0; k < dims_.size(); ++k) {
    if (static_cast<int>(k) != axis) nd.push_back(dims_[k]);
  }
  size_t cells = 1;
  for (int d : nd) cells *= static_cast<size_t>(d);
  std::vector<double> out(cells, 0.0);
  std::vector<size_t> inner(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k) {
    inner[static_cast<size_t>(k)] =
        inner[static_cast<size_t>(k + 1)] * static_cast<size_t>(dims_[static_cast<size_t>(k + 1)]);
  }
  for (size_t i = 0; i < masses_.size(); ++i) {
    size_t o = 0;
    for (size_t k = 0; k < dims_.size(); ++k) {
      if (static_cast<int>(k) == axis) continue;
      size_t ik = (i / inner[k]) % static_cast<size_t>(dims_[k]);
      o = o * static_cast<size_t>(dims_[k]) + ik;
    }
    out[o] += masses_[i];
  }
  return JointPMF(std::move(nd), std::move(out));
}

double entropy_bits(std::span<const double> masses) {
  double h = 0;
  for (double p : masses) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const Distribution& d) { return entropy_bits(d.masses()); }

double mutual_information(const JointPMF& j) {
  if (j.rank() != 2) fail("mutual_information expects a 2-d joint");
  return entropy(j.marginal(0)) + entropy(j.marginal(1)) -
         entropy_bits(j.masses());
}

double conditional_mutual_information(const JointPMF& j) {
  if (j.rank() != 3) fail("conditional_mutual_information expects a 3-d joint");
  int na = j.dim(0), nb = j.dim(1), nc = j.dim(2);
  double total = 0;
  std::vector<double> slice(static_cast<size_t>(na) * nb);
  for (int c = 0; c < nc; ++c) {
    double pc = 0;
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        int idx[3] = {a, b, c};
        double m = j.at(idx);
        slice[static_cast<size_t>(a * nb + b)] = m;
        pc += m;
      }
    }
    if (pc <= 0) continue;
    double ha = 0, hb = 0, hab = 0;
    std::vector<double> pa(static_cast<size_t>(na), 0.0), pb(static_cast<size_t>(nb), 0.0);
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b) {
        double m = slice[static_cast<size_t>(a * nb + b)] / pc;
        pa[static_cast<size_t>(a)] += m;
        pb[static_cast<size_t>(b)] += m;
        if (m > 0) hab -= m * std::log2(m);
      }
    }
    ha = entropy_bits(pa);
    hb = entropy_bits(pb);
    total += pc * (ha + hb - hab);
  }
  return total;
}

double kl_divergence(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) fail("kl_divergence: alphabet size mismatch");
  double d = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) {
      std::ostringstream os;
      os << "kl_divergence: support violation at index " << i << " (p="
         << p[i] << ", q=0)";
      fail(os.str());
    }
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

JointPMF push_through(const Distribution& px, const TransitionMatrix& ch) {
  if (px.size() != ch.input_size()) {
    fail("push_through: input alphabet mismatch");
  }
  std::vector<double> out;
  out.reserve(static_cast<size_t>(px.size()) * ch.output_size());
  for (int x = 0; x < px.size(); ++x) {
    for (int y = 0; y < ch.output_size(); ++y) {
      out.push_back(px[x] * ch.at(x, y));
    }
  }
  return JointPMF::exact({px.size(), ch.output_size()}, std::move(out));
}

InducedPairs induced_pairs(const JointPMF& joint_uvx,
                           const BroadcastChannel& bc) {
  if (joint_uvx.rank() != 3 || joint_uvx.dim(2) != bc.input_size) {
    fail("induced_pairs: joint third axis must match the channel input");
  }
  int nu = joint_uvx.dim(0), nv = joint_uvx.dim(1), nx = joint_uvx.dim(2);
  int ny = bc.to_y.output_size(), nz = bc.to_z.output_size();
  std::vector<double> uy(static_cast<size_t>(nu) * ny, 0.0);
  std::vector<double> vz(static_cast<size_t>(nv) * nz, 0.0);
  std::vector<double> px(static_cast<size_t>(nx), 0.0);
  for (int u = 0; u < nu; ++u) {
    for (int v = 0; v < nv; ++v) {
      for (int x = 0; x < nx; ++x) {
        int idx[3] = {u, v, x};
        double m = joint_uvx.at(idx);
        if (m == 0) continue;
        px[static_cast<size_t>(x)] += m;
        for (int y = 0; y < ny; ++y) {
          uy[static_cast<size_t>(u * ny + y)] += m * bc.to_y.at(x, y);
        }
        for (int z = 0; z < nz; ++z) {
          vz[static_cast<size_t>(v * nz + z)] += m * bc.to_z.at(x, z);
        }
      }
    }
  }
  InducedPairs out;
  out.uy = JointPMF::exact({nu, ny}, std::move(uy));
  out.vz = JointPMF::exact({nv, nz}, std::move(vz));
  out.px = Distribution::exact(std::move(px));
  return out;
}

JointPMF push_axis(const JointPMF& joint, int axis, const TransitionMatrix& ch) {
  if (joint.dim(axis) != ch.input_size()) {
    fail("push_axis: axis size must match the channel input");
  }
  std::vector<int> nd = joint.dims();
  int nx = nd[static_cast<size_t>(axis)];
  int ny = ch.output_size();
  nd[static_cast<size_t>(axis)] = ny;
  size_t cells = 1;
  for (int d : nd) cells *= static_cast<size_t>(d);
  std::vector<double> out(cells, 0.0);

  const auto& dims = joint.dims();
  std::vector<size_t> inner(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) {
    inner[static_cast<size_t>(k)] =
        inner[static_cast<size_t>(k + 1)] * static_cast<size_t>(dims[static_cast<size_t>(k + 1)]);
  }
  std::vector<size_t> inner_out(nd.size(), 1);
  for (int k = static_cast<int>(nd.size()) - 2; k >= 0; --k) {
    inner_out[static_cast<size_t>(k)] =
        inner_out[static_cast<size_t>(k + 1)] * static_cast<size_t>(nd[static_cast<size_t>(k + 1)]);
  }
  const auto& m = joint.masses();
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    size_t x = (i / inner[static_cast<size_t>(axis)]) % static_cast<size_t>(nx);
    size_t base = 0;
    for (size_t k = 0; k < dims.size(); ++k) {
      if (static_cast<int>(k) == axis) continue;
      size_t ik = (i / inner[k]) % static_cast<size_t>(dims[k]);
      base += ik * inner_out[k];
    }
    for (int y = 0; y < ny; ++y) {
      out[base + static_cast<size_t>(y) * inner_out[static_cast<size_t>(axis)]] +=
          m[i] * ch.at(static_cast<int>(x), y);
    }
  }
  return JointPMF::exact(std::move(nd), std::move(out));
}

double channel_mutual_information(const Distribution& px,
                                  const TransitionMatrix& ch) {
  if (px.size() != ch.input_size()) {
    fail("channel_mutual_information: input alphabet mismatch");
  }
  std::vector<double> py(static_cast<size_t>(ch.output_size()), 0.0);
  double hy_given_x = 0;
  for (int x = 0; x < px.size(); ++x) {
    for (int y = 0; y < ch.output_size(); ++y) {
      py[static_cast<size_t>(y)] += px[x] * ch.at(x, y);
    }
    hy_given_x += px[x] * entropy_bits(ch.row(x));
  }
  return entropy_bits(py) - hy_given_x;
}

std::string channel_digest(const BroadcastChannel& bc) {
  std::ostringstream os;
  os.precision(17);
  os << bc.input_size;
  auto dump = [&os](const TransitionMatrix& tm) {
    for (int x = 0; x < tm.input_size(); ++x) {
      for (int y = 0; y < tm.output_size(); ++y) os << '|' << tm.at(x, y);
    }
  };
  os << ";y";
  dump(bc.to_y);
  os << ";z";
  dump(bc.to_z);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

}  // namespace bcbound
