#pragma once

#include <span>
#include <string>
#include <vector>

// Exact finite-alphabet information measures and channel composition.
// All information quantities are in bits (log base 2) with the convention
// 0 log 0 = 0. Probabilities are plain doubles; alphabets are small (<= 8),
// so everything is dense.

namespace bcbound {

// Simplex validation tolerance for file-sourced decimals.
inline constexpr double kIngestTol = 1e-9;
// Internal consistency tolerance for exactly generated values.
inline constexpr double kInternalTol = 1e-12;

class Distribution {
 public:
  Distribution() = default;
  // Validates and normalizes. Entries below -tolerance or a total off by
  // more than tolerance are rejected; negative dust is clamped to zero.
  static Distribution validate(std::vector<double> raw, double tolerance);
  // For values produced by exact arithmetic; asserts at kInternalTol.
  static Distribution exact(std::vector<double> masses);

  int size() const { return static_cast<int>(masses_.size()); }
  double operator[](int i) const { return masses_[static_cast<size_t>(i)]; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  explicit Distribution(std::vector<double> m) : masses_(std::move(m)) {}
  std::vector<double> masses_;
};

Distribution validate_distribution(std::vector<double> raw, double tolerance);

class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  // rows[x][y] = P(output = y | input = x); each row is validated.
  static TransitionMatrix validate(std::vector<std::vector<double>> rows,
                                   double tolerance);

  int input_size() const { return input_size_; }
  int output_size() const { return output_size_; }
  double at(int x, int y) const {
    return data_[static_cast<size_t>(x) * output_size_ + y];
  }
  std::span<const double> row(int x) const {
    return {data_.data() + static_cast<size_t>(x) * output_size_,
            static_cast<size_t>(output_size_)};
  }

 private:
  int input_size_ = 0, output_size_ = 0;
  std::vector<double> data_;  // row-major
};

struct BroadcastChannel {
  int input_size = 0;
  TransitionMatrix to_y;
  TransitionMatrix to_z;

  static BroadcastChannel make(TransitionMatrix to_y, TransitionMatrix to_z);
};

// Dense joint distribution over a tuple of finite alphabets, row-major.
class JointPMF {
 public:
  JointPMF() = default;
  static JointPMF validate(std::vector<int> dims, std::vector<double> masses,
                           double tolerance);
  static JointPMF exact(std::vector<int> dims, std::vector<double> masses);

  int rank() const { return static_cast<int>(dims_.size()); }
  int dim(int axis) const { return dims_[static_cast<size_t>(axis)]; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& masses() const { return masses_; }

  double at(std::span<const int> idx) const;
  Distribution marginal(int axis) const;
  // Marginal over two axes, as a 2-d JointPMF in (axis_a, axis_b) order.
  JointPMF pair_marginal(int axis_a, int axis_b) const;
  // Sums out one axis.
  JointPMF drop_axis(int axis) const;

 private:
  JointPMF(std::vector<int> dims, std::vector<double> masses)
      : dims_(std::move(dims)), masses_(std::move(masses)) {}
  std::vector<int> dims_;
  std::vector<double> masses_;
};

// H(p) in bits; 0 log 0 = 0. Accepts any non-negative mass vector that the
// caller already knows sums to one.
double entropy_bits(std::span<const double> masses);
double entropy(const Distribution& d);

// I(A;B) = H(A). + H(B) - H(A,B) for a 2-d joint. Symmetric; >= -1e-12.
double mutual_information(const JointPMF& joint_ab);

// I(A;B|C) = sum_c p(c) I(A;B|C=c) for a 3-d joint in (A,B,C) order.
double conditional_mutual_information(const JointPMF& joint_abc);

// D(p||q) in bits. Requires q(i)=0 => p(i)=0.
double kl_divergence(const Distribution& p, const Distribution& q);

// Joint over (X, output): masses[x][y] = px[x] * ch[x][y].
JointPMF push_through(const Distribution& px, const TransitionMatrix& ch);

struct InducedPairs {
  JointPMF uy;      // p(u,y)
  JointPMF vz;      // p(v,z)
  Distribution px;  // marginal of the third axis
};

// Pushes a (U,V,X) joint through both receiver channels.
InducedPairs induced_pairs(const JointPMF& joint_uvx,
                           const BroadcastChannel& bc);

// Replaces `axis` (which must index the channel input) by the channel
// output: p(..., y, ...) = sum_x p(..., x, ...) ch[x][y].
JointPMF push_axis(const JointPMF& joint, int axis,
                   const TransitionMatrix& ch);

// I(X;Y) for a bare input distribution and one channel.
double channel_mutual_information(const Distribution& px,
                                  const TransitionMatrix& ch);

// FNV-1a hex digest of the canonical decimal rendering of the channel.
std::string channel_digest(const BroadcastChannel& bc);

}  // namespace bcbound
