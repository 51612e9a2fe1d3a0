#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "bcbound/info_core.hpp"
#include "bcbound/sampling.hpp"

using namespace bcbound;

TEST_CASE("bssc matrices follow the documented convention") {
  auto bc = bssc(0.5);
  CHECK(bc.input_size == 2);
  CHECK(bc.to_y.at(0, 0) == 1.0);
  CHECK(bc.to_y.at(0, 1) == 0.0);
  CHECK(bc.to_y.at(1, 0) == 0.5);
  CHECK(bc.to_z.at(0, 1) == 0.5);
  CHECK(bc.to_z.at(1, 0) == 0.0);
  CHECK(bc.to_z.at(1, 1) == 1.0);
  CHECK_THROWS_AS(bssc(0.0), std::invalid_argument);
  CHECK_THROWS_AS(bssc(1.0), std::invalid_argument);
}

TEST_CASE("bssc mirror symmetry") {
  // flipping X labels, swapping the receivers, and flipping output labels
  // reproduces the channel bit-exactly
  auto bc = bssc(0.5);
  auto mirrored_y = [&](int x, int y) { return bc.to_z.at(1 - x, 1 - y); };
  auto mirrored_z = [&](int x, int z) { return bc.to_y.at(1 - x, 1 - z); };
  for (int x = 0; x < 2; ++x) {
    for (int o = 0; o < 2; ++o) {
      CHECK(bc.to_y.at(x, o) == mirrored_y(x, o));
      CHECK(bc.to_z.at(x, o) == mirrored_z(x, o));
    }
  }
  // consequence: both receivers see the same rate at the uniform input
  auto uni = Distribution::exact({0.5, 0.5});
  CHECK(channel_mutual_information(uni, bc.to_y) ==
        doctest::Approx(channel_mutual_information(uni, bc.to_z)).epsilon(1e-15));
  CHECK(channel_mutual_information(uni, bc.to_y) ==
        doctest::Approx(0.311278124459133).epsilon(1e-12));
}

TEST_CASE("bssc small-skew limit structure") {
  auto bc = bssc(1e-9);
  CHECK(bc.to_y.at(1, 1) == doctest::Approx(1.0));  // Y ~ identity
  CHECK(bc.to_z.at(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("blackwell structure") {
  auto bc = blackwell();
  CHECK(bc.input_size == 3);
  for (int x = 0; x < 3; ++x) {
    int ones_y = 0, ones_z = 0;
    for (int o = 0; o < 2; ++o) {
      if (bc.to_y.at(x, o) == 1.0) ++ones_y;
      if (bc.to_z.at(x, o) == 1.0) ++ones_z;
    }
    CHECK(ones_y == 1);  // deterministic rows
    CHECK(ones_z == 1);
  }
  // x = 1 separates the receivers
  CHECK(bc.to_y.at(1, 0) == 1.0);
  CHECK(bc.to_z.at(1, 1) == 1.0);
}

TEST_CASE("random_channel determinism and validity") {
  auto a = random_channel(2, 3, Seed{42});
  auto b = random_channel(2, 3, Seed{42});
  CHECK(channel_digest(a) == channel_digest(b));
  auto c = random_channel(2, 3, Seed{43});
  CHECK(channel_digest(a) != channel_digest(c));
  CHECK_THROWS_AS(random_channel(1, 2, Seed{0}), std::invalid_argument);
  CHECK_THROWS_AS(random_channel(2, 9, Seed{0}), std::invalid_argument);

  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto bc = random_channel(2, 2, Seed{s});
    for (int x = 0; x < 2; ++x) {
      double sy = 0, sz = 0;
      for (int o = 0; o < 2; ++o) {
        CHECK(bc.to_y.at(x, o) >= 0.0);
        CHECK(bc.to_z.at(x, o) >= 0.0);
        sy += bc.to_y.at(x, o);
        sz += bc.to_z.at(x, o);
      }
      CHECK(sy == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sz == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("random_gate_joint determinism, validity, gate frequencies") {
  auto a = random_gate_joint(Seed{7});
  auto b = random_gate_joint(Seed{7});
  CHECK(a.gate == b.gate);
  CHECK(a.puv.masses() == b.puv.masses());

  std::array<long, 16> freq{};
  const long n = 100000;
  for (long i = 0; i < n; ++i) {
    auto gj = random_gate_joint(Seed{static_cast<std::uint64_t>(i)});
    ++freq[static_cast<size_t>(gj.gate.id())];
    double sum = 0;
    for (double m : gj.puv.masses()) {
      sum += m;
      CHECK(m >= 0.0);
    }
    if (i < 1000) CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (long f : freq) {
    CHECK(std::abs(static_cast<double>(f) / n - 1.0 / 16) <= 0.01);
  }
}
