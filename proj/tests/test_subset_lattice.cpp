#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "ehl/rng.hpp"
#include "ehl/subset_lattice.hpp"
#include "oracles.hpp"

using namespace ehl;

namespace {

LatticeTableD random_table(int n, std::uint64_t seed) {
  LatticeTableD t(n);
  SplitMix64 rng(seed);
  for (std::int64_t i = 0; i < t.size(); ++i) t.values[i] = rng.next_normal();
  return t;
}

}  // namespace

TEST_CASE("mask helpers") {
  CHECK(full_mask(3) == 0b111u);
  CHECK(rank(0b1011u) == 3);
  CHECK(complement_mask(0b001u, 3) == 0b110u);
  CHECK(is_subset(0b010u, 0b110u));
  CHECK_FALSE(is_subset(0b011u, 0b110u));

  const int sites[] = {1, 3};
  CHECK(mask_from_sites(sites, 4) == 0b0101u);
  const int bad[] = {5};
  CHECK_THROWS_AS(mask_from_sites(bad, 4), input_error);
  const int zero[] = {0};
  CHECK_THROWS_AS(mask_from_sites(zero, 4), input_error);
}

TEST_CASE("for_each_submask visits every subset once") {
  std::vector<mask_t> seen;
  for_each_submask(0b1010u, [&](mask_t s) { seen.push_back(s); });
  REQUIRE(seen.size() == 4);
  CHECK(seen.front() == 0b1010u);
  CHECK(seen.back() == 0u);
}

TEST_CASE("crossing relation") {
  // {1,3} across {1,2} : {3,4}
  const std::vector<mask_t> parts{0b0011u, 0b1100u};
  CHECK(crosses(0b0101u, parts));
  // {1,2} misses the second block
  CHECK_FALSE(crosses(0b0011u, parts));
  // {1,3,5} leaves the union
  CHECK_FALSE(crosses(0b10101u, parts));
  const std::vector<mask_t> overlapping{0b0011u, 0b0110u};
  CHECK_THROWS_AS(crosses(0b0101u, overlapping), input_error);
  CHECK(crosses(0b0101u, 0b0011u, 0b1100u));
}

TEST_CASE("binomial") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(8, 3) == 56);
  CHECK(binomial(8, 9) == 0);
  CHECK(binomial(8, -1) == 0);
  CHECK(binomial(20, 10) == 184756);
}

TEST_CASE("table construction and bounds") {
  CHECK_THROWS_AS(LatticeTableD(0), input_error);
  CHECK_THROWS_AS(LatticeTableD(21), input_error);
  LatticeTableD t(3);
  CHECK(t.size() == 8);
  CHECK(t.omega() == 0b111u);
  for (std::int64_t i = 0; i < t.size(); ++i) CHECK(t.values[i] == 0.0);
}

TEST_CASE("one-site transform is the identity") {
  LatticeTableD t(1);
  t[1] = 0.37;
  const LatticeTableD g = signed_moebius(t);
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.37);
}

TEST_CASE("two-site Bell entropies transform by hand") {
  const double ln2 = std::log(2.0);
  LatticeTableD t(2);
  t[0b01] = ln2;
  t[0b10] = ln2;
  t[0b11] = 0.0;
  const LatticeTableD g = signed_moebius(t);
  CHECK(g[0b00] == 0.0);  // the empty mask is untouched by the sweep
  CHECK(g[0b01] == doctest::Approx(ln2));
  CHECK(g[0b10] == doctest::Approx(ln2));
  CHECK(g[0b11] == doctest::Approx(-2 * ln2));
}

TEST_CASE("zeta by hand on two sites") {
  LatticeTableD g(2);
  g[0b01] = 1.5;
  g[0b10] = -0.25;
  g[0b11] = 4.0;
  const LatticeTableD f = zeta(g);
  CHECK(f[0b01] == 1.5);
  CHECK(f[0b10] == -0.25);
  CHECK(f[0b11] == doctest::Approx(1.5 - 0.25 + 4.0));
}

TEST_CASE("fast transforms match the brute-force subset loops") {
  for (int n : {1, 2, 3, 5, 8, 10}) {
    const LatticeTableD f = random_table(n, 100 + static_cast<std::uint64_t>(n));
    const LatticeTableD fast_m = signed_moebius(f);
    const LatticeTableD slow_m = oracle::brute_signed_moebius(f);
    const LatticeTableD fast_z = zeta(f);
    const LatticeTableD slow_z = oracle::brute_zeta(f);
    double worst = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
      worst = std::max(worst, std::abs(fast_m.values[i] - slow_m.values[i]));
      worst = std::max(worst, std::abs(fast_z.values[i] - slow_z.values[i]));
    }
    CAPTURE(n);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("zeta inverts the signed moebius transform") {
  for (int n : {1, 4, 9}) {
    const LatticeTableD f = random_table(n, 7 + static_cast<std::uint64_t>(n));
    const LatticeTableD back = zeta(signed_moebius(f));
    double worst = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i)
      worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("transforms run in place without reallocation") {
  LatticeTableD t = random_table(6, 3);
  const double* data = t.values.data();
  signed_moebius_inplace(t);
  zeta_inplace(t);
  CHECK(t.values.data() == data);
}

TEST_CASE("a 2^20 transform stays near the memory-bandwidth budget") {
  LatticeTableD t = random_table(20, 11);
  const auto start = std::chrono::steady_clock::now();
  signed_moebius_inplace(t);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  const double seconds = std::chrono::duration<double>(elapsed).count();
  CAPTURE(seconds);
  CHECK(seconds < 1.0);
  // Touch the result so the transform cannot be elided.
  CHECK(std::isfinite(t[t.omega()]));
}
