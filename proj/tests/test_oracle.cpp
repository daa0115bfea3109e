// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <optional>

#include <doctest.h>

#include "ils/oracle.hpp"

using ils::BigInt;
using ils::BigNearest;
using ils::brute_force_nearest;
using ils::compensation_error;
using ils::exact_nearest_half_up;
using ils::FloatPrecision;
using ils::fp_reference;
using ils::FpStatus;
using ils::NearestSolution;
using ils::normalize_half_up;

namespace {

TEST_CASE("half-up oracle on pinned instances") {
  const BigNearest tie = exact_nearest_half_up(3, 5, 2);  // 7.5: 7 or 8
  CHECK(tie.j == 8);
  CHECK(tie.delta == 1);
  CHECK(tie.tie);

  const BigNearest zero = exact_nearest_half_up(0, 123456, 77);
  CHECK(zero.j == 0);
  CHECK(zero.delta == 0);
  CHECK_FALSE(zero.tie);

  const BigNearest big = exact_nearest_half_up(1'000'000'000, 1'000'000,
                                                1'000'100);
  CHECK(big.j == 999'900'010);
  CHECK(big.delta == 1000);
  CHECK_FALSE(big.tie);

  // Far beyond any lane: (2^63-1)^2 / 1.
  const std::int64_t m = 9'223'372'036'854'775'807ll;
  const BigNearest huge = exact_nearest_half_up(m, m, 1);
  CHECK(huge.j.str() == "85070591730234615847396907784232501249");
  CHECK(huge.delta == 0);
}

TEST_CASE("brute force argmin set on pinned instances") {
  CHECK(brute_force_nearest(3, 5, 2, 20) == std::vector<std::int64_t>{7, 8});
  CHECK(brute_force_nearest(10, 3, 4, 20) == std::vector<std::int64_t>{7, 8});
  CHECK(brute_force_nearest(0, 0, 1, 5) == std::vector<std::int64_t>{0});
  CHECK(brute_force_nearest(7, 2, 7, 10) == std::vector<std::int64_t>{2});
  CHECK_THROWS_AS(brute_force_nearest(10, 10, 1, 5), std::invalid_argument);
}

TEST_CASE("half-up formula equals definition-level search exhaustively") {
  // floor((2id+a)/(2a)) == floor(id/a + 1/2), and the result is always a
  // member of the argmin set; tie exactly when two members exist.
  for (std::int64_t i = 0; i <= 24; ++i) {
    for (std::int64_t d = 0; d <= 24; ++d) {
      for (std::int64_t a = 1; a <= 24; ++a) {
        const BigNearest got = exact_nearest_half_up(i, d, a);
        const auto set = brute_force_nearest(i, d, a, 2 * 24 * 24);
        REQUIRE(got.j >= 0);
        const std::int64_t j = static_cast<std::int64_t>(got.j);
        const bool member = (set.size() == 1 && set[0] == j) ||
                            (set.size() == 2 && set[1] == j);
        REQUIRE(member);          // half up picks the larger of a tie
        REQUIRE(got.tie == (set.size() == 2));
        REQUIRE(got.delta == BigInt(j) * a - BigInt(i) * d);
        REQUIRE(2 * abs(got.delta) <= a);
      }
    }
  }
}

TEST_CASE("decomposition identity for d >= a") {
  // nearest(i, d, a) = i + nearest(i, d-a, a): the integer part shifts out.
  for (std::int64_t i = 0; i <= 16; ++i) {
    for (std::int64_t a = 1; a <= 12; ++a) {
      for (std::int64_t d = a; d <= 3 * a; ++d) {
        const BigNearest whole = exact_nearest_half_up(i, d, a);
        const BigNearest rest = exact_nearest_half_up(i, d - a, a);
        REQUIRE(whole.j == rest.j + i);
      }
    }
  }
}

TEST_CASE("floating-point reference semantics") {
  // 7.5 is exactly representable; the exact half-add rounds it up.
  const auto d64 = fp_reference(FloatPrecision::binary64, 3, 5, 2);
  CHECK(d64.status == FpStatus::ok);
  CHECK(d64.value == 8);

  // 2^24 + 1 does not fit a 24-bit significand.
  const auto f32 = fp_reference(FloatPrecision::binary32, 16'777'217, 1, 1);
  CHECK(f32.status == FpStatus::ok);
  CHECK(f32.value == 16'777'216);

  const auto d64big = fp_reference(FloatPrecision::binary64, 16'777'217, 1, 1);
  CHECK(d64big.status == FpStatus::ok);
  CHECK(d64big.value == 16'777'217);

  // Fractional results below one half floor to zero.
  const auto tiny = fp_reference(FloatPrecision::binary64, 1, 1, 3);
  CHECK(tiny.value == 0);
  const auto half = fp_reference(FloatPrecision::binary64, 1, 1, 2);
  CHECK(half.value == 1);
}

TEST_CASE("fp reference matches the oracle away from ties") {
  // For i*d <= 2^52 and fractional parts far from 1/2 the binary64 route
  // must agree exactly.
  for (std::int64_t i : {1ll, 17ll, 1000ll, 999'983ll, 7'448'191ll}) {
    for (std::int64_t d : {1ll, 3ll, 250'007ll}) {
      for (std::int64_t a : {1ll, 7ll, 65'537ll, 1'000'003ll}) {
        const auto fp = fp_reference(FloatPrecision::binary64, i, d, a);
        const BigNearest truth = exact_nearest_half_up(i, d, a);
        if (truth.tie) continue;
        REQUIRE(fp.status == FpStatus::ok);
        REQUIRE(BigInt(fp.value) == truth.j);
      }
    }
  }
}

TEST_CASE("compensation error and the overflow mark") {
  CHECK(compensation_error(std::optional<std::int64_t>{8}, 10, 3, 4) == 0);
  CHECK(compensation_error(std::nullopt, 10, 3, 4) == std::nullopt);
  CHECK(compensation_error(std::optional<std::int64_t>{16'777'216},
                           16'777'217, 1, 1) == -1);
}

TEST_CASE("half-up normalization rewrites only downward ties") {
  CHECK(normalize_half_up(NearestSolution{7, -2}, 4).j == 8);
  CHECK(normalize_half_up(NearestSolution{7, -2}, 4).delta == 2);
  CHECK(normalize_half_up(NearestSolution{8, 2}, 4).j == 8);
  CHECK(normalize_half_up(NearestSolution{5, -1}, 3).j == 5);  // odd a: no tie
  CHECK(normalize_half_up(NearestSolution{5, 0}, 2).j == 5);
}

}  // namespace
