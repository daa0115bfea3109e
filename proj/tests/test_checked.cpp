// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <limits>

#include <doctest.h>

#include "ils/checked.hpp"

using ils::add_overflows;
using ils::mul_overflows;
using ils::sub_overflows;

namespace {

constexpr std::int32_t kMax32 = std::numeric_limits<std::int32_t>::max();
constexpr std::int32_t kMin32 = std::numeric_limits<std::int32_t>::min();
constexpr std::int64_t kMax64 = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin64 = std::numeric_limits<std::int64_t>::min();

TEST_CASE("add detects both boundary crossings") {
  std::int32_t out = 0;
  CHECK_FALSE(add_overflows(kMax32 - 1, std::int32_t{1}, &out));
  CHECK(out == kMax32);
  CHECK(add_overflows(kMax32, std::int32_t{1}, &out));
  CHECK(add_overflows(kMin32, std::int32_t{-1}, &out));
  CHECK_FALSE(add_overflows(kMin32, kMax32, &out));
  CHECK(out == -1);

  std::int64_t out64 = 0;
  CHECK(add_overflows(kMax64, std::int64_t{1}, &out64));
  CHECK_FALSE(add_overflows(kMax64, std::int64_t{0}, &out64));
}

TEST_CASE("sub detects both boundary crossings") {
  std::int32_t out = 0;
  CHECK_FALSE(sub_overflows(kMin32 + 1, std::int32_t{1}, &out));
  CHECK(out == kMin32);
  CHECK(sub_overflows(kMin32, std::int32_t{1}, &out));
  CHECK(sub_overflows(std::int32_t{0}, kMin32, &out));  // -kMin32 not in lane
  CHECK_FALSE(sub_overflows(std::int32_t{0}, kMax32, &out));
}

TEST_CASE("mul detects overflow at the exact boundary") {
  std::int32_t out = 0;
  CHECK_FALSE(mul_overflows(std::int32_t{46341}, std::int32_t{46340}, &out));
  CHECK(mul_overflows(std::int32_t{46341}, std::int32_t{46341}, &out));
  CHECK_FALSE(mul_overflows(std::int32_t{0}, kMax32, &out));
  CHECK(out == 0);
  CHECK(mul_overflows(kMin32, std::int32_t{-1}, &out));

  std::int64_t out64 = 0;
  CHECK_FALSE(mul_overflows(std::int64_t{3037000499ll},
                            std::int64_t{3037000499ll}, &out64));
  CHECK(mul_overflows(std::int64_t{3037000500ll}, std::int64_t{3037000500ll},
                      &out64));
}

}  // namespace
