// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdint>

#include <doctest.h>

#include "ils/fuzz.hpp"
#include "ils/guard.hpp"

using ils::Algorithm;
using ils::check_adds;
using ils::check_ds;
using ils::check_mdid;
using ils::check_rounded_div;
using ils::ChunkPlan;
using ils::Cond;
using ils::direct_search;
using ils::GuardReport;
using ils::mdid;
using ils::plan_chunks;
using ils::ScaleProblem;
using ils::Width;

namespace {

bool mentions(const GuardReport& rep, Cond c) {
  return std::any_of(rep.violated.begin(), rep.violated.end(),
                     [c](const ils::Overflow& v) { return v.cond == c; });
}

TEST_CASE("mdid guard on pinned instances") {
  const GuardReport bad =
      check_mdid({100'000'000, 1'000'000, 999'950}, Width::w32);
  CHECK_FALSE(bad.satisfied);
  CHECK(bad.satisfied == bad.violated.empty());
  CHECK(mentions(bad, Cond::mdid_remainder_sum));
  CHECK(bad.violated.size() == 1);  // the only violated condition

  CHECK(check_mdid({10, 3, 4}, Width::w32).satisfied);

  const GuardReport small =
      check_mdid({2, 1'073'741'824, 2'147'483'647}, Width::w32);
  CHECK_FALSE(small.satisfied);
  CHECK(mentions(small, Cond::mdid_small_product));
}

TEST_CASE("ds guard on pinned instances") {
  CHECK(check_ds({2, 1'073'741'824, 2'147'483'647}, 2, 0, Width::w32)
            .satisfied);

  const GuardReport under =
      check_ds({2'147'483'647, 1, 2'147'483'647}, 0, 0, Width::w32);
  CHECK_FALSE(under.satisfied);
  CHECK(mentions(under, Cond::ds_guess_product));

  CHECK(check_ds({0, 0, 1}, 0, 0, Width::w32).satisfied);
}

TEST_CASE("adds guard on pinned instances") {
  const auto plan = plan_chunks(100'000'000, 1'000'000, 1'000'100, Width::w32);
  REQUIRE(plan.ok());
  CHECK(check_adds(plan.value(), 1'000'000, 1'000'100).satisfied);

  ChunkPlan single;
  single.width = Width::w32;
  single.chunks = {1'000'000'000};
  const GuardReport rep = check_adds(single, 1'000'000, 1'000'100);
  CHECK_FALSE(rep.satisfied);
  CHECK(mentions(rep, Cond::adds_envelope));

  ChunkPlan zero;
  zero.width = Width::w32;
  zero.chunks = {0};
  CHECK(check_adds(zero, 123, 45).satisfied);
}

TEST_CASE("guard names are stable strings") {
  const GuardReport bad =
      check_mdid({100'000'000, 1'000'000, 999'950}, Width::w32);
  REQUIRE(bad.violated_names().size() == 1);
  CHECK(bad.violated_names()[0] ==
        "(i mod A)*D + floor(A/2) <= 2^(W-1)-1");
  CHECK(std::string(ils::algorithm_name(Algorithm::mdid)) == "mdid");
}

TEST_CASE("ds boundary tightness at the lane edge") {
  // Construct delta0 = i*(a-d) exactly at the lane max (kappa = i), then one
  // beyond; the guard and the kernel must agree on both sides.
  const std::int64_t max32 = 2'147'483'647;
  // i*(a-d) = max: pick i = 97, a-d = max/97 (divides: 97 * 22139006.67 no);
  // use i = 1 so the product is exact.
  const ScaleProblem at{1, 1, max32 - 1};  // (a-d) = max32 - 2 < max
  CHECK(check_ds(at, 1, 0, Width::w32).satisfied);
  CHECK(direct_search(at, 1, 0, Width::w32).ok());

  // kappa - i = 1 and a = max32: the guess product alone hits the max.
  const ScaleProblem edge{1, max32, max32};
  CHECK(check_ds(edge, 2, 0, Width::w32).satisfied);
  CHECK(direct_search(edge, 2, 0, Width::w32).ok());

  // One more unit of kappa pushes the guess product past the max.
  const GuardReport over = check_ds(edge, 3, 0, Width::w32);
  CHECK_FALSE(over.satisfied);
  CHECK(mentions(over, Cond::ds_guess_product));
  const auto r = direct_search(edge, 3, 0, Width::w32);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().cond == Cond::ds_guess_product);
}

TEST_CASE("guards agree with kernels on fuzzed instances") {
  for (const Width w : {Width::w32, Width::w64}) {
    const auto res = ils::fuzz::guard_soundness(w, 4000, 0xf005ba11);
    INFO(res.first_failure);
    CHECK(res.failures == 0);
  }
}

}  // namespace
