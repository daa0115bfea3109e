// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_ORACLE_HPP
#define ILS_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ils/bigint.hpp"
#include "ils/types.hpp"

// Exact ground truth for differential testing and error measurement. All
// arithmetic here is arbitrary precision (boost cpp_int) or exhaustive
// search; nothing in this module shares code with the lane kernels.

namespace ils {

// The unique round-half-up nearest integer to i*d/a with its exact residual.
// tie is set iff the fractional part of i*d/a is exactly one half, i.e. the
// unrounded problem has two nearest solutions (j and j-1).
struct BigNearest {
  BigInt j;
  BigInt delta;  // j*a - i*d
  bool tie = false;
};

// j = floor((2*i*d + a) / (2*a)), algebraically floor(i*d/a + 1/2).
inline BigNearest exact_nearest_half_up(std::int64_t i, std::int64_t d,
                                        std::int64_t a) {
  if (i < 0 || d < 0 || a < 1) {
    throw std::invalid_argument("exact_nearest_half_up: need i,d >= 0, a >= 1");
  }
  const BigInt id = BigInt(i) * d;
  const BigInt j = (2 * id + a) / (2 * BigInt(a));
  BigNearest out;
  out.j = j;
  out.delta = j * a - id;
  out.tie = (out.delta * 2 == a);
  return out;
}

// Exhaustive argmin of |k*a - i*d| over k in [0, bound]: the full nearest
// set straight from the definition, one or two members (two exactly at
// ties). Plain linear scan; k*a is accumulated additively in 128-bit
// arithmetic so no step can overflow for int64 inputs.
inline std::vector<std::int64_t> brute_force_nearest(std::int64_t i,
                                                     std::int64_t d,
                                                     std::int64_t a,
                                                     std::int64_t bound) {
  if (i < 0 || d < 0 || a < 1 || bound < 0) {
    throw std::invalid_argument("brute_force_nearest: bad arguments");
  }
  const __int128 target = static_cast<__int128>(i) * d;
  // pre: bound must reach past ceil(i*d/a), else the scan cannot bracket it.
  if (static_cast<__int128>(bound) * a < target) {
    throw std::invalid_argument("brute_force_nearest: bound too small");
  }
  __int128 ka = 0;
  __int128 best = target >= 0 ? target : -target;  // k = 0
  std::vector<std::int64_t> argmins{0};
  for (std::int64_t k = 1; k <= bound; ++k) {
    ka += a;
    const __int128 dist = ka >= target ? ka - target : target - ka;
    if (dist < best) {
      best = dist;
      argmins.assign(1, k);
    } else if (dist == best) {
      argmins.push_back(k);
    }
  }
  return argmins;
}

// IEEE formats for the floating-point reference path.
enum class FloatPrecision { binary32, binary64 };

enum class FpStatus { ok, non_finite, out_of_range };

struct FpReference {
  FpStatus status = FpStatus::ok;
  std::int64_t value = 0;
};

namespace detail {

// floor(r + 1/2) evaluated exactly from the binary representation of r;
// no further format rounding happens after the format computed r itself.
template <typename F>
FpReference fp_half_up_floor(F r) {
  if (!std::isfinite(r)) return {FpStatus::non_finite, 0};
  if (r < F(0.5)) return {FpStatus::ok, 0};  // inputs are non-negative
  int exp = 0;
  const F frac = std::frexp(r, &exp);  // r = frac * 2^exp, frac in [0.5, 1)
  constexpr int digits = std::numeric_limits<F>::digits;
  const auto mant = static_cast<unsigned __int128>(
      std::ldexp(frac, digits));       // exact: frac has <= digits bits
  const int e = exp - digits;          // r = mant * 2^e
  unsigned __int128 floored;
  if (e >= 0) {
    if (e >= 64) return {FpStatus::out_of_range, 0};
    floored = mant << e;               // r integral: floor(r + 1/2) = r
  } else {
    const int k = -e;                  // k <= digits since r >= 1/2
    floored = (mant + (static_cast<unsigned __int128>(1) << (k - 1))) >> k;
  }
  if (floored > static_cast<unsigned __int128>(
                    std::numeric_limits<std::int64_t>::max())) {
    return {FpStatus::out_of_range, 0};
  }
  return {FpStatus::ok, static_cast<std::int64_t>(floored)};
}

template <typename F>
FpReference fp_reference_impl(std::int64_t i, std::int64_t d, std::int64_t a) {
  const F r = static_cast<F>(i) * (static_cast<F>(d) / static_cast<F>(a));
  return fp_half_up_floor(r);
}

}  // namespace detail

// Round-half-up nearest integer computed the floating-point way: i, d, a are
// converted to the format (possibly rounding), r = i * (d / a) is evaluated
// entirely in the format, and floor(r + 1/2) is then taken exactly. The
// evaluation order i * (d / a) matches the clock model, where d/a is the
// stored inverse frequency ratio.
inline FpReference fp_reference(FloatPrecision prec, std::int64_t i,
                                std::int64_t d, std::int64_t a) {
  if (i < 0 || d < 0 || a < 1) {
    throw std::invalid_argument("fp_reference: need i,d >= 0, a >= 1");
  }
  return prec == FloatPrecision::binary32
             ? detail::fp_reference_impl<float>(i, d, a)
             : detail::fp_reference_impl<double>(i, d, a);
}

// algo_result - exact_nearest_half_up(i,d,a).j, or nullopt when the
// algorithm overflowed (excluded from any statistics).
inline std::optional<std::int64_t> compensation_error(
    const std::optional<std::int64_t>& algo_result, const BigNearest& oracle) {
  if (!algo_result) return std::nullopt;
  const BigInt err = BigInt(*algo_result) - oracle.j;
  if (err < std::numeric_limits<std::int64_t>::min() ||
      err > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("compensation_error: difference exceeds int64");
  }
  return static_cast<std::int64_t>(err);
}

inline std::optional<std::int64_t> compensation_error(
    const std::optional<std::int64_t>& algo_result, std::int64_t i,
    std::int64_t d, std::int64_t a) {
  if (!algo_result) return std::nullopt;
  return compensation_error(algo_result, exact_nearest_half_up(i, d, a));
}

// Rewrites a kernel solution that resolved an exact tie downward
// (delta == -a/2) to the round-half-up representative (j+1, +a/2).
// Solutions off ties are returned unchanged.
inline NearestSolution normalize_half_up(NearestSolution s, std::int64_t a) {
  if (s.delta < 0 && a % 2 == 0 && s.delta == -(a / 2)) {
    if (s.j == std::numeric_limits<std::int64_t>::max()) {
      throw std::overflow_error("normalize_half_up: j+1 exceeds int64");
    }
    return NearestSolution{s.j + 1, s.delta + a};
  }
  return s;
}

}  // namespace ils

#endif  // ILS_ORACLE_HPP
