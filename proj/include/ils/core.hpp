// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_CORE_HPP
#define ILS_CORE_HPP

#include <cassert>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "ils/checked.hpp"
#include "ils/types.hpp"

// Exact nearest-integer scaling kernels. Every kernel computes the integer j
// nearest to i*d/a (round half up where a tie rule applies) together with the
// exact residual delta = j*a - i*d, using only overflow-checked arithmetic in
// the selected W-bit signed lane. On overflow the violated condition is
// reported; a wrapped value is never returned.

namespace ils {

namespace detail {

// Validates the ScaleProblem type invariants (cold path, programming errors).
inline void require_valid(const ScaleProblem& p) {
  if (p.i < 0 || p.d < 0 || p.a < 1) {
    throw std::invalid_argument("ScaleProblem: need i >= 0, d >= 0, a >= 1");
  }
}

// carry contract for direct_search: |carry| <= floor(a/2), or |carry| equals
// ceil(a/2) (the retained half-tie residual of a previous chunk).
inline void require_valid_carry(std::int64_t carry, std::int64_t a) {
  const std::int64_t mag = carry < 0 ? -carry : carry;
  if (mag <= a / 2) return;
  if (mag == a / 2 + (a & 1)) return;
  throw std::invalid_argument("direct_search: carry out of residual range");
}

template <typename Lane>
bool fits_lane(std::int64_t v) {
  return v <= std::numeric_limits<Lane>::max();
}

// j = floor((i*d + floor(a/2)) / a); delta recovered in-lane as
// floor(a/2) - ((i*d + floor(a/2)) mod a), which equals j*a - i*d exactly.
template <typename Lane>
Result<NearestSolution> rdiv_impl(std::int64_t i64, std::int64_t d64,
                                  std::int64_t a64) {
  if (!fits_lane<Lane>(i64)) return Overflow{Cond::input_i};
  if (!fits_lane<Lane>(d64)) return Overflow{Cond::input_d};
  if (!fits_lane<Lane>(a64)) return Overflow{Cond::input_a};
  const Lane i = static_cast<Lane>(i64);
  const Lane d = static_cast<Lane>(d64);
  const Lane a = static_cast<Lane>(a64);

  Lane prod;
  if (mul_overflows(i, d, &prod)) return Overflow{Cond::rdiv_product};
  const Lane half = static_cast<Lane>(a / 2);
  Lane sum;
  if (add_overflows(prod, half, &sum)) return Overflow{Cond::rdiv_sum};
  const Lane j = static_cast<Lane>(sum / a);
  const Lane delta = static_cast<Lane>(half - sum % a);
  return NearestSolution{j, delta};
}

// j = floor(i/a)*d + floor(((i mod a)*d + floor(a/2)) / a). The residual is
// floor(a/2) - (t mod a) where t is the inner numerator; the quotient part
// cancels exactly, so no wide product is ever formed.
template <typename Lane>
Result<NearestSolution> mdid_impl(std::int64_t i64, std::int64_t d64,
                                  std::int64_t a64) {
  if (!fits_lane<Lane>(i64)) return Overflow{Cond::input_i};
  if (!fits_lane<Lane>(d64)) return Overflow{Cond::input_d};
  if (!fits_lane<Lane>(a64)) return Overflow{Cond::input_a};
  const Lane i = static_cast<Lane>(i64);
  const Lane d = static_cast<Lane>(d64);
  const Lane a = static_cast<Lane>(a64);

  const Lane q = static_cast<Lane>(i / a);
  const Lane r = static_cast<Lane>(i % a);
  const bool small = i < a && d < a;  // the regime where i*d itself is formed

  Lane qd;
  if (mul_overflows(q, d, &qd)) return Overflow{Cond::mdid_quotient_product};
  Lane rd;
  if (mul_overflows(r, d, &rd)) {
    return Overflow{small ? Cond::mdid_small_product
                          : Cond::mdid_remainder_sum};
  }
  const Lane half = static_cast<Lane>(a / 2);
  Lane t;
  if (add_overflows(rd, half, &t)) return Overflow{Cond::mdid_remainder_sum};
  Lane j;
  if (add_overflows(qd, static_cast<Lane>(t / a), &j)) {
    return Overflow{Cond::output};
  }
  const Lane delta = static_cast<Lane>(half - t % a);
  return NearestSolution{j, delta};
}

// Direct search. With M = i*d - carry, the initial residual is
// delta0 = k0*a - M, computed in the fixed order (k0-i)*a, + i*(a-d),
// + carry so the stated non-overflow condition covers every partial sum.
// Case 2 (delta0 > 0) lands on k1 = ceil(M/a), case 3 (delta0 < 0) on
// k1 = floor(M/a); one comparison then decides between k1 and its neighbor.
// Division in case 3 is truncated toward zero (magnitude division), which
// keeps the case-3 residual in (-a, 0].
template <typename Lane>
Result<NearestSolution> ds_impl(std::int64_t i64, std::int64_t d64,
                                std::int64_t a64, std::int64_t kappa64,
                                std::int64_t carry64) {
  if (!fits_lane<Lane>(i64)) return Overflow{Cond::input_i};
  if (!fits_lane<Lane>(d64)) return Overflow{Cond::input_d};
  if (!fits_lane<Lane>(a64)) return Overflow{Cond::input_a};
  if (!fits_lane<Lane>(kappa64)) return Overflow{Cond::input_kappa};
  const Lane i = static_cast<Lane>(i64);
  const Lane d = static_cast<Lane>(d64);
  const Lane a = static_cast<Lane>(a64);
  const Lane k0 = static_cast<Lane>(kappa64);
  const Lane carry = static_cast<Lane>(carry64);  // bounded by a, so it fits

  // i*d == 0 forces j = 0 regardless of kappa; delta = j*a - i*d + carry.
  if (i == 0 || d == 0) return NearestSolution{0, carry};

  Lane diff;
  if (sub_overflows(k0, i, &diff)) return Overflow{Cond::ds_guess_product};
  Lane s1;
  if (mul_overflows(diff, a, &s1)) return Overflow{Cond::ds_guess_product};
  Lane ad;
  if (sub_overflows(a, d, &ad)) return Overflow{Cond::ds_skew_product};
  Lane s2;
  if (mul_overflows(i, ad, &s2)) return Overflow{Cond::ds_skew_product};
  Lane sum;
  if (add_overflows(s1, s2, &sum)) return Overflow{Cond::ds_init_sum};
  Lane delta0;
  if (add_overflows(sum, carry, &delta0)) return Overflow{Cond::ds_init_carry};

  if (delta0 == 0) {  // case 1: k0 is exact
    return NearestSolution{k0, 0};
  }

  // Truncated division: for delta0 > 0 this is floor(delta0/a); for
  // delta0 < 0 it is -(|delta0| div a) with remainder -(|delta0| mod a),
  // well defined even at delta0 == lane minimum.
  const Lane q = static_cast<Lane>(delta0 / a);
  const Lane r = static_cast<Lane>(delta0 % a);
  Lane k1;
  if (sub_overflows(k0, q, &k1)) return Overflow{Cond::ds_k1};

  Lane j;
  Lane delta;
  if (delta0 > 0) {               // case 2: r in [0, a)
    const Lane down = static_cast<Lane>(r - a);  // in (-a, 0]
    if (a - r < r) {              // case 2.1: k1 - 1 is strictly nearer
      if (sub_overflows(k1, Lane{1}, &j)) return Overflow{Cond::output};
      delta = down;
    } else {                      // case 2.2 (ties stay at k1: half up)
      j = k1;
      delta = r;
    }
  } else {                        // case 3: r in (-a, 0]
    const Lane up = static_cast<Lane>(r + a);  // in (0, a)
    if (up < -r) {                // case 3.1: k1 + 1 is strictly nearer
      if (add_overflows(k1, Lane{1}, &j)) return Overflow{Cond::output};
      delta = up;
    } else {                      // case 3.2 (ties stay at k1: half down)
      j = k1;
      delta = r;
    }
  }
  assert(j >= 0);
  return NearestSolution{j, delta};
}

}  // namespace detail

// Nearest integer to i*d/a by round-half-up integer division,
// j = floor((i*d + floor(a/2)) / a). Needs the full product i*d in lane.
inline Result<NearestSolution> round_half_up_div(const ScaleProblem& p,
                                                 Width w) {
  detail::require_valid(p);
  return w == Width::w32 ? detail::rdiv_impl<std::int32_t>(p.i, p.d, p.a)
                         : detail::rdiv_impl<std::int64_t>(p.i, p.d, p.a);
}

// Multiplicative decomposition of integer division: splits i = a*q + r so
// that only q*d and r*d are formed, never i*d (unless i < a already).
// Agrees with round_half_up_div on every input where both succeed.
inline Result<NearestSolution> mdid(const ScaleProblem& p, Width w) {
  detail::require_valid(p);
  return w == Width::w32 ? detail::mdid_impl<std::int32_t>(p.i, p.d, p.a)
                         : detail::mdid_impl<std::int64_t>(p.i, p.d, p.a);
}

// Direct search from the initial guess kappa, with an externally supplied
// residual carry (used by the additive decomposition; pass 0 otherwise).
// Returns (j, delta) with delta = j*a - i*d + carry and 2*|delta| <= a.
// When 2*|delta| < a, j is the unique nearest integer to (i*d - carry)/a;
// at an exact tie j depends on the side kappa approaches from (case 2 keeps
// +a/2, case 3 keeps -a/2); both are nearest solutions.
inline Result<NearestSolution> direct_search(const ScaleProblem& p,
                                             std::int64_t kappa,
                                             std::int64_t carry, Width w) {
  detail::require_valid(p);
  if (kappa < 0) throw std::invalid_argument("direct_search: kappa < 0");
  detail::require_valid_carry(carry, p.a);
  return w == Width::w32
             ? detail::ds_impl<std::int32_t>(p.i, p.d, p.a, kappa, carry)
             : detail::ds_impl<std::int64_t>(p.i, p.d, p.a, kappa, carry);
}

// Default initial guess kappa = i, which zeroes (kappa-i)*a; optimal when
// d/a is near 1 (the clock-skew regime). Callers may override.
inline Result<NearestSolution> direct_search(const ScaleProblem& p, Width w) {
  return direct_search(p, p.i, 0, w);
}

enum class SignedAlgo { rounded_div, mdid, direct_search };

// Solves the magnitude problem with the chosen kernel and applies the sign
// of i*d to both j and delta. On the signed axis this realizes round half
// away from zero (the magnitude tie rule is half up).
inline Result<NearestSolution> solve_signed(const SignedScaleProblem& sp,
                                            SignedAlgo algo, Width w) {
  if (sp.sign != 1 && sp.sign != -1) {
    throw std::invalid_argument("SignedScaleProblem: sign must be +1 or -1");
  }
  detail::require_valid(sp.magnitude);
  if (sp.sign == -1 && (sp.magnitude.i == 0 || sp.magnitude.d == 0)) {
    throw std::invalid_argument(
        "SignedScaleProblem: sign must be +1 when i*d == 0");
  }

  Result<NearestSolution> r = [&]() -> Result<NearestSolution> {
    switch (algo) {
      case SignedAlgo::rounded_div: return round_half_up_div(sp.magnitude, w);
      case SignedAlgo::mdid: return mdid(sp.magnitude, w);
      case SignedAlgo::direct_search: return direct_search(sp.magnitude, w);
    }
    throw std::logic_error("solve_signed: bad algo");
  }();
  if (!r) return r;
  if (sp.sign == 1) return r;

  // j <= 2^(W-1)-1, so -j is always representable.
  std::int64_t nj, nd;
  if (sub_overflows(std::int64_t{0}, r.value().j, &nj)) {
    return Overflow{Cond::output};
  }
  if (sub_overflows(std::int64_t{0}, r.value().delta, &nd)) {
    return Overflow{Cond::output};
  }
  return NearestSolution{nj, nd};
}

}  // namespace ils

#endif  // ILS_CORE_HPP
