// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_TYPES_HPP
#define ILS_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace ils {

// Width of the signed integer lane all kernel arithmetic runs in. Every
// intermediate that would leave [-2^(W-1), 2^(W-1)-1] is detected and
// reported, never wrapped.
enum class Width { w32, w64 };

constexpr int width_bits(Width w) { return w == Width::w32 ? 32 : 64; }

constexpr std::int64_t lane_max(Width w) {
  return w == Width::w32 ? INT32_MAX : INT64_MAX;
}

constexpr std::int64_t lane_min(Width w) {
  return w == Width::w32 ? INT32_MIN : INT64_MIN;
}

// One scaling instance: find the integer nearest to i*d/a.
//   i: non-negative count (e.g. hardware clock ticks)
//   d: non-negative numerator scale (e.g. cumulative interdeparture time)
//   a: positive denominator scale (e.g. cumulative interarrival time)
struct ScaleProblem {
  std::int64_t i = 0;
  std::int64_t d = 0;
  std::int64_t a = 1;
};

// General-sign instance: the sign of the product i*d, applied to the solution
// of the non-negative magnitude problem. a stays positive.
struct SignedScaleProblem {
  ScaleProblem magnitude;
  int sign = +1;  // +1 or -1; +1 whenever magnitude.i * magnitude.d == 0
};

// A nearest-integer solution j together with the exact residual
// delta = j*a - i*d (direct_search adds its carry: delta = j*a - i*d + carry).
// Always 2*|delta| <= a.
struct NearestSolution {
  std::int64_t j = 0;
  std::int64_t delta = 0;
};

// Named non-overflow conditions. The guard module evaluates them in exact
// arithmetic; the kernels report the one a failing step belongs to.
enum class Cond {
  input_i,         // i <= 2^(W-1)-1
  input_d,         // D <= 2^(W-1)-1
  input_a,         // A <= 2^(W-1)-1
  input_kappa,     // kappa <= 2^(W-1)-1
  output,          // floor(i*D/A + 0.5) <= 2^(W-1)-1
  rdiv_product,    // i*D <= 2^(W-1)-1
  rdiv_sum,        // i*D + floor(A/2) <= 2^(W-1)-1
  mdid_quotient_product,  // floor(i/A)*D <= 2^(W-1)-1
  mdid_remainder_sum,     // (i mod A)*D + floor(A/2) <= 2^(W-1)-1
  mdid_small_product,     // i*D <= 2^(W-1)-1 when i < A and D < A
  ds_guess_product,       // (kappa-i)*A within lane
  ds_skew_product,        // i*(A-D) within lane
  ds_init_sum,            // (kappa-i)*A + i*(A-D) within lane
  ds_init_carry,          // (kappa-i)*A + i*(A-D) + carry within lane
  ds_k1,                  // k1 = k0 - floor(Delta0/A) within lane
  adds_chunk_i,           // i_n <= 2^(W-1)-1
  adds_envelope,  // -2^(W-1)+ceil(A/2) <= (kappa_n-i_n)*A + i_n*(A-D)
                  //                       <= 2^(W-1)-1-ceil(A/2)
  adds_cap,       // chunk cap is zero: |A-D| too large for any chunk size
};

inline const char* cond_name(Cond c) {
  switch (c) {
    case Cond::input_i: return "i <= 2^(W-1)-1";
    case Cond::input_d: return "D <= 2^(W-1)-1";
    case Cond::input_a: return "A <= 2^(W-1)-1";
    case Cond::input_kappa: return "kappa <= 2^(W-1)-1";
    case Cond::output: return "floor(i*D/A + 0.5) <= 2^(W-1)-1";
    case Cond::rdiv_product: return "i*D <= 2^(W-1)-1";
    case Cond::rdiv_sum: return "i*D + floor(A/2) <= 2^(W-1)-1";
    case Cond::mdid_quotient_product: return "floor(i/A)*D <= 2^(W-1)-1";
    case Cond::mdid_remainder_sum:
      return "(i mod A)*D + floor(A/2) <= 2^(W-1)-1";
    case Cond::mdid_small_product:
      return "i*D <= 2^(W-1)-1 (i < A, D < A)";
    case Cond::ds_guess_product: return "(kappa-i)*A within lane";
    case Cond::ds_skew_product: return "i*(A-D) within lane";
    case Cond::ds_init_sum: return "(kappa-i)*A + i*(A-D) within lane";
    case Cond::ds_init_carry:
      return "(kappa-i)*A + i*(A-D) + carry within lane";
    case Cond::ds_k1: return "k1 = k0 - floor(Delta0/A) within lane";
    case Cond::adds_chunk_i: return "i_n <= 2^(W-1)-1";
    case Cond::adds_envelope:
      return "-2^(W-1)+ceil(A/2) <= (kappa_n-i_n)*A + i_n*(A-D) <= "
             "2^(W-1)-1-ceil(A/2)";
    case Cond::adds_cap:
      return "ADDS chunk cap > 0 (|A-D| small enough for some chunk)";
  }
  return "?";
}

// A detected overflow: which condition failed, and for chunked runs which
// chunk it failed in (-1 otherwise).
struct Overflow {
  Cond cond;
  int chunk = -1;

  std::string describe() const {
    std::string s = cond_name(cond);
    if (chunk >= 0) s = "chunk " + std::to_string(chunk) + ": " + s;
    return s;
  }
};

// Value-or-overflow result of a kernel call.
template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Overflow err) : v_(err) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw std::logic_error("Result: no value: " + error().describe());
    return std::get<T>(v_);
  }
  const Overflow& error() const {
    if (ok()) throw std::logic_error("Result: no error");
    return std::get<Overflow>(v_);
  }

 private:
  std::variant<T, Overflow> v_;
};

}  // namespace ils

#endif  // ILS_TYPES_HPP
