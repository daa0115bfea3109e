// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_CHECKED_HPP
#define ILS_CHECKED_HPP

#include <limits>
#include <type_traits>

namespace ils {

// Overflow-checked signed integer arithmetic. Each op returns true when the
// exact result does not fit in T and leaves *out unspecified, mirroring the
// GCC/Clang builtins it wraps.

#if defined(__GNUC__) || defined(__clang__)
#define ILS_HAS_OVERFLOW_BUILTINS 1
#endif

template <typename T>
[[nodiscard]] constexpr bool add_overflows(T a, T b, T* out) {
  static_assert(std::is_integral_v<T> && std::is_signed_v<T>);
#if defined(ILS_HAS_OVERFLOW_BUILTINS)
  return __builtin_add_overflow(a, b, out);
#else
  constexpr T hi = std::numeric_limits<T>::max();
  constexpr T lo = std::numeric_limits<T>::min();
  if (b > 0 ? a > hi - b : a < lo - b) return true;
  *out = static_cast<T>(a + b);
  return false;
#endif
}

template <typename T>
[[nodiscard]] constexpr bool sub_overflows(T a, T b, T* out) {
  static_assert(std::is_integral_v<T> && std::is_signed_v<T>);
#if defined(ILS_HAS_OVERFLOW_BUILTINS)
  return __builtin_sub_overflow(a, b, out);
#else
  constexpr T hi = std::numeric_limits<T>::max();
  constexpr T lo = std::numeric_limits<T>::min();
  if (b < 0 ? a > hi + b : a < lo + b) return true;
  *out = static_cast<T>(a - b);
  return false;
#endif
}

template <typename T>
[[nodiscard]] constexpr bool mul_overflows(T a, T b, T* out) {
  static_assert(std::is_integral_v<T> && std::is_signed_v<T>);
#if defined(ILS_HAS_OVERFLOW_BUILTINS)
  return __builtin_mul_overflow(a, b, out);
#else
  if (a == 0 || b == 0) {
    *out = 0;
    return false;
  }
  constexpr T hi = std::numeric_limits<T>::max();
  constexpr T lo = std::numeric_limits<T>::min();
  if (a > 0 ? (b > 0 ? a > hi / b : b < lo / a)
            : (b > 0 ? a < lo / b : b < hi / a)) {
    return true;
  }
  *out = static_cast<T>(a * b);
  return false;
#endif
}

}  // namespace ils

#endif  // ILS_CHECKED_HPP
