// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_BIGINT_HPP
#define ILS_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace ils {

// Arbitrary-precision signed integer used by the oracle and the guards.
// Checking never runs in the lane, so it can never itself overflow.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace ils

#endif  // ILS_BIGINT_HPP
