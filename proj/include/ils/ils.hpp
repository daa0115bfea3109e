// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_ILS_HPP
#define ILS_ILS_HPP

// Umbrella header: exact integer linear scaling (nearest integer to i*d/a)
// over overflow-checked fixed-width lanes, with an arbitrary-precision
// oracle, overflow guards, additive decomposition, and the experiment
// harness.

#include "ils/bench.hpp"
#include "ils/bigint.hpp"
#include "ils/checked.hpp"
#include "ils/core.hpp"
#include "ils/decompose.hpp"
#include "ils/fuzz.hpp"
#include "ils/guard.hpp"
#include "ils/oracle.hpp"
#include "ils/rng.hpp"
#include "ils/types.hpp"

#endif  // ILS_ILS_HPP
