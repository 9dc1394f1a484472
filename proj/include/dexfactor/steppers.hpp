#pragma once

// Difference-expression factorers.
//
// All three steppers start from x = y = m (the largest odd m <= isqrt(n)) and
// walk x down and y up while tracking the signed residual delta = x*y - n:
//
//   run_unit         y-steps add 2, x-steps subtract 2, one unit at a time.
//   run_accelerated  a y-step jumps by the smallest even eps_y that makes
//                    delta >= 0 in a single step.
//   run_param        one row per x value: eps is chosen so that
//                    delta_y = delta_x + eps*x is the smallest non-negative
//                    residual; halts when delta_y == 0 with q = y + eps.
//
// For odd n every stepper halts with p equal to the largest divisor of n not
// exceeding isqrt(n), so a prime n ends at p = 1, q = n. The worst case is
// O(sqrt(n)) rows for run_param and O(n) rows for run_unit.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "dexfactor/natarith.hpp"

namespace dexfactor {

enum class OutcomeKind {
  EvenSplit,
  PerfectSquare,
  CompositePair,
  Prime,
  Invalid,
  StepLimit,
};

std::string_view to_string(OutcomeKind kind);

struct FactorOutcome {
  OutcomeKind kind = OutcomeKind::Invalid;
  // For StepLimit, the (x, y) state at which the run was abandoned.
  Natural p;
  Natural q;
  std::uint64_t steps = 0;

  // True for the kinds that carry a verified p * q == n split.
  bool factored() const {
    return kind == OutcomeKind::EvenSplit || kind == OutcomeKind::PerfectSquare ||
           kind == OutcomeKind::CompositePair;
  }
};

// One row of run_unit / run_accelerated. Row 0 is the start state with all
// increments zero; every later row records exactly one x-step or y-step.
struct UnitTraceRow {
  std::uint64_t k = 0;
  Natural x;
  Natural y;
  SignedInt delta;    // x*y - n after this step
  SignedInt eps_x;    // 0 or -2
  SignedInt eps_y;    // 0 or positive even
  SignedInt contrib;  // eps_x*y or eps_y*x, whichever step was taken

  friend bool operator==(const UnitTraceRow&, const UnitTraceRow&) = default;
};

// One row of run_param: x and y are the values entering the row.
struct ParamTraceRow {
  std::uint64_t k = 0;
  Natural x;
  Natural y;
  SignedInt delta_x;  // x*y - n
  Natural eps;        // smallest even with delta_x + eps*x >= 0
  SignedInt delta_y;  // delta_x + eps*x

  friend bool operator==(const ParamTraceRow&, const ParamTraceRow&) = default;
};

// Maximum number of iterations (rows after the start row for the unit-style
// steppers, rows for run_param). nullopt selects the stepper's natural bound,
// which always suffices for valid input.
using StepBudget = std::optional<std::uint64_t>;

template <class Row>
using RowSink = std::function<void(const Row&)>;

struct UnitRun {
  FactorOutcome outcome;
  std::vector<UnitTraceRow> trace;
};

struct ParamRun {
  FactorOutcome outcome;
  std::vector<ParamTraceRow> trace;
};

// Natural iteration bounds for odd non-square n >= 9, saturated to uint64.
std::uint64_t unit_step_bound(const Natural& n);
std::uint64_t accelerated_step_bound(const Natural& n);
std::uint64_t param_step_bound(const Natural& n);

// The runners require n odd, n >= 9 and not a perfect square; they throw
// std::invalid_argument otherwise. Exceeding the budget yields an outcome of
// kind StepLimit and the rows produced so far.
FactorOutcome run_unit(const Natural& n, StepBudget max_steps, const RowSink<UnitTraceRow>& sink);
FactorOutcome run_accelerated(const Natural& n, StepBudget max_steps,
                              const RowSink<UnitTraceRow>& sink);
FactorOutcome run_param(const Natural& n, StepBudget max_steps, const RowSink<ParamTraceRow>& sink);

UnitRun run_unit(const Natural& n, StepBudget max_steps = std::nullopt);
UnitRun run_accelerated(const Natural& n, StepBudget max_steps = std::nullopt);
ParamRun run_param(const Natural& n, StepBudget max_steps = std::nullopt);

// Total classifier. n <= 1 is Invalid, 2 is Prime, other even n split as
// (2, n/2), odd squares as (r, r), and everything else goes through
// run_param. Never throws for any Natural.
FactorOutcome classify(const Natural& n, StepBudget max_steps = std::nullopt);

}  // namespace dexfactor
