#include "dexfactor/steppers.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace dexfactor {

namespace {

std::uint64_t saturate(const Natural& v) {
  return v.to_u64().value_or(std::numeric_limits<std::uint64_t>::max());
}

void require_runnable(const Natural& n, const char* who) {
  if (n.is_even() || n < Natural(9) || is_perfect_square(n)) {
    throw std::invalid_argument(std::string(who) +
                                " requires odd non-square n >= 9, got " + n.to_string());
  }
}

FactorOutcome finish(const mpz_class& x, const mpz_class& y, std::uint64_t steps) {
  FactorOutcome out;
  out.kind = (x == 1) ? OutcomeKind::Prime : OutcomeKind::CompositePair;
  out.p = Natural::from_mpz(x);
  out.q = Natural::from_mpz(y);
  out.steps = steps;
  return out;
}

FactorOutcome step_limit(const mpz_class& x, const mpz_class& y, std::uint64_t steps) {
  FactorOutcome out;
  out.kind = OutcomeKind::StepLimit;
  out.p = Natural::from_mpz(x);
  out.q = Natural::from_mpz(y);
  out.steps = steps;
  return out;
}

// run_unit and run_accelerated differ only in how far a y-step jumps.
template <bool Accelerated>
FactorOutcome run_unit_style(const Natural& n, StepBudget max_steps,
                             const RowSink<UnitTraceRow>& sink, const char* who) {
  require_runnable(n, who);
  const std::uint64_t budget =
      max_steps.value_or(Accelerated ? accelerated_step_bound(n) : unit_step_bound(n));

  mpz_class x = start_point(n).mpz();
  mpz_class y = x;
  mpz_class delta = x * x - n.mpz();
  mpz_class eps, contrib, twice_x;

  auto emit = [&](std::uint64_t k, long eps_x, const mpz_class& eps_y) {
    if (!sink) return;
    sink(UnitTraceRow{k, Natural::from_mpz(x), Natural::from_mpz(y), SignedInt(delta),
                      SignedInt(eps_x), SignedInt(eps_y), SignedInt(contrib)});
  };

  contrib = 0;
  emit(0, 0, mpz_class(0));

  std::uint64_t steps = 0;
  while (sgn(delta) != 0) {
    if (steps == budget) return step_limit(x, y, steps);
    ++steps;
    if (sgn(delta) < 0) {
      if constexpr (Accelerated) {
        // smallest even eps with delta + eps*x >= 0
        twice_x = 2 * x;
        mpz_cdiv_q(eps.get_mpz_t(), mpz_class(-delta).get_mpz_t(), twice_x.get_mpz_t());
        eps *= 2;
      } else {
        eps = 2;
      }
      y += eps;
      contrib = eps * x;
      delta += contrib;
      emit(steps, 0, eps);
    } else {
      x -= 2;
      if (sgn(x) <= 0) throw std::logic_error("stepper drove x below 1 for n = " + n.to_string());
      contrib = -2 * y;
      delta += contrib;
      emit(steps, -2, mpz_class(0));
    }
  }
  return finish(x, y, steps);
}

template <class Row>
RowSink<Row> collect_into(std::vector<Row>& rows) {
  return [&rows](const Row& r) { rows.push_back(r); };
}

}  // namespace

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::EvenSplit: return "EvenSplit";
    case OutcomeKind::PerfectSquare: return "PerfectSquare";
    case OutcomeKind::CompositePair: return "CompositePair";
    case OutcomeKind::Prime: return "Prime";
    case OutcomeKind::Invalid: return "Invalid";
    case OutcomeKind::StepLimit: return "StepLimit";
  }
  return "?";
}

std::uint64_t unit_step_bound(const Natural& n) {
  // x-steps: m down to 1; y-steps: m up to n.
  Natural m = start_point(n);
  return saturate((m - Natural(1)) / Natural(2) + (n - m) / Natural(2));
}

std::uint64_t accelerated_step_bound(const Natural& n) {
  // Steps alternate, with at most one more y-step than x-steps.
  return saturate(start_point(n));
}

std::uint64_t param_step_bound(const Natural& n) {
  return saturate((start_point(n) - Natural(1)) / Natural(2) + Natural(1));
}

FactorOutcome run_unit(const Natural& n, StepBudget max_steps, const RowSink<UnitTraceRow>& sink) {
  return run_unit_style<false>(n, max_steps, sink, "run_unit");
}

FactorOutcome run_accelerated(const Natural& n, StepBudget max_steps,
                              const RowSink<UnitTraceRow>& sink) {
  return run_unit_style<true>(n, max_steps, sink, "run_accelerated");
}

FactorOutcome run_param(const Natural& n, StepBudget max_steps,
                        const RowSink<ParamTraceRow>& sink) {
  require_runnable(n, "run_param");
  const std::uint64_t budget = max_steps.value_or(param_step_bound(n));

  mpz_class x = start_point(n).mpz();
  mpz_class y = x;
  mpz_class delta_x = x * x - n.mpz();
  mpz_class delta_y, eps, twice_x;

  for (std::uint64_t k = 0;; ++k) {
    if (k == budget) return step_limit(x, y, k);

    // delta_x < 0 here, so eps >= 2
    twice_x = 2 * x;
    mpz_cdiv_q(eps.get_mpz_t(), mpz_class(-delta_x).get_mpz_t(), twice_x.get_mpz_t());
    eps *= 2;
    delta_y = delta_x + eps * x;

    if (sink) {
      sink(ParamTraceRow{k, Natural::from_mpz(x), Natural::from_mpz(y), SignedInt(delta_x),
                         Natural::from_mpz(eps), SignedInt(delta_y)});
    }
    if (sgn(delta_y) == 0) return finish(x, y + eps, k + 1);

    y += eps;
    x -= 2;
    if (sgn(x) <= 0) throw std::logic_error("run_param drove x below 1 for n = " + n.to_string());
    delta_x = delta_y - 2 * y;
  }
}

UnitRun run_unit(const Natural& n, StepBudget max_steps) {
  UnitRun run;
  run.outcome = run_unit(n, max_steps, collect_into(run.trace));
  return run;
}

UnitRun run_accelerated(const Natural& n, StepBudget max_steps) {
  UnitRun run;
  run.outcome = run_accelerated(n, max_steps, collect_into(run.trace));
  return run;
}

ParamRun run_param(const Natural& n, StepBudget max_steps) {
  ParamRun run;
  run.outcome = run_param(n, max_steps, collect_into(run.trace));
  return run;
}

FactorOutcome classify(const Natural& n, StepBudget max_steps) {
  FactorOutcome out;
  if (n <= Natural(1)) {
    out.kind = OutcomeKind::Invalid;
    return out;
  }
  if (n == Natural(2) || (n.is_odd() && n < Natural(9))) {
    out.kind = OutcomeKind::Prime;
    out.p = Natural(1);
    out.q = n;
    return out;
  }
  if (n.is_even()) {
    out.kind = OutcomeKind::EvenSplit;
    out.p = Natural(2);
    out.q = n / Natural(2);
    return out;
  }
  if (is_perfect_square(n)) {
    out.kind = OutcomeKind::PerfectSquare;
    out.p = isqrt(n);
    out.q = out.p;
    return out;
  }
  return run_param(n, max_steps, RowSink<ParamTraceRow>{});
}

}  // namespace dexfactor
