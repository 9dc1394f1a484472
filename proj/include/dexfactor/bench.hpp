#pragma once

// Timing comparison of the parameterized stepper against trial division and
// Pollard rho on identical inputs.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dexfactor/natarith.hpp"
#include "dexfactor/steppers.hpp"

namespace dexfactor {

// `count` products of two distinct random primes of bits/2 and bits - bits/2
// bits, drawn deterministically from `seed`. Requires 6 <= bits <= 64 and
// count >= 1; throws std::invalid_argument otherwise.
std::vector<Natural> generate_semiprimes(unsigned bits, std::uint64_t count, std::uint64_t seed);

// Odd non-square composites in [lo, hi]. Throws std::invalid_argument if the
// range holds none.
std::vector<Natural> composite_range(std::uint64_t lo, std::uint64_t hi);

struct MethodStats {
  std::string method;
  std::uint64_t runs = 0;
  std::uint64_t solved = 0;
  std::uint64_t step_limit = 0;
  std::uint64_t failed = 0;
  std::uint64_t median_ns = 0;
  std::uint64_t median_iterations = 0;
};

struct BenchReport {
  std::uint64_t inputs = 0;
  std::vector<MethodStats> methods;  // param, trial, rho
  // Inputs where every method that finished returned the same {d, n/d}.
  std::uint64_t pair_agreement = 0;
  // Inputs where every returned divisor was checked by exact division.
  std::uint64_t verified = 0;
};

BenchReport run_bench(const std::vector<Natural>& inputs, StepBudget stepper_budget,
                      std::uint64_t seed);

void write_bench_table(std::ostream& os, const BenchReport& report);

}  // namespace dexfactor
