#pragma once

// Classical reference methods used to cross-check the steppers.

#include <cstdint>
#include <string_view>
#include <vector>

#include "dexfactor/natarith.hpp"

namespace dexfactor {

enum class BaselineMethod { TrialDivision, PollardRho };

std::string_view to_string(BaselineMethod m);

struct BaselineResult {
  BaselineMethod method = BaselineMethod::TrialDivision;
  Natural factor{1};  // nontrivial divisor, or 1 if prime / not found
  std::uint64_t iterations = 0;
  bool failed = false;  // rho exhausted its retries
};

// Smallest prime factor of n, or 1 if n is prime. Requires n >= 2.
BaselineResult trial_division(const Natural& n);

// Full factorization by trial division, ascending with multiplicity.
std::vector<Natural> trial_factorize(const Natural& n);

struct RhoOptions {
  unsigned max_attempts = 16;
  std::uint64_t max_iterations_per_attempt = std::uint64_t{1} << 22;
  std::uint64_t batch = 128;
};

// Brent's variant of Pollard rho with batched gcds. Each attempt draws its
// start value and polynomial offset from a generator seeded with `seed`, so
// results are reproducible. Requires odd n >= 9. A returned factor always
// divides n exactly; when every attempt fails, factor is 1 and failed is set.
BaselineResult pollard_rho(const Natural& n, std::uint64_t seed, const RhoOptions& opts = {});

// Deterministic Miller-Rabin for n < 2^64, trial division above.
bool is_prime_ref(const Natural& n);

}  // namespace dexfactor
