#include "dexfactor/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "dexfactor/baselines.hpp"

namespace dexfactor {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t random_prime(unsigned bits, std::mt19937_64& rng) {
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  const std::uint64_t span = lo;  // [2^(bits-1), 2^bits)
  for (;;) {
    std::uint64_t v = (lo + rng() % span) | 1;
    if (is_prime_ref(Natural(v))) return v;
  }
}

template <class T>
T median(std::vector<T> v) {
  if (v.empty()) return T{};
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

struct Sample {
  std::optional<Natural> divisor;  // nontrivial, verified
  bool step_limit = false;
  bool failed = false;
  std::uint64_t ns = 0;
  std::uint64_t iterations = 0;
};

template <class Fn>
Sample timed(Fn&& fn) {
  auto t0 = Clock::now();
  Sample s = fn();
  s.ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count());
  return s;
}

std::pair<Natural, Natural> ordered_pair(const Natural& n, const Natural& d) {
  Natural other = n / d;
  return d < other ? std::pair{d, other} : std::pair{other, d};
}

}  // namespace

std::vector<Natural> generate_semiprimes(unsigned bits, std::uint64_t count, std::uint64_t seed) {
  if (bits < 6 || bits > 64) throw std::invalid_argument("--bits must lie in [6, 64]");
  if (count == 0) throw std::invalid_argument("--count must be positive");
  const unsigned low_bits = bits / 2, high_bits = bits - bits / 2;
  std::mt19937_64 rng(seed);
  std::vector<Natural> out;
  out.reserve(count);
  while (out.size() < count) {
    std::uint64_t p = random_prime(low_bits, rng), q = random_prime(high_bits, rng);
    if (p == q) continue;
    out.push_back(Natural(p) * Natural(q));
  }
  return out;
}

std::vector<Natural> composite_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Natural> out;
  for (std::uint64_t v = std::max<std::uint64_t>(lo, 9) | 1; v <= hi; v += 2) {
    Natural n(v);
    if (!is_perfect_square(n) && !is_prime_ref(n)) out.push_back(n);
    if (hi - v < 2) break;
  }
  if (out.empty()) throw std::invalid_argument("range holds no odd non-square composites");
  return out;
}

BenchReport run_bench(const std::vector<Natural>& inputs, StepBudget stepper_budget,
                      std::uint64_t seed) {
  BenchReport report;
  report.inputs = inputs.size();
  const std::vector<std::string> names{"param", "trial", "rho"};
  std::vector<std::vector<Sample>> samples(names.size());

  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Natural& n = inputs[i];

    samples[0].push_back(timed([&] {
      Sample s;
      FactorOutcome o = classify(n, stepper_budget);
      s.iterations = o.steps;
      if (o.kind == OutcomeKind::StepLimit) s.step_limit = true;
      else if (o.factored()) s.divisor = o.p;
      return s;
    }));

    samples[1].push_back(timed([&] {
      Sample s;
      BaselineResult r = trial_division(n);
      s.iterations = r.iterations;
      if (r.factor > Natural(1)) s.divisor = r.factor;
      return s;
    }));

    samples[2].push_back(timed([&] {
      Sample s;
      if (n.is_even()) {
        s.divisor = Natural(2);
        return s;
      }
      BaselineResult r = pollard_rho(n, seed + i);
      s.iterations = r.iterations;
      s.failed = r.failed;
      if (!r.failed) s.divisor = r.factor;
      return s;
    }));

    std::set<std::pair<Natural, Natural>> pairs;
    bool all_exact = true;
    for (const auto& per_method : samples) {
      const Sample& s = per_method.back();
      if (!s.divisor) continue;
      if (!(n % *s.divisor).is_zero() || *s.divisor <= Natural(1) || *s.divisor >= n) {
        all_exact = false;
        continue;
      }
      pairs.insert(ordered_pair(n, *s.divisor));
    }
    if (all_exact) ++report.verified;
    if (all_exact && pairs.size() == 1) ++report.pair_agreement;
  }

  for (std::size_t m = 0; m < names.size(); ++m) {
    MethodStats st;
    st.method = names[m];
    std::vector<std::uint64_t> times, iters;
    for (const auto& s : samples[m]) {
      ++st.runs;
      if (s.divisor) ++st.solved;
      if (s.step_limit) ++st.step_limit;
      if (s.failed) ++st.failed;
      times.push_back(s.ns);
      iters.push_back(s.iterations);
    }
    st.median_ns = median(times);
    st.median_iterations = median(iters);
    report.methods.push_back(st);
  }
  return report;
}

void write_bench_table(std::ostream& os, const BenchReport& report) {
  os << std::left << std::setw(8) << "method" << std::right << std::setw(7) << "runs"
     << std::setw(8) << "solved" << std::setw(11) << "step_limit" << std::setw(8) << "failed"
     << std::setw(14) << "median_us" << std::setw(16) << "median_iters" << '\n';
  for (const auto& m : report.methods) {
    os << std::left << std::setw(8) << m.method << std::right << std::setw(7) << m.runs
       << std::setw(8) << m.solved << std::setw(11) << m.step_limit << std::setw(8) << m.failed
       << std::setw(14) << std::fixed << std::setprecision(1)
       << static_cast<double>(m.median_ns) / 1000.0 << std::setw(16) << m.median_iterations
       << '\n';
  }
  os << "inputs: " << report.inputs << ", divisors verified: " << report.verified
     << ", all finished methods agree on {p, q}: " << report.pair_agreement << '\n';
}

}  // namespace dexfactor
