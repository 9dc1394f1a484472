// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "../oracles.hpp"
#include "dexfactor/baselines.hpp"
#include "dexfactor/cli.hpp"
#include "dexfactor/closedform.hpp"
#include "dexfactor/natarith.hpp"
#include "dexfactor/sparsity.hpp"
#include "dexfactor/steppers.hpp"

using namespace dexfactor;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "dexfactor");
  std::ostringstream out, err;
  int rc = cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string u(std::uint64_t v) { return std::to_string(v); }

// 1000 seeded odd non-square composites below 10^6, shared by 5 and 6.
const std::vector<std::uint64_t>& corpus() {
  static const std::vector<std::uint64_t> values = [] {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::uint64_t> dist(4, 499999);
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    while (out.size() < 1000) {
      std::uint64_t v = 2 * dist(rng) + 1;
      if (oracle::odd_nonsquare_composite(v) && seen.insert(v).second) out.push_back(v);
    }
    return out;
  }();
  return values;
}

std::uint64_t oracle_start(std::uint64_t n) {
  std::uint64_t r = oracle::isqrt(n);
  return r % 2 ? r : r - 1;
}

Verdict param_trace_4061() {
  Verdict v;
  auto t0 = Clock::now();
  CliResult r = cli_run({"trace", "4061", "--algorithm", "param"});
  double elapsed = seconds_since(t0);
  if (r.rc != 0) v.fail("exit " + std::to_string(r.rc));
  if (r.out != slurp(std::filesystem::path(FIXTURE_DIR) / "param_4061.tsv"))
    v.fail("output differs from fixture");

  ParamRun run = run_param(Natural(4061));
  std::vector<std::uint64_t> eps;
  for (const auto& row : run.trace) eps.push_back(*row.eps.to_u64());
  const std::vector<std::uint64_t> expected_eps{2, 2, 2, 4, 2, 2, 4, 2, 4, 4, 4, 6, 4, 6, 6, 8, 6};
  if (eps != expected_eps) v.fail("eps sequence differs");
  const std::vector<std::int64_t> dx_head{-92, -96, -108, -128};
  for (std::size_t i = 0; i < dx_head.size() && i < run.trace.size(); ++i)
    if (run.trace[i].delta_x != SignedInt(dx_head[i])) v.fail("delta_x head differs");
  if (run.trace.size() < 2 || run.trace[run.trace.size() - 2].delta_y != SignedInt(64) ||
      run.trace.back().delta_y != SignedInt(0))
    v.fail("delta_y tail differs");
  if (run.outcome.p != Natural(31) || run.outcome.q != Natural(131)) v.fail("terminal pair differs");
  if (elapsed >= 1.0) v.fail("took " + std::to_string(elapsed) + " s");
  if (v.ok) v.detail = "17 rows, eps and deltas match, byte-exact";
  return v;
}

Verdict accel_trace_4061() {
  Verdict v;
  auto t0 = Clock::now();
  CliResult r = cli_run({"trace", "4061", "--algorithm", "accel"});
  double elapsed = seconds_since(t0);
  if (r.rc != 0) v.fail("exit " + std::to_string(r.rc));
  if (r.out != slurp(std::filesystem::path(FIXTURE_DIR) / "accel_4061.tsv"))
    v.fail("output differs from fixture");
  UnitRun run = run_accelerated(Natural(4061));
  if (run.trace.front().x != Natural(63) || run.trace.back().x != Natural(31) ||
      run.trace.front().y != Natural(63) || run.trace.back().y != Natural(131))
    v.fail("endpoints differ");
  if (elapsed >= 1.0) v.fail("took " + std::to_string(elapsed) + " s");
  if (v.ok) v.detail = u(run.trace.size() - 1) + " steps after the start row, byte-exact";
  return v;
}

Verdict worked_example() {
  Verdict v;
  ClosedFormPoint pt = eval_closed_form(Natural(4061), AVector({6, 6, 4, 1}, Natural(63)));
  if (pt.k != Natural(17)) v.fail("k = " + pt.k.to_string());
  if (pt.x != Natural(31) || pt.y != Natural(131) || !pt.residual.is_zero())
    v.fail("got (" + pt.x.to_string() + ", " + pt.y.to_string() + ", " + pt.residual.to_string() +
           ")");
  if (v.ok) v.detail = "(31, 131, 0), k = 17";
  return v;
}

// Criteria 4 and the primality half of 9 share one sweep.
struct SweepResult {
  Verdict classify;
  Verdict prime_ref;
  double seconds = 0;
};

const SweepResult& sweep() {
  static const SweepResult result = [] {
    SweepResult s;
    std::uint64_t primes = 0, composites = 0;
    auto t0 = Clock::now();
    for (std::uint64_t n = 9; n <= 99999; n += 2) {
      const Natural nn(n);
      FactorOutcome o = classify(nn);
      const bool prime = oracle::is_prime(n);
      if (prime) {
        ++primes;
        if (o.kind != OutcomeKind::Prime) s.classify.fail("n=" + u(n) + " not reported prime");
      } else {
        ++composites;
        const std::uint64_t p = oracle::largest_divisor_at_most(n, oracle::isqrt(n));
        if (!o.factored() || o.p != Natural(p) || o.q != Natural(n / p))
          s.classify.fail("n=" + u(n) + " expected p=" + u(p) + ", got " + o.p.to_string());
      }
      if (is_prime_ref(nn) != (o.kind == OutcomeKind::Prime))
        s.prime_ref.fail("is_prime_ref disagrees at n=" + u(n));
    }
    s.seconds = seconds_since(t0);
    if (s.seconds >= 120) s.classify.fail("sweep took " + std::to_string(s.seconds) + " s");
    if (s.classify.ok)
      s.classify.detail = u(primes) + " primes, " + u(composites) + " composites, " +
                          std::to_string(s.seconds).substr(0, 5) + " s";
    return s;
  }();
  return result;
}

Verdict oracle_equivalence() { return sweep().classify; }

Verdict cross_stepper() {
  Verdict v;
  const RowSink<UnitTraceRow> no_unit_rows;
  const RowSink<ParamTraceRow> no_param_rows;
  for (std::uint64_t n : corpus()) {
    const Natural nn(n);
    FactorOutcome a = run_unit(nn, std::nullopt, no_unit_rows);
    FactorOutcome b = run_accelerated(nn, std::nullopt, no_unit_rows);
    FactorOutcome c = run_param(nn, std::nullopt, no_param_rows);
    if (a.p != b.p || b.p != c.p || a.q != b.q || b.q != c.q) v.fail("mismatch at n=" + u(n));
    if (!c.factored() || c.p * c.q != nn) v.fail("bad split at n=" + u(n));
  }
  if (v.ok) v.detail = u(corpus().size()) + " inputs, zero mismatches";
  return v;
}

Verdict step_count_law() {
  Verdict v;
  for (std::uint64_t n : corpus()) {
    std::uint64_t last = 0;
    FactorOutcome o =
        run_param(Natural(n), std::nullopt, [&](const ParamTraceRow& row) { last = row.k; });
    const std::uint64_t p = oracle::largest_divisor_at_most(n, oracle::isqrt(n));
    if (o.p != Natural(p)) v.fail("wrong p at n=" + u(n));
    if (last != (oracle_start(n) - p) / 2) v.fail("terminal index off at n=" + u(n));
  }
  if (v.ok) v.detail = u(corpus().size()) + " inputs, zero mismatches";
  return v;
}

Verdict invariants() {
  Verdict v;
  std::uint64_t runs = 0, rows = 0;
  auto check_unit = [&](std::uint64_t n, bool accelerated) {
    const Natural nn(n);
    std::optional<UnitTraceRow> prev;
    auto sink = [&](const UnitTraceRow& r) {
      ++rows;
      if (SignedInt(r.x * r.y) - SignedInt(nn) != r.delta) v.fail("delta identity, n=" + u(n));
      if (r.x.is_even() || r.y.is_even()) v.fail("parity, n=" + u(n));
      if (prev) {
        if (r.x > prev->x || r.y < prev->y) v.fail("monotonicity, n=" + u(n));
        const bool x_step = !r.eps_x.is_zero(), y_step = !r.eps_y.is_zero();
        if (x_step == y_step) v.fail("not exactly one step, n=" + u(n));
        if (x_step && (r.eps_x != SignedInt(-2) || !(prev->delta > SignedInt(0))))
          v.fail("x-step rule, n=" + u(n));
        if (y_step) {
          if (!prev->delta.is_negative()) v.fail("y-step rule, n=" + u(n));
          if (!accelerated && r.eps_y != SignedInt(2)) v.fail("unit eps, n=" + u(n));
          // the accelerated jump is the smallest even one reaching delta >= 0
          if (accelerated && (r.delta.is_negative() ||
                              !(r.delta - SignedInt(2) * SignedInt(r.x) < SignedInt(0))))
            v.fail("accelerated eps minimality, n=" + u(n));
        }
      }
      prev = r;
    };
    FactorOutcome o = accelerated ? run_accelerated(nn, std::nullopt, sink)
                                  : run_unit(nn, std::nullopt, sink);
    const bool finished = o.factored() || o.kind == OutcomeKind::Prime;
    if (!prev || !prev->delta.is_zero() || !finished) v.fail("did not halt at zero, n=" + u(n));
    ++runs;
  };
  auto check_param = [&](std::uint64_t n) {
    const Natural nn(n);
    std::optional<ParamTraceRow> prev;
    auto sink = [&](const ParamTraceRow& r) {
      ++rows;
      if (SignedInt(r.x * r.y) - SignedInt(nn) != r.delta_x) v.fail("delta_x identity, n=" + u(n));
      if (r.delta_x + SignedInt(r.eps * r.x) != r.delta_y) v.fail("delta_y identity, n=" + u(n));
      if (r.x.is_even() || r.y.is_even() || r.eps.is_odd()) v.fail("parity, n=" + u(n));
      if (r.delta_y.is_negative() || !(r.delta_y < SignedInt(2) * SignedInt(r.x)))
        v.fail("eps minimality, n=" + u(n));
      if (prev && (r.x + Natural(2) != prev->x || r.y != prev->y + prev->eps))
        v.fail("row transition, n=" + u(n));
      prev = r;
    };
    FactorOutcome o = run_param(nn, std::nullopt, sink);
    if (!prev || !prev->delta_y.is_zero() || o.p != prev->x || o.q != prev->y + prev->eps ||
        (o.kind == OutcomeKind::Prime) != oracle::is_prime(n))
      v.fail("terminal row, n=" + u(n));
    ++runs;
  };
  for (std::uint64_t n = 9; n < 30000; n += 2) {
    if (oracle::is_square(n)) continue;
    check_param(n);
    check_unit(n, true);
    check_unit(n, false);
  }
  if (runs < 10000) v.fail("only " + u(runs) + " runs");
  if (v.ok) v.detail = u(runs) + " runs, " + u(rows) + " rows, zero violations";
  return v;
}

// Splits one CSV line, honouring double quotes.
std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    else if (c == ',' && !quoted) out.emplace_back();
    else out.back() += c;
  }
  return out;
}

Verdict sparsity_experiment() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "dexfactor_acceptance_scan.csv";
  const auto json = dir / "dexfactor_acceptance_scan.json";
  auto t0 = Clock::now();
  CliResult r = cli_run({"scan", "--lo", "9", "--hi", "10000", "--out", csv.string(), "--json",
                         json.string()});
  double elapsed = seconds_since(t0);
  if (r.rc != 0) v.fail("scan exit " + std::to_string(r.rc) + ": " + r.err);
  if (elapsed >= 600) v.fail("scan took " + std::to_string(elapsed) + " s");

  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  if (line != "n,p,q,k_steps,target_sum,trace_support,min_support,witness") v.fail("bad header");
  std::uint64_t records = 0, expected = 0, minimal_checked = 0;
  std::size_t worst = 0;
  for (std::uint64_t n = 9; n <= 10000; ++n) expected += oracle::odd_nonsquare_composite(n);
  while (std::getline(lines, line)) {
    if (line.starts_with("#")) {
      v.fail("marker line: " + line);
      continue;
    }
    auto f = csv_fields(line);
    if (f.size() != 8) {
      v.fail("malformed row: " + line);
      continue;
    }
    ++records;
    const std::uint64_t n = std::stoull(f[0]), p = std::stoull(f[1]), q = std::stoull(f[2]);
    const std::size_t trace_support = std::stoull(f[5]), min_support = std::stoull(f[6]);
    worst = std::max(worst, min_support);
    const std::uint64_t m = oracle_start(n);
    AVector w = AVector::parse(f[7], Natural(m));
    if (!verify_avector(Natural(n), w)) v.fail("witness fails at n=" + u(n));
    if (w.support() != min_support) v.fail("support column wrong at n=" + u(n));
    if (min_support > trace_support) v.fail("min exceeds trace support at n=" + u(n));
    if (p != oracle::largest_divisor_at_most(n, oracle::isqrt(n)) || p * q != n)
      v.fail("wrong split at n=" + u(n));
    if (n < 1000) {
      ++minimal_checked;
      if (oracle::min_support_dp((m - p) / 2 + 1, (q - m) / 2, (m - 1) / 2 + 1) != min_support)
        v.fail("not minimal at n=" + u(n));
    }
  }
  if (records != expected) v.fail(u(records) + " records, expected " + u(expected));
  if (!std::filesystem::exists(json) || std::filesystem::file_size(json) == 0)
    v.fail("no JSON report");
  if (r.out.find("max min_support") == std::string::npos) v.fail("no summary");
  std::filesystem::remove(csv);
  std::filesystem::remove(json);
  if (v.ok)
    v.detail = u(records) + " records verified, " + u(minimal_checked) +
               " checked minimal, max min_support " + u(worst) + ", " +
               std::to_string(elapsed).substr(0, 5) + " s";
  return v;
}

std::uint64_t random_prime32(std::mt19937_64& rng) {
  for (;;) {
    std::uint64_t c = (rng() & 0xffffffffu) | 0x80000001u;
    if (oracle::is_prime(c)) return c;
  }
}

Verdict baselines() {
  Verdict v;
  std::mt19937_64 rng(977);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t p = random_prime32(rng), q = random_prime32(rng);
    const Natural n = Natural(p) * Natural(q);
    BaselineResult r = pollard_rho(n, static_cast<std::uint64_t>(i));
    if (r.failed || r.factor == Natural(1) || r.factor == n || !(n % r.factor).is_zero())
      v.fail("rho failed on " + n.to_string());
  }
  const Verdict& pr = sweep().prime_ref;
  if (!pr.ok) v.fail(pr.detail);
  if (v.ok) v.detail = "100 semiprimes split, is_prime_ref agrees on [9, 99999]";
  return v;
}

Verdict isqrt_property() {
  Verdict v;
  gmp_randclass rand(gmp_randinit_mt);
  rand.seed(31337);
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 100000; ++i) {
    const unsigned bits = 1 + static_cast<unsigned>(rng() % 256);
    const Natural n = Natural::from_mpz(rand.get_z_bits(bits));
    const Natural r = isqrt(n);
    const Natural r1 = r + Natural(1);
    if (r * r > n || r1 * r1 <= n) v.fail("violated at n=" + n.to_string());
  }
  if (v.ok) v.detail = "100000 inputs, zero violations";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"parameterized trace of 4061", param_trace_4061},
      {"accelerated trace of 4061", accel_trace_4061},
      {"closed form of 4061 with A = 6,6,4,1", worked_example},
      {"classify agrees with trial division on odd n in [9, 99999]", oracle_equivalence},
      {"unit, accelerated and parameterized steppers agree", cross_stepper},
      {"parameterized terminal index equals (m - p)/2", step_count_law},
      {"row invariants", invariants},
      {"sparsity scan of [9, 10000]", sparsity_experiment},
      {"Pollard rho and reference primality", baselines},
      {"isqrt bracket property", isqrt_property},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = Clock::now();
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.2f s", seconds_since(t0));
    std::cout << (v.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": "
              << v.detail << " (" << elapsed << ")" << std::endl;
    failures += !v.ok;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
