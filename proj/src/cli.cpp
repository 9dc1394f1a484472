#include "dexfactor/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"

#include "dexfactor/baselines.hpp"
#include "dexfactor/bench.hpp"
#include "dexfactor/closedform.hpp"
#include "dexfactor/natarith.hpp"
#include "dexfactor/sparsity.hpp"
#include "dexfactor/steppers.hpp"
#include "dexfactor/trace_io.hpp"

namespace dexfactor::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Natural parse_n(const std::string& text) {
  auto n = Natural::try_parse(text);
  if (!n) throw UsageError("'" + text + "' is not a non-negative decimal integer");
  return *n;
}

StepBudget resolve_budget(const std::optional<std::uint64_t>& flag) {
  if (flag) return flag;
  if (const char* env = std::getenv(kStepBudgetEnv); env && *env) {
    auto v = Natural::try_parse(env);
    if (!v || !v->to_u64()) throw UsageError(std::string(kStepBudgetEnv) + " must be a 64-bit count");
    return v->to_u64();
  }
  return std::nullopt;
}

bool runnable(const Natural& n) {
  return n.is_odd() && n >= Natural(9) && !is_perfect_square(n);
}

// Shared by factor/trace/avector for inputs that never reach a stepper,
// and for the final verdict of a stepper run.
int report_outcome(const Natural& n, const FactorOutcome& o, std::ostream& out,
                   std::ostream& err) {
  switch (o.kind) {
    case OutcomeKind::Invalid:
      err << "error: " << n << " is not factorable (need n >= 2)\n";
      return kInvalidInput;
    case OutcomeKind::StepLimit:
      err << "error: step limit exceeded after " << o.steps << " steps at x=" << o.p
          << ", y=" << o.q << " (raise --max-steps or " << kStepBudgetEnv << ")\n";
      return kStepLimit;
    case OutcomeKind::Prime:
      out << n << " is prime\n";
      return kOk;
    default:
      out << n << " = " << o.p << " * " << o.q << '\n';
      return kOk;
  }
}

int cmd_factor(const Natural& n, const std::string& algorithm, StepBudget budget,
               std::ostream& out, std::ostream& err) {
  if (algorithm == "trial" || algorithm == "rho") {
    if (n <= Natural(1)) return report_outcome(n, FactorOutcome{}, out, err);
    Natural d;
    if (algorithm == "trial") {
      d = trial_division(n).factor;
    } else if (n.is_even()) {
      d = n == Natural(2) ? Natural(1) : Natural(2);
    } else if (n < Natural(9) || (n.to_u64() && is_prime_ref(n))) {
      d = Natural(1);
    } else {
      BaselineResult r = pollard_rho(n, 1);
      if (r.failed) {
        err << "error: Pollard rho gave up on " << n << " after " << r.iterations
            << " iterations\n";
        return kBaselineFailure;
      }
      d = r.factor;
    }
    if (d == Natural(1)) {
      out << n << " is prime\n";
    } else {
      Natural other = n / d;
      out << n << " = " << std::min(d, other) << " * " << std::max(d, other) << '\n';
    }
    return kOk;
  }

  FactorOutcome o;
  if (algorithm == "param" || !runnable(n)) o = classify(n, budget);
  else if (algorithm == "unit") o = run_unit(n, budget, {});
  else o = run_accelerated(n, budget, {});
  return report_outcome(n, o, out, err);
}

int cmd_trace(const Natural& n, const std::string& algorithm, TraceFormat fmt, StepBudget budget,
              std::ostream& out, std::ostream& err) {
  if (!runnable(n)) return report_outcome(n, classify(n, budget), out, err);

  FactorOutcome o;
  if (fmt == TraceFormat::JSON) {
    if (algorithm == "param") {
      ParamRun run = run_param(n, budget);
      write_param_trace(out, fmt, n, run.trace, run.outcome);
      o = run.outcome;
    } else {
      UnitRun run = algorithm == "unit" ? run_unit(n, budget) : run_accelerated(n, budget);
      write_unit_trace(out, fmt, n, algorithm, run.trace, run.outcome);
      o = run.outcome;
    }
  } else if (algorithm == "param") {
    write_param_header(out, fmt);
    o = run_param(n, budget, [&](const ParamTraceRow& r) { write_param_row(out, fmt, r); });
  } else {
    write_unit_header(out, fmt);
    auto sink = [&](const UnitTraceRow& r) { write_unit_row(out, fmt, r); };
    o = algorithm == "unit" ? run_unit(n, budget, sink) : run_accelerated(n, budget, sink);
  }
  if (o.kind == OutcomeKind::StepLimit) return report_outcome(n, o, out, err);
  return kOk;
}

int cmd_isprime(const Natural& n, bool verify, StepBudget budget, std::ostream& out,
                std::ostream& err) {
  FactorOutcome o = classify(n, budget);
  if (o.kind == OutcomeKind::Invalid || o.kind == OutcomeKind::StepLimit)
    return report_outcome(n, o, out, err);
  const bool prime = o.kind == OutcomeKind::Prime;
  if (verify && prime != is_prime_ref(n)) {
    err << "error: reference primality test disagrees for " << n << '\n';
    return kBaselineFailure;
  }
  out << (prime ? "prime" : "composite") << '\n';
  return prime ? kOk : kComposite;
}

int cmd_avector(const Natural& n, bool min_support, StepBudget budget, std::ostream& out,
                std::ostream& err) {
  if (!runnable(n)) {
    int rc = report_outcome(n, classify(n, budget), out, err);
    if (rc != kOk) return rc;
    err << "error: A-vectors exist only for odd non-square composites\n";
    return kInvalidInput;
  }
  ParamRun run = run_param(n, budget);
  if (run.outcome.kind != OutcomeKind::CompositePair) {
    int rc = report_outcome(n, run.outcome, out, err);
    if (rc != kOk) return rc;
    err << "error: A-vectors exist only for odd non-square composites\n";
    return kInvalidInput;
  }
  AVector a = derive_avector(run.trace);
  out << "A = " << a.to_string() << " (k=" << a.step_count() << ")\n";
  if (min_support) {
    SparsityRecord rec = min_support_search(n, run.outcome.p, run.outcome.q);
    out << "min-support A = " << rec.witness.to_string() << " (support=" << rec.min_support
        << ", trace_support=" << a.support() << ")\n";
  }
  return kOk;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_scan(const Natural& lo, const Natural& hi, const std::string& out_path,
             const std::string& json_path, const ScanOptions& opts, std::ostream& out,
             std::ostream& err) {
  if (lo > hi) throw UsageError("--lo must not exceed --hi");
  if (!hi.to_u64()) throw UsageError("--hi must fit in 64 bits");
  SparsityReport report = scan_range(lo, hi, opts);

  auto write_to = [&](const std::string& path, bool as_json) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    if (as_json) f << to_json(report).dump(1) << '\n';
    else write_csv(f, report);
    if (!f) throw std::runtime_error("write to " + path + " failed");
  };

  if (out_path.empty() || out_path == "-") {
    write_csv(out, report);
    write_summary(err, report);
  } else {
    write_to(out_path, ends_with(out_path, ".json"));
    write_summary(out, report);
  }
  if (!json_path.empty()) write_to(json_path, true);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Difference-expression factoring toolkit", args.empty() ? "dexfactor" : args[0]};
  app.require_subcommand(1);

  std::string n_text;
  std::string algorithm = "param";
  std::string format = "tsv";
  std::optional<std::uint64_t> max_steps;
  bool verify = false;
  bool min_support = false;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("n", n_text, "Integer to examine (decimal)")->required();
  };
  auto add_steps = [&](CLI::App* sub) {
    sub->add_option("--max-steps", max_steps, "Iteration budget for the stepper");
  };

  auto* factor = app.add_subcommand("factor", "Print n = p * q or 'n is prime'");
  add_n(factor);
  factor->add_option("--algorithm", algorithm)
      ->check(CLI::IsMember({"param", "unit", "accel", "rho", "trial"}));
  add_steps(factor);

  auto* trace = app.add_subcommand("trace", "Print the iteration table of a stepper");
  add_n(trace);
  trace->add_option("--algorithm", algorithm)->check(CLI::IsMember({"param", "unit", "accel"}));
  trace->add_option("--format", format)->check(CLI::IsMember({"tsv", "csv", "json"}));
  add_steps(trace);

  auto* isprime = app.add_subcommand("isprime", "Primality verdict (exit 0 prime, 1 composite)");
  add_n(isprime);
  isprime->add_flag("--verify", verify, "Cross-check against the reference primality test");
  add_steps(isprime);

  auto* avector = app.add_subcommand("avector", "Print the A-vector of a parameterized run");
  add_n(avector);
  avector->add_flag("--min-support", min_support, "Also print a minimum-support A-vector");
  add_steps(avector);

  std::string lo_text, hi_text, out_path, json_path;
  ScanOptions scan_opts;
  auto* scan = app.add_subcommand("scan", "Minimum-support report over a range");
  scan->add_option("--lo", lo_text)->required();
  scan->add_option("--hi", hi_text)->required();
  scan->add_option("--out", out_path, "CSV (or .json) report path; '-' for stdout");
  scan->add_option("--json", json_path, "Additional JSON report path");
  scan->add_option("--max-candidates", scan_opts.max_candidates);
  scan->add_option("--node-budget", scan_opts.node_budget);
  scan->add_option("--threads", scan_opts.threads);

  std::string set = "semiprimes";
  unsigned bits = 24;
  std::uint64_t count = 50, seed = 7, bench_lo = 9, bench_hi = 9999;
  std::uint64_t bench_steps = 1'000'000;
  auto* bench = app.add_subcommand("bench", "Compare the stepper with trial division and rho");
  bench->add_option("--set", set)->check(CLI::IsMember({"semiprimes", "range"}));
  bench->add_option("--bits", bits);
  bench->add_option("--count", count);
  bench->add_option("--seed", seed);
  bench->add_option("--lo", bench_lo);
  bench->add_option("--hi", bench_hi);
  bench->add_option("--max-steps", bench_steps, "Stepper iteration budget");

  try {
    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    if (factor->parsed()) return cmd_factor(parse_n(n_text), algorithm, resolve_budget(max_steps), out, err);
    if (trace->parsed())
      return cmd_trace(parse_n(n_text), algorithm, *parse_trace_format(format),
                       resolve_budget(max_steps), out, err);
    if (isprime->parsed()) return cmd_isprime(parse_n(n_text), verify, resolve_budget(max_steps), out, err);
    if (avector->parsed())
      return cmd_avector(parse_n(n_text), min_support, resolve_budget(max_steps), out, err);
    if (scan->parsed())
      return cmd_scan(parse_n(lo_text), parse_n(hi_text), out_path, json_path, scan_opts, out, err);
    if (bench->parsed()) {
      std::vector<Natural> inputs = set == "semiprimes" ? generate_semiprimes(bits, count, seed)
                                                        : composite_range(bench_lo, bench_hi);
      BenchReport report = run_bench(inputs, bench_steps, seed);
      write_bench_table(out, report);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace dexfactor::cli
