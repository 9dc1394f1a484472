#include "dexfactor/sparsity.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "dexfactor/steppers.hpp"

namespace dexfactor {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 need_u64(const Natural& v, const char* what) {
  auto r = v.to_u64();
  if (!r) throw std::invalid_argument(std::string(what) + " exceeds 64 bits");
  return *r;
}

// Support-size-ordered search in halved units: pick `items` values from
// {1, ..., max_value} (value u stands for eps = 2u) summing to `total`.
class SupportSearch {
 public:
  SupportSearch(u64 items, u64 total, u64 max_value, u64 node_budget)
      : items_(items), total_(total), max_value_(max_value), budget_(node_budget) {}

  // Fills counts (indexed by value - 1) for the smallest feasible support.
  std::optional<std::vector<u64>> run() {
    if (items_ == 0 || total_ < items_ || static_cast<u128>(items_) * max_value_ < total_)
      return std::nullopt;
    const u64 max_support = std::min(items_, max_value_);
    for (u64 s = 1; s <= max_support; ++s) {
      chosen_.clear();
      if (choose(1, s, 0)) {
        std::vector<u64> counts(chosen_.back(), 0);
        for (std::size_t i = 0; i < chosen_.size(); ++i) counts[chosen_[i] - 1] = 1 + extra_[i];
        return counts;
      }
    }
    return std::nullopt;
  }

  u64 nodes() const { return nodes_; }

 private:
  void tick() {
    if (++nodes_ > budget_) throw SearchBudgetExceeded("min-support search exceeded node budget");
  }

  // Extend chosen_ to `size` values, smallest index first.
  bool choose(u64 first, u64 size, u64 reserved_sum) {
    if (chosen_.size() == size) {
      tick();
      const u64 rest_items = items_ - size;
      if (reserved_sum > total_) return false;
      return distribute(rest_items, total_ - reserved_sum);
    }
    const u64 remaining = size - chosen_.size();
    for (u64 v = first; v + remaining - 1 <= max_value_; ++v) {
      // the cheapest completion already overshoots
      const u64 smallest = chosen_.empty() ? v : chosen_.front();
      u128 min_sum = static_cast<u128>(reserved_sum) + static_cast<u128>(v) * remaining +
                     static_cast<u128>(remaining) * (remaining - 1) / 2 +
                     static_cast<u128>(items_ - size) * smallest;
      if (min_sum > total_) break;
      chosen_.push_back(v);
      if (choose(v + 1, size, reserved_sum + v)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  // Spread `items` further copies over chosen_ so they add up to `sum`.
  bool distribute(u64 items, u64 sum) {
    extra_.assign(chosen_.size(), 0);
    return spread(0, items, sum);
  }

  bool spread(std::size_t idx, u64 items, u64 sum) {
    const std::size_t last = chosen_.size() - 1;
    if (idx == last) {
      if (static_cast<u128>(items) * chosen_[idx] != sum) return false;
      extra_[idx] = items;
      return true;
    }
    if (idx + 1 == last) {
      // b*(v2 - v1) = sum - items*v1 with 0 <= b <= items
      const u64 v1 = chosen_[idx], v2 = chosen_[last];
      const u128 base = static_cast<u128>(items) * v1;
      if (base > sum) return false;
      const u128 rhs = sum - base;
      if (rhs % (v2 - v1) != 0) return false;
      const u128 b = rhs / (v2 - v1);
      if (b > items) return false;
      extra_[idx] = items - static_cast<u64>(b);
      extra_[last] = static_cast<u64>(b);
      return true;
    }
    const u64 lo_v = chosen_[idx + 1], hi_v = chosen_[last];
    for (u64 c = 0; c <= items; ++c) {
      tick();
      const u128 used = static_cast<u128>(c) * chosen_[idx];
      if (used > sum) break;
      const u64 left = items - c;
      const u128 rest = sum - used;
      if (static_cast<u128>(left) * lo_v > rest || static_cast<u128>(left) * hi_v < rest) continue;
      extra_[idx] = c;
      if (spread(idx + 1, left, static_cast<u64>(rest))) return true;
    }
    return false;
  }

  u64 items_;
  u64 total_;
  u64 max_value_;
  u64 budget_;
  u64 nodes_ = 0;
  std::vector<u64> chosen_;
  std::vector<u64> extra_;
};

void verify_record(const SparsityRecord& r) {
  if (!verify_avector(r.n, r.witness) || r.witness.support() != r.min_support)
    throw DataIntegrityError("witness " + r.witness.to_string() + " does not verify for n = " +
                             r.n.to_string());
  if (r.trace_support && r.min_support > *r.trace_support)
    throw DataIntegrityError("min_support exceeds trace_support for n = " + r.n.to_string());
}

std::string csv_quote(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace

SparsityRecord min_support_search(const Natural& n, const Natural& p, const Natural& q,
                                  const SearchOptions& opts) {
  if (p * q != n) throw std::invalid_argument("min_support_search: p*q != n");
  if (p.is_even() || p > isqrt(n))
    throw std::invalid_argument("min_support_search: p must be odd and <= isqrt(n)");
  const Natural m = start_point(n);
  if (is_perfect_square(n)) throw std::invalid_argument("min_support_search: n is a perfect square");

  SparsityRecord rec;
  rec.n = n;
  rec.p = p;
  rec.q = q;
  const Natural k_steps = (m - p) / Natural(2) + Natural(1);
  rec.k_steps = need_u64(k_steps, "k_steps");
  rec.target_sum = q - m;

  const u64 j_max = opts.j_max.value_or(need_u64((m - Natural(1)) / Natural(2), "j_max"));
  SupportSearch search(rec.k_steps, need_u64(rec.target_sum / Natural(2), "target_sum"),
                       j_max + 1, opts.node_budget);
  auto counts = search.run();
  rec.nodes = search.nodes();
  if (!counts)
    throw DataIntegrityError("no A-vector satisfies the constraints for n = " + n.to_string());

  rec.witness = AVector(std::move(*counts), m);
  rec.min_support = rec.witness.support();
  verify_record(rec);
  return rec;
}

SparsityReport scan_range(const Natural& lo, const Natural& hi, const ScanOptions& opts) {
  if (lo > hi) throw std::invalid_argument("scan_range: lo > hi");
  const u64 hi64 = need_u64(hi, "hi");
  u64 first = std::max<u64>(need_u64(lo, "lo"), 9);
  if (first % 2 == 0) ++first;

  SparsityReport report;
  report.lo = lo;
  report.hi = hi;

  std::vector<u64> candidates;
  for (u64 v = first; v <= hi64; v += 2) {
    if (is_perfect_square(Natural(v))) continue;
    if (candidates.size() == opts.max_candidates) {
      report.truncated = true;
      report.resume_from = Natural(v);
      break;
    }
    candidates.push_back(v);
    if (hi64 - v < 2) break;
  }

  enum class Slot { Empty, Record, Prime, OverBudget };
  std::vector<Slot> kinds(candidates.size(), Slot::Empty);
  std::vector<SparsityRecord> slots(candidates.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      try {
        const Natural n(candidates[i]);
        ParamRun run = run_param(n);
        if (run.outcome.kind == OutcomeKind::Prime) {
          kinds[i] = Slot::Prime;
          continue;
        }
        if (run.outcome.kind != OutcomeKind::CompositePair)
          throw DataIntegrityError("run_param did not finish for n = " + n.to_string());
        SearchOptions so;
        so.node_budget = opts.node_budget;
        try {
          slots[i] = min_support_search(n, run.outcome.p, run.outcome.q, so);
        } catch (const SearchBudgetExceeded&) {
          kinds[i] = Slot::OverBudget;
          continue;
        }
        slots[i].trace_support = derive_avector(run.trace).support();
        verify_record(slots[i]);
        kinds[i] = Slot::Record;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = candidates.size();
      }
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, candidates.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    switch (kinds[i]) {
      case Slot::Record:
        report.histogram[slots[i].min_support]++;
        report.max_min_support = std::max(report.max_min_support, slots[i].min_support);
        report.records.push_back(std::move(slots[i]));
        break;
      case Slot::Prime: ++report.primes_skipped; break;
      case Slot::OverBudget: report.budget_exceeded.emplace_back(candidates[i]); break;
      case Slot::Empty: throw std::logic_error("scan_range: unprocessed candidate");
    }
  }
  return report;
}

void write_csv(std::ostream& os, const SparsityReport& report) {
  os << "n,p,q,k_steps,target_sum,trace_support,min_support,witness\n";
  for (const auto& r : report.records) {
    verify_record(r);
    os << r.n << ',' << r.p << ',' << r.q << ',' << r.k_steps << ',' << r.target_sum << ',';
    if (r.trace_support) os << *r.trace_support;
    os << ',' << r.min_support << ',' << csv_quote(r.witness.to_string()) << '\n';
  }
  for (const auto& n : report.budget_exceeded) os << "# budget exceeded: n=" << n << '\n';
  if (report.truncated)
    os << "# truncated: resume from n=" << report.resume_from->to_string() << '\n';
}

nlohmann::json to_json(const SparsityReport& report) {
  using nlohmann::json;
  json recs = json::array();
  for (const auto& r : report.records) {
    verify_record(r);
    recs.push_back({
        {"n", r.n.to_string()},
        {"p", r.p.to_string()},
        {"q", r.q.to_string()},
        {"k_steps", r.k_steps},
        {"target_sum", r.target_sum.to_string()},
        {"trace_support", r.trace_support ? json(*r.trace_support) : json(nullptr)},
        {"min_support", r.min_support},
        {"witness", r.witness.counts()},
        {"log2_n", r.n.bit_length() - 1},
    });
  }
  json hist = json::object();
  for (auto [support, count] : report.histogram) hist[std::to_string(support)] = count;
  json over = json::array();
  for (const auto& n : report.budget_exceeded) over.push_back(n.to_string());
  return {
      {"lo", report.lo.to_string()},
      {"hi", report.hi.to_string()},
      {"records", std::move(recs)},
      {"histogram", std::move(hist)},
      {"max_min_support", report.max_min_support},
      {"primes_skipped", report.primes_skipped},
      {"budget_exceeded", std::move(over)},
      {"truncated", report.truncated},
      {"resume_from", report.resume_from ? json(report.resume_from->to_string()) : json(nullptr)},
  };
}

void write_summary(std::ostream& os, const SparsityReport& report) {
  os << "range [" << report.lo << ", " << report.hi << "]: " << report.records.size()
     << " composites, " << report.primes_skipped << " primes skipped\n";
  for (auto [support, count] : report.histogram)
    os << "  min_support " << support << ": " << count << '\n';
  os << "max min_support: " << report.max_min_support;
  if (!report.records.empty()) {
    os << " (floor(log2 n) spans " << report.records.front().n.bit_length() - 1 << ".."
       << report.records.back().n.bit_length() - 1 << ')';
  }
  os << '\n';
  if (!report.budget_exceeded.empty())
    os << "budget exceeded for " << report.budget_exceeded.size() << " values\n";
  if (report.truncated) os << "TRUNCATED: resume from n=" << *report.resume_from << '\n';
}

}  // namespace dexfactor
