#pragma once

// Minimum-support A-vectors.
//
// For a split n = p*q reached from start point m, any A-vector with
//   sum a_i = (m - p)/2 + 1   and   sum (2i + 2) a_i = q - m
// evaluates through the closed form to (p, q). The search below finds one
// with the fewest nonzero entries by trying support sizes 1, 2, 3, ... in
// order, so the first witness found is minimal.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "dexfactor/closedform.hpp"
#include "dexfactor/natarith.hpp"

namespace dexfactor {

class SearchBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A valid split admitted no A-vector, or a witness failed re-verification.
class DataIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SparsityRecord {
  Natural n;
  Natural p;
  Natural q;
  std::uint64_t k_steps = 0;  // (m - p)/2 + 1
  Natural target_sum;         // q - m
  std::optional<std::size_t> trace_support;
  std::size_t min_support = 0;
  AVector witness;
  std::uint64_t nodes = 0;
};

struct SearchOptions {
  std::optional<std::uint64_t> j_max;  // default (m - 1)/2
  std::uint64_t node_budget = 50'000'000;
};

// Requires p*q == n, n odd non-square >= 9, p odd and p <= isqrt(n) (throws
// std::invalid_argument). Throws SearchBudgetExceeded or DataIntegrityError.
// trace_support is left empty.
SparsityRecord min_support_search(const Natural& n, const Natural& p, const Natural& q,
                                  const SearchOptions& opts = {});

struct ScanOptions {
  std::uint64_t max_candidates = 100'000;  // odd non-square n values examined
  std::uint64_t node_budget = SearchOptions{}.node_budget;
  unsigned threads = 0;  // 0 selects hardware concurrency
};

struct SparsityReport {
  Natural lo;
  Natural hi;
  std::vector<SparsityRecord> records;  // ascending n
  std::map<std::size_t, std::uint64_t> histogram;  // min_support -> count
  std::size_t max_min_support = 0;
  std::uint64_t primes_skipped = 0;
  std::vector<Natural> budget_exceeded;  // n whose search ran out of nodes
  bool truncated = false;
  std::optional<Natural> resume_from;  // first unexamined n when truncated
};

// Every odd non-square composite in [lo, hi]. Requires lo <= hi and hi < 2^64.
SparsityReport scan_range(const Natural& lo, const Natural& hi, const ScanOptions& opts = {});

// Emitters re-verify every witness and throw DataIntegrityError on failure.
// CSV columns: n,p,q,k_steps,target_sum,trace_support,min_support,witness.
void write_csv(std::ostream& os, const SparsityReport& report);
nlohmann::json to_json(const SparsityReport& report);
void write_summary(std::ostream& os, const SparsityReport& report);

}  // namespace dexfactor
