#pragma once

// A-vector algebra for the closed form of run_param.
//
// a_i counts the rows of a run that used eps = 2i + 2. With k = sum a_i,
//   x = m - 2k + 2,   y = m + sum (2i + 2) a_i,   residual = n - x*y,
// reproduces the terminal state of the run from its start point m alone.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dexfactor/natarith.hpp"
#include "dexfactor/steppers.hpp"

namespace dexfactor {

class AVector {
 public:
  AVector() = default;
  // Trailing zero counts are dropped.
  AVector(std::vector<std::uint64_t> counts, Natural origin_m);

  // Comma-separated decimal counts, e.g. "6,6,4,1". Empty text is the empty
  // vector. Throws ParseError.
  static AVector parse(std::string_view text, Natural origin_m);

  const std::vector<std::uint64_t>& counts() const { return counts_; }
  const Natural& origin_m() const { return origin_m_; }
  bool empty() const { return counts_.empty(); }

  // k = sum a_i.
  Natural step_count() const;
  // sum (2i + 2) a_i.
  Natural weighted_sum() const;
  // Number of nonzero entries.
  std::size_t support() const;
  // Largest index j <= (origin_m - 1)/2. Trace-derived vectors may exceed it.
  bool within_bin_bound() const;

  std::string to_string() const;

  friend bool operator==(const AVector&, const AVector&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  Natural origin_m_;
};

struct ClosedFormPoint {
  Natural k;
  Natural x;
  Natural y;
  SignedInt residual;  // n - x*y
};

// Rows of a terminated run_param trace (last delta_y == 0). Throws
// std::invalid_argument for an empty or unterminated trace.
AVector derive_avector(std::span<const ParamTraceRow> trace);

// Requires a.origin_m() == start_point(n) (std::invalid_argument) and
// x >= 1 (std::out_of_range). The empty vector evaluates to the pre-step
// state x = m + 2, y = m.
ClosedFormPoint eval_closed_form(const Natural& n, const AVector& a);

// residual == 0 and 1 <= x <= isqrt(n) <= y. Never throws on out-of-range x.
bool verify_avector(const Natural& n, const AVector& a);

}  // namespace dexfactor
