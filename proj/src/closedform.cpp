#include "dexfactor/closedform.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace dexfactor {

namespace {

// Guards derive_avector against traces whose eps values would need an
// absurdly long count vector (large primes end with eps close to n).
constexpr std::uint64_t kMaxIndex = std::uint64_t{1} << 26;

}  // namespace

AVector::AVector(std::vector<std::uint64_t> counts, Natural origin_m)
    : counts_(std::move(counts)), origin_m_(std::move(origin_m)) {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

AVector AVector::parse(std::string_view text, Natural origin_m) {
  std::vector<std::uint64_t> counts;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto field = text.substr(0, comma);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw ParseError("bad A-vector entry: '" + std::string(field) + "'");
    counts.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw ParseError("trailing comma in A-vector");
  }
  return AVector(std::move(counts), std::move(origin_m));
}

Natural AVector::step_count() const {
  Natural k;
  for (auto a : counts_) k += Natural(a);
  return k;
}

Natural AVector::weighted_sum() const {
  Natural s;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    s += Natural(2 * i + 2) * Natural(counts_[i]);
  return s;
}

std::size_t AVector::support() const {
  std::size_t s = 0;
  for (auto a : counts_) s += (a != 0);
  return s;
}

bool AVector::within_bin_bound() const {
  if (counts_.empty()) return true;
  if (origin_m_.is_zero()) return false;
  return Natural(counts_.size() - 1) <= (origin_m_ - Natural(1)) / Natural(2);
}

std::string AVector::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < counts_.size(); ++i) os << (i ? "," : "") << counts_[i];
  return os.str();
}

AVector derive_avector(std::span<const ParamTraceRow> trace) {
  if (trace.empty()) throw std::invalid_argument("derive_avector: empty trace");
  if (!trace.back().delta_y.is_zero())
    throw std::invalid_argument("derive_avector: trace did not terminate (last delta_y != 0)");

  std::vector<std::uint64_t> counts;
  for (const auto& row : trace) {
    if (row.eps.is_odd() || row.eps < Natural(2))
      throw std::invalid_argument("derive_avector: eps must be even and >= 2, got " +
                                  row.eps.to_string());
    auto half = (row.eps / Natural(2)).to_u64();
    if (!half || *half - 1 >= kMaxIndex)
      throw std::length_error("derive_avector: eps " + row.eps.to_string() + " too large");
    std::uint64_t i = *half - 1;
    if (counts.size() <= i) counts.resize(i + 1, 0);
    ++counts[i];
  }
  return AVector(std::move(counts), trace.front().x);
}

ClosedFormPoint eval_closed_form(const Natural& n, const AVector& a) {
  if (a.origin_m() != start_point(n))
    throw std::invalid_argument("eval_closed_form: origin " + a.origin_m().to_string() +
                                " is not the start point of " + n.to_string());
  ClosedFormPoint pt;
  pt.k = a.step_count();
  Natural top = a.origin_m() + Natural(2);
  Natural drop = Natural(2) * pt.k;
  if (drop >= top) throw std::out_of_range("eval_closed_form: x would fall below 1");
  pt.x = top - drop;
  pt.y = a.origin_m() + a.weighted_sum();
  pt.residual = SignedInt(n) - SignedInt(pt.x * pt.y);
  return pt;
}

bool verify_avector(const Natural& n, const AVector& a) {
  ClosedFormPoint pt;
  try {
    pt = eval_closed_form(n, a);
  } catch (const std::out_of_range&) {
    return false;
  }
  Natural r = isqrt(n);
  return pt.residual.is_zero() && pt.x <= r && r <= pt.y;
}

}  // namespace dexfactor
