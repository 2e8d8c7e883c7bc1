#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdpack {

enum class Errc {
  empty_periods,
  non_harmonic,
  out_of_range,
  digit_out_of_range,
  k_out_of_range,
  invalid_placement,
  job_set_mismatch,
  invalid_schedule,
  invalid_packing,
  would_overflow,
  dummies_present,
  too_large,
  config_invalid,
  parse_error,
  schema_violation,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

// Exact rational, kept reduced with positive denominator. Utilizations are
// compared exactly; U = 1 sits on the feasibility knife edge and floating
// point would misclassify it.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

bool operator<(const Rational& a, const Rational& b);
inline bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

// A harmonic period set T_0 < T_1 < ... < T_{r-1} where every T_k is an
// integer multiple of T_{k-1}, together with the derived quantities used by
// the packing view: bin width w = T_0, row ratios b_k, cumulative products
// B_k, rectangle heights H_k = B_{r-1}/B_k and the bin height H = B_{r-1}.
struct HarmonicPeriodSet {
  std::vector<std::int64_t> periods;
  std::vector<std::int64_t> base;        // b_1..b_{r-1}, each >= 2
  std::vector<std::int64_t> cumulative;  // B_0 = 1, ..., B_{r-1}
  std::vector<std::int64_t> heights;     // H_0 = H, ..., H_{r-1} = 1
  std::int64_t width = 0;                // w = T_0
  std::int64_t bin_height = 1;           // H
  std::int64_t hyperperiod = 0;          // T_{r-1}

  int levels() const { return static_cast<int>(periods.size()); }
  int level_of_period(std::int64_t period) const;  // -1 when absent
};

// Builds the period set from an arbitrary list: deduplicates, sorts, and
// validates that consecutive ratios are integral.
HarmonicPeriodSet build_period_set(std::vector<std::int64_t> periods);

// Digits of a value in the mixed-radix system given by a base vector,
// least significant digit first.
struct MixedRadixDigits {
  std::vector<std::int64_t> digits;
  std::vector<std::int64_t> base;
};

std::int64_t radix_product(std::span<const std::int64_t> base);
MixedRadixDigits decompose(std::int64_t y, std::span<const std::int64_t> base);
std::int64_t compose(const MixedRadixDigits& digits);

// Reverses the k first components of a base vector.
std::vector<std::int64_t> bflip(std::span<const std::int64_t> base, int k);

// Digit reversal: the k least significant digits of y are reversed and the
// result is read in the base vector bflip(base, k). Identity for k <= 1 and
// an involution together with the flipped base.
std::int64_t flip(std::int64_t y, int k, std::span<const std::int64_t> base);

struct Job {
  std::int64_t id = 0;
  std::int64_t processing_time = 0;  // c_i, integer time units
  int period_index = 0;              // p_i, index into the period set
};

struct Instance {
  HarmonicPeriodSet period_set;
  std::vector<Job> jobs;
  std::string name;

  // Sum of c_i / T_{p_i}, exact.
  Rational utilization() const;
  std::int64_t period_of(const Job& job) const { return period_set.periods[job.period_index]; }
  std::int64_t rect_height(const Job& job) const { return period_set.heights[job.period_index]; }
  const Job* find_job(std::int64_t id) const;

  // Checks id uniqueness and per-job bounds; throws schema_violation.
  void check() const;
};

Instance make_instance(std::vector<std::int64_t> periods,
                       std::vector<Job> jobs,
                       std::string name = {});

}  // namespace hdpack
