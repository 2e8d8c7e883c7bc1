#include "hdpack/core.hpp"

#include <algorithm>
#include <numeric>

namespace hdpack {

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(Errc::out_of_range, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

int HarmonicPeriodSet::level_of_period(std::int64_t period) const {
  auto it = std::lower_bound(periods.begin(), periods.end(), period);
  if (it == periods.end() || *it != period) return -1;
  return static_cast<int>(it - periods.begin());
}

HarmonicPeriodSet build_period_set(std::vector<std::int64_t> periods) {
  if (periods.empty()) fail(Errc::empty_periods, "period list is empty");
  for (std::int64_t t : periods) {
    if (t <= 0) fail(Errc::non_harmonic, "periods must be positive, got " + std::to_string(t));
  }
  std::sort(periods.begin(), periods.end());
  periods.erase(std::unique(periods.begin(), periods.end()), periods.end());

  HarmonicPeriodSet ps;
  ps.periods = std::move(periods);
  ps.width = ps.periods.front();
  ps.hyperperiod = ps.periods.back();
  ps.cumulative.push_back(1);
  for (std::size_t k = 1; k < ps.periods.size(); ++k) {
    std::int64_t lo = ps.periods[k - 1];
    std::int64_t hi = ps.periods[k];
    if (hi % lo != 0) {
      fail(Errc::non_harmonic, "period " + std::to_string(hi) + " is not a multiple of " +
                                   std::to_string(lo));
    }
    ps.base.push_back(hi / lo);
    ps.cumulative.push_back(ps.cumulative.back() * ps.base.back());
  }
  ps.bin_height = ps.cumulative.back();
  for (std::size_t k = 0; k < ps.periods.size(); ++k) {
    ps.heights.push_back(ps.bin_height / ps.cumulative[k]);
  }
  return ps;
}

std::int64_t radix_product(std::span<const std::int64_t> base) {
  std::int64_t h = 1;
  for (std::int64_t b : base) h *= b;
  return h;
}

MixedRadixDigits decompose(std::int64_t y, std::span<const std::int64_t> base) {
  if (y < 0 || y >= radix_product(base)) {
    fail(Errc::out_of_range, "value " + std::to_string(y) + " outside [0, H)");
  }
  MixedRadixDigits d;
  d.base.assign(base.begin(), base.end());
  d.digits.reserve(base.size());
  for (std::int64_t b : base) {
    d.digits.push_back(y % b);
    y /= b;
  }
  return d;
}

std::int64_t compose(const MixedRadixDigits& digits) {
  if (digits.digits.size() != digits.base.size()) {
    fail(Errc::digit_out_of_range, "digit/base length mismatch");
  }
  std::int64_t value = 0;
  std::int64_t mul = 1;
  for (std::size_t i = 0; i < digits.digits.size(); ++i) {
    std::int64_t d = digits.digits[i];
    if (d < 0 || d >= digits.base[i]) {
      fail(Errc::digit_out_of_range,
           "digit " + std::to_string(d) + " out of range for base " +
               std::to_string(digits.base[i]));
    }
    value += d * mul;
    mul *= digits.base[i];
  }
  return value;
}

std::vector<std::int64_t> bflip(std::span<const std::int64_t> base, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > base.size()) {
    fail(Errc::k_out_of_range, "bflip index " + std::to_string(k));
  }
  std::vector<std::int64_t> out(base.begin(), base.end());
  std::reverse(out.begin(), out.begin() + k);
  return out;
}

std::int64_t flip(std::int64_t y, int k, std::span<const std::int64_t> base) {
  if (k < 0 || static_cast<std::size_t>(k) > base.size()) {
    fail(Errc::k_out_of_range, "flip index " + std::to_string(k));
  }
  MixedRadixDigits d = decompose(y, base);
  std::reverse(d.digits.begin(), d.digits.begin() + k);
  d.base = bflip(base, k);
  return compose(d);
}

Rational Instance::utilization() const {
  // Common denominator w * H = hyperperiod; U_i contributes c_i * H_{p_i}.
  std::int64_t num = 0;
  for (const Job& job : jobs) num += job.processing_time * period_set.heights[job.period_index];
  return Rational::of(num, period_set.width * period_set.bin_height);
}

const Job* Instance::find_job(std::int64_t id) const {
  for (const Job& job : jobs) {
    if (job.id == id) return &job;
  }
  return nullptr;
}

void Instance::check() const {
  std::vector<std::int64_t> ids;
  ids.reserve(jobs.size());
  for (const Job& job : jobs) {
    if (job.period_index < 0 || job.period_index >= period_set.levels()) {
      fail(Errc::schema_violation, "job " + std::to_string(job.id) + " has invalid period index");
    }
    if (job.processing_time < 1 || job.processing_time > period_of(job)) {
      fail(Errc::schema_violation, "job " + std::to_string(job.id) + " has processing time " +
                                       std::to_string(job.processing_time) +
                                       " outside [1, period]");
    }
    ids.push_back(job.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    fail(Errc::schema_violation, "duplicate job ids");
  }
}

Instance make_instance(std::vector<std::int64_t> periods, std::vector<Job> jobs,
                       std::string name) {
  Instance inst;
  inst.period_set = build_period_set(std::move(periods));
  inst.jobs = std::move(jobs);
  inst.name = std::move(name);
  inst.check();
  return inst;
}

}  // namespace hdpack
