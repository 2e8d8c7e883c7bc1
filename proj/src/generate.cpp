#include "hdpack/generate.hpp"

#include <algorithm>
#include <random>

#include "hdpack/transform.hpp"

namespace hdpack {

namespace {

// Bounded draws are hand-rolled on top of the standardized mt19937_64
// stream so instances are reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t below(std::int64_t n) {
    std::uint64_t bound = static_cast<std::uint64_t>(n);
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % bound);
  }

  std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct GenJob {
  std::int64_t id;
  int level;
  std::int64_t c;
  std::int64_t start;
  bool saved;
};

void check_split_config(const SplitGenConfig& config) {
  if (config.base_period < 1 || config.iterations < 0 || config.min_processing_time < 1 ||
      config.save_probability < 0 || config.save_probability > 1 ||
      config.divide_probability < 0 || config.divide_probability > 1) {
    fail(Errc::config_invalid, "invalid split generator configuration");
  }
  for (std::int64_t b : config.base_vector) {
    if (b < 2) fail(Errc::config_invalid, "base vector entries must be >= 2");
  }
}

GeneratedInstance run_split_scheme(const SplitGenConfig& config, bool modified) {
  check_split_config(config);
  std::vector<std::int64_t> periods{config.base_period};
  for (std::int64_t b : config.base_vector) periods.push_back(periods.back() * b);
  HarmonicPeriodSet ps = build_period_set(periods);
  int levels = ps.levels();

  Rng rng(config.seed);
  std::vector<GenJob> jobs{{1, 0, config.base_period, 0, false}};
  std::int64_t next_id = 2;

  auto divide = [&](std::size_t pick) -> bool {
    GenJob job = jobs[pick];
    if (job.level + 1 >= levels) return false;
    std::int64_t period = ps.periods[job.level];
    std::int64_t copies = ps.base[job.level];
    jobs.erase(jobs.begin() + static_cast<std::ptrdiff_t>(pick));
    for (std::int64_t j = 0; j < copies; ++j) {
      jobs.push_back({next_id++, job.level + 1, job.c, job.start + j * period, job.saved});
    }
    return true;
  };

  auto split = [&](std::size_t pick) -> bool {
    GenJob job = jobs[pick];
    std::int64_t c1, c2;
    if (config.random_split_point) {
      if (job.c < 2 * config.min_processing_time) return false;
      std::int64_t cut = rng.range(config.min_processing_time, job.c - config.min_processing_time);
      c1 = std::max(cut, job.c - cut);
      c2 = job.c - c1;
    } else {
      c1 = (job.c + 1) / 2;
      c2 = job.c / 2;
      if (c2 < config.min_processing_time) return false;
    }
    jobs.erase(jobs.begin() + static_cast<std::ptrdiff_t>(pick));
    jobs.push_back({next_id++, job.level, c1, job.start, false});
    jobs.push_back({next_id++, job.level, c2, job.start + c1, false});
    return true;
  };

  for (int it = 0; it < config.iterations; ++it) {
    std::size_t pick = static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(jobs.size())));
    GenJob& job = jobs[pick];
    if (modified && config.save_probability > 0 && !job.saved) {
      double ui = static_cast<double>(job.c) /
                  static_cast<double>(ps.periods[job.level]);
      if (rng.unit() < config.save_probability * ui) {
        job.saved = true;
        continue;
      }
    }
    if (job.saved) {
      divide(pick);  // saved jobs are exempt from splitting only
      continue;
    }
    if (rng.unit() < config.divide_probability) {
      if (!divide(pick)) split(pick);
    } else {
      if (!split(pick)) divide(pick);
    }
  }

  GeneratedInstance out;
  out.instance.period_set = std::move(ps);
  out.instance.name = config.name;
  for (const GenJob& job : jobs) {
    out.instance.jobs.push_back({job.id, job.c, job.level});
    out.certificate.starts[job.id] = job.start;
  }
  out.instance.check();
  return out;
}

}  // namespace

GeneratedInstance generate_split_scheme(const SplitGenConfig& config) {
  return run_split_scheme(config, false);
}

GeneratedInstance generate_modified_scheme(const SplitGenConfig& config) {
  if (config.save_probability <= 0) {
    fail(Errc::config_invalid, "modified scheme needs pi_save > 0");
  }
  return run_split_scheme(config, true);
}

namespace {

struct DifficultDraft {
  std::vector<Job> jobs;
  Packing packing;
  std::int64_t long_jobs = 0;
};

void build_difficult(Rng& rng, const HarmonicPeriodSet& ps, const DifficultGenConfig& config,
                     DifficultDraft& draft, int level, std::int64_t q, std::int64_t x_offset,
                     std::int64_t avail) {
  std::int64_t next_id = static_cast<std::int64_t>(draft.jobs.size()) + 1;
  if (level == ps.levels() - 1) {
    std::int64_t x = x_offset;
    std::int64_t rem = avail;
    while (rem > 0) {
      std::int64_t width = rem <= config.min_processing_time
                               ? rem
                               : rng.range(config.min_processing_time, rem);
      draft.jobs.push_back({next_id, width, level});
      draft.packing.placements[next_id] = Placement{x, q};
      if (width >= config.min_processing_time) ++draft.long_jobs;
      ++next_id;
      x += width;
      rem -= width;
    }
    return;
  }
  std::int64_t reserve = 0;
  if (avail >= 2 * config.min_processing_time) {
    reserve = rng.range(config.min_processing_time, avail - config.min_processing_time);
    draft.jobs.push_back({next_id, reserve, level});
    draft.packing.placements[next_id] = Placement{x_offset, q * ps.heights[level]};
    ++draft.long_jobs;
  }
  std::int64_t slots = ps.base[level];
  for (std::int64_t slot = 0; slot < slots; ++slot) {
    build_difficult(rng, ps, config, draft, level + 1, q * slots + slot, x_offset + reserve,
                    avail - reserve);
  }
}

}  // namespace

GeneratedInstance generate_difficult(const DifficultGenConfig& config) {
  if (config.levels < 2 || config.ratio < 2 || config.base_period < 1 ||
      config.min_processing_time < 1 || config.target_long_fraction < 0 ||
      config.target_long_fraction > 1 || config.max_resample < 1) {
    fail(Errc::config_invalid, "invalid difficult generator configuration");
  }
  std::vector<std::int64_t> periods;
  std::int64_t period = config.base_period;
  for (int k = 0; k < config.levels; ++k) {
    periods.push_back(period);
    period *= config.ratio;
  }
  HarmonicPeriodSet ps = build_period_set(periods);

  Rng rng(config.seed);
  DifficultDraft best;
  double best_fraction = -1;
  for (int attempt = 0; attempt < config.max_resample; ++attempt) {
    DifficultDraft draft;
    build_difficult(rng, ps, config, draft, 0, 0, 0, ps.width);
    double fraction = draft.jobs.empty()
                          ? 1.0
                          : static_cast<double>(draft.long_jobs) /
                                static_cast<double>(draft.jobs.size());
    if (fraction > best_fraction) {
      best = std::move(draft);
      best_fraction = fraction;
    }
    if (best_fraction >= config.target_long_fraction) break;
  }

  GeneratedInstance out;
  out.instance.period_set = std::move(ps);
  out.instance.jobs = std::move(best.jobs);
  out.instance.name = config.name;
  out.instance.check();
  out.certificate = packing_to_schedule(out.instance, best.packing);
  return out;
}

}  // namespace hdpack
