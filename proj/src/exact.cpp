#include "hdpack/exact.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "hdpack/subbin_tree.hpp"
#include "hdpack/transform.hpp"

namespace hdpack {

namespace {

using Clock = std::chrono::steady_clock;

struct SearchState {
  const Instance* instance;
  const ExactOptions* options;
  SubBinTree tree;
  std::vector<Job> rects;            // height desc, width desc, id asc
  std::vector<std::int64_t> suffix_area;
  std::vector<std::int64_t> suffix_min_width;
  std::int64_t slack;                // bin area minus total rectangle area
  std::int64_t nodes = 0;
  std::int64_t node_limit;
  Clock::time_point start;
  std::optional<double> time_limit;
  bool aborted = false;

  explicit SearchState(const Instance& inst) : instance(&inst), tree(inst.period_set) {}

  bool out_of_budget() {
    if (node_limit >= 0 && nodes > node_limit) return true;
    if (time_limit && (nodes & 255) == 0) {
      if (std::chrono::duration<double>(Clock::now() - start).count() > *time_limit) return true;
    }
    return false;
  }

  // Area permanently unusable at this level: sub-bins narrower than every
  // remaining rectangle. Sound here because sub-bins of the current level
  // still have empty subtrees.
  std::int64_t frozen_waste(std::size_t index) {
    int level = rects[index].period_index;
    std::int64_t min_width = suffix_min_width[index];
    std::int64_t waste = 0;
    for (auto [count, residual] : tree.residual_groups(level)) {
      if (residual > 0 && residual < min_width) {
        waste += count * residual * instance->period_set.heights[level];
      }
    }
    return waste;
  }

  bool dfs(std::size_t index) {
    ++nodes;
    if (out_of_budget()) {
      aborted = true;
      return false;
    }
    if (index == rects.size()) return true;
    const Job& rect = rects[index];
    int level = rect.period_index;
    if (options->waste_bound &&
        (index == 0 || rects[index - 1].period_index != level)) {
      if (frozen_waste(index) > slack) return false;
    }
    const HarmonicPeriodSet& ps = instance->period_set;
    std::int64_t bins = ps.cumulative[level];
    std::int64_t seen_empty_parent = -1;
    for (std::int64_t q = 0; q < bins; ++q) {
      if (options->symmetry_breaking && tree.load(level, q) == 0) {
        std::int64_t parent = level > 0 ? q / ps.base[level - 1] : 0;
        if (parent == seen_empty_parent) continue;
        seen_empty_parent = parent;
      }
      if (!tree.can_fit(level, q, rect.processing_time)) continue;
      tree.insert(level, q, rect.id, rect.processing_time);
      if (dfs(index + 1)) return true;
      tree.remove_last(level, q);
      if (aborted) return false;
    }
    return false;
  }
};

}  // namespace

ExactOutcome solve_exact(const Instance& instance, const SearchBudget& budget,
                         const ExactOptions& options) {
  auto start = Clock::now();
  instance.check();
  ExactOutcome outcome;

  Rational u = instance.utilization();
  if (Rational::of(1, 1) < u) {
    outcome.status = ExactStatus::infeasible;
    outcome.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    return outcome;
  }

  SearchState state(instance);
  state.options = &options;
  state.rects = instance.jobs;
  std::sort(state.rects.begin(), state.rects.end(), [](const Job& a, const Job& b) {
    if (a.period_index != b.period_index) return a.period_index < b.period_index;
    if (a.processing_time != b.processing_time) return a.processing_time > b.processing_time;
    return a.id < b.id;
  });
  std::size_t n = state.rects.size();
  state.suffix_area.assign(n + 1, 0);
  state.suffix_min_width.assign(n + 1, instance.period_set.width + 1);
  for (std::size_t i = n; i-- > 0;) {
    const Job& r = state.rects[i];
    state.suffix_area[i] =
        state.suffix_area[i + 1] + r.processing_time * instance.rect_height(r);
    state.suffix_min_width[i] = std::min(state.suffix_min_width[i + 1], r.processing_time);
  }
  state.slack =
      instance.period_set.width * instance.period_set.bin_height - state.suffix_area[0];
  state.node_limit = budget.nodes.value_or(-1);
  state.time_limit = budget.seconds;
  state.start = start;

  bool found = state.dfs(0);
  outcome.nodes = state.nodes;
  outcome.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
  if (found) {
    outcome.status = ExactStatus::feasible;
    outcome.schedule = packing_to_schedule(instance, state.tree.to_packing());
  } else {
    outcome.status = state.aborted ? ExactStatus::unknown : ExactStatus::infeasible;
  }
  return outcome;
}

ExactOutcome brute_force_enumerate(const Instance& instance, std::int64_t candidate_cap) {
  auto start = Clock::now();
  instance.check();
  const HarmonicPeriodSet& ps = instance.period_set;

  std::vector<Job> jobs = instance.jobs;
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.period_index != b.period_index) return a.period_index < b.period_index;
    if (a.processing_time != b.processing_time) return a.processing_time > b.processing_time;
    return a.id < b.id;
  });

  __int128 combinations = 1;
  for (const Job& job : jobs) {
    std::int64_t u_choices = ps.width - job.processing_time + 1;
    if (u_choices <= 0) {
      ExactOutcome outcome;
      outcome.status = ExactStatus::infeasible;
      outcome.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
      return outcome;
    }
    combinations *= static_cast<__int128>(u_choices) * ps.cumulative[job.period_index];
    if (combinations > candidate_cap) {
      fail(Errc::too_large, "brute-force candidate space exceeds the cap");
    }
  }

  ExactOutcome outcome;
  std::vector<std::int64_t> starts(jobs.size(), 0);
  std::int64_t nodes = 0;

  auto dfs = [&](auto&& self, std::size_t index) -> bool {
    if (index == jobs.size()) return true;
    const Job& job = jobs[index];
    for (std::int64_t v = 0; v < ps.cumulative[job.period_index]; ++v) {
      for (std::int64_t u = 0; u + job.processing_time <= ps.width; ++u) {
        ++nodes;
        std::int64_t s = u + v * ps.width;
        bool clash = false;
        for (std::size_t e = 0; e < index && !clash; ++e) {
          clash = jobs_collide(jobs[e], starts[e], job, s, ps);
        }
        if (clash) continue;
        starts[index] = s;
        if (self(self, index + 1)) return true;
      }
    }
    return false;
  };

  bool found = dfs(dfs, 0);
  outcome.nodes = nodes;
  outcome.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
  if (found) {
    outcome.status = ExactStatus::feasible;
    Schedule schedule;
    for (std::size_t i = 0; i < jobs.size(); ++i) schedule.starts[jobs[i].id] = starts[i];
    outcome.schedule = std::move(schedule);
  } else {
    outcome.status = ExactStatus::infeasible;
  }
  return outcome;
}

std::string export_bin_model(const Instance& instance) {
  instance.check();
  const HarmonicPeriodSet& ps = instance.period_set;
  std::ostringstream out;
  out << "HD2D w=" << ps.width << " H=" << ps.bin_height << " heights=";
  for (int k = 0; k < ps.levels(); ++k) {
    if (k) out << ',';
    out << ps.heights[k];
  }
  out << '\n';

  std::vector<Job> jobs = instance.jobs;
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
  for (const Job& job : jobs) {
    out << "rect " << job.id << ' ' << job.processing_time << ' ' << instance.rect_height(job)
        << '\n';
  }
  for (int k = 0; k < ps.levels(); ++k) {
    out << "pack k=" << k << " height=" << ps.heights[k] << " subbins=" << ps.cumulative[k]
        << " rects=";
    bool first = true;
    for (const Job& job : jobs) {
      if (job.period_index != k) continue;
      if (!first) out << ',';
      out << job.id;
      first = false;
    }
    out << '\n';
  }
  for (std::int64_t row = 0; row < ps.bin_height; ++row) {
    out << "row " << row << ": sum loads <= " << ps.width << '\n';
  }
  return out.str();
}

}  // namespace hdpack
