#include "hdpack/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "hdpack/transform.hpp"

namespace hdpack {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared item order: width descending, real before dummy, id ascending.
bool item_before(const PoolItem& a, const PoolItem& b) {
  if (a.width != b.width) return a.width > b.width;
  if (a.dummy != b.dummy) return !a.dummy;
  return a.id < b.id;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::tff: return "tff";
    case Method::sff: return "sff";
    case Method::sbf: return "sbf";
    case Method::lpt: return "lpt";
    case Method::rgff_pes: return "rgff-pes";
    case Method::rgff_opt: return "rgff-opt";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::vector<Job> order_jobs(const Instance& instance) {
  std::vector<Job> jobs = instance.jobs;
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.period_index != b.period_index) return a.period_index < b.period_index;
    if (a.processing_time != b.processing_time) return a.processing_time > b.processing_time;
    return a.id < b.id;
  });
  return jobs;
}

namespace {

HeuristicOutcome finish_solved(SubBinTree& tree, const Instance& instance,
                               HeuristicOutcome outcome, Clock::time_point start) {
  outcome.solved = true;
  outcome.schedule = packing_to_schedule(instance, tree.to_packing());
  outcome.elapsed_s = seconds_since(start);
  return outcome;
}

template <typename PickSubBin>
HeuristicOutcome run_baseline(const Instance& instance, PickSubBin pick) {
  auto start = Clock::now();
  instance.check();
  SubBinTree tree(instance.period_set);
  HeuristicOutcome outcome;
  for (const Job& job : order_jobs(instance)) {
    std::optional<std::int64_t> q = pick(tree, job.period_index, job.processing_time);
    if (!q) {
      outcome.failed_job = job.id;
      outcome.elapsed_s = seconds_since(start);
      return outcome;
    }
    PlacedRectangle placed = tree.insert(job.period_index, *q, job.id, job.processing_time);
    outcome.trace.push_back({job.id, placed.level, placed.q, placed.x});
  }
  return finish_solved(tree, instance, std::move(outcome), start);
}

}  // namespace

HeuristicOutcome solve_tff(const Instance& instance) {
  const HarmonicPeriodSet& ps = instance.period_set;
  return run_baseline(instance,
                      [&ps](SubBinTree& tree, int level, std::int64_t width)
                          -> std::optional<std::int64_t> {
                        // Smallest schedule row v first; q = flip(v) is the
                        // packing row of that v.
                        for (std::int64_t v = 0; v < ps.cumulative[level]; ++v) {
                          std::int64_t q = flip(v, level, ps.base);
                          if (tree.can_fit(level, q, width)) return q;
                        }
                        return std::nullopt;
                      });
}

HeuristicOutcome solve_sff(const Instance& instance) {
  return run_baseline(instance, [](SubBinTree& tree, int level, std::int64_t width) {
    return tree.first_fit(level, width);
  });
}

HeuristicOutcome solve_sbf(const Instance& instance) {
  return run_baseline(instance, [](SubBinTree& tree, int level, std::int64_t width) {
    return tree.best_fit(level, width);
  });
}

HeuristicOutcome solve_lpt(const Instance& instance) {
  return run_baseline(instance,
                      [](SubBinTree& tree, int level, std::int64_t width)
                          -> std::optional<std::int64_t> {
                        std::int64_t q = tree.least_loaded(level);
                        if (tree.can_fit(level, q, width)) return q;
                        return std::nullopt;
                      });
}

DummyBuild build_dummies_pessimistic(std::vector<PoolItem> items, std::int64_t ratio) {
  std::sort(items.begin(), items.end(), item_before);
  DummyBuild build;
  for (const PoolItem& item : items) {
    std::size_t best = build.bags.size();
    std::int64_t best_residual = 0;
    for (std::size_t i = 0; i < build.bags.size(); ++i) {
      std::int64_t residual = build.bags[i].capacity - build.bags[i].fill;
      if (residual >= item.width && (best == build.bags.size() || residual < best_residual)) {
        best = i;
        best_residual = residual;
      }
    }
    if (best == build.bags.size()) {
      std::size_t dummy_index = build.dummies.size();
      build.dummies.push_back({static_cast<std::int64_t>(dummy_index), item.width});
      for (std::int64_t i = 0; i < ratio; ++i) {
        build.bags.push_back({item.width, 0, dummy_index, {}});
      }
      best = build.bags.size() - ratio;
    }
    build.bags[best].fill += item.width;
    build.bags[best].pieces.push_back({item.id, item.dummy, item.width});
  }
  return build;
}

DummyBuild build_dummies_optimistic(std::vector<PoolItem> items, std::int64_t ratio) {
  struct Fragment {
    std::int64_t width;
    bool dummy;
    std::int64_t id;
    int generation;
  };
  auto frag_before = [](const Fragment& a, const Fragment& b) {
    if (a.width != b.width) return a.width > b.width;
    if (a.dummy != b.dummy) return !a.dummy;
    if (a.id != b.id) return a.id < b.id;
    return a.generation < b.generation;
  };
  std::set<Fragment, decltype(frag_before)> queue(frag_before);
  for (const PoolItem& item : items) queue.insert({item.width, item.dummy, item.id, 0});

  DummyBuild build;
  std::optional<std::size_t> open_bag;
  while (!queue.empty()) {
    Fragment frag = *queue.begin();
    queue.erase(queue.begin());
    if (open_bag) {
      Bag& bag = build.bags[*open_bag];
      std::int64_t vacancy = bag.capacity - bag.fill;
      if (frag.width <= vacancy) {
        bag.fill += frag.width;
        bag.pieces.push_back({frag.id, frag.dummy, frag.width});
        if (bag.fill == bag.capacity) open_bag.reset();
      } else {
        // Cut at the bag boundary; the remainder rejoins the pool.
        bag.fill = bag.capacity;
        bag.pieces.push_back({frag.id, frag.dummy, vacancy});
        build.splits.push_back({frag.id, frag.width, frag.dummy});
        queue.insert({frag.width - vacancy, frag.dummy, frag.id, frag.generation + 1});
        open_bag.reset();
      }
    } else {
      std::size_t dummy_index = build.dummies.size();
      build.dummies.push_back({static_cast<std::int64_t>(dummy_index), frag.width});
      build.bags.push_back({frag.width * ratio, frag.width, dummy_index,
                            {{frag.id, frag.dummy, frag.width}}});
      if (build.bags.back().fill < build.bags.back().capacity) {
        open_bag = build.bags.size() - 1;
      }
    }
  }
  return build;
}

HeuristicOutcome solve_rgff(const Instance& instance, DummyMode mode) {
  auto start = Clock::now();
  instance.check();
  const HarmonicPeriodSet& ps = instance.period_set;
  int levels = ps.levels();

  std::vector<std::vector<PoolItem>> real_at(levels);
  for (const Job& job : order_jobs(instance)) {
    real_at[job.period_index].push_back({job.id, job.processing_time, false});
  }

  // Phase 1: aggregate upwards so each height has look-ahead blocks for
  // everything below it.
  std::vector<std::vector<PoolItem>> dummies_at(levels);
  for (int k = levels - 2; k >= 0; --k) {
    std::vector<PoolItem> pool = real_at[k + 1];
    pool.insert(pool.end(), dummies_at[k + 1].begin(), dummies_at[k + 1].end());
    if (pool.empty()) continue;
    std::int64_t ratio = ps.heights[k] / ps.heights[k + 1];
    DummyBuild built = mode == DummyMode::pessimistic
                           ? build_dummies_pessimistic(std::move(pool), ratio)
                           : build_dummies_optimistic(std::move(pool), ratio);
    for (const DummyRectangle& d : built.dummies) {
      dummies_at[k].push_back({d.id, d.width, true});
    }
  }

  // Phase 2: first fit over real and dummy rectangles together.
  SubBinTree tree(instance.period_set);
  HeuristicOutcome outcome;
  for (int k = 0; k < levels; ++k) {
    std::vector<PoolItem> items = real_at[k];
    items.insert(items.end(), dummies_at[k].begin(), dummies_at[k].end());
    std::sort(items.begin(), items.end(), item_before);
    for (const PoolItem& item : items) {
      std::optional<std::int64_t> q = tree.first_fit(k, item.width);
      bool force = false;
      if (!q) {
        if (item.dummy) {
          q = tree.least_loaded(k);
          force = true;
        } else {
          q = tree.least_loaded_fitting_real(k, item.width);
          force = true;  // may exceed capacity until dummies are dropped
          if (!q) {
            outcome.failed_job = item.id;
            outcome.elapsed_s = seconds_since(start);
            return outcome;
          }
        }
      }
      PlacedRectangle placed = tree.insert(k, *q, item.id, item.width, item.dummy, force);
      if (!item.dummy) outcome.trace.push_back({item.id, placed.level, placed.q, placed.x});
    }
    tree.remove_dummies(k);
  }
  return finish_solved(tree, instance, std::move(outcome), start);
}

HeuristicOutcome solve_with(const Instance& instance, Method method) {
  switch (method) {
    case Method::tff: return solve_tff(instance);
    case Method::sff: return solve_sff(instance);
    case Method::sbf: return solve_sbf(instance);
    case Method::lpt: return solve_lpt(instance);
    case Method::rgff_pes: return solve_rgff(instance, DummyMode::pessimistic);
    case Method::rgff_opt: return solve_rgff(instance, DummyMode::optimistic);
  }
  fail(Errc::config_invalid, "unknown method");
}

PortfolioOutcome run_portfolio(const Instance& instance, std::span<const Method> methods) {
  if (methods.empty()) fail(Errc::config_invalid, "portfolio needs at least one method");
  PortfolioOutcome out;
  for (Method m : methods) {
    out.results.emplace_back(m, solve_with(instance, m));
    if (out.results.back().second.solved && !out.winner) {
      out.solved = true;
      out.winner = m;
    }
  }
  return out;
}

}  // namespace hdpack
