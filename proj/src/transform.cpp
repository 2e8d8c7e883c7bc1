#include "hdpack/transform.hpp"

#include <algorithm>
#include <functional>

namespace hdpack {

Packing schedule_to_packing(const Instance& instance, const Schedule& schedule) {
  const HarmonicPeriodSet& ps = instance.period_set;
  if (schedule.starts.size() != instance.jobs.size()) {
    fail(Errc::job_set_mismatch, "schedule does not cover the instance");
  }
  Packing packing;
  for (const Job& job : instance.jobs) {
    auto it = schedule.starts.find(job.id);
    if (it == schedule.starts.end()) {
      fail(Errc::job_set_mismatch, "schedule misses job " + std::to_string(job.id));
    }
    std::int64_t s = it->second;
    if (s < 0 || s >= instance.period_of(job) ||
        s % ps.width + job.processing_time > ps.width) {
      fail(Errc::invalid_schedule,
           "job " + std::to_string(job.id) + " start " + std::to_string(s) + " out of bounds");
    }
    std::int64_t u = s % ps.width;
    std::int64_t v = s / ps.width;
    std::int64_t h = instance.rect_height(job);
    packing.placements[job.id] = Placement{u, h * flip(v, job.period_index, ps.base)};
  }
  return packing;
}

Schedule packing_to_schedule(const Instance& instance, const Packing& packing) {
  const HarmonicPeriodSet& ps = instance.period_set;
  if (packing.placements.size() != instance.jobs.size()) {
    fail(Errc::job_set_mismatch, "packing does not cover the instance");
  }
  Schedule schedule;
  for (const Job& job : instance.jobs) {
    auto it = packing.placements.find(job.id);
    if (it == packing.placements.end()) {
      fail(Errc::job_set_mismatch, "packing misses rectangle " + std::to_string(job.id));
    }
    const Placement& p = it->second;
    std::int64_t h = instance.rect_height(job);
    if (p.x < 0 || p.x + job.processing_time > ps.width || p.y < 0 ||
        p.y + h > ps.bin_height || p.y % h != 0) {
      fail(Errc::invalid_packing,
           "rectangle " + std::to_string(job.id) + " is not height-divisible in bounds");
    }
    std::vector<std::int64_t> flipped = bflip(ps.base, job.period_index);
    std::int64_t v = flip(p.y / h, job.period_index, flipped);
    schedule.starts[job.id] = p.x + v * ps.width;
  }
  return schedule;
}

namespace {

struct CanonRect {
  std::int64_t id;
  std::int64_t width;
  std::int64_t height;
  std::int64_t y;  // original row, used to route into child sub-bins
};

}  // namespace

Packing canonicalize(const Instance& instance, const Packing& packing) {
  ValidationReport before = validate_packing(instance, packing);
  if (!before.ok) fail(Errc::invalid_packing, "canonicalize requires a valid packing");
  const HarmonicPeriodSet& ps = instance.period_set;

  std::vector<CanonRect> all;
  all.reserve(instance.jobs.size());
  for (const Job& job : instance.jobs) {
    const Placement& p = packing.placements.at(job.id);
    all.push_back({job.id, job.processing_time, instance.rect_height(job), p.y});
  }

  Packing out;
  // Left-packs the full-height rectangles of this sub-bin, then splits the
  // rest across the child sub-bins by their rows.
  std::function<void(std::vector<CanonRect>&, int, std::int64_t, std::int64_t)> pack =
      [&](std::vector<CanonRect>& rects, int level, std::int64_t y_base, std::int64_t x_offset) {
        if (rects.empty()) return;
        std::vector<CanonRect> full;
        std::vector<std::vector<CanonRect>> per_child;
        std::int64_t child_height = 0;
        if (level + 1 < ps.levels()) {
          per_child.resize(ps.base[level]);
          child_height = ps.heights[level + 1];
        }
        for (CanonRect& r : rects) {
          if (r.height == ps.heights[level]) {
            full.push_back(r);
          } else {
            per_child[(r.y - y_base) / child_height].push_back(r);
          }
        }
        std::sort(full.begin(), full.end(), [](const CanonRect& a, const CanonRect& b) {
          if (a.width != b.width) return a.width > b.width;
          return a.id < b.id;
        });
        std::int64_t x = x_offset;
        for (const CanonRect& r : full) {
          out.placements[r.id] = Placement{x, y_base};
          x += r.width;
        }
        for (std::size_t child = 0; child < per_child.size(); ++child) {
          pack(per_child[child], level + 1, y_base + static_cast<std::int64_t>(child) * child_height,
               x);
        }
      };
  pack(all, 0, 0, 0);
  return out;
}

}  // namespace hdpack
