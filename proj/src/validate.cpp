#include "hdpack/validate.hpp"

#include <algorithm>

namespace hdpack {

namespace {

std::string id_str(std::int64_t id) { return std::to_string(id); }

void require_same_ids(const Instance& instance, const std::map<std::int64_t, std::int64_t>& m) {
  if (m.size() != instance.jobs.size()) {
    fail(Errc::job_set_mismatch, "schedule covers " + std::to_string(m.size()) + " jobs, instance has " +
                                     std::to_string(instance.jobs.size()));
  }
  for (const Job& job : instance.jobs) {
    if (!m.contains(job.id)) fail(Errc::job_set_mismatch, "missing job " + id_str(job.id));
  }
}

void require_same_ids(const Instance& instance, const std::map<std::int64_t, Placement>& m) {
  if (m.size() != instance.jobs.size()) {
    fail(Errc::job_set_mismatch, "packing covers " + std::to_string(m.size()) + " rectangles, instance has " +
                                     std::to_string(instance.jobs.size()));
  }
  for (const Job& job : instance.jobs) {
    if (!m.contains(job.id)) fail(Errc::job_set_mismatch, "missing rectangle " + id_str(job.id));
  }
}

}  // namespace

bool jobs_collide(const Job& job_a, std::int64_t start_a, const Job& job_b, std::int64_t start_b,
                  const HarmonicPeriodSet& ps) {
  const Job* ji = &job_a;
  const Job* jj = &job_b;
  std::int64_t si = start_a;
  std::int64_t sj = start_b;
  if (ji->period_index > jj->period_index) {
    std::swap(ji, jj);
    std::swap(si, sj);
  }
  auto check_bounds = [&](const Job& job, std::int64_t s) {
    std::int64_t period = ps.periods[job.period_index];
    if (s < 0 || s >= period || s % ps.width + job.processing_time > ps.width) {
      fail(Errc::invalid_placement,
           "job " + id_str(job.id) + " start " + std::to_string(s) + " violates schedule bounds");
    }
  };
  check_bounds(*ji, si);
  check_bounds(*jj, sj);

  std::int64_t ui = si % ps.width;
  std::int64_t vi = si / ps.width;
  std::int64_t uj = sj % ps.width;
  std::int64_t vj = sj / ps.width;
  if (!(ui < uj + jj->processing_time && uj < ui + ji->processing_time)) return false;

  std::int64_t bi = ps.cumulative[ji->period_index];
  std::int64_t bj = ps.cumulative[jj->period_index];
  std::int64_t diff = vj - vi;
  if (diff < 0 || diff % bi != 0) return false;
  return diff / bi < bj / bi;
}

bool rects_collide(const RectPlacement& a, const RectPlacement& b) {
  const RectPlacement* tall = &a;
  const RectPlacement* low = &b;
  if (tall->height < low->height) std::swap(tall, low);
  if (!(low->x < tall->x + tall->width && tall->x < low->x + low->width)) return false;
  return tall->y <= low->y && low->y < tall->y + tall->height;
}

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule) {
  require_same_ids(instance, schedule.starts);
  const HarmonicPeriodSet& ps = instance.period_set;
  ValidationReport report;
  std::vector<const Job*> ok_jobs;
  for (const Job& job : instance.jobs) {
    std::int64_t s = schedule.starts.at(job.id);
    std::int64_t period = ps.periods[job.period_index];
    if (s < 0 || s >= period) {
      report.violations.push_back({ViolationKind::bounds, job.id, -1,
                                   "start " + std::to_string(s) + " outside [0, " +
                                       std::to_string(period) + ")"});
      continue;
    }
    if (s % ps.width + job.processing_time > ps.width) {
      report.violations.push_back({ViolationKind::bounds, job.id, -1,
                                   "occurrence crosses the base window: u=" +
                                       std::to_string(s % ps.width) + " c=" +
                                       std::to_string(job.processing_time)});
      continue;
    }
    ok_jobs.push_back(&job);
  }
  for (std::size_t i = 0; i < ok_jobs.size(); ++i) {
    for (std::size_t j = i + 1; j < ok_jobs.size(); ++j) {
      const Job& a = *ok_jobs[i];
      const Job& b = *ok_jobs[j];
      if (jobs_collide(a, schedule.starts.at(a.id), b, schedule.starts.at(b.id), ps)) {
        report.violations.push_back({ViolationKind::collision, a.id, b.id,
                                     "jobs " + id_str(a.id) + " and " + id_str(b.id) + " collide"});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

bool oracle_validate_schedule(const Instance& instance, const Schedule& schedule) {
  require_same_ids(instance, schedule.starts);
  const HarmonicPeriodSet& ps = instance.period_set;
  std::vector<std::pair<std::int64_t, std::int64_t>> intervals;
  for (const Job& job : instance.jobs) {
    std::int64_t s = schedule.starts.at(job.id);
    std::int64_t period = ps.periods[job.period_index];
    if (s < 0 || s >= period) return false;
    if (s % ps.width + job.processing_time > ps.width) return false;
    for (std::int64_t t = s; t < ps.hyperperiod; t += period) {
      intervals.emplace_back(t, t + job.processing_time);
    }
  }
  std::sort(intervals.begin(), intervals.end());
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].first < intervals[i - 1].second) return false;
  }
  return true;
}

ValidationReport validate_packing(const Instance& instance, const Packing& packing) {
  require_same_ids(instance, packing.placements);
  const HarmonicPeriodSet& ps = instance.period_set;
  ValidationReport report;
  std::vector<std::pair<std::int64_t, RectPlacement>> rects;
  for (const Job& job : instance.jobs) {
    const Placement& p = packing.placements.at(job.id);
    RectPlacement r{p.x, p.y, job.processing_time, instance.rect_height(job)};
    if (r.x < 0 || r.x + r.width > ps.width || r.y < 0 || r.y + r.height > ps.bin_height) {
      report.violations.push_back({ViolationKind::bounds, job.id, -1,
                                   "rectangle outside the bin at (" + std::to_string(r.x) + "," +
                                       std::to_string(r.y) + ")"});
      continue;
    }
    if (r.y % r.height != 0) {
      report.violations.push_back({ViolationKind::divisibility, job.id, -1,
                                   "y=" + std::to_string(r.y) + " not divisible by height " +
                                       std::to_string(r.height)});
      continue;
    }
    rects.emplace_back(job.id, r);
  }
  for (std::size_t i = 0; i < rects.size(); ++i) {
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (rects_collide(rects[i].second, rects[j].second)) {
        report.violations.push_back({ViolationKind::collision, rects[i].first, rects[j].first,
                                     "rectangles " + id_str(rects[i].first) + " and " +
                                         id_str(rects[j].first) + " overlap"});
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

bool is_canonical(const Instance& instance, const Packing& packing) {
  require_same_ids(instance, packing.placements);
  std::vector<RectPlacement> rects;
  rects.reserve(instance.jobs.size());
  for (const Job& job : instance.jobs) {
    const Placement& p = packing.placements.at(job.id);
    rects.push_back({p.x, p.y, job.processing_time, instance.rect_height(job)});
  }
  for (const RectPlacement& tall : rects) {
    for (const RectPlacement& low : rects) {
      if (tall.height <= low.height) continue;
      if (low.y >= tall.y && low.y + low.height <= tall.y + tall.height) {
        if (tall.x + tall.width > low.x) return false;
      }
    }
  }
  return true;
}

}  // namespace hdpack
