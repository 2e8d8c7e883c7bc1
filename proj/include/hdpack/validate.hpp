#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdpack/core.hpp"

namespace hdpack {

// First-occurrence start times, one per job id. The derived row/column split
// is u_i = s_i mod w, v_i = s_i div w.
struct Schedule {
  std::map<std::int64_t, std::int64_t> starts;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct Placement {
  std::int64_t x = 0;  // column of the left edge
  std::int64_t y = 0;  // bottom row
  friend bool operator==(const Placement&, const Placement&) = default;
};

// Bottom-left coordinates per rectangle id; widths and heights come from the
// instance (l_i = c_i, h_i = H_{p_i}).
struct Packing {
  std::map<std::int64_t, Placement> placements;
  friend bool operator==(const Packing&, const Packing&) = default;
};

enum class ViolationKind { bounds, divisibility, collision, coverage };

struct Violation {
  ViolationKind kind;
  std::int64_t id_a = -1;
  std::int64_t id_b = -1;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Collision condition for two scheduled jobs: the column windows overlap and
// the row distance v_j - v_i is kappa * B_{p_i} for some 0 <= kappa <
// B_{p_j}/B_{p_i}, taking p_i <= p_j. Throws invalid_placement when a start
// violates the schedule bounds.
bool jobs_collide(const Job& job_a, std::int64_t start_a, const Job& job_b, std::int64_t start_b,
                  const HarmonicPeriodSet& ps);

struct RectPlacement {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
};

// Height-divisible collision test: column windows overlap and the shorter
// rectangle's row range starts inside the taller one's.
bool rects_collide(const RectPlacement& a, const RectPlacement& b);

// Bounds plus all pairwise collision checks; every violation is reported
// with a witness. Throws job_set_mismatch when ids do not cover the
// instance exactly.
ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule);

// Independent oracle: expands every occurrence interval over one
// hyper-period, sorts, and checks for overlap. Returns false on any bound
// violation as well.
bool oracle_validate_schedule(const Instance& instance, const Schedule& schedule);

ValidationReport validate_packing(const Instance& instance, const Packing& packing);

// Canonical form: wherever a shorter rectangle's row span nests inside a
// taller one's, the taller rectangle ends at or before the shorter begins.
bool is_canonical(const Instance& instance, const Packing& packing);

}  // namespace hdpack
