#pragma once

#include <optional>
#include <span>
#include <string>

#include "hdpack/core.hpp"
#include "hdpack/subbin_tree.hpp"
#include "hdpack/validate.hpp"

namespace hdpack {

enum class Method { tff, sff, sbf, lpt, rgff_pes, rgff_opt };

std::string method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
inline constexpr Method kAllMethods[] = {Method::lpt,      Method::tff,      Method::sff,
                                         Method::sbf,      Method::rgff_pes, Method::rgff_opt};

struct PlacementStep {
  std::int64_t job_id = 0;
  int level = 0;
  std::int64_t q = 0;
  std::int64_t x = 0;
};

struct HeuristicOutcome {
  bool solved = false;
  Schedule schedule;  // populated when solved
  std::vector<PlacementStep> trace;
  std::optional<std::int64_t> failed_job;
  double elapsed_s = 0.0;
};

// Rate-monotonic processing order: period ascending, then processing time
// descending, then id.
std::vector<Job> order_jobs(const Instance& instance);

// Time-wise first fit: minimizes the start time of each job, which under
// canonical left-packing is the fitting sub-bin with the smallest schedule
// row v.
HeuristicOutcome solve_tff(const Instance& instance);
// Spatial first fit: lowest fitting sub-bin.
HeuristicOutcome solve_sff(const Instance& instance);
// Spatial best fit: fitting sub-bin with the least residual capacity.
HeuristicOutcome solve_sbf(const Instance& instance);
// Least-loaded sub-bin, failing when that one does not fit.
HeuristicOutcome solve_lpt(const Instance& instance);

enum class DummyMode { pessimistic, optimistic };

struct PoolItem {
  std::int64_t id = 0;
  std::int64_t width = 0;
  bool dummy = false;
};

struct BagPiece {
  std::int64_t id = 0;
  bool from_dummy = false;
  std::int64_t width = 0;
};

struct Bag {
  std::int64_t capacity = 0;
  std::int64_t fill = 0;
  std::size_t dummy_index = 0;  // owning dummy
  std::vector<BagPiece> pieces;
};

struct DummyRectangle {
  std::int64_t id = 0;
  std::int64_t width = 0;
};

struct DummyBuild {
  std::vector<DummyRectangle> dummies;
  std::vector<Bag> bags;
  // Items that were cut in two by the optimistic builder, in event order.
  std::vector<PoolItem> splits;
};

// Aggregates rectangles of one height into dummies of the next taller
// height. `ratio` is H_k / H_{k+1}. Pessimistic: width-descending best fit
// into per-dummy bags; a misfit opens a dummy of the item's width with
// `ratio` bags. Optimistic: widest-first into a single open concatenated
// bag, splitting items at the bag boundary; at most the last bag has a
// hole.
DummyBuild build_dummies_pessimistic(std::vector<PoolItem> items, std::int64_t ratio);
DummyBuild build_dummies_optimistic(std::vector<PoolItem> items, std::int64_t ratio);

// Rectangle-guided first fit. Phase 1 builds dummies bottom-up; phase 2
// packs real and dummy rectangles together, forcing unfittable dummies into
// the least utilized sub-bin and falling back, for real rectangles, to
// sub-bins that fit once dummies are discounted. Dummies of a height are
// dropped when that height finishes.
HeuristicOutcome solve_rgff(const Instance& instance, DummyMode mode);

HeuristicOutcome solve_with(const Instance& instance, Method method);

struct PortfolioOutcome {
  std::vector<std::pair<Method, HeuristicOutcome>> results;
  bool solved = false;
  std::optional<Method> winner;  // first solving method in list order
};

PortfolioOutcome run_portfolio(const Instance& instance, std::span<const Method> methods);

}  // namespace hdpack
