#pragma once

#include <optional>
#include <string>

#include "hdpack/core.hpp"
#include "hdpack/validate.hpp"

namespace hdpack {

struct SearchBudget {
  std::optional<double> seconds;
  std::optional<std::int64_t> nodes;
};

enum class ExactStatus { feasible, infeasible, unknown };

struct ExactOutcome {
  ExactStatus status = ExactStatus::unknown;
  std::optional<Schedule> schedule;  // set when feasible
  std::int64_t nodes = 0;
  double elapsed_s = 0.0;
};

struct ExactOptions {
  // Among empty sibling sub-bins only the lowest one is tried; toggled off
  // for the completeness cross-check.
  bool symmetry_breaking = true;
  // Prunes when frozen sub-bin residuals are too narrow for every remaining
  // rectangle and the lost area breaks the area budget.
  bool waste_bound = true;
};

// Depth-first assignment of rectangles (height descending, width
// descending) to sub-bins of their height, maintaining the per-row loads of
// the bin formulation exactly. Returns unknown only on budget exhaustion.
ExactOutcome solve_exact(const Instance& instance, const SearchBudget& budget = {},
                         const ExactOptions& options = {});

// Ground-truth enumeration over all admissible start times with pairwise
// collision pruning. Guarded: throws too_large when the candidate-start
// product exceeds the cap.
ExactOutcome brute_force_enumerate(const Instance& instance,
                                   std::int64_t candidate_cap = 4'000'000);

// Solver-neutral description of the bin formulation: the rectangle list,
// one assignment group per height, and one capacity constraint per unit
// row.
std::string export_bin_model(const Instance& instance);

}  // namespace hdpack
