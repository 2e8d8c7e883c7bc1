#pragma once

#include <cstdint>

#include "hdpack/core.hpp"
#include "hdpack/validate.hpp"

namespace hdpack {

struct SplitGenConfig {
  std::int64_t base_period = 20;
  std::vector<std::int64_t> base_vector = {2, 2, 3};
  int iterations = 50;
  std::uint64_t seed = 1;
  double save_probability = 0.0;    // pi_save; 0 reproduces the original scheme
  double divide_probability = 0.5;  // pi_divide
  std::int64_t min_processing_time = 1;
  bool random_split_point = false;  // false: ceil/floor halves
  std::string name;
};

struct DifficultGenConfig {
  std::int64_t base_period = 800;  // T_0 = bin width
  std::int64_t ratio = 2;          // period ratio T
  int levels = 6;                  // r
  std::uint64_t seed = 1;
  std::int64_t min_processing_time = 14;  // c_min; default honours "> 13"
  double target_long_fraction = 0.6;      // required share of jobs with c >= c_min
  int max_resample = 64;
  std::string name;
};

struct GeneratedInstance {
  Instance instance;
  // A feasible schedule maintained through the construction; every
  // generated instance is feasible by this witness.
  Schedule certificate;
};

// Starts from a single job with c = T = T_0 and repeatedly either splits a
// job into two of the same period or divides it into b_{k+1} jobs of the
// next period. Keeps U = 1 throughout.
GeneratedInstance generate_split_scheme(const SplitGenConfig& config);

// Same process, but a drawn job may first be marked saved with probability
// pi_save * U_i. Saved jobs are never split again; they still descend the
// period hierarchy by dividing, which preserves long jobs at long periods.
GeneratedInstance generate_modified_scheme(const SplitGenConfig& config);

// Builds a canonical packing directly: each sub-bin reserves one rectangle
// of its height and hands the remaining width to its children; unit-height
// sub-bins are filled exactly. Resamples until the long-job share reaches
// the target.
GeneratedInstance generate_difficult(const DifficultGenConfig& config);

}  // namespace hdpack
