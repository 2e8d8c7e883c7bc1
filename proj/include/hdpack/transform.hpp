#pragma once

#include "hdpack/core.hpp"
#include "hdpack/validate.hpp"

namespace hdpack {

// Maps a schedule to its height-divisible packing: x_i = u_i and
// y_i = h_i * flip(v_i, p_i, b). Defined pointwise; collision-freedom
// transfers both ways.
Packing schedule_to_packing(const Instance& instance, const Schedule& schedule);

// Inverse map: u_i = x_i, v_i = flip(y_i / h_i, p_i, bflip(b, p_i)).
Schedule packing_to_schedule(const Instance& instance, const Packing& packing);

// Rebuilds a valid packing in canonical form: per sub-bin, rectangles
// spanning the full height are packed to the left (width descending, id
// ascending) and the rest recurse into the child sub-bins given by their
// original rows. Preserves the rectangle multiset and feasibility.
Packing canonicalize(const Instance& instance, const Packing& packing);

}  // namespace hdpack
