#pragma once

#include <map>
#include <memory>
#include <optional>

#include "hdpack/core.hpp"
#include "hdpack/validate.hpp"

namespace hdpack {

struct PlacedRectangle {
  std::int64_t id = 0;
  std::int64_t width = 0;
  int level = 0;
  std::int64_t q = 0;  // vertical index among sub-bins of this height
  std::int64_t x = 0;  // column assigned at insertion
  bool dummy = false;
};

// Compressed tree of sub-bins. A sub-bin at level k is a slab of height H_k
// at rows [q*H_k, (q+1)*H_k); its children are the b_{k+1} slabs of height
// H_{k+1} it contains. Only touched sub-bins are materialized. Each node
// tracks the total width packed directly into it (load) and the maximum
// over its rows of the widths packed into it and its descendants (peak), so
// a fit test against the bin width needs only the ancestor chain.
class SubBinTree {
 public:
  explicit SubBinTree(const HarmonicPeriodSet& ps);

  const HarmonicPeriodSet& period_set() const { return *ps_; }
  std::int64_t subbin_count(int level) const { return ps_->cumulative[level]; }

  // Row-capacity test for inserting `width` into sub-bin (level, q).
  bool can_fit(int level, std::int64_t q, std::int64_t width) const;
  // Same test with dummy loads excluded everywhere.
  bool can_fit_real_only(int level, std::int64_t q, std::int64_t width) const;

  // Appends an entry; x is the canonical column (ancestor loads plus the
  // sub-bin's current load). Unless forced, throws would_overflow when a
  // covered row would exceed the bin width.
  PlacedRectangle insert(int level, std::int64_t q, std::int64_t id, std::int64_t width,
                         bool dummy = false, bool force = false);

  // Removes the most recently inserted entry of the sub-bin (search undo).
  void remove_last(int level, std::int64_t q);

  // Drops every dummy entry at the given level and recomputes loads.
  void remove_dummies(int level);

  // Lowest q whose sub-bin fits `width`, or nullopt.
  std::optional<std::int64_t> first_fit(int level, std::int64_t width) const;
  // Fitting sub-bin with the smallest residual capacity, ties to lowest q.
  std::optional<std::int64_t> best_fit(int level, std::int64_t width) const;
  // Sub-bin with the smallest direct load (dummies included), ties lowest q.
  std::int64_t least_loaded(int level) const;
  // Among sub-bins that fit `width` once dummies are ignored, the one with
  // the smallest direct load; ties lowest q.
  std::optional<std::int64_t> least_loaded_fitting_real(int level, std::int64_t width) const;

  std::int64_t load(int level, std::int64_t q) const;
  std::int64_t real_load(int level, std::int64_t q) const;
  // w minus the occupied width in the fullest row of the sub-bin; may be
  // negative after a forced insertion.
  std::int64_t residual(int level, std::int64_t q) const;

  // Free width per sub-bin of a level, grouped as (subbin count, residual)
  // with counts summing to B_level. Materialized sub-bins report their own
  // residual; untouched ranges are grouped per ancestor.
  std::vector<std::pair<std::int64_t, std::int64_t>> residual_groups(int level) const;

  bool has_dummies() const;
  // Emits the canonical packing. Throws dummies_present if dummy entries
  // remain.
  Packing to_packing() const;

 private:
  struct Entry {
    std::int64_t id;
    std::int64_t width;
    bool dummy;
  };
  struct Node {
    int level = 0;
    std::int64_t q = 0;
    Node* parent = nullptr;
    std::int64_t load = 0;
    std::int64_t real_load = 0;
    std::int64_t peak = 0;       // load + max child peak
    std::int64_t real_peak = 0;  // real_load + max child real_peak
    std::vector<Entry> entries;
    std::map<std::int64_t, std::unique_ptr<Node>> children;  // slot -> child
  };

  std::int64_t slots_per_child(int level) const { return ps_->base[level]; }
  const Node* walk(int level, std::int64_t q, std::int64_t* ancestor_load,
                   std::int64_t* ancestor_real_load) const;
  Node* materialize(int level, std::int64_t q);
  void update_peaks(Node* node);
  std::int64_t leftmost_q(const Node* node, std::int64_t slot, int level) const;

  const HarmonicPeriodSet* ps_;
  std::unique_ptr<Node> root_;
};

}  // namespace hdpack
