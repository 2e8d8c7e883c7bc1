#include "hdpack/subbin_tree.hpp"

#include <algorithm>
#include <functional>

namespace hdpack {

SubBinTree::SubBinTree(const HarmonicPeriodSet& ps) : ps_(&ps), root_(std::make_unique<Node>()) {}

// Index of the ancestor of level-`level` sub-bin q at level j.
static std::int64_t ancestor_index(const HarmonicPeriodSet& ps, int level, std::int64_t q, int j) {
  return q / (ps.cumulative[level] / ps.cumulative[j]);
}

const SubBinTree::Node* SubBinTree::walk(int level, std::int64_t q, std::int64_t* ancestor_load,
                                         std::int64_t* ancestor_real_load) const {
  const Node* node = root_.get();
  std::int64_t anc = 0;
  std::int64_t anc_real = 0;
  for (int j = 1; j <= level; ++j) {
    anc += node->load;
    anc_real += node->real_load;
    std::int64_t idx = ancestor_index(*ps_, level, q, j);
    auto it = node->children.find(idx % ps_->base[j - 1]);
    if (it == node->children.end()) {
      node = nullptr;
      break;
    }
    node = it->second.get();
  }
  if (ancestor_load) *ancestor_load = anc;
  if (ancestor_real_load) *ancestor_real_load = anc_real;
  return node;
}

bool SubBinTree::can_fit(int level, std::int64_t q, std::int64_t width) const {
  std::int64_t anc = 0;
  const Node* node = walk(level, q, &anc, nullptr);
  std::int64_t peak = node ? node->peak : 0;
  return anc + peak + width <= ps_->width;
}

bool SubBinTree::can_fit_real_only(int level, std::int64_t q, std::int64_t width) const {
  std::int64_t anc_real = 0;
  const Node* node = walk(level, q, nullptr, &anc_real);
  std::int64_t peak = node ? node->real_peak : 0;
  return anc_real + peak + width <= ps_->width;
}

SubBinTree::Node* SubBinTree::materialize(int level, std::int64_t q) {
  Node* node = root_.get();
  for (int j = 1; j <= level; ++j) {
    std::int64_t idx = ancestor_index(*ps_, level, q, j);
    std::int64_t slot = idx % ps_->base[j - 1];
    auto it = node->children.find(slot);
    if (it == node->children.end()) {
      auto child = std::make_unique<Node>();
      child->level = j;
      child->q = idx;
      child->parent = node;
      it = node->children.emplace(slot, std::move(child)).first;
    }
    node = it->second.get();
  }
  return node;
}

void SubBinTree::update_peaks(Node* node) {
  while (node) {
    std::int64_t best = 0;
    std::int64_t best_real = 0;
    for (const auto& [slot, child] : node->children) {
      best = std::max(best, child->peak);
      best_real = std::max(best_real, child->real_peak);
    }
    node->peak = node->load + best;
    node->real_peak = node->real_load + best_real;
    node = node->parent;
  }
}

PlacedRectangle SubBinTree::insert(int level, std::int64_t q, std::int64_t id, std::int64_t width,
                                   bool dummy, bool force) {
  if (!force && !can_fit(level, q, width)) {
    fail(Errc::would_overflow, "width " + std::to_string(width) + " does not fit sub-bin (" +
                                   std::to_string(level) + "," + std::to_string(q) + ")");
  }
  Node* node = materialize(level, q);
  std::int64_t anc = 0;
  walk(level, q, &anc, nullptr);
  PlacedRectangle placed{id, width, level, q, anc + node->load, dummy};
  node->entries.push_back({id, width, dummy});
  node->load += width;
  if (!dummy) node->real_load += width;
  update_peaks(node);
  return placed;
}

void SubBinTree::remove_last(int level, std::int64_t q) {
  Node* node = materialize(level, q);
  if (node->entries.empty()) fail(Errc::out_of_range, "sub-bin has no entries to remove");
  Entry e = node->entries.back();
  node->entries.pop_back();
  node->load -= e.width;
  if (!e.dummy) node->real_load -= e.width;
  update_peaks(node);
}

void SubBinTree::remove_dummies(int level) {
  std::function<void(Node*)> visit = [&](Node* node) {
    if (node->level == level) {
      if (node->load != node->real_load) {
        std::erase_if(node->entries, [](const Entry& e) { return e.dummy; });
        node->load = node->real_load;
        update_peaks(node);
      }
      return;
    }
    for (auto& [slot, child] : node->children) visit(child.get());
  };
  visit(root_.get());
}

std::int64_t SubBinTree::leftmost_q(const Node* node, std::int64_t slot, int level) const {
  std::int64_t child_index = node->q * ps_->base[node->level] + slot;
  return child_index * (ps_->cumulative[level] / ps_->cumulative[node->level + 1]);
}

std::optional<std::int64_t> SubBinTree::first_fit(int level, std::int64_t width) const {
  std::function<std::optional<std::int64_t>(const Node*, std::int64_t)> descend =
      [&](const Node* node, std::int64_t anc) -> std::optional<std::int64_t> {
    if (node->level == level) {
      if (anc + node->peak + width <= ps_->width) return node->q;
      return std::nullopt;
    }
    // Nothing below can fit if even an empty descendant would overflow.
    if (anc + node->load + width > ps_->width) return std::nullopt;
    std::int64_t slots = ps_->base[node->level];
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      auto it = node->children.find(slot);
      if (it == node->children.end()) return leftmost_q(node, slot, level);
      if (auto q = descend(it->second.get(), anc + node->load)) return q;
    }
    return std::nullopt;
  };
  return descend(root_.get(), 0);
}

std::optional<std::int64_t> SubBinTree::best_fit(int level, std::int64_t width) const {
  std::optional<std::pair<std::int64_t, std::int64_t>> best;  // (residual, q)
  auto offer = [&](std::int64_t residual, std::int64_t q) {
    std::pair<std::int64_t, std::int64_t> cand{residual, q};
    if (!best || cand < *best) best = cand;
  };
  std::function<void(const Node*, std::int64_t)> descend = [&](const Node* node, std::int64_t anc) {
    if (node->level == level) {
      std::int64_t res = ps_->width - anc - node->peak;
      if (res >= width) offer(res, node->q);
      return;
    }
    if (anc + node->load + width > ps_->width) return;
    std::int64_t slots = ps_->base[node->level];
    bool empty_seen = false;
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      auto it = node->children.find(slot);
      if (it == node->children.end()) {
        if (!empty_seen) {
          offer(ps_->width - anc - node->load, leftmost_q(node, slot, level));
          empty_seen = true;
        }
        continue;
      }
      descend(it->second.get(), anc + node->load);
    }
  };
  descend(root_.get(), 0);
  if (!best) return std::nullopt;
  return best->second;
}

std::int64_t SubBinTree::least_loaded(int level) const {
  std::optional<std::pair<std::int64_t, std::int64_t>> best;  // (load, q)
  auto offer = [&](std::int64_t load, std::int64_t q) {
    std::pair<std::int64_t, std::int64_t> cand{load, q};
    if (!best || cand < *best) best = cand;
  };
  std::function<void(const Node*)> descend = [&](const Node* node) {
    if (best && best->first == 0) return;  // a zero-load bin at lower q wins
    if (node->level == level) {
      offer(node->load, node->q);
      return;
    }
    std::int64_t slots = ps_->base[node->level];
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      auto it = node->children.find(slot);
      if (it == node->children.end()) {
        offer(0, leftmost_q(node, slot, level));
        return;  // all later candidates lose the (0, q) tie
      }
      descend(it->second.get());
    }
  };
  descend(root_.get());
  return best->second;
}

std::optional<std::int64_t> SubBinTree::least_loaded_fitting_real(int level,
                                                                  std::int64_t width) const {
  std::optional<std::pair<std::int64_t, std::int64_t>> best;  // (nominal load, q)
  auto offer = [&](std::int64_t load, std::int64_t q) {
    std::pair<std::int64_t, std::int64_t> cand{load, q};
    if (!best || cand < *best) best = cand;
  };
  std::function<void(const Node*, std::int64_t)> descend = [&](const Node* node,
                                                               std::int64_t anc_real) {
    if (node->level == level) {
      if (anc_real + node->real_peak + width <= ps_->width) offer(node->load, node->q);
      return;
    }
    if (anc_real + node->real_load + width > ps_->width) return;
    std::int64_t slots = ps_->base[node->level];
    bool empty_seen = false;
    for (std::int64_t slot = 0; slot < slots; ++slot) {
      auto it = node->children.find(slot);
      if (it == node->children.end()) {
        if (!empty_seen) {
          offer(0, leftmost_q(node, slot, level));
          empty_seen = true;
        }
        continue;
      }
      descend(it->second.get(), anc_real + node->real_load);
    }
  };
  descend(root_.get(), 0);
  if (!best) return std::nullopt;
  return best->second;
}

std::int64_t SubBinTree::load(int level, std::int64_t q) const {
  const Node* node = walk(level, q, nullptr, nullptr);
  return node ? node->load : 0;
}

std::int64_t SubBinTree::real_load(int level, std::int64_t q) const {
  const Node* node = walk(level, q, nullptr, nullptr);
  return node ? node->real_load : 0;
}

std::int64_t SubBinTree::residual(int level, std::int64_t q) const {
  std::int64_t anc = 0;
  const Node* node = walk(level, q, &anc, nullptr);
  return ps_->width - anc - (node ? node->peak : 0);
}

std::vector<std::pair<std::int64_t, std::int64_t>> SubBinTree::residual_groups(int level) const {
  std::vector<std::pair<std::int64_t, std::int64_t>> groups;
  std::function<void(const Node*, std::int64_t)> descend = [&](const Node* node, std::int64_t anc) {
    if (node->level == level) {
      groups.emplace_back(1, ps_->width - anc - node->peak);
      return;
    }
    std::int64_t slots = ps_->base[node->level];
    std::int64_t missing = slots - static_cast<std::int64_t>(node->children.size());
    if (missing > 0) {
      std::int64_t per_slot = ps_->cumulative[level] / ps_->cumulative[node->level + 1];
      groups.emplace_back(missing * per_slot, ps_->width - anc - node->load);
    }
    for (const auto& [slot, child] : node->children) descend(child.get(), anc + node->load);
  };
  descend(root_.get(), 0);
  return groups;
}

bool SubBinTree::has_dummies() const {
  std::function<bool(const Node*)> visit = [&](const Node* node) -> bool {
    if (node->load != node->real_load) return true;
    for (const auto& [slot, child] : node->children) {
      if (visit(child.get())) return true;
    }
    return false;
  };
  return visit(root_.get());
}

Packing SubBinTree::to_packing() const {
  Packing packing;
  std::function<void(const Node*, std::int64_t)> emit = [&](const Node* node, std::int64_t offset) {
    std::int64_t x = offset;
    for (const Entry& e : node->entries) {
      if (e.dummy) fail(Errc::dummies_present, "dummy rectangles remain in the tree");
      packing.placements[e.id] = Placement{x, node->q * ps_->heights[node->level]};
      x += e.width;
    }
    for (const auto& [slot, child] : node->children) emit(child.get(), offset + node->load);
  };
  emit(root_.get(), 0);
  return packing;
}

}  // namespace hdpack
