#include "rainbow/matching.hpp"

#include <algorithm>

namespace rainbow {

namespace {

// Kuhn's augmenting-path step over caller-owned state.
struct Kuhn {
  std::span<const std::vector<std::uint32_t>> adj;
  std::vector<std::uint32_t>& left_match;
  std::vector<std::uint32_t>& right_match;
  std::vector<std::uint32_t>& seen;
  std::uint32_t stamp;

  bool augment(std::uint32_t left) {
    for (auto r : adj[left]) {
      if (seen[r] == stamp) continue;
      seen[r] = stamp;
      if (right_match[r] == BipartiteMatcher::kFree || augment(right_match[r])) {
        right_match[r] = left;
        left_match[left] = r;
        return true;
      }
    }
    return false;
  }
};

}  // namespace

BipartiteMatcher::BipartiteMatcher(std::size_t right_count) { reset(right_count); }

void BipartiteMatcher::reset(std::size_t right_count) {
  adj_.clear();
  left_match_.clear();
  right_match_.assign(right_count, kFree);
  seen_.assign(right_count, 0);
  stamp_ = 0;
}

bool BipartiteMatcher::augment(std::uint32_t left) {
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  return Kuhn{adj_, left_match_, right_match_, seen_, stamp_}.augment(left);
}

bool BipartiteMatcher::push(std::vector<std::uint32_t> adjacency) {
  adj_.push_back(std::move(adjacency));
  left_match_.push_back(kFree);
  if (augment(static_cast<std::uint32_t>(adj_.size() - 1))) return true;
  adj_.pop_back();
  left_match_.pop_back();
  return false;
}

void BipartiteMatcher::pop() {
  const auto r = left_match_.back();
  if (r != kFree) right_match_[r] = kFree;
  adj_.pop_back();
  left_match_.pop_back();
}

std::vector<std::uint32_t> maximum_matching(std::span<const std::vector<std::uint32_t>> adjacency,
                                            std::size_t right_count) {
  std::vector<std::uint32_t> left(adjacency.size(), BipartiteMatcher::kFree);
  std::vector<std::uint32_t> right(right_count, BipartiteMatcher::kFree);
  std::vector<std::uint32_t> seen(right_count, 0);
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    Kuhn{adjacency, left, right, seen, static_cast<std::uint32_t>(i + 1)}.augment(
        static_cast<std::uint32_t>(i));
  }
  return left;
}

bool saturates_left(std::span<const std::vector<std::uint32_t>> adjacency, std::size_t right_count) {
  const auto m = maximum_matching(adjacency, right_count);
  return std::none_of(m.begin(), m.end(), [](std::uint32_t r) { return r == BipartiteMatcher::kFree; });
}

}  // namespace rainbow
