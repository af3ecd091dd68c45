#pragma once

// Maximum bipartite matching by augmenting paths (Kuhn). Left vertices can be
// pushed and popped in stack order, which is what the backtracking search
// needs: the matching on the remaining left vertices stays maximum after a pop.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rainbow {

class BipartiteMatcher {
 public:
  static constexpr std::uint32_t kFree = ~std::uint32_t{0};

  explicit BipartiteMatcher(std::size_t right_count = 0);

  void reset(std::size_t right_count);

  // Adds a left vertex adjacent to the given right vertices and tries to
  // match it. On failure the vertex is removed again and false is returned.
  bool push(std::vector<std::uint32_t> adjacency);
  // Removes the most recently pushed left vertex.
  void pop();

  std::size_t left_count() const noexcept { return adj_.size(); }
  std::size_t right_count() const noexcept { return right_match_.size(); }
  std::uint32_t match_of_left(std::size_t left) const { return left_match_[left]; }
  std::uint32_t match_of_right(std::size_t right) const { return right_match_[right]; }

 private:
  bool augment(std::uint32_t left);

  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::uint32_t> left_match_;
  std::vector<std::uint32_t> right_match_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

// Maximum matching of a whole bipartite graph; result[i] is the right partner
// of left vertex i or kFree.
std::vector<std::uint32_t> maximum_matching(std::span<const std::vector<std::uint32_t>> adjacency,
                                            std::size_t right_count);

// True iff every left vertex can be matched.
bool saturates_left(std::span<const std::vector<std::uint32_t>> adjacency, std::size_t right_count);

}  // namespace rainbow
