#pragma once

#include <cstdint>
#include <vector>

namespace gct {

// Lowest common ancestors in a forest given by a parent array, via an Euler
// tour and a sparse table over it. Children are visited in increasing id.
class LcaIndex {
 public:
  static constexpr std::uint32_t kNone = ~std::uint32_t{0};

  LcaIndex() = default;
  explicit LcaIndex(const std::vector<std::uint32_t>& parent);

  // kNone when u and v lie in different trees.
  std::uint32_t lca(std::uint32_t u, std::uint32_t v) const;
  std::uint32_t depth(std::uint32_t v) const { return depth_[v]; }
  std::size_t size() const noexcept { return depth_.empty() ? 0 : depth_.size() - 1; }

 private:
  std::uint32_t min_by_depth(std::uint32_t a, std::uint32_t b) const {
    return depth_[euler_[a]] <= depth_[euler_[b]] ? a : b;
  }

  std::vector<std::uint32_t> euler_;   // node ids; the virtual root is size()
  std::vector<std::uint32_t> first_;   // first occurrence in euler_
  std::vector<std::uint32_t> depth_;   // roots have depth 1, virtual root 0
  std::vector<std::vector<std::uint32_t>> table_;  // positions into euler_
};

}  // namespace gct
