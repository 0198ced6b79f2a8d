#include "gct/lca.hpp"

#include <bit>

namespace gct {

LcaIndex::LcaIndex(const std::vector<std::uint32_t>& parent) {
  const auto n = static_cast<std::uint32_t>(parent.size());
  const std::uint32_t root = n;
  std::vector<std::vector<std::uint32_t>> children(n + 1);
  for (std::uint32_t v = 0; v < n; ++v) children[parent[v] == kNone ? root : parent[v]].push_back(v);

  depth_.assign(n + 1, 0);
  first_.assign(n + 1, 0);
  euler_.reserve(2 * n + 1);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
  euler_.push_back(root);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < children[v].size()) {
      std::uint32_t c = children[v][next++];
      depth_[c] = depth_[v] + 1;
      first_[c] = static_cast<std::uint32_t>(euler_.size());
      euler_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back().first);
    }
  }

  const std::size_t m = euler_.size();
  table_.emplace_back(m);
  for (std::uint32_t i = 0; i < m; ++i) table_[0][i] = i;
  for (std::size_t k = 1; (std::size_t{1} << k) <= m; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    std::vector<std::uint32_t> level(m - (std::size_t{1} << k) + 1);
    for (std::size_t i = 0; i < level.size(); ++i)
      level[i] = min_by_depth(table_[k - 1][i], table_[k - 1][i + half]);
    table_.push_back(std::move(level));
  }
}

std::uint32_t LcaIndex::lca(std::uint32_t u, std::uint32_t v) const {
  std::uint32_t a = first_[u], b = first_[v];
  if (a > b) std::swap(a, b);
  const auto k = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(b - a + 1)) - 1);
  std::uint32_t w = euler_[min_by_depth(table_[k][a], table_[k][b - (std::uint32_t{1} << k) + 1])];
  return w == size() ? kNone : w;
}

}  // namespace gct
