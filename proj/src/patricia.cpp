#include <algorithm>
#include <functional>
#include <numeric>

#include "gct/subtree_equality.hpp"

namespace gct {

std::uint64_t PatriciaTree::query(std::size_t i, std::size_t j) const {
  if (i == j) return lengths[i];
  std::uint32_t u = lca.lca(leaf[i], leaf[j]);
  return nodes[u].label;
}

std::string PatriciaTree::to_string() const {
  if (root == LcaIndex::kNone) return "";
  std::string out;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t v) {
    const Node& n = nodes[v];
    if (n.label == kLeaf) {
      out += "#" + std::to_string(n.string);
      return;
    }
    out += std::to_string(n.label) + "(";
    for (std::size_t k = 0; k < n.children.size(); ++k) {
      if (k) out += ",";
      rec(n.children[k]);
    }
    out += ")";
  };
  rec(root);
  return out;
}

PatriciaTree build_patricia(const PatriciaSource& src) {
  PatriciaTree t;
  const std::size_t k = src.count;
  t.lengths.resize(k);
  for (std::size_t i = 0; i < k; ++i) t.lengths[i] = src.length(i);
  t.leaf.assign(k, LcaIndex::kNone);
  if (k == 0) return t;

  std::vector<std::size_t> sorted(k);
  std::iota(sorted.begin(), sorted.end(), 0);
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t i, std::size_t j) {
    if (i == j) return false;
    std::uint64_t l = src.lcp(i, j);
    bool end_i = l == t.lengths[i], end_j = l == t.lengths[j];
    if (end_i && end_j) return i < j;
    if (end_i || end_j) return end_i;
    return src.symbol(i, l + 1) < src.symbol(j, l + 1);
  });

  auto make = [&](std::uint64_t label) {
    t.nodes.push_back({});
    t.nodes.back().label = label;
    return static_cast<std::uint32_t>(t.nodes.size() - 1);
  };
  auto attach = [&](std::uint32_t parent, std::uint32_t child) {
    t.nodes[parent].children.push_back(child);
    t.nodes[child].parent = parent;
  };
  auto make_leaf = [&](std::size_t s) {
    std::uint32_t v = make(PatriciaTree::kLeaf);
    t.nodes[v].string = static_cast<std::uint32_t>(s);
    t.leaf[s] = v;
    return v;
  };

  // the stack is the rightmost path; a node is attached to its parent when popped
  std::vector<std::uint32_t> st{make_leaf(sorted[0])};
  for (std::size_t r = 1; r < k; ++r) {
    std::uint64_t h = src.lcp(sorted[r - 1], sorted[r]);
    while (t.nodes[st.back()].label > h) {
      std::uint32_t cur = st.back();
      st.pop_back();
      if (!st.empty() && t.nodes[st.back()].label >= h) {
        attach(st.back(), cur);
      } else {
        std::uint32_t v = make(h);
        attach(v, cur);
        st.push_back(v);
        break;
      }
    }
    st.push_back(make_leaf(sorted[r]));
  }
  while (st.size() > 1) {
    std::uint32_t cur = st.back();
    st.pop_back();
    attach(st.back(), cur);
  }
  t.root = st[0];

  std::vector<std::uint32_t> parent(t.nodes.size());
  for (std::size_t v = 0; v < t.nodes.size(); ++v) parent[v] = t.nodes[v].parent;
  t.lca = LcaIndex(parent);
  return t;
}

}  // namespace gct
