#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gct {

// An ordered tree with unbounded fan-out. Nodes are numbered in preorder,
// node 0 is the root.
struct LabeledTree {
  std::vector<std::string> labels;
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::uint32_t> parent;  // kNoParent for the root

  static constexpr std::uint32_t kNoParent = ~std::uint32_t{0};

  std::size_t size() const noexcept { return labels.size(); }
  // Builds a tree from preorder labels and child counts.
  static LabeledTree from_preorder(std::vector<std::string> labels, const std::vector<std::uint32_t>& arity);
  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.labels == b.labels && a.children == b.children;
  }
};

// Text format `label(child,child,...)`; whitespace between tokens is ignored.
LabeledTree parse_labeled_tree(std::string_view text);
std::string to_string(const LabeledTree& t);

inline constexpr std::string_view kNilLabel = "nil";
inline constexpr std::string_view kGadgetPrefix = "_bin";

// First-child/next-sibling encoding; missing links become `nil` leaves.
LabeledTree fcns_encode(const LabeledTree& t);
LabeledTree fcns_decode(const LabeledTree& b);

// A node with s > 2 children keeps its label and gets a balanced binary
// fan-out over them. Gadget nodes are labelled _bin<n>, n being the number of
// original children below them; the left part takes ceil(n/2).
LabeledTree bin_encode(const LabeledTree& t);
LabeledTree bin_decode(const LabeledTree& b);

struct BinStep {
  std::uint32_t node;
  std::uint32_t steps;  // edges of bin(t) traversed
};
// Moves from an original node of bin(t) to its parent (child == 0) or to
// its child-th child in t. Throws out_of_range when there is no such node.
BinStep bin_nav(const LabeledTree& b, std::uint32_t node, std::uint32_t child);
// Number of children in t of an original node of bin(t).
std::uint32_t bin_rank(const LabeledTree& b, std::uint32_t node);

}  // namespace gct
