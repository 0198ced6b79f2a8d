#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gct/lca.hpp"
#include "gct/slp_algorithms.hpp"
#include "gct/tree_cursor.hpp"

namespace gct {

struct ReducedTslp {
  NormalizedTslp grammar;
  // old grammar id -> id of the surviving nonterminal in `grammar`
  std::vector<SymbolId> representative;
  std::size_t merged = 0;  // nonterminals folded into another one

  bool already_reduced() const noexcept { return merged == 0; }
};

// Merges nonterminals with equal values. Rank-0 values are compared through
// their preorder words, rank-1 values through the words before and after the
// parameter. The start symbol always represents its class.
ReducedTslp reduce_grammar(const NormalizedTslp& g, std::uint64_t seed = 0x243f6a8885a308d3);

// Modified Patricia tree: internal nodes carry the length of the common
// prefix below them, leaves are the strings.
struct PatriciaTree {
  static constexpr std::uint64_t kLeaf = ~std::uint64_t{0};
  struct Node {
    std::uint64_t label = kLeaf;  // kLeaf for leaves
    std::uint32_t parent = LcaIndex::kNone;
    std::vector<std::uint32_t> children;
    std::uint32_t string = LcaIndex::kNone;  // leaves only
  };

  std::vector<Node> nodes;
  std::vector<std::uint32_t> leaf;     // string index -> node
  std::vector<std::uint64_t> lengths;  // string lengths without the end marker
  std::uint32_t root = LcaIndex::kNone;
  LcaIndex lca;

  // Longest common prefix of strings i and j; lengths[i] when i == j.
  std::uint64_t query(std::size_t i, std::size_t j) const;
  std::string to_string() const;  // nested "label(child,...)" with leaves as #i
};

// Builds the tree from string accessors without materializing the strings.
// Every string gets its own end marker, so equal strings become siblings
// below a node labelled with their length. The end marker sorts first.
struct PatriciaSource {
  std::size_t count = 0;
  std::function<std::uint64_t(std::size_t)> length;
  std::function<std::uint64_t(std::size_t, std::size_t)> lcp;        // capped at the shorter length
  std::function<std::uint64_t(std::size_t, std::uint64_t)> symbol;   // 1-based position
};
PatriciaTree build_patricia(const PatriciaSource& src);

struct SpineSplit {
  std::uint64_t length = 0;      // spine length l(A)
  std::uint64_t s = 0;
  SymbolId prime = kNoSymbol;    // A'
  SymbolId r_symbol = kNoSymbol; // A_{s(A)-1}; r_A is its right-hand side
  std::uint32_t r_term = 0;      // equal ids iff r_A(A') are equal terms
  std::uint32_t leaf = 0;        // string index in the Patricia tree
};

class EqualityIndex {
 public:
  explicit EqualityIndex(const NormalizedTslp& g, std::uint64_t seed = 0x243f6a8885a308d3);

  const ReducedTslp& reduced() const noexcept { return reduced_; }
  const TreeNavigator& navigator() const noexcept { return *nav_; }
  // Indexed by id in the reduced grammar; only N_a entries are filled.
  const std::vector<SpineSplit>& splits() const noexcept { return splits_; }
  const std::vector<SplitPoint>& split_points() const noexcept { return points_; }
  const PatriciaTree& patricia() const noexcept { return patricia_; }
  // N_a nonterminals in Patricia string order.
  const std::vector<SymbolId>& spine_nonterminals() const noexcept { return strings_; }

  TreeCursor root() const { return TreeCursor::root(*nav_, &points_); }
  // Longest common suffix of val_H(A[:s(A)-2]) and val_H(B[:s(B)-2]).
  std::uint64_t lcs_query(SymbolId a, SymbolId b) const;
  bool subtree_eq(const TreeCursor& c1, const TreeCursor& c2, StepCounters* counters = nullptr) const;
  std::string stats() const;

 private:
  ReducedTslp reduced_;
  std::unique_ptr<TreeNavigator> nav_;
  std::vector<SpineSplit> splits_;
  std::vector<SplitPoint> points_;
  std::vector<SymbolId> strings_;  // Patricia string index -> grammar id
  PatriciaTree patricia_;
};

}  // namespace gct
