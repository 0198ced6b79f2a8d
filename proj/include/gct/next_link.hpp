#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gct/core_model.hpp"
#include "gct/lca.hpp"

namespace gct {

enum class Side : std::uint8_t { left, right };

// The trie forests T_L and T_R of a binary SLP. Every symbol is exactly one
// node per side, so node ids are symbol ids. The node of A hangs below the
// node of the first (left side) or second (right side) symbol of rhs(A).
class NextLinkIndex {
 public:
  explicit NextLinkIndex(Slp h);

  const Slp& slp() const noexcept { return h_; }
  std::uint64_t length(SymbolId a) const { return lengths_[a]; }

  // Terminal at the root of a's trie: the first (last) letter of val(a).
  SymbolId omega(Side side, SymbolId a) const { return forest(side).root[a]; }
  SymbolId trie_parent(Side side, SymbolId a) const { return forest(side).parent[a]; }
  const std::vector<SymbolId>& trie_children(Side side, SymbolId a) const { return forest(side).children[a]; }
  bool is_proper_ancestor(Side side, SymbolId v1, SymbolId v2) const;

  // Child of v1 on the path to v2; v1 must be a proper ancestor of v2.
  SymbolId next_link(Side side, SymbolId v1, SymbolId v2) const;
  // reduce_L / reduce_R on (head, side, target): the new target, or nullopt
  // when target immediately follows head in L(head) (R(head)).
  std::optional<SymbolId> reduce(Side side, SymbolId head, SymbolId target) const;

  // L(a) or R(a) spelled out by walking to the root.
  std::vector<SymbolId> path_string(Side side, SymbolId a) const;
  std::string to_dot() const;

 private:
  struct Forest {
    std::vector<SymbolId> parent, root;
    std::vector<std::vector<SymbolId>> children;
    std::vector<std::uint32_t> tin, tout;
    LcaIndex fcns;  // over the first-child/next-sibling encoding
  };
  const Forest& forest(Side side) const { return side == Side::left ? left_ : right_; }
  void build(Forest& f, std::size_t which);

  Slp h_;
  std::vector<std::uint64_t> lengths_;
  Forest left_, right_;
};

}  // namespace gct
