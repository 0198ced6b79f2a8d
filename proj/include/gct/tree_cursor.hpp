#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gct/string_cursor.hpp"

namespace gct {

// H = (N_1, N_2, rhs_1): rhs_1(A) = BC whenever rhs(A) = B(C) or B(C(x)).
// Symbols of H carry the names of the grammar nonterminals.
struct SpineSlp {
  Slp h;
  std::vector<SymbolId> to_h;  // grammar id -> H id (kNoSymbol for terminals)
  std::vector<SymbolId> to_g;  // H id -> grammar id
};
SpineSlp derive_spine(const NormalizedTslp& g);

struct MTriple {
  SymbolId head;  // N_d nonterminal
  std::uint32_t index;
  SymbolId target;

  friend bool operator==(const MTriple&, const MTriple&) = default;
};
std::vector<MTriple> m_triples(const NormalizedTslp& g);

// Where the spine of A in N_a is cut for subtree equality: the tree below
// spine position s equals val(prime).
struct SplitPoint {
  std::uint64_t s = 0;
  SymbolId prime = kNoSymbol;  // grammar id
};

class TreeNavigator {
 public:
  explicit TreeNavigator(NormalizedTslp g);

  const NormalizedTslp& normalized() const noexcept { return g_; }
  const Tslp& grammar() const noexcept { return g_.grammar; }
  const NextLinkIndex& index() const noexcept { return *index_; }
  const Slp& h() const noexcept { return index_->slp(); }
  SymbolId to_h(SymbolId g) const { return to_h_[g]; }
  SymbolId to_g(SymbolId h) const { return to_g_[h]; }
  // Terminal on the right-hand side of an N_2 nonterminal, given by H id.
  SymbolId terminal_of(SymbolId h) const { return g_.rules[to_g_[h]].terminal; }
  std::uint64_t tree_size() const noexcept { return tree_size_; }

 private:
  NormalizedTslp g_;
  std::vector<SymbolId> to_h_, to_g_;
  std::unique_ptr<NextLinkIndex> index_;
  std::uint64_t tree_size_ = 0;
};

// A node of val(G) as a valid sequence. Each maximal run of L/R triples has
// a frame holding its head (an N_a nonterminal, H id) and its spine position.
class TreeCursor {
 public:
  struct Frame {
    std::uint32_t start;
    SymbolId head;
    std::uint64_t pos;

    friend bool operator==(const Frame&, const Frame&) = default;
  };

  // With splits (indexed by grammar id) the cursor keeps pos < s(head) and
  // crosses the cut with a separator.
  static TreeCursor root(const TreeNavigator& nav, const std::vector<SplitPoint>* splits = nullptr);

  SymbolId label() const;  // grammar terminal id
  std::uint32_t rank() const;
  bool child(std::uint32_t i);
  bool parent();
  bool is_root() const;

  const TreeNavigator& navigator() const noexcept { return *nav_; }
  const std::vector<SplitPoint>* splits() const noexcept { return splits_; }
  const std::vector<Triple>& stack() const noexcept { return stack_; }
  const std::vector<Frame>& frames() const noexcept { return frames_; }
  // The frame of the trailing L/R run, or nullptr when the cursor ends in an
  // M triple, a separator, or is empty.
  const Frame* active_frame() const;
  const StepCounters& last_step() const noexcept { return last_; }

  bool valid() const;
  std::string to_string() const;

  friend bool operator==(const TreeCursor& a, const TreeCursor& b) {
    return a.nav_ == b.nav_ && a.stack_ == b.stack_ && a.frames_ == b.frames_;
  }

 private:
  TreeCursor(const TreeNavigator& nav, const std::vector<SplitPoint>* splits) : nav_(&nav), splits_(splits) {}
  void push_root(SymbolId a);

  const TreeNavigator* nav_;
  const std::vector<SplitPoint>* splits_;
  std::vector<Triple> stack_;
  std::vector<Frame> frames_;
  StepCounters last_;
};

// Preorder walk built from child/parent moves. Throws guard_exceeded before
// moving when the tree has more than guard nodes. Returns the node count.
std::uint64_t dfs_preorder(const TreeNavigator& nav, const std::function<void(SymbolId label, std::uint64_t depth)>& visit,
                           std::uint64_t guard = kDefaultGuard);

}  // namespace gct
