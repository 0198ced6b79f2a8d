#pragma once

#include <string>
#include <vector>

#include "gct/next_link.hpp"

namespace gct {

// left/right are the L and R triples; child and separator only occur in
// tree cursors.
enum class Kind : std::uint8_t { left, right, child, separator };

struct Triple {
  SymbolId head = kNoSymbol;
  Kind kind = Kind::left;
  SymbolId target = kNoSymbol;
  std::uint32_t index = 0;  // child index for Kind::child

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct StepCounters {
  std::uint64_t pushes = 0;
  std::uint64_t pops = 0;
  std::uint64_t next_link = 0;
  std::uint64_t lca = 0;

  void clear() { *this = {}; }
  StepCounters& operator+=(const StepCounters& o) {
    pushes += o.pushes;
    pops += o.pops;
    next_link += o.next_link;
    lca += o.lca;
    return *this;
  }
};

// One step on the valid sequence stack[floor..]. On false (no next/previous
// position) the stack is left as it was.
bool step_right(const NextLinkIndex& idx, std::vector<Triple>& stack, std::size_t floor, StepCounters& c);
bool step_left(const NextLinkIndex& idx, std::vector<Triple>& stack, std::size_t floor, StepCounters& c);

class StringCursor {
 public:
  static StringCursor begin(const NextLinkIndex& idx, SymbolId x);
  static StringCursor end(const NextLinkIndex& idx, SymbolId x);

  bool right();
  bool left();

  SymbolId head() const noexcept { return head_; }
  SymbolId symbol() const { return stack_.back().target; }
  std::uint64_t pos() const noexcept { return pos_; }
  const std::vector<Triple>& stack() const noexcept { return stack_; }
  const StepCounters& last_step() const noexcept { return last_; }

  // Checks the valid-sequence conditions against the tries.
  bool valid() const;
  std::string to_string() const;

  friend bool operator==(const StringCursor& a, const StringCursor& b) {
    return a.idx_ == b.idx_ && a.head_ == b.head_ && a.pos_ == b.pos_ && a.stack_ == b.stack_;
  }

 private:
  StringCursor(const NextLinkIndex& idx, SymbolId x) : idx_(&idx), head_(x) {}

  const NextLinkIndex* idx_;
  SymbolId head_;
  std::uint64_t pos_ = 1;
  std::vector<Triple> stack_;
  StepCounters last_;
};

// Validity of stack[floor..] as a valid head-sequence.
bool valid_sequence(const NextLinkIndex& idx, const std::vector<Triple>& stack, std::size_t floor, std::size_t end,
                    SymbolId head);
// pos of the leaf that stack[floor..end) leads to.
std::uint64_t sequence_position(const NextLinkIndex& idx, const std::vector<Triple>& stack, std::size_t floor,
                                std::size_t end);
std::string to_string(const Triple& t, const SymbolTable& symbols);

}  // namespace gct
