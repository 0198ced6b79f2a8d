#include "gct/string_cursor.hpp"

namespace gct {
namespace {

struct Stack {
  std::vector<Triple>& s;
  std::size_t floor;
  StepCounters& c;

  bool empty() const { return s.size() == floor; }
  Triple pop() {
    ++c.pops;
    Triple t = s.back();
    s.pop_back();
    return t;
  }
  void push(SymbolId head, Kind kind, SymbolId target) {
    ++c.pushes;
    s.push_back({head, kind, target, 0});
  }
};

// One cursor step, written for both directions. For side == left the step goes right:
// gamma (a, l, alpha) is a prefix of a valid sequence, and we move to the
// leftmost leaf below the right sibling of alpha's subtree.
void expand(const NextLinkIndex& idx, Stack& st, Side side, SymbolId a, SymbolId alpha) {
  const Slp& h = idx.slp();
  const std::size_t near = side == Side::left ? 0 : 1;  // alpha_1 when stepping right
  const std::size_t far = 1 - near;
  const Kind same = side == Side::left ? Kind::left : Kind::right;
  const Kind other = side == Side::left ? Kind::right : Kind::left;

  const auto& rhs = h.rhs[a];
  SymbolId next;
  if (alpha != rhs[near]) {
    ++st.c.next_link;
    SymbolId b = *idx.reduce(side, a, alpha);
    st.push(a, same, b);
    next = h.rhs[b][far];
    st.push(b, other, next);
  } else {
    next = rhs[far];
    if (st.empty()) {
      st.push(a, other, next);
    } else {
      Triple t = st.pop();  // (B, other, a)
      st.push(t.head, other, next);
    }
  }
  if (h.symbols.is_nonterminal(next)) st.push(next, same, idx.omega(side, next));
}

bool step(const NextLinkIndex& idx, std::vector<Triple>& stack, std::size_t floor, StepCounters& c, Side side) {
  Stack st{stack, floor, c};
  const Kind same = side == Side::left ? Kind::left : Kind::right;
  Triple t = st.pop();
  if (t.kind == same) {
    expand(idx, st, side, t.head, t.target);
    return true;
  }
  if (st.empty()) {
    st.push(t.head, t.kind, t.target);
    return false;
  }
  Triple u = st.pop();  // (A', same, A)
  expand(idx, st, side, u.head, u.target);
  return true;
}

}  // namespace

bool step_right(const NextLinkIndex& idx, std::vector<Triple>& stack, std::size_t floor, StepCounters& c) {
  return step(idx, stack, floor, c, Side::left);
}

bool step_left(const NextLinkIndex& idx, std::vector<Triple>& stack, std::size_t floor, StepCounters& c) {
  return step(idx, stack, floor, c, Side::right);
}

StringCursor StringCursor::begin(const NextLinkIndex& idx, SymbolId x) {
  if (!idx.slp().symbols.is_nonterminal(x))
    throw Error(ErrorCode::invalid_argument, "'" + idx.slp().symbols.name(x) + "' is not a nonterminal");
  StringCursor c(idx, x);
  c.stack_.push_back({x, Kind::left, idx.omega(Side::left, x), 0});
  c.pos_ = 1;
  return c;
}

StringCursor StringCursor::end(const NextLinkIndex& idx, SymbolId x) {
  if (!idx.slp().symbols.is_nonterminal(x))
    throw Error(ErrorCode::invalid_argument, "'" + idx.slp().symbols.name(x) + "' is not a nonterminal");
  StringCursor c(idx, x);
  c.stack_.push_back({x, Kind::right, idx.omega(Side::right, x), 0});
  c.pos_ = idx.length(x);
  return c;
}

bool StringCursor::right() {
  last_.clear();
  if (!step_right(*idx_, stack_, 0, last_)) return false;
  ++pos_;
  return true;
}

bool StringCursor::left() {
  last_.clear();
  if (!step_left(*idx_, stack_, 0, last_)) return false;
  --pos_;
  return true;
}

bool valid_sequence(const NextLinkIndex& idx, const std::vector<Triple>& stack, std::size_t floor, std::size_t end,
                    SymbolId head) {
  if (end <= floor || end > stack.size()) return false;
  const auto& sym = idx.slp().symbols;
  SymbolId expect = head;
  for (std::size_t i = floor; i < end; ++i) {
    const Triple& t = stack[i];
    if (t.head != expect) return false;
    if (t.kind != Kind::left && t.kind != Kind::right) return false;
    if (i > floor && t.kind == stack[i - 1].kind) return false;
    if (!sym.is_nonterminal(t.head)) return false;
    Side side = t.kind == Kind::left ? Side::left : Side::right;
    if (!idx.is_proper_ancestor(side, t.target, t.head)) return false;
    expect = t.target;
  }
  return !sym.is_nonterminal(stack[end - 1].target);
}

std::uint64_t sequence_position(const NextLinkIndex& idx, const std::vector<Triple>& stack, std::size_t floor,
                                std::size_t end) {
  // pos is the number of leaves left of the path, plus one
  const Slp& h = idx.slp();
  std::uint64_t p = 1;
  for (std::size_t i = floor; i < end; ++i) {
    const Triple& t = stack[i];
    if (t.kind != Kind::right) continue;
    // an R-triple (A, r, B) skips the first symbols of each rule on the path
    for (SymbolId v = t.head; v != t.target; v = h.rhs[v][1]) p += idx.length(h.rhs[v][0]);
  }
  return p;
}

bool StringCursor::valid() const {
  return valid_sequence(*idx_, stack_, 0, stack_.size(), head_) &&
         sequence_position(*idx_, stack_, 0, stack_.size()) == pos_;
}

std::string to_string(const Triple& t, const SymbolTable& symbols) {
  switch (t.kind) {
    case Kind::left: return "(" + symbols.name(t.head) + ",l," + symbols.name(t.target) + ")";
    case Kind::right: return "(" + symbols.name(t.head) + ",r," + symbols.name(t.target) + ")";
    case Kind::child:
      return "(" + symbols.name(t.head) + "," + std::to_string(t.index) + "," + symbols.name(t.target) + ")";
    case Kind::separator: return "|";
  }
  return {};
}

std::string StringCursor::to_string() const {
  std::string out;
  for (const Triple& t : stack_) out += gct::to_string(t, idx_->slp().symbols);
  return out;
}

}  // namespace gct
