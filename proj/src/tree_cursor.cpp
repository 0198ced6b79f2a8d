#include "gct/tree_cursor.hpp"

#include <cassert>

namespace gct {

SpineSlp derive_spine(const NormalizedTslp& n) {
  const Tslp& g = n.grammar;
  SpineSlp out;
  out.to_h.assign(g.symbols.size(), kNoSymbol);
  for (SymbolId a : g.rules) {
    bool spine = n.in_n1(a);
    out.to_h[a] = out.h.symbols.add(g.symbols.name(a), spine ? SymbolKind::nonterminal : SymbolKind::terminal, 0);
    out.to_g.push_back(a);
    if (spine) out.h.rules.push_back(out.to_h[a]);
  }
  out.h.rhs.resize(out.h.symbols.size());
  for (SymbolId a : g.rules)
    if (n.in_n1(a)) out.h.rhs[out.to_h[a]] = {out.to_h[n.rules[a].outer], out.to_h[n.rules[a].inner]};
  return out;
}

std::vector<MTriple> m_triples(const NormalizedTslp& n) {
  std::vector<MTriple> out;
  for (SymbolId a : n.with_form(RuleForm::d)) {
    const NormalRule& r = n.rules[a];
    for (std::uint32_t k = 1; k <= r.args.size(); ++k)
      if (k != r.hole) out.push_back({a, k, r.args[k - 1]});
  }
  return out;
}

TreeNavigator::TreeNavigator(NormalizedTslp g) : g_(std::move(g)) {
  SpineSlp spine = derive_spine(g_);
  to_h_ = std::move(spine.to_h);
  to_g_ = std::move(spine.to_g);
  index_ = std::make_unique<NextLinkIndex>(std::move(spine.h));
  tree_size_ = gct::tree_size(g_.grammar);
}

TreeCursor TreeCursor::root(const TreeNavigator& nav, const std::vector<SplitPoint>* splits) {
  TreeCursor c(nav, splits);
  c.push_root(nav.grammar().start);
  c.last_.clear();
  return c;
}

void TreeCursor::push_root(SymbolId a) {
  if (nav_->normalized().form(a) != RuleForm::a) return;
  SymbolId h = nav_->to_h(a);
  frames_.push_back({static_cast<std::uint32_t>(stack_.size()), h, 1});
  stack_.push_back({h, Kind::left, nav_->index().omega(Side::left, h), 0});
  ++last_.pushes;
}

SymbolId TreeCursor::label() const {
  if (stack_.empty()) return nav_->normalized().rules[nav_->grammar().start].terminal;
  return nav_->terminal_of(stack_.back().target);
}

std::uint32_t TreeCursor::rank() const { return nav_->grammar().symbols[label()].rank; }

bool TreeCursor::is_root() const { return stack_.empty() || (stack_.size() == 1 && stack_[0].kind == Kind::left); }

const TreeCursor::Frame* TreeCursor::active_frame() const {
  if (stack_.empty()) return nullptr;
  Kind k = stack_.back().kind;
  if (k != Kind::left && k != Kind::right) return nullptr;
  return &frames_.back();
}

bool TreeCursor::child(std::uint32_t i) {
  last_.clear();
  if (i == 0 || i > rank()) return false;
  // the node has children, so the sequence ends in an L/R triple with an N_d target
  const Triple t = stack_.back();
  const NormalRule& rule = nav_->normalized().rules[nav_->to_g(t.target)];
  if (i == rule.hole) {
    Frame& f = frames_.back();
    if (splits_ && f.pos + 1 == (*splits_)[nav_->to_g(f.head)].s) {
      SymbolId prime = (*splits_)[nav_->to_g(f.head)].prime;
      stack_.push_back({f.head, Kind::separator, nav_->to_h(prime), 0});
      ++last_.pushes;
      push_root(prime);
      return true;
    }
    [[maybe_unused]] bool moved = step_right(nav_->index(), stack_, f.start, last_);
    assert(moved);
    ++f.pos;
    return true;
  }
  SymbolId target = rule.args[i - 1];
  stack_.push_back({t.target, Kind::child, nav_->to_h(target), i});
  ++last_.pushes;
  push_root(target);
  return true;
}

bool TreeCursor::parent() {
  last_.clear();
  if (stack_.empty()) return false;
  const Triple& t = stack_.back();
  if (t.kind == Kind::child || t.kind == Kind::separator) {
    stack_.pop_back();
    ++last_.pops;
    return true;
  }
  Frame& f = frames_.back();
  if (stack_.size() - f.start == 1 && t.kind == Kind::left) {
    // the root of this segment's tree
    if (f.start == 0) return false;
    stack_.pop_back();
    stack_.pop_back();
    last_.pops += 2;
    frames_.pop_back();
    return true;
  }
  [[maybe_unused]] bool moved = step_left(nav_->index(), stack_, f.start, last_);
  assert(moved);
  --f.pos;
  return true;
}

bool TreeCursor::valid() const {
  const NormalizedTslp& n = nav_->normalized();
  const NextLinkIndex& idx = nav_->index();
  const SymbolId start = n.grammar.start;
  if (stack_.empty()) return frames_.empty() && n.form(start) == RuleForm::c;
  if (n.form(start) != RuleForm::a) return false;

  std::size_t frame = 0, i = 0;
  SymbolId head = nav_->to_h(start);
  while (true) {
    // an L/R run for `head`
    if (frame >= frames_.size()) return false;
    const Frame& f = frames_[frame];
    if (f.start != i || f.head != head) return false;
    std::size_t end = i;
    while (end < stack_.size() && (stack_[end].kind == Kind::left || stack_[end].kind == Kind::right)) ++end;
    if (!valid_sequence(idx, stack_, i, end, head)) return false;
    if (sequence_position(idx, stack_, i, end) != f.pos) return false;
    if (splits_ && f.pos >= (*splits_)[nav_->to_g(head)].s) return false;
    ++frame;
    if (end == stack_.size()) return frame == frames_.size();

    const Triple& link = stack_[end];
    SymbolId from = stack_[end - 1].target;
    SymbolId next = link.target;
    if (link.kind == Kind::child) {
      const NormalRule& r = n.rules[nav_->to_g(from)];
      if (link.head != from || r.form != RuleForm::d || link.index == r.hole || link.index == 0 ||
          link.index > r.args.size() || nav_->to_g(next) != r.args[link.index - 1])
        return false;
    } else if (link.kind == Kind::separator) {
      if (!splits_ || link.head != head) return false;
      const SplitPoint& sp = (*splits_)[nav_->to_g(head)];
      if (f.pos + 1 != sp.s || nav_->to_g(next) != sp.prime) return false;
    } else {
      return false;
    }
    RuleForm form = n.form(nav_->to_g(next));
    if (form == RuleForm::c) return end + 1 == stack_.size() && frame == frames_.size();
    if (form != RuleForm::a) return false;
    i = end + 1;
    head = next;
  }
}

std::string TreeCursor::to_string() const {
  const SymbolTable& sym = nav_->h().symbols;
  std::string out;
  for (const Triple& t : stack_) {
    out += gct::to_string(t, sym);
    if (t.kind == Kind::separator) out += sym.name(t.target);
  }
  return out;
}

std::uint64_t dfs_preorder(const TreeNavigator& nav, const std::function<void(SymbolId, std::uint64_t)>& visit,
                           std::uint64_t guard) {
  if (nav.tree_size() > guard)
    throw Error(ErrorCode::guard_exceeded,
                "tree of size " + std::to_string(nav.tree_size()) + " exceeds guard " + std::to_string(guard),
                nav.tree_size());
  TreeCursor c = TreeCursor::root(nav);
  std::vector<std::uint32_t> index;  // child index taken at each level
  std::uint64_t count = 1;
  visit(c.label(), 0);
  while (true) {
    if (c.rank() > 0) {
      c.child(1);
      index.push_back(1);
      ++count;
      visit(c.label(), index.size());
      continue;
    }
    // climb until a next sibling exists
    while (true) {
      if (index.empty()) return count;
      c.parent();
      std::uint32_t next = index.back() + 1;
      index.pop_back();
      if (next <= c.rank()) {
        c.child(next);
        index.push_back(next);
        ++count;
        visit(c.label(), index.size());
        break;
      }
    }
  }
}

}  // namespace gct
