#include "gct/core_model.hpp"

namespace gct {
namespace {

// Rank >= 2 nonterminals are replaced by a skeleton term over terminals,
// rank-0 nonterminals, fresh rank-1 nonterminals and parameters. Every path
// segment of val(A) between branching points of the parameter paths becomes
// one fresh rank-1 nonterminal; parameter-free branches become fresh rank-0
// nonterminals. A skeleton has O(rank(A) * max terminal rank) nodes.
class Monadizer {
 public:
  explicit Monadizer(const Tslp& g) : g_(g), map_(g.symbols.size(), kNoSymbol), skeleton_(g.symbols.size()) {}

  Tslp run() {
    for (SymbolId a : g_.rules)
      if (g_.rank(a) <= 1) map_[a] = h_.declare(g_.symbols.name(a), g_.rank(a));
    for (SymbolId a : topological_order(g_)) {
      Term t = translate(g_.rhs[a]);
      if (g_.rank(a) <= 1) {
        h_.rhs[map_[a]] = std::move(t);
      } else {
        base_ = g_.symbols.name(a);
        skeleton_[a] = compress(std::move(t));
      }
    }
    h_.start = map_[g_.start];
    validate(h_);
    return std::move(h_);
  }

 private:
  Term translate(const Term& t) {
    const Symbol& s = g_.symbols[t.label];
    std::vector<Term> children;
    children.reserve(t.children.size());
    for (const Term& c : t.children) children.push_back(translate(c));
    switch (s.kind) {
      case SymbolKind::parameter:
        return Term{h_.symbols.parameter(s.param_index), {}};
      case SymbolKind::terminal:
        return Term{h_.terminal(s.name, s.rank), std::move(children)};
      case SymbolKind::nonterminal:
        if (s.rank <= 1) return Term{map_[t.label], std::move(children)};
        return substitute(skeleton_[t.label], children);
    }
    return {};
  }

  Term substitute(const Term& skeleton, std::vector<Term>& args) {
    if (h_.symbols.is_parameter(skeleton.label))
      return std::move(args[h_.symbols[skeleton.label].param_index - 1]);
    Term out{skeleton.label, {}};
    out.children.reserve(skeleton.children.size());
    for (const Term& c : skeleton.children) out.children.push_back(substitute(c, args));
    return out;
  }

  bool has_parameter(const Term& t) const {
    if (h_.symbols.is_parameter(t.label)) return true;
    for (const Term& c : t.children)
      if (has_parameter(c)) return true;
    return false;
  }

  Term extract_constant(Term t) {
    if (t.children.empty()) return t;
    SymbolId n = h_.symbols.add_fresh(base_ + "_c", SymbolKind::nonterminal, 0);
    h_.rhs.resize(h_.symbols.size());
    h_.rhs[n] = std::move(t);
    h_.rules.push_back(n);
    return Term{n, {}};
  }

  Term compress(Term t) {
    if (h_.symbols.is_parameter(t.label)) return t;
    if (!has_parameter(t)) return extract_constant(std::move(t));

    // Follow the unary part of the parameter paths from the root.
    Term* node = &t;
    while (!h_.symbols.is_parameter(node->label)) {
      Term* next = nullptr;
      int with_param = 0;
      for (Term& c : node->children)
        if (has_parameter(c)) {
          ++with_param;
          next = &c;
        }
      if (with_param != 1) break;
      node = next;
    }

    if (node == &t) {
      // Branching terminal: at least two children carry parameters.
      Term out{t.label, {}};
      for (Term& c : t.children) out.children.push_back(compress(std::move(c)));
      return out;
    }
    if (h_.symbols.is_nonterminal(t.label) && &t.children[0] == node)
      return Term{t.label, {compress(std::move(t.children[0]))}};

    Term bottom = std::move(*node);
    *node = Term{h_.symbols.parameter(1), {}};
    SymbolId u = h_.symbols.add_fresh(base_ + "_u", SymbolKind::nonterminal, 1);
    h_.rhs.resize(h_.symbols.size());
    h_.rhs[u] = std::move(t);
    h_.rules.push_back(u);
    return Term{u, {compress(std::move(bottom))}};
  }

  const Tslp& g_;
  Tslp h_;
  std::vector<SymbolId> map_;
  std::vector<Term> skeleton_;
  std::string base_;
};

}  // namespace

Tslp monadize(const Tslp& g) {
  validate(g);
  return Monadizer(g).run();
}

}  // namespace gct
