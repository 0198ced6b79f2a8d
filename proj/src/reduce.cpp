#include <map>
#include <tuple>

#include "gct/subtree_equality.hpp"

namespace gct {

ReducedTslp reduce_grammar(const NormalizedTslp& n, std::uint64_t seed) {
  const Tslp& g = n.grammar;
  PreorderSlp p = preorder_slp(n);
  FingerprintIndex f(p.slp, random_base(seed));
  auto fp = [&](SymbolId x) { return x == kNoSymbol ? Fingerprint{} : f.whole(x); };

  using Key = std::tuple<std::uint32_t, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;
  std::map<Key, SymbolId> classes;
  ReducedTslp out;
  std::vector<SymbolId> rep(g.symbols.size(), kNoSymbol);
  std::vector<SymbolId> order{g.start};
  for (SymbolId a : g.rules)
    if (a != g.start) order.push_back(a);
  for (SymbolId a : order) {
    Key key;
    if (g.rank(a) == 0) {
      Fingerprint w = fp(p.word[a]);
      key = {0, w.hash, w.len, 0, 0};
    } else {
      Fingerprint pre = fp(p.pre[a]), post = fp(p.post[a]);
      key = {1, pre.hash, pre.len, post.hash, post.len};
    }
    auto [it, fresh] = classes.emplace(key, a);
    rep[a] = it->second;
    if (!fresh) ++out.merged;
  }

  Tslp h;
  std::vector<SymbolId> map(g.symbols.size(), kNoSymbol);
  for (SymbolId a : g.rules)
    if (rep[a] == a) map[a] = h.declare(g.symbols.name(a), g.rank(a));
  h.start = map[g.start];
  std::function<Term(const Term&)> copy = [&](const Term& t) {
    const Symbol& s = g.symbols[t.label];
    Term r;
    switch (s.kind) {
      case SymbolKind::parameter: r.label = h.symbols.parameter(s.param_index); break;
      case SymbolKind::terminal: r.label = h.terminal(s.name, s.rank); break;
      case SymbolKind::nonterminal: r.label = map[rep[t.label]]; break;
    }
    for (const Term& c : t.children) r.children.push_back(copy(c));
    return r;
  };
  for (SymbolId a : g.rules)
    if (rep[a] == a) h.rhs[map[a]] = copy(g.rhs[a]);

  out.representative.assign(g.symbols.size(), kNoSymbol);
  for (SymbolId a : g.rules) out.representative[a] = map[rep[a]];
  out.grammar = NormalizedTslp::classify(std::move(h));
  return out;
}

}  // namespace gct
