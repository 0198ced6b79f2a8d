#include "gct/core_model.hpp"

namespace gct {

BinarizedSlp binarize_slp(const Slp& g) {
  const auto order = topological_order(g);
  const auto& sym = g.symbols;

  // Inline every nonterminal whose rewritten body has at most one symbol.
  std::vector<std::vector<SymbolId>> body(sym.size());
  for (SymbolId a : order) {
    for (SymbolId s : g.rhs[a]) {
      if (sym.is_nonterminal(s) && body[s].size() <= 1)
        body[a].insert(body[a].end(), body[s].begin(), body[s].end());
      else
        body[a].push_back(s);
    }
  }

  // A body that is a single nonterminal C shares C's top binary rule.
  std::vector<bool> survives(sym.size(), false);
  std::vector<SymbolId> same_as(sym.size(), kNoSymbol);
  for (SymbolId a : order) {
    if (body[a].size() >= 2) {
      survives[a] = true;
    } else if (body[a].size() == 1 && sym.is_nonterminal(body[a][0])) {
      SymbolId c = body[a][0];
      same_as[a] = same_as[c] == kNoSymbol ? c : same_as[c];
      body[a] = body[c];
      survives[a] = true;
    }
  }

  BinarizedSlp out;
  Slp& h = out.slp;
  std::vector<SymbolId> map(sym.size(), kNoSymbol);
  for (SymbolId a : g.rules) {
    if (survives[a])
      map[a] = h.symbols.add(sym.name(a), SymbolKind::nonterminal, 0);
    else
      out.eliminated.push_back(sym.name(a));
  }
  if (h.symbols.size() == 0)
    throw Error(ErrorCode::degenerate, "every nonterminal derives fewer than two symbols");
  for (SymbolId a : g.rules) {
    if (!survives[a]) continue;
    for (SymbolId s : body[a])
      if (map[s] == kNoSymbol) map[s] = h.symbols.add(sym.name(s), SymbolKind::terminal, sym[s].rank);
  }
  h.rhs.resize(h.symbols.size());

  for (SymbolId a : g.rules) {
    if (!survives[a]) continue;
    const auto& b = body[a];
    SymbolId head = map[a];
    h.rules.push_back(head);
    if (same_as[a] != kNoSymbol) continue;
    if (b.size() == 2) {
      h.rhs[head] = {map[b[0]], map[b[1]]};
      continue;
    }
    // A -> a1 A_2, A_i -> a_i A_{i+1}, A_{n-1} -> a_{n-1} a_n
    SymbolId current = head;
    for (std::size_t i = 0; i + 2 < b.size(); ++i) {
      SymbolId next = h.symbols.add_fresh(sym.name(a) + "_" + std::to_string(i + 2), SymbolKind::nonterminal, 0);
      h.rhs.resize(h.symbols.size());
      h.rhs[current] = {map[b[i]], next};
      h.rules.push_back(next);
      current = next;
    }
    h.rhs[current] = {map[b[b.size() - 2]], map[b.back()]};
  }
  for (SymbolId a : g.rules) {
    if (same_as[a] == kNoSymbol) continue;
    h.rhs[map[a]] = h.rhs[map[same_as[a]]];
  }
  return out;
}

}  // namespace gct
