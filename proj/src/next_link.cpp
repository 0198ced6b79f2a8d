#include "gct/next_link.hpp"

#include <cassert>

namespace gct {

NextLinkIndex::NextLinkIndex(Slp h) : h_(std::move(h)) {
  for (SymbolId a : h_.rules)
    if (h_.rhs[a].size() != 2)
      throw Error(ErrorCode::invalid_argument,
                  "rule for '" + h_.symbols.name(a) + "' has " + std::to_string(h_.rhs[a].size()) +
                      " symbols; tries need a binary SLP");
  lengths_ = slp_lengths(h_);
  build(left_, 0);
  build(right_, 1);
}

void NextLinkIndex::build(Forest& f, std::size_t which) {
  const std::size_t n = h_.symbols.size();
  f.parent.assign(n, kNoSymbol);
  f.root.assign(n, kNoSymbol);
  f.children.assign(n, {});
  for (SymbolId a : h_.rules) f.parent[a] = h_.rhs[a][which];
  for (SymbolId v = 0; v < n; ++v)
    if (f.parent[v] != kNoSymbol) f.children[f.parent[v]].push_back(v);
  for (SymbolId v = 0; v < n; ++v)
    if (f.parent[v] == kNoSymbol) f.root[v] = v;
  for (SymbolId a : topological_order(h_)) f.root[a] = f.root[f.parent[a]];

  f.tin.assign(n, 0);
  f.tout.assign(n, 0);
  std::uint32_t clock = 0;
  std::vector<std::pair<SymbolId, std::size_t>> stack;
  for (SymbolId r = 0; r < n; ++r) {
    if (f.parent[r] != kNoSymbol) continue;
    f.tin[r] = clock++;
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < f.children[v].size()) {
        SymbolId c = f.children[v][next++];
        f.tin[c] = clock++;
        stack.emplace_back(c, 0);
      } else {
        f.tout[v] = clock++;
        stack.pop_back();
      }
    }
  }

  std::vector<std::uint32_t> fcns(n, LcaIndex::kNone);
  for (SymbolId v = 0; v < n; ++v) {
    const auto& cs = f.children[v];
    for (std::size_t i = 0; i < cs.size(); ++i) fcns[cs[i]] = i == 0 ? v : cs[i - 1];
  }
  f.fcns = LcaIndex(fcns);
}

bool NextLinkIndex::is_proper_ancestor(Side side, SymbolId v1, SymbolId v2) const {
  const Forest& f = forest(side);
  return v1 != v2 && f.tin[v1] < f.tin[v2] && f.tout[v2] < f.tout[v1];
}

SymbolId NextLinkIndex::next_link(Side side, SymbolId v1, SymbolId v2) const {
  assert(is_proper_ancestor(side, v1, v2));
  const Forest& f = forest(side);
  return f.fcns.lca(v2, f.children[v1].back());
}

std::optional<SymbolId> NextLinkIndex::reduce(Side side, SymbolId head, SymbolId target) const {
  SymbolId v = next_link(side, target, head);
  if (v == head) return std::nullopt;
  return v;
}

std::vector<SymbolId> NextLinkIndex::path_string(Side side, SymbolId a) const {
  std::vector<SymbolId> out;
  for (SymbolId v = a; v != kNoSymbol; v = trie_parent(side, v)) out.push_back(v);
  return out;
}

std::string NextLinkIndex::to_dot() const {
  std::string out = "digraph tries {\n";
  for (Side side : {Side::left, Side::right}) {
    const char* tag = side == Side::left ? "L" : "R";
    out += std::string("  subgraph cluster_") + tag + " {\n    label=\"T_" + tag + "\";\n";
    for (SymbolId v = 0; v < h_.symbols.size(); ++v)
      out += std::string("    ") + tag + "_" + h_.symbols.name(v) + " [label=\"" + h_.symbols.name(v) + "\"];\n";
    for (SymbolId v = 0; v < h_.symbols.size(); ++v)
      for (SymbolId c : trie_children(side, v))
        out += std::string("    ") + tag + "_" + h_.symbols.name(v) + " -> " + tag + "_" + h_.symbols.name(c) + ";\n";
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

}  // namespace gct
