#include <unordered_map>

#include "gct/slp_algorithms.hpp"

namespace gct {

SymbolId symbol_at(const Slp& g, SymbolId x, std::uint64_t i) {
  auto len = slp_lengths(g);
  if (i == 0 || i > len[x])
    throw Error(ErrorCode::out_of_range, "position " + std::to_string(i) + " outside 1.." + std::to_string(len[x]),
                i);
  SymbolId v = x;
  while (g.symbols.is_nonterminal(v)) {
    for (SymbolId s : g.rhs[v]) {
      if (i <= len[s]) {
        v = s;
        break;
      }
      i -= len[s];
    }
  }
  return v;
}

namespace {

class Slicer {
 public:
  Slicer(const Slp& g, Slp& out) : g_(g), out_(out), len_(slp_lengths(g)) {}

  SymbolId fresh() {
    SymbolId id = out_.symbols.add_fresh("_slice", SymbolKind::nonterminal, 0);
    out_.rhs.resize(out_.symbols.size());
    out_.rules.push_back(id);
    return id;
  }

  // Index of the child of v containing position i, and the offset before it.
  std::pair<std::size_t, std::uint64_t> locate(SymbolId v, std::uint64_t i) const {
    std::uint64_t off = 0;
    const auto& rhs = g_.rhs[v];
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      if (i <= off + len_[rhs[k]]) return {k, off};
      off += len_[rhs[k]];
    }
    return {rhs.size(), off};
  }

  // A symbol deriving val(v)[i:] (from_left) or val(v)[1:i].
  SymbolId cut(SymbolId v, std::uint64_t i, bool suffix) {
    if (suffix ? i == 1 : i == len_[v]) return v;
    SymbolId top = fresh();
    SymbolId rule = top;
    while (true) {
      auto [k, off] = locate(v, i);
      const auto& rhs = g_.rhs[v];
      SymbolId child = rhs[k];
      std::uint64_t j = i - off;
      bool whole = suffix ? j == 1 : j == len_[child];
      SymbolId first = whole ? child : fresh();
      std::vector<SymbolId> body;
      if (suffix) {
        body.push_back(first);
        body.insert(body.end(), rhs.begin() + static_cast<std::ptrdiff_t>(k) + 1, rhs.end());
      } else {
        body.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(k));
        body.push_back(first);
      }
      out_.rhs[rule] = std::move(body);
      if (whole) return top;
      rule = first;
      v = child;
      i = j;
    }
  }

  const std::vector<std::uint64_t>& len() const { return len_; }

 private:
  const Slp& g_;
  Slp& out_;
  std::vector<std::uint64_t> len_;
};

}  // namespace

SlpSlice substring_slp(const Slp& g, SymbolId x, std::uint64_t i, std::uint64_t j) {
  if (!g.symbols.is_nonterminal(x)) throw Error(ErrorCode::invalid_argument, "slice of a terminal");
  SlpSlice out{g, kNoSymbol};
  Slicer s(g, out.slp);
  const auto& len = s.len();
  if (i == 0 || j < i || j > len[x])
    throw Error(ErrorCode::out_of_range,
                "range " + std::to_string(i) + ".." + std::to_string(j) + " outside 1.." + std::to_string(len[x]), j);
  out.root = s.fresh();
  SymbolId v = x;
  while (true) {
    if (i == 1 && j == len[v]) {
      out.slp.rhs[out.root] = {v};
      break;
    }
    auto [p, off_p] = s.locate(v, i);
    auto [q, off_q] = s.locate(v, j);
    const auto& rhs = g.rhs[v];
    if (p == q) {
      v = rhs[p];
      i -= off_p;
      j -= off_p;
      continue;
    }
    std::vector<SymbolId> body{s.cut(rhs[p], i - off_p, true)};
    body.insert(body.end(), rhs.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                rhs.begin() + static_cast<std::ptrdiff_t>(q));
    body.push_back(s.cut(rhs[q], j - off_q, false));
    out.slp.rhs[out.root] = std::move(body);
    break;
  }
  return out;
}

PreorderSlp preorder_slp(const NormalizedTslp& n) {
  const Tslp& g = n.grammar;
  const auto& sym = g.symbols;
  PreorderSlp out;
  Slp& p = out.slp;
  out.word.assign(sym.size(), kNoSymbol);
  out.pre.assign(sym.size(), kNoSymbol);
  out.post.assign(sym.size(), kNoSymbol);
  std::vector<SymbolId> term(sym.size(), kNoSymbol);
  auto terminal = [&](SymbolId t) {
    if (term[t] == kNoSymbol) term[t] = p.add_terminal(sym.name(t), sym[t].rank);
    return term[t];
  };
  auto rule = [&](const std::string& prefix, SymbolId a, std::vector<SymbolId> body) {
    std::erase(body, kNoSymbol);
    if (body.empty()) return kNoSymbol;
    SymbolId id = p.symbols.add_fresh(prefix + sym.name(a), SymbolKind::nonterminal, 0);
    p.rhs.resize(p.symbols.size());
    p.rhs[id] = std::move(body);
    p.rules.push_back(id);
    return id;
  };

  for (SymbolId a : topological_order(g)) {
    const NormalRule& r = n.rules[a];
    switch (r.form) {
      case RuleForm::a:
        out.word[a] = rule("P_", a, {out.pre[r.outer], out.word[r.inner], out.post[r.outer]});
        break;
      case RuleForm::b:
        out.pre[a] = rule("Pre_", a, {out.pre[r.outer], out.pre[r.inner]});
        out.post[a] = rule("Post_", a, {out.post[r.inner], out.post[r.outer]});
        break;
      case RuleForm::c:
        out.word[a] = rule("P_", a, {terminal(r.terminal)});
        break;
      case RuleForm::d: {
        std::vector<SymbolId> before{terminal(r.terminal)}, after;
        for (std::uint32_t k = 0; k < r.args.size(); ++k) {
          if (k + 1 == r.hole) continue;
          (k + 1 < r.hole ? before : after).push_back(out.word[r.args[k]]);
        }
        out.pre[a] = rule("Pre_", a, std::move(before));
        out.post[a] = rule("Post_", a, std::move(after));
        break;
      }
      case RuleForm::none:
        throw Error(ErrorCode::invalid_argument, "rule for '" + sym.name(a) + "' is not classified");
    }
  }
  return out;
}

namespace {

NormalizedTslp rooted_at(const Tslp& g, SymbolId a) {
  if (!g.symbols.is_nonterminal(a) || g.rank(a) != 0)
    throw Error(ErrorCode::invalid_argument, "'" + g.symbols.name(a) + "' is not a rank-0 nonterminal");
  Tslp copy = g;
  copy.start = a;
  return normalize(copy);
}

}  // namespace

bool tslp_equal(const Tslp& g1, SymbolId a1, const Tslp& g2, SymbolId a2) {
  NormalizedTslp n1 = rooted_at(g1, a1), n2 = rooted_at(g2, a2);
  if (tree_size(n1.grammar) != tree_size(n2.grammar)) return false;
  PreorderSlp p1 = preorder_slp(n1), p2 = preorder_slp(n2);
  std::uint64_t base = random_base(0x5eed);
  FingerprintIndex f1(p1.slp, base), f2(p2.slp, base);
  SymbolId w1 = p1.word[n1.grammar.start], w2 = p2.word[n2.grammar.start];
  return lcp(f1, w1, f2, w2) == f1.length(w1);
}

}  // namespace gct
