#include <map>
#include <optional>
#include <stdexcept>

#include "gct/subtree_equality.hpp"

namespace gct {

namespace {

// Per-H-symbol fingerprints of the preorder parts before and after the
// hole; their lengths add up to the size of the spine's tree.
struct SpineWeights {
  std::vector<Fingerprint> pre, post;

  std::uint64_t weight(SymbolId x) const { return pre[x].len + post[x].len; }
};

SpineWeights spine_weights(const TreeNavigator& nav, const PreorderSlp& p, const FingerprintIndex& f) {
  const Slp& h = nav.h();
  const NormalizedTslp& n = nav.normalized();
  SpineWeights w;
  w.pre.resize(h.symbols.size());
  w.post.resize(h.symbols.size());
  for (SymbolId x = 0; x < h.symbols.size(); ++x) {
    if (!h.symbols.is_terminal(x)) continue;
    SymbolId a = nav.to_g(x);
    if (n.form(a) == RuleForm::c) {
      w.pre[x] = f.whole(p.word[a]);
    } else {
      w.pre[x] = f.whole(p.pre[a]);
      if (p.post[a] != kNoSymbol) w.post[x] = f.whole(p.post[a]);
    }
  }
  for (SymbolId x : topological_order(h)) {
    SymbolId b = h.rhs[x][0], c = h.rhs[x][1];
    w.pre[x] = concat(w.pre[b], w.pre[c]);
    w.post[x] = concat(w.post[c], w.post[b]);
  }
  return w;
}

// Spine position p of x such that the positions before p weigh exactly q.
std::optional<std::uint64_t> select(const Slp& h, const FingerprintIndex& fh, const SpineWeights& w, SymbolId x,
                                    std::uint64_t q) {
  std::uint64_t offset = 0;
  while (true) {
    if (q == 0) return offset + 1;
    if (h.symbols.is_terminal(x)) return std::nullopt;
    SymbolId b = h.rhs[x][0], c = h.rhs[x][1];
    if (q < w.weight(b)) {
      x = b;
    } else {
      q -= w.weight(b);
      offset += fh.length(b);
      x = c;
    }
  }
}

// Preorder fingerprint of the subtree at spine position p of x.
Fingerprint suffix_tree(const Slp& h, const FingerprintIndex& fh, const SpineWeights& w, SymbolId x, std::uint64_t p) {
  Fingerprint right, left;
  while (!h.symbols.is_terminal(x)) {
    SymbolId b = h.rhs[x][0], c = h.rhs[x][1];
    if (p > fh.length(b)) {
      p -= fh.length(b);
      x = c;
    } else {
      right = concat(w.pre[c], right);
      left = concat(left, w.post[c]);
      x = b;
    }
  }
  return concat(concat(w.pre[x], right), concat(left, w.post[x]));
}

}  // namespace

EqualityIndex::EqualityIndex(const NormalizedTslp& g, std::uint64_t seed) : reduced_(reduce_grammar(g, seed)) {
  nav_ = std::make_unique<TreeNavigator>(reduced_.grammar);
  const NormalizedTslp& n = nav_->normalized();
  const Tslp& gr = n.grammar;
  const Slp& h = nav_->h();
  PreorderSlp p = preorder_slp(n);
  FingerprintIndex f(p.slp, random_base(seed));
  FingerprintIndex fh(h, random_base(seed + 1));
  SpineWeights w = spine_weights(*nav_, p, f);

  // rank-0 nonterminals grouped by tree size
  std::map<std::uint64_t, std::vector<SymbolId>> by_size;
  for (SymbolId b : gr.rules)
    if (gr.rank(b) == 0) by_size[f.length(p.word[b])].push_back(b);

  splits_.assign(gr.symbols.size(), {});
  points_.assign(gr.symbols.size(), {});
  std::map<std::vector<SymbolId>, std::uint32_t> r_terms;
  for (SymbolId a : n.with_form(RuleForm::a)) {
    SymbolId x = nav_->to_h(a);
    SpineSplit& sp = splits_[a];
    sp.length = fh.length(x);
    sp.s = sp.length;
    sp.prime = nav_->to_g(fh.symbol_at(x, sp.length));
    const std::uint64_t total = w.weight(x);
    for (const auto& [size, group] : by_size) {
      if (size >= total) break;
      std::optional<std::uint64_t> pos = select(h, fh, w, x, total - size);
      if (!pos || *pos < 2 || *pos >= sp.s) continue;
      Fingerprint sub = suffix_tree(h, fh, w, x, *pos);
      for (SymbolId b : group) {
        if (f.whole(p.word[b]) == sub) {
          sp.s = *pos;
          sp.prime = b;
          break;
        }
      }
    }
    sp.r_symbol = nav_->to_g(fh.symbol_at(x, sp.s - 1));
    const NormalRule& r = n.rules[sp.r_symbol];
    std::vector<SymbolId> key{r.terminal};
    for (std::uint32_t k = 1; k <= r.args.size(); ++k) key.push_back(k == r.hole ? sp.prime : r.args[k - 1]);
    sp.r_term = r_terms.emplace(std::move(key), static_cast<std::uint32_t>(r_terms.size())).first->second;
    sp.leaf = static_cast<std::uint32_t>(strings_.size());
    strings_.push_back(a);
    points_[a] = {sp.s, sp.prime};
  }

  PatriciaSource src;
  src.count = strings_.size();
  src.length = [&](std::size_t i) { return splits_[strings_[i]].s - 2; };
  src.lcp = [&](std::size_t i, std::size_t j) {
    return lcs_of_prefixes(fh, nav_->to_h(strings_[i]), splits_[strings_[i]].s - 2, fh, nav_->to_h(strings_[j]),
                           splits_[strings_[j]].s - 2);
  };
  src.symbol = [&](std::size_t i, std::uint64_t k) -> std::uint64_t {
    std::uint64_t m = splits_[strings_[i]].s - 2;
    return fh.symbol_at(nav_->to_h(strings_[i]), m - k + 1);
  };
  patricia_ = build_patricia(src);
}

std::uint64_t EqualityIndex::lcs_query(SymbolId a, SymbolId b) const {
  const NormalizedTslp& n = nav_->normalized();
  if (a >= splits_.size() || b >= splits_.size() || n.form(a) != RuleForm::a || n.form(b) != RuleForm::a)
    throw std::invalid_argument("lcs_query expects nonterminals with a spine");
  return patricia_.query(splits_[a].leaf, splits_[b].leaf);
}

bool EqualityIndex::subtree_eq(const TreeCursor& c1, const TreeCursor& c2, StepCounters* counters) const {
  if (&c1.navigator() != nav_.get() || &c2.navigator() != nav_.get() || c1.splits() != &points_ ||
      c2.splits() != &points_)
    throw std::invalid_argument("cursors do not belong to this equality index");
  if (c1.rank() == 0 || c2.rank() == 0) return c1.rank() == c2.rank() && c1.label() == c2.label();
  const TreeCursor::Frame* f1 = c1.active_frame();
  const TreeCursor::Frame* f2 = c2.active_frame();
  SymbolId a1 = nav_->to_g(f1->head), a2 = nav_->to_g(f2->head);
  const SpineSplit& s1 = splits_[a1];
  const SpineSplit& s2 = splits_[a2];
  if (s1.s - f1->pos != s2.s - f2->pos) return false;
  std::uint64_t k = s1.s - 1 - f1->pos;
  if (counters) ++counters->lca;
  if (k > lcs_query(a1, a2)) return false;
  return s1.r_term == s2.r_term;
}

std::string EqualityIndex::stats() const {
  const NormalizedTslp& n = nav_->normalized();
  const SymbolTable& sym = n.grammar.symbols;
  std::string out = "merged " + std::to_string(reduced_.merged) + "\n";
  for (SymbolId a : strings_) {
    const SpineSplit& sp = splits_[a];
    out += sym.name(a) + " l=" + std::to_string(sp.length) + " s=" + std::to_string(sp.s) + " prime=" +
           sym.name(sp.prime) + " r=" + to_text(n.grammar.rhs[sp.r_symbol], sym) + "\n";
  }
  return out;
}

}  // namespace gct
