#include <random>

#include "gct/core_model.hpp"

namespace gct {

std::optional<GenerateMode> parse_generate_mode(std::string_view name) {
  if (name == "chain") return GenerateMode::chain;
  if (name == "balanced") return GenerateMode::balanced;
  if (name == "random") return GenerateMode::random;
  return std::nullopt;
}

namespace {

Term leaf(SymbolId s) { return Term{s, {}}; }
Term apply(SymbolId f, std::vector<Term> args) { return Term{f, std::move(args)}; }

// S -> G_{k-1}(H), G_i(x) -> G_{i-1}(G_{i-1}(x)), G_0(x) = J(x) -> f(H, x), H -> a
Tslp chain(unsigned k) {
  Tslp g;
  SymbolId s = g.declare("S", 0);
  g.start = s;
  if (k == 0) {
    g.rhs[s] = leaf(g.terminal("a", 0));
    return g;
  }
  SymbolId h = g.declare("H", 0);
  SymbolId j = g.declare("J", 1);
  SymbolId x = g.symbols.parameter(1);
  g.rhs[h] = leaf(g.terminal("a", 0));
  g.rhs[j] = apply(g.terminal("f", 2), {leaf(h), leaf(x)});
  SymbolId prev = j;
  for (unsigned i = 1; i < k; ++i) {
    SymbolId gi = g.declare("G" + std::to_string(i), 1);
    g.rhs[gi] = apply(prev, {apply(prev, {leaf(x)})});
    prev = gi;
  }
  g.rhs[s] = apply(prev, {leaf(h)});
  return g;
}

// T_h -> D_h(T_{h-1}), D_h(x) -> f(T_{h-1}, x), T_0 -> a
Tslp balanced(unsigned k) {
  Tslp g;
  SymbolId x = g.symbols.parameter(1);
  SymbolId f = g.terminal("f", 2);
  SymbolId prev = g.declare("T0", 0);
  g.rhs[prev] = leaf(g.terminal("a", 0));
  for (unsigned h = 1; h <= k; ++h) {
    SymbolId d = g.declare("D" + std::to_string(h), 1);
    SymbolId t = g.declare("T" + std::to_string(h), 0);
    g.rhs[d] = apply(f, {leaf(prev), leaf(x)});
    g.rhs[t] = apply(d, {leaf(prev)});
    prev = t;
  }
  g.start = prev;
  return g;
}

class RandomBuilder {
 public:
  RandomBuilder(unsigned k, std::uint64_t seed) : rng_(seed), limit_(std::uint64_t{2} << k) {}

  Tslp run() {
    x_ = g_.symbols.parameter(1);
    for (const char* name : {"a", "b", "c"}) add0(leaf(g_.terminal(name, 0)), 1);
    add1(apply(g_.terminal("g", 1), {leaf(x_)}), 1);

    while (true) {
      for (int extra = pick(3); extra > 0; --extra) random_rule();
      // forced doubling of the largest context
      SymbolId d = largest1();
      if (2 * size_[d] + 1 >= limit_) {
        SymbolId c = rank0_[pick(3)];  // one of the three leaves
        SymbolId s = add0(apply(d, {leaf(c)}), size_[d] + 1);
        return finish(s);
      }
      add1(apply(d, {apply(d, {leaf(x_)})}), 2 * size_[d]);
    }
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  SymbolId fresh(std::uint32_t rank) {
    SymbolId id = g_.declare("N" + std::to_string(++counter_), rank);
    size_.resize(g_.symbols.size(), 0);
    return id;
  }
  SymbolId add0(Term body, std::uint64_t size) {
    SymbolId id = fresh(0);
    g_.rhs[id] = std::move(body);
    size_[id] = size;
    rank0_.push_back(id);
    return id;
  }
  SymbolId add1(Term body, std::uint64_t size) {
    SymbolId id = fresh(1);
    g_.rhs[id] = std::move(body);
    size_[id] = size;
    rank1_.push_back(id);
    return id;
  }

  SymbolId largest1() const {
    SymbolId best = rank1_.front();
    for (SymbolId d : rank1_)
      if (size_[d] > size_[best]) best = d;
    return best;
  }

  void random_rule() {
    switch (pick(3)) {
      case 0: {  // a: D(C)
        SymbolId d = rank1_[pick(rank1_.size())], c = rank0_[pick(rank0_.size())];
        if (size_[d] + size_[c] < limit_) add0(apply(d, {leaf(c)}), size_[d] + size_[c]);
        break;
      }
      case 1: {  // b: D(E(x))
        SymbolId d = rank1_[pick(rank1_.size())], e = rank1_[pick(rank1_.size())];
        if (size_[d] + size_[e] + 1 < limit_) add1(apply(d, {apply(e, {leaf(x_)})}), size_[d] + size_[e]);
        break;
      }
      default: {  // d: f(.., x, ..) or h(.., x, ..)
        std::uint32_t rank = 2 + static_cast<std::uint32_t>(pick(2));
        SymbolId f = g_.terminal(rank == 2 ? "f" : "h", rank);
        std::size_t hole = pick(rank);
        std::vector<Term> args;
        std::uint64_t size = 1;
        for (std::size_t i = 0; i < rank; ++i) {
          if (i == hole) {
            args.push_back(leaf(x_));
            continue;
          }
          SymbolId c = rank0_[pick(rank0_.size())];
          size += size_[c];
          args.push_back(leaf(c));
        }
        if (size + 1 < limit_) add1(apply(f, std::move(args)), size);
      }
    }
  }

  // Keeps only the rules reachable from s, renaming s to S.
  Tslp finish(SymbolId s) {
    std::vector<bool> used(g_.symbols.size(), false);
    std::vector<SymbolId> work{s};
    used[s] = true;
    while (!work.empty()) {
      SymbolId a = work.back();
      work.pop_back();
      std::vector<const Term*> terms{&g_.rhs[a]};
      while (!terms.empty()) {
        const Term* t = terms.back();
        terms.pop_back();
        if (g_.symbols.is_nonterminal(t->label) && !used[t->label]) {
          used[t->label] = true;
          work.push_back(t->label);
        }
        for (const Term& c : t->children) terms.push_back(&c);
      }
    }
    Tslp out;
    std::vector<SymbolId> map(g_.symbols.size(), kNoSymbol);
    map[s] = out.declare("S", 0);
    out.start = map[s];
    for (SymbolId a : g_.rules)
      if (used[a] && a != s) map[a] = out.declare(g_.symbols.name(a), g_.rank(a));
    for (SymbolId a : g_.rules)
      if (used[a]) out.rhs[map[a]] = copy(g_.rhs[a], out, map);
    return out;
  }

  Term copy(const Term& t, Tslp& out, const std::vector<SymbolId>& map) const {
    const Symbol& sym = g_.symbols[t.label];
    Term r;
    switch (sym.kind) {
      case SymbolKind::parameter: r.label = out.symbols.parameter(1); break;
      case SymbolKind::terminal: r.label = out.terminal(sym.name, sym.rank); break;
      case SymbolKind::nonterminal: r.label = map[t.label]; break;
    }
    for (const Term& c : t.children) r.children.push_back(copy(c, out, map));
    return r;
  }

  std::mt19937_64 rng_;
  std::uint64_t limit_;
  Tslp g_;
  SymbolId x_ = kNoSymbol;
  std::vector<std::uint64_t> size_;
  std::vector<SymbolId> rank0_, rank1_;
  std::uint64_t counter_ = 0;
};

}  // namespace

Tslp generate_tslp(GenerateMode mode, unsigned size_exp, std::uint64_t seed) {
  if (size_exp > 62) throw Error(ErrorCode::out_of_range, "size exponent must be at most 62", size_exp);
  Tslp g;
  switch (mode) {
    case GenerateMode::chain: g = chain(size_exp); break;
    case GenerateMode::balanced: g = balanced(size_exp); break;
    case GenerateMode::random:
      if (size_exp == 0) {
        g = chain(0);
        break;
      }
      g = RandomBuilder(size_exp, seed).run();
      break;
  }
  validate(g);
  return g;
}

}  // namespace gct
