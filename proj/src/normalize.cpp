#include <unordered_map>

#include "gct/core_model.hpp"

namespace gct {
namespace {

struct Alias {
  enum Kind { none, identity, to } kind = none;
  SymbolId target = kNoSymbol;
};

class Normalizer {
 public:
  explicit Normalizer(const Tslp& g) : g_(g), alias_(g.symbols.size()), map_(g.symbols.size(), kNoSymbol) {}

  NormalizedTslp run() {
    for (SymbolId a : g_.rules)
      if (g_.rank(a) > 1)
        throw Error(ErrorCode::invalid_argument, "grammar is not monadic: '" + g_.symbols.name(a) + "' has rank " +
                                                     std::to_string(g_.rank(a)));

    // Pass 1: resolve identity and chain rules, in dependency order.
    std::vector<Term> body(g_.symbols.size());
    for (SymbolId a : topological_order(g_)) {
      Term t = resolve(g_.rhs[a]);
      const auto& sym = g_.symbols;
      if (g_.rank(a) == 1 && sym.is_parameter(t.label)) {
        alias_[a] = {Alias::identity, kNoSymbol};
      } else if (g_.rank(a) == 1 && sym.is_nonterminal(t.label) && sym.is_parameter(t.children[0].label)) {
        alias_[a] = {Alias::to, t.label};
      } else if (g_.rank(a) == 0 && sym.is_nonterminal(t.label) && t.children.empty()) {
        if (a == g_.start)
          t = body[t.label];
        else
          alias_[a] = {Alias::to, t.label};
      }
      body[a] = std::move(t);
    }

    // Pass 2: declare surviving nonterminals in declaration order.
    for (SymbolId a : g_.rules)
      if (alias_[a].kind == Alias::none) map_[a] = h_.declare(g_.symbols.name(a), g_.rank(a));
    h_.start = map_[g_.start];
    x_ = h_.symbols.parameter(1);

    // Pass 3: split right-hand sides into forms a-d.
    for (SymbolId a : g_.rules) {
      if (alias_[a].kind != Alias::none) continue;
      base_ = g_.symbols.name(a);
      Term t = translate(body[a]);
      h_.rhs[map_[a]] = g_.rank(a) == 0 ? body0(t) : body1(t);
    }
    return NormalizedTslp::classify(prune_unreachable(h_));
  }

 private:
  // Rewrites a right-hand side so that it mentions no alias nonterminal.
  Term resolve(const Term& t) const {
    std::vector<Term> children;
    for (const Term& c : t.children) children.push_back(resolve(c));
    if (g_.symbols.is_nonterminal(t.label)) {
      const Alias& al = alias_[t.label];
      if (al.kind == Alias::identity) return std::move(children[0]);
      if (al.kind == Alias::to) return Term{al.target, std::move(children)};
    }
    return Term{t.label, std::move(children)};
  }

  Term translate(const Term& t) {
    const Symbol& s = g_.symbols[t.label];
    Term out;
    switch (s.kind) {
      case SymbolKind::parameter: out.label = x_; break;
      case SymbolKind::terminal: out.label = h_.terminal(s.name, s.rank); break;
      case SymbolKind::nonterminal: out.label = map_[t.label]; break;
    }
    for (const Term& c : t.children) out.children.push_back(translate(c));
    return out;
  }

  bool has_x(const Term& t) const {
    if (t.label == x_) return true;
    for (const Term& c : t.children)
      if (has_x(c)) return true;
    return false;
  }

  bool is_nonterminal(const Term& t) const { return h_.symbols.is_nonterminal(t.label); }

  // Normal-form body for a rank-0 term.
  Term body0(const Term& t) {
    if (t.children.empty()) return t;  // form c (or a leaf nonterminal)
    if (is_nonterminal(t)) return Term{t.label, {Term{ref0(t.children[0]), {}}}};
    // f(t1..tn) = D(tn) with D(x) = f(t1, .., t(n-1), x)
    std::vector<Term> args;
    for (std::size_t k = 0; k + 1 < t.children.size(); ++k) args.push_back(Term{ref0(t.children[k]), {}});
    args.push_back(Term{x_, {}});
    SymbolId d = intern(Term{t.label, std::move(args)}, 1);
    return Term{d, {Term{ref0(t.children.back()), {}}}};
  }

  // Normal-form body for a rank-1 term other than x and B(x).
  Term body1(const Term& t) {
    if (is_nonterminal(t)) return Term{t.label, {Term{ref1(t.children[0]), {Term{x_, {}}}}}};
    std::size_t hole = 0;
    while (!has_x(t.children[hole])) ++hole;
    std::vector<Term> args;
    for (std::size_t k = 0; k < t.children.size(); ++k)
      args.push_back(k == hole ? Term{x_, {}} : Term{ref0(t.children[k]), {}});
    if (t.children[hole].label == x_) return Term{t.label, std::move(args)};  // form d
    SymbolId d = intern(Term{t.label, std::move(args)}, 1);
    return Term{d, {Term{ref1(t.children[hole]), {Term{x_, {}}}}}};
  }

  SymbolId ref0(const Term& t) {
    if (t.children.empty() && is_nonterminal(t)) return t.label;
    return intern(body0(t), 0);
  }

  SymbolId ref1(const Term& t) {
    if (is_nonterminal(t) && t.children[0].label == x_) return t.label;
    return intern(body1(t), 1);
  }

  // Fresh nonterminal for `body`, shared between identical fresh bodies.
  SymbolId intern(Term body, std::uint32_t rank) {
    std::string key = to_text(body, h_.symbols);
    if (auto it = fresh_.find(key); it != fresh_.end()) return it->second;
    SymbolId n = h_.symbols.add_fresh(base_ + "_" + std::to_string(++counter_), SymbolKind::nonterminal, rank);
    h_.rhs.resize(h_.symbols.size());
    h_.rhs[n] = std::move(body);
    h_.rules.push_back(n);
    fresh_.emplace(std::move(key), n);
    return n;
  }

  const Tslp& g_;
  Tslp h_;
  std::vector<Alias> alias_;
  std::vector<SymbolId> map_;
  std::unordered_map<std::string, SymbolId> fresh_;
  SymbolId x_ = kNoSymbol;
  std::string base_;
  std::uint64_t counter_ = 0;
};

}  // namespace

NormalizedTslp normalize_monadic(const Tslp& g) {
  validate(g);
  return Normalizer(g).run();
}

}  // namespace gct
