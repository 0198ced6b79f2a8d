#include "gct/core_model.hpp"

namespace gct {

std::vector<SymbolId> eval_slp(const Slp& g, SymbolId x, std::uint64_t guard) {
  auto len = slp_lengths(g);
  if (len[x] > guard)
    throw Error(ErrorCode::guard_exceeded,
                "string of length " + std::to_string(len[x]) + " exceeds guard " + std::to_string(guard), len[x]);
  std::vector<SymbolId> out;
  out.reserve(len[x]);
  std::vector<std::pair<SymbolId, std::size_t>> stack{{x, 0}};
  if (!g.symbols.is_nonterminal(x)) return {x};
  while (!stack.empty()) {
    auto& [a, next] = stack.back();
    if (next == g.rhs[a].size()) {
      stack.pop_back();
      continue;
    }
    SymbolId s = g.rhs[a][next++];
    if (g.symbols.is_nonterminal(s))
      stack.emplace_back(s, 0);
    else
      out.push_back(s);
  }
  return out;
}

namespace {

// Linear substitution is evaluated lazily: a parameter resolves to the
// argument term of the enclosing call, evaluated in the caller's context.
// Each argument is consumed exactly once because right-hand sides are linear.
struct Closure {
  const Term* term;
  std::uint32_t env;
};

constexpr std::uint32_t kNoEnv = ~std::uint32_t{0};

}  // namespace

Tree eval_tslp(const Tslp& g, const Term& t, std::uint64_t guard) {
  auto sizes = tree_sizes(g);
  struct Count {
    const std::vector<std::uint64_t>& sizes;
    const SymbolTable& symbols;
    std::uint64_t operator()(const Term& u) const {
      std::uint64_t n = symbols.is_parameter(u.label) ? 1 : sizes[u.label];
      for (const Term& c : u.children) n = checked_add(n, (*this)(c));
      return n;
    }
  };
  std::uint64_t total = Count{sizes, g.symbols}(t);
  if (total > guard)
    throw Error(ErrorCode::guard_exceeded,
                "tree of size " + std::to_string(total) + " exceeds guard " + std::to_string(guard), total);

  Tree out;
  out.labels.reserve(total);
  out.arity.reserve(total);
  // envs[e] is a slice [begin, begin+count) of args; parent env for nesting.
  struct Env {
    std::size_t begin;
    std::uint32_t count;
  };
  std::vector<Env> envs;
  std::vector<Closure> args;
  std::vector<Closure> work{{&t, kNoEnv}};
  while (!work.empty()) {
    Closure c = work.back();
    work.pop_back();
    const Term& u = *c.term;
    const Symbol& s = g.symbols[u.label];
    if (s.kind == SymbolKind::parameter && c.env != kNoEnv) {
      work.push_back(args[envs[c.env].begin + s.param_index - 1]);
    } else if (s.kind == SymbolKind::nonterminal) {
      auto env = static_cast<std::uint32_t>(envs.size());
      envs.push_back({args.size(), static_cast<std::uint32_t>(u.children.size())});
      for (const Term& child : u.children) args.push_back({&child, c.env});
      work.push_back({&g.rhs[u.label], env});
    } else {
      out.labels.push_back(u.label);
      out.arity.push_back(static_cast<std::uint32_t>(u.children.size()));
      for (auto it = u.children.rbegin(); it != u.children.rend(); ++it) work.push_back({&*it, c.env});
    }
  }
  return out;
}

Tree eval_tslp(const Tslp& g, SymbolId nonterminal, std::uint64_t guard) {
  Term t{nonterminal, {}};
  std::vector<Term> params;
  for (std::uint32_t k = 1; k <= g.rank(nonterminal); ++k) {
    auto id = g.symbols.find("x" + std::to_string(k));
    if (!id) throw Error(ErrorCode::invalid_argument, "cannot evaluate a context without parameter symbols");
    t.children.push_back(Term{*id, {}});
  }
  return eval_tslp(g, t, guard);
}

Tree eval_tslp(const Tslp& g, std::uint64_t guard) { return eval_tslp(g, g.start, guard); }

std::string render(const Tree& t, const SymbolTable& symbols) {
  std::string out;
  // remaining children per open node
  std::vector<std::uint32_t> open;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += symbols.name(t.labels[i]);
    if (t.arity[i] > 0) {
      out += '(';
      open.push_back(t.arity[i]);
      continue;
    }
    while (!open.empty()) {
      if (--open.back() > 0) {
        out += ',';
        break;
      }
      out += ')';
      open.pop_back();
    }
  }
  return out;
}

}  // namespace gct
