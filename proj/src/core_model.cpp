#include "gct/core_model.hpp"

#include <algorithm>
#include <functional>
#include <charconv>

namespace gct {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "syntax error";
    case ErrorCode::cycle: return "cycle";
    case ErrorCode::undeclared_symbol: return "undeclared symbol";
    case ErrorCode::rank_mismatch: return "rank mismatch";
    case ErrorCode::nonlinear: return "nonlinear right-hand side";
    case ErrorCode::parameter_mismatch: return "parameter mismatch";
    case ErrorCode::overflow: return "size overflow";
    case ErrorCode::guard_exceeded: return "guard exceeded";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::degenerate: return "degenerate grammar";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::fingerprint_contradiction: return "fingerprint contradiction";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& message, std::uint64_t value)
    : std::runtime_error(message), code_(code), value_(value) {}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a >= kMaxLength || b >= kMaxLength - a)
    throw Error(ErrorCode::overflow, "length or size reaches 2^63");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > (kMaxLength - 1) / b)
    throw Error(ErrorCode::overflow, "length or size reaches 2^63");
  return a * b;
}

std::uint32_t parameter_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return 0;
  std::uint32_t k = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), k);
  if (ec != std::errc{} || ptr != name.data() + name.size()) return 0;
  return k;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

SymbolId SymbolTable::add(std::string name, SymbolKind kind, std::uint32_t rank) {
  if (index_.contains(name))
    throw Error(ErrorCode::invalid_argument, "symbol '" + name + "' already defined");
  auto id = static_cast<SymbolId>(symbols_.size());
  index_.emplace(name, id);
  Symbol s{std::move(name), kind, rank, 0};
  if (kind == SymbolKind::parameter) s.param_index = parameter_index(s.name);
  symbols_.push_back(std::move(s));
  return id;
}

SymbolId SymbolTable::add_fresh(std::string_view base, SymbolKind kind, std::uint32_t rank) {
  std::string name(base);
  for (std::uint64_t n = 1; index_.contains(name) || parameter_index(name) != 0; ++n)
    name = std::string(base) + "_" + std::to_string(n);
  return add(std::move(name), kind, rank);
}

SymbolId SymbolTable::parameter(std::uint32_t k) {
  std::string name = "x" + std::to_string(k);
  if (auto id = find(name)) return *id;
  return add(std::move(name), SymbolKind::parameter, 0);
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SymbolId SymbolTable::require(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorCode::invalid_argument, "unknown symbol '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

SymbolId Slp::add_rule(std::string name, std::vector<SymbolId> body) {
  SymbolId id = symbols.add(std::move(name), SymbolKind::nonterminal, 0);
  rhs.resize(symbols.size());
  rhs[id] = std::move(body);
  rules.push_back(id);
  return id;
}

SymbolId Slp::add_terminal(std::string name, std::uint32_t rank) {
  if (auto existing = symbols.find(name)) return *existing;
  SymbolId id = symbols.add(std::move(name), SymbolKind::terminal, rank);
  rhs.resize(symbols.size());
  return id;
}

std::vector<SymbolId> Slp::terminals() const {
  std::vector<SymbolId> out;
  for (SymbolId id = 0; id < symbols.size(); ++id)
    if (symbols.is_terminal(id)) out.push_back(id);
  return out;
}

std::uint64_t Slp::size() const {
  std::uint64_t n = 0;
  for (SymbolId a : rules) n += rhs[a].size();
  return n;
}

std::vector<SymbolId> topological_order(const Slp& g) {
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<std::uint8_t> state(g.symbols.size(), 0);
  std::vector<SymbolId> order;
  order.reserve(g.rules.size());
  std::vector<std::pair<SymbolId, std::size_t>> stack;
  for (SymbolId root : g.rules) {
    if (state[root] != 0) continue;
    stack.emplace_back(root, 0);
    state[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& body = g.rhs[node];
      if (next < body.size()) {
        SymbolId child = body[next++];
        if (!g.symbols.is_nonterminal(child)) continue;
        if (state[child] == 1) {
          std::string witness = g.symbols.name(child);
          auto it = std::find_if(stack.begin(), stack.end(), [&](auto& f) { return f.first == child; });
          for (++it; it != stack.end(); ++it) witness += " -> " + g.symbols.name(it->first);
          witness += " -> " + g.symbols.name(child);
          throw Error(ErrorCode::cycle, "cycle: " + witness);
        }
        if (state[child] == 0) {
          state[child] = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        state[node] = 2;
        order.push_back(node);
        stack.pop_back();
      }
    }
  }
  return order;
}

std::vector<std::uint64_t> slp_lengths(const Slp& g) {
  std::vector<std::uint64_t> len(g.symbols.size(), 1);
  for (SymbolId a : topological_order(g)) {
    std::uint64_t n = 0;
    for (SymbolId s : g.rhs[a]) n = checked_add(n, len[s]);
    len[a] = n;
  }
  return len;
}

std::string spell(const SymbolTable& symbols, const std::vector<SymbolId>& word,
                  std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != 0) out += separator;
    out += symbols.name(word[i]);
  }
  return out;
}

std::string to_text(const Slp& g) {
  std::string out;
  auto terms = g.terminals();
  if (!terms.empty()) {
    out += "terminals";
    for (SymbolId t : terms) out += " " + g.symbols.name(t);
    out += "\n";
  }
  for (SymbolId a : g.rules) {
    out += g.symbols.name(a) + " ->";
    for (SymbolId s : g.rhs[a]) out += " " + g.symbols.name(s);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t term_size(const Term& t, const SymbolTable& symbols) {
  std::uint64_t n = symbols.is_parameter(t.label) ? 0 : 1;
  for (const Term& c : t.children) n += term_size(c, symbols);
  return n;
}

SymbolId Tslp::declare(std::string name, std::uint32_t rank) {
  SymbolId id = symbols.add(std::move(name), SymbolKind::nonterminal, rank);
  rhs.resize(symbols.size());
  rules.push_back(id);
  if (start == kNoSymbol && rank == 0) start = id;
  return id;
}

SymbolId Tslp::add_rule(std::string name, std::uint32_t rank, Term body) {
  SymbolId id = declare(std::move(name), rank);
  rhs[id] = std::move(body);
  return id;
}

SymbolId Tslp::terminal(std::string_view name, std::uint32_t rank) {
  if (auto id = symbols.find(name)) {
    if (!symbols.is_terminal(*id) || symbols[*id].rank != rank)
      throw Error(ErrorCode::rank_mismatch, "terminal '" + std::string(name) + "' used with rank " +
                                                std::to_string(rank));
    return *id;
  }
  SymbolId id = symbols.add(std::string(name), SymbolKind::terminal, rank);
  rhs.resize(symbols.size());
  return id;
}

std::uint64_t Tslp::size() const {
  std::uint64_t n = 0;
  for (SymbolId a : rules) n += term_size(rhs[a], symbols);
  return n;
}

namespace {

void collect_nonterminals(const Term& t, const SymbolTable& symbols, std::vector<SymbolId>& out) {
  if (symbols.is_nonterminal(t.label)) out.push_back(t.label);
  for (const Term& c : t.children) collect_nonterminals(c, symbols, out);
}

void check_term(const Tslp& g, SymbolId head, const Term& t, std::vector<std::uint32_t>& seen) {
  const Symbol& s = g.symbols[t.label];
  const std::string where = " in rule for '" + g.symbols.name(head) + "'";
  if (s.kind == SymbolKind::parameter) {
    if (!t.children.empty()) throw Error(ErrorCode::syntax, "parameter '" + s.name + "' has children" + where);
    if (s.param_index == 0 || s.param_index > g.rank(head))
      throw Error(ErrorCode::parameter_mismatch, "parameter '" + s.name + "' not allowed" + where);
    if (seen[s.param_index - 1]++ != 0)
      throw Error(ErrorCode::nonlinear, "parameter '" + s.name + "' occurs twice" + where);
    return;
  }
  if (t.children.size() != s.rank)
    throw Error(ErrorCode::rank_mismatch, "'" + s.name + "' has rank " + std::to_string(s.rank) + " but " +
                                              std::to_string(t.children.size()) + " arguments" + where);
  for (const Term& c : t.children) check_term(g, head, c, seen);
}

}  // namespace

std::vector<SymbolId> topological_order(const Tslp& g) {
  Slp deps;  // reuse the SLP cycle check on the dependency relation
  deps.symbols = g.symbols;
  deps.rhs.resize(g.symbols.size());
  for (SymbolId a : g.rules) collect_nonterminals(g.rhs[a], g.symbols, deps.rhs[a]);
  deps.rules = g.rules;
  return topological_order(deps);
}

std::vector<std::uint64_t> tree_sizes(const Tslp& g) {
  std::vector<std::uint64_t> size(g.symbols.size(), 1);
  for (SymbolId id = 0; id < g.symbols.size(); ++id)
    if (g.symbols.is_parameter(id)) size[id] = 0;
  struct Walk {
    const std::vector<std::uint64_t>& size;
    std::uint64_t operator()(const Term& t) const {
      std::uint64_t n = size[t.label];
      for (const Term& c : t.children) n = checked_add(n, (*this)(c));
      return n;
    }
  };
  for (SymbolId a : topological_order(g)) size[a] = Walk{size}(g.rhs[a]);
  return size;
}

std::uint64_t tree_size(const Tslp& g) { return tree_sizes(g)[g.start]; }

Tslp prune_unreachable(const Tslp& g) {
  std::vector<bool> used(g.symbols.size(), false);
  std::vector<SymbolId> work{g.start};
  used[g.start] = true;
  while (!work.empty()) {
    SymbolId a = work.back();
    work.pop_back();
    std::vector<const Term*> terms{&g.rhs[a]};
    while (!terms.empty()) {
      const Term* t = terms.back();
      terms.pop_back();
      if (g.symbols.is_nonterminal(t->label) && !used[t->label]) {
        used[t->label] = true;
        work.push_back(t->label);
      }
      for (const Term& c : t->children) terms.push_back(&c);
    }
  }
  Tslp out;
  std::vector<SymbolId> map(g.symbols.size(), kNoSymbol);
  for (SymbolId a : g.rules)
    if (used[a]) map[a] = out.declare(g.symbols.name(a), g.rank(a));
  out.start = map[g.start];
  std::function<Term(const Term&)> copy = [&](const Term& t) {
    const Symbol& s = g.symbols[t.label];
    Term r;
    switch (s.kind) {
      case SymbolKind::parameter: r.label = out.symbols.parameter(s.param_index); break;
      case SymbolKind::terminal: r.label = out.terminal(s.name, s.rank); break;
      case SymbolKind::nonterminal: r.label = map[t.label]; break;
    }
    for (const Term& c : t.children) r.children.push_back(copy(c));
    return r;
  };
  for (SymbolId a : g.rules)
    if (used[a]) out.rhs[map[a]] = copy(g.rhs[a]);
  return out;
}

void validate(const Tslp& g) {
  if (g.rules.empty()) throw Error(ErrorCode::syntax, "grammar has no rules");
  if (g.start == kNoSymbol || !g.symbols.is_nonterminal(g.start))
    throw Error(ErrorCode::invalid_argument, "start symbol is not a nonterminal");
  if (g.rank(g.start) != 0) throw Error(ErrorCode::rank_mismatch, "start symbol must have rank 0");
  for (SymbolId a : g.rules) {
    std::vector<std::uint32_t> seen(g.rank(a), 0);
    if (g.rhs[a].label == kNoSymbol) throw Error(ErrorCode::syntax, "rule for '" + g.symbols.name(a) + "' is empty");
    check_term(g, a, g.rhs[a], seen);
    for (std::uint32_t k = 0; k < seen.size(); ++k)
      if (seen[k] == 0)
        throw Error(ErrorCode::parameter_mismatch,
                    "parameter x" + std::to_string(k + 1) + " missing in rule for '" + g.symbols.name(a) + "'");
  }
  tree_sizes(g);  // cycles and overflow
}

std::string to_text(const Term& t, const SymbolTable& symbols) {
  std::string out = symbols.name(t.label);
  if (!t.children.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i != 0) out += ",";
      out += to_text(t.children[i], symbols);
    }
    out += ")";
  }
  return out;
}

std::string to_text(const Tslp& g) {
  std::string out;
  if (g.start != kNoSymbol) out += "start " + g.symbols.name(g.start) + "\n";
  for (SymbolId a : g.rules) {
    out += g.symbols.name(a);
    if (g.rank(a) > 0) {
      out += "(";
      for (std::uint32_t k = 1; k <= g.rank(a); ++k) out += (k > 1 ? ",x" : "x") + std::to_string(k);
      out += ")";
    }
    out += " -> " + to_text(g.rhs[a], g.symbols) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

char to_char(RuleForm form) {
  switch (form) {
    case RuleForm::a: return 'a';
    case RuleForm::b: return 'b';
    case RuleForm::c: return 'c';
    case RuleForm::d: return 'd';
    case RuleForm::none: break;
  }
  return '-';
}

NormalizedTslp NormalizedTslp::classify(Tslp g) {
  validate(g);
  NormalizedTslp out;
  out.rules.resize(g.symbols.size());
  const auto& sym = g.symbols;
  auto fail = [&](SymbolId a) {
    throw Error(ErrorCode::invalid_argument,
                "rule for '" + sym.name(a) + "' is not in normal form: " + to_text(g.rhs[a], sym));
  };
  auto nonterminal_of_rank = [&](const Term& t, std::uint32_t rank) {
    return sym.is_nonterminal(t.label) && sym[t.label].rank == rank;
  };
  for (SymbolId a : g.rules) {
    const Term& t = g.rhs[a];
    NormalRule& r = out.rules[a];
    if (g.rank(a) > 1) fail(a);
    if (g.rank(a) == 0) {
      if (sym.is_terminal(t.label) && t.children.empty()) {
        r.form = RuleForm::c;
        r.terminal = t.label;
      } else if (nonterminal_of_rank(t, 1) && nonterminal_of_rank(t.children[0], 0)) {
        r.form = RuleForm::a;
        r.outer = t.label;
        r.inner = t.children[0].label;
      } else {
        fail(a);
      }
      continue;
    }
    if (nonterminal_of_rank(t, 1)) {
      const Term& c = t.children[0];
      if (!nonterminal_of_rank(c, 1) || !sym.is_parameter(c.children[0].label)) fail(a);
      r.form = RuleForm::b;
      r.outer = t.label;
      r.inner = c.label;
    } else if (sym.is_terminal(t.label) && !t.children.empty()) {
      r.form = RuleForm::d;
      r.terminal = t.label;
      for (std::uint32_t k = 0; k < t.children.size(); ++k) {
        const Term& c = t.children[k];
        if (sym.is_parameter(c.label)) {
          r.hole = k + 1;
          r.args.push_back(kNoSymbol);
        } else if (nonterminal_of_rank(c, 0)) {
          r.args.push_back(c.label);
        } else {
          fail(a);
        }
      }
    } else {
      fail(a);
    }
  }
  out.grammar = std::move(g);
  return out;
}

std::vector<SymbolId> NormalizedTslp::with_form(RuleForm f) const {
  std::vector<SymbolId> out;
  for (SymbolId a : grammar.rules)
    if (rules[a].form == f) out.push_back(a);
  return out;
}

NormalizedTslp normalize(const Tslp& g) { return normalize_monadic(monadize(g)); }

}  // namespace gct
