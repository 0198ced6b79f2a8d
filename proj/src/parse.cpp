#include <algorithm>
#include <set>
#include <unordered_map>

#include "gct/core_model.hpp"

namespace gct {
namespace {

enum class Tok { ident, lparen, rparen, comma, arrow, end };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

[[noreturn]] void syntax_error(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::syntax,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what, line);
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  auto ident_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (c == '(') {
      out.push_back({Tok::lparen, line.substr(i, 1), col});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, line.substr(i, 1), col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::comma, line.substr(i, 1), col});
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::arrow, line.substr(i, 2), col});
      i += 2;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      auto word = line.substr(i, j - i);
      if (!is_identifier(word)) syntax_error(line_no, col, "bad identifier '" + std::string(word) + "'");
      out.push_back({Tok::ident, word, col});
      i = j;
    } else {
      syntax_error(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::end, {}, line.size() + 1});
  return out;
}

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto tokens = tokenize(line, line_no);
    if (tokens.size() > 1) lines.push_back({line_no, std::move(tokens)});
  }
  return lines;
}

}  // namespace

Slp parse_slp(std::string_view text) {
  struct RawRule {
    std::size_t line;
    std::string_view head;
    std::vector<Token> body;
  };
  std::vector<RawRule> raw;
  std::vector<std::string_view> declared;
  bool has_declaration = false;

  for (auto& [line_no, toks] : split_lines(text)) {
    if (toks[0].kind == Tok::ident && toks[0].text == "terminals" && toks[1].kind != Tok::arrow) {
      has_declaration = true;
      for (std::size_t i = 1; toks[i].kind != Tok::end; ++i) {
        if (toks[i].kind != Tok::ident) syntax_error(line_no, toks[i].column, "expected terminal name");
        declared.push_back(toks[i].text);
      }
      continue;
    }
    if (toks[0].kind != Tok::ident) syntax_error(line_no, toks[0].column, "expected nonterminal");
    if (toks[1].kind != Tok::arrow) syntax_error(line_no, toks[1].column, "expected '->'");
    RawRule r{line_no, toks[0].text, {}};
    for (std::size_t i = 2; toks[i].kind != Tok::end; ++i) {
      if (toks[i].kind != Tok::ident) syntax_error(line_no, toks[i].column, "expected symbol");
      r.body.push_back(toks[i]);
    }
    raw.push_back(std::move(r));
  }
  if (raw.empty()) throw Error(ErrorCode::syntax, "no rules", 0);

  Slp g;
  for (const auto& r : raw) {
    if (g.symbols.find(r.head)) syntax_error(r.line, 1, "duplicate rule for '" + std::string(r.head) + "'");
    g.symbols.add(std::string(r.head), SymbolKind::nonterminal, 0);
    g.rules.push_back(static_cast<SymbolId>(g.symbols.size() - 1));
  }
  for (auto name : declared) {
    if (auto id = g.symbols.find(name)) {
      if (g.symbols.is_nonterminal(*id))
        throw Error(ErrorCode::undeclared_symbol, "'" + std::string(name) + "' is declared terminal but has a rule");
      continue;
    }
    g.symbols.add(std::string(name), SymbolKind::terminal, 0);
  }
  g.rhs.resize(g.symbols.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    std::vector<SymbolId> body;
    for (const Token& t : raw[k].body) {
      auto id = g.symbols.find(t.text);
      if (!id) {
        if (has_declaration)
          throw Error(ErrorCode::undeclared_symbol,
                      "line " + std::to_string(raw[k].line) + ": symbol '" + std::string(t.text) +
                          "' is neither a declared terminal nor a nonterminal",
                      raw[k].line);
        id = g.add_terminal(std::string(t.text));
      }
      body.push_back(*id);
    }
    g.rhs.resize(g.symbols.size());
    g.rhs[g.rules[k]] = std::move(body);
  }
  slp_lengths(g);  // cycle and overflow checks
  return g;
}

namespace {

class TermParser {
 public:
  TermParser(Tslp& g, std::size_t line, const std::vector<Token>& toks, std::size_t pos,
             const std::unordered_map<std::string_view, std::uint32_t>& nonterminal_rank)
      : g_(g), line_(line), toks_(toks), pos_(pos), ranks_(nonterminal_rank) {}

  Term parse() {
    Term t = parse_term();
    if (toks_[pos_].kind != Tok::end) syntax_error(line_, toks_[pos_].column, "trailing input");
    return t;
  }

 private:
  Term parse_term() {
    const Token& head = toks_[pos_];
    if (head.kind != Tok::ident) syntax_error(line_, head.column, "expected symbol");
    ++pos_;
    Term t;
    std::vector<Term> children;
    if (toks_[pos_].kind == Tok::lparen) {
      ++pos_;
      while (true) {
        children.push_back(parse_term());
        if (toks_[pos_].kind == Tok::comma) {
          ++pos_;
          continue;
        }
        if (toks_[pos_].kind == Tok::rparen) {
          ++pos_;
          break;
        }
        syntax_error(line_, toks_[pos_].column, "expected ',' or ')'");
      }
    }
    auto arity = static_cast<std::uint32_t>(children.size());
    if (std::uint32_t k = parameter_index(head.text)) {
      if (arity != 0) syntax_error(line_, head.column, "parameter '" + std::string(head.text) + "' has arguments");
      t.label = g_.symbols.parameter(k);
    } else if (auto it = ranks_.find(head.text); it != ranks_.end()) {
      if (it->second != arity)
        throw Error(ErrorCode::rank_mismatch,
                    "line " + std::to_string(line_) + ": nonterminal '" + std::string(head.text) + "' has rank " +
                        std::to_string(it->second) + " but is applied to " + std::to_string(arity) + " arguments",
                    line_);
      t.label = g_.symbols.require(head.text);
    } else {
      if (auto id = g_.symbols.find(head.text); id && g_.symbols[*id].rank != arity)
        throw Error(ErrorCode::rank_mismatch,
                    "line " + std::to_string(line_) + ": terminal '" + std::string(head.text) + "' used with ranks " +
                        std::to_string(g_.symbols[*id].rank) + " and " + std::to_string(arity),
                    line_);
      t.label = g_.terminal(head.text, arity);
    }
    t.children = std::move(children);
    return t;
  }

  Tslp& g_;
  std::size_t line_;
  const std::vector<Token>& toks_;
  std::size_t pos_;
  const std::unordered_map<std::string_view, std::uint32_t>& ranks_;
};

}  // namespace

Tslp parse_tslp(std::string_view text) {
  struct RawRule {
    std::size_t line;
    std::string_view head;
    std::uint32_t rank;
    std::vector<Token> tokens;
    std::size_t body_start;
  };
  std::vector<RawRule> raw;
  std::optional<std::pair<std::size_t, std::string_view>> start;

  for (auto& [line_no, toks] : split_lines(text)) {
    if (toks[0].kind == Tok::ident && toks[0].text == "start" && toks[1].kind == Tok::ident) {
      if (toks[2].kind != Tok::end) syntax_error(line_no, toks[2].column, "trailing input after start symbol");
      if (start) syntax_error(line_no, 1, "duplicate start line");
      start = {line_no, toks[1].text};
      continue;
    }
    if (toks[0].kind != Tok::ident) syntax_error(line_no, toks[0].column, "expected nonterminal");
    if (parameter_index(toks[0].text) != 0)
      syntax_error(line_no, 1, "parameter name '" + std::string(toks[0].text) + "' cannot head a rule");
    std::size_t pos = 1;
    std::uint32_t rank = 0;
    if (toks[pos].kind == Tok::lparen) {
      ++pos;
      while (true) {
        const Token& p = toks[pos];
        if (p.kind != Tok::ident || parameter_index(p.text) != rank + 1)
          throw Error(ErrorCode::parameter_mismatch,
                      "line " + std::to_string(line_no) + ": expected parameter x" + std::to_string(rank + 1), line_no);
        ++rank;
        ++pos;
        if (toks[pos].kind == Tok::comma) {
          ++pos;
          continue;
        }
        if (toks[pos].kind == Tok::rparen) {
          ++pos;
          break;
        }
        syntax_error(line_no, toks[pos].column, "expected ',' or ')'");
      }
    }
    if (toks[pos].kind != Tok::arrow) syntax_error(line_no, toks[pos].column, "expected '->'");
    raw.push_back({line_no, toks[0].text, rank, std::move(toks), pos + 1});
  }
  if (raw.empty()) throw Error(ErrorCode::syntax, "no rules", 0);

  Tslp g;
  std::unordered_map<std::string_view, std::uint32_t> ranks;
  for (const auto& r : raw) {
    if (ranks.contains(r.head)) syntax_error(r.line, 1, "duplicate rule for '" + std::string(r.head) + "'");
    ranks.emplace(r.head, r.rank);
    g.declare(std::string(r.head), r.rank);
  }
  for (const auto& r : raw) {
    SymbolId head = g.symbols.require(r.head);
    g.rhs[head] = TermParser(g, r.line, r.tokens, r.body_start, ranks).parse();
    g.rhs.resize(g.symbols.size());
  }
  g.rhs.resize(g.symbols.size());
  if (start) {
    auto id = g.symbols.find(start->second);
    if (!id || !g.symbols.is_nonterminal(*id))
      throw Error(ErrorCode::undeclared_symbol,
                  "line " + std::to_string(start->first) + ": start symbol '" + std::string(start->second) +
                      "' has no rule",
                  start->first);
    g.start = *id;
  } else {
    g.start = g.rules.front();
  }
  validate(g);
  return g;
}

}  // namespace gct
