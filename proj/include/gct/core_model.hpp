#pragma once

// Grammar data model: symbols, string SLPs, tree SLPs, their text formats,
// brute-force evaluation and the normalizations used by the navigators.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gct {

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = ~SymbolId{0};

// Every length and tree size must stay below this bound.
inline constexpr std::uint64_t kMaxLength = std::uint64_t{1} << 63;
inline constexpr std::uint64_t kDefaultGuard = 1'000'000;

enum class ErrorCode {
  syntax,
  cycle,
  undeclared_symbol,
  rank_mismatch,
  nonlinear,
  parameter_mismatch,
  overflow,
  guard_exceeded,
  out_of_range,
  degenerate,
  invalid_argument,
  fingerprint_contradiction,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::uint64_t value = 0);

  ErrorCode code() const noexcept { return code_; }
  // Extra payload: exact size for guard_exceeded, line number for syntax.
  std::uint64_t value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::uint64_t value_;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

enum class SymbolKind : std::uint8_t { terminal, nonterminal, parameter };

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::terminal;
  std::uint32_t rank = 0;
  std::uint32_t param_index = 0;  // k for parameter x_k
};

class SymbolTable {
 public:
  SymbolId add(std::string name, SymbolKind kind, std::uint32_t rank);
  // Adds a symbol whose name starts with `base` and is not taken yet.
  SymbolId add_fresh(std::string_view base, SymbolKind kind, std::uint32_t rank);
  SymbolId parameter(std::uint32_t k);

  std::optional<SymbolId> find(std::string_view name) const;
  SymbolId require(std::string_view name) const;

  const Symbol& operator[](SymbolId id) const { return symbols_[id]; }
  Symbol& at(SymbolId id) { return symbols_.at(id); }
  std::size_t size() const noexcept { return symbols_.size(); }

  bool is_nonterminal(SymbolId id) const { return symbols_[id].kind == SymbolKind::nonterminal; }
  bool is_terminal(SymbolId id) const { return symbols_[id].kind == SymbolKind::terminal; }
  bool is_parameter(SymbolId id) const { return symbols_[id].kind == SymbolKind::parameter; }
  const std::string& name(SymbolId id) const { return symbols_[id].name; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> index_;
};

// Returns k if `name` is a reserved parameter name x1, x2, ..., else 0.
std::uint32_t parameter_index(std::string_view name);
bool is_identifier(std::string_view name);

// ---------------------------------------------------------------------------
// String straight-line programs

struct Slp {
  SymbolTable symbols;
  std::vector<SymbolId> rules;               // nonterminals, declaration order
  std::vector<std::vector<SymbolId>> rhs;    // indexed by symbol id

  SymbolId add_rule(std::string name, std::vector<SymbolId> body);
  SymbolId add_terminal(std::string name, std::uint32_t rank = 0);
  const std::vector<SymbolId>& body(SymbolId id) const { return rhs[id]; }
  std::vector<SymbolId> terminals() const;
  // Total right-hand side length.
  std::uint64_t size() const;
};

Slp parse_slp(std::string_view text);
std::string to_text(const Slp& g);

// |val(A)| for every symbol (1 for terminals). Throws overflow past 2^63.
std::vector<std::uint64_t> slp_lengths(const Slp& g);
// Nonterminals ordered so that every rule comes after the rules it uses.
std::vector<SymbolId> topological_order(const Slp& g);

std::vector<SymbolId> eval_slp(const Slp& g, SymbolId x, std::uint64_t guard = kDefaultGuard);
// Joins terminal names; with an empty separator "aab" style output.
std::string spell(const SymbolTable& symbols, const std::vector<SymbolId>& word,
                  std::string_view separator = "");

struct BinarizedSlp {
  Slp slp;
  // Nonterminals deriving fewer than two symbols; they are inlined away.
  std::vector<std::string> eliminated;
};

BinarizedSlp binarize_slp(const Slp& g);

// ---------------------------------------------------------------------------
// Tree straight-line programs

struct Term {
  SymbolId label = kNoSymbol;
  std::vector<Term> children;

  friend bool operator==(const Term&, const Term&) = default;
};

std::uint64_t term_size(const Term& t, const SymbolTable& symbols);  // parameters excluded

struct Tslp {
  SymbolTable symbols;
  std::vector<SymbolId> rules;   // nonterminals, declaration order
  std::vector<Term> rhs;         // indexed by symbol id
  SymbolId start = kNoSymbol;

  SymbolId add_rule(std::string name, std::uint32_t rank, Term body);
  // Declares a nonterminal whose body is filled in later.
  SymbolId declare(std::string name, std::uint32_t rank);
  SymbolId terminal(std::string_view name, std::uint32_t rank);
  const Term& body(SymbolId id) const { return rhs[id]; }
  std::uint32_t rank(SymbolId id) const { return symbols[id].rank; }
  // Size as the total number of non-parameter nodes over all right-hand sides.
  std::uint64_t size() const;
};

Tslp parse_tslp(std::string_view text);
std::string to_text(const Tslp& g);
std::string to_text(const Term& t, const SymbolTable& symbols);

// Structural checks: ranks, linearity, parameter sets, acyclicity, size bound.
void validate(const Tslp& g);
std::vector<SymbolId> topological_order(const Tslp& g);
// Drops rules not reachable from the start; names and rule order are kept.
Tslp prune_unreachable(const Tslp& g);
// Number of non-parameter nodes of val(A) for every nonterminal.
std::vector<std::uint64_t> tree_sizes(const Tslp& g);
std::uint64_t tree_size(const Tslp& g);

// A ranked tree stored as its preorder label sequence.
struct Tree {
  std::vector<SymbolId> labels;
  std::vector<std::uint32_t> arity;

  std::size_t size() const noexcept { return labels.size(); }
  friend bool operator==(const Tree&, const Tree&) = default;
};

Tree eval_tslp(const Tslp& g, const Term& t, std::uint64_t guard = kDefaultGuard);
Tree eval_tslp(const Tslp& g, SymbolId nonterminal, std::uint64_t guard = kDefaultGuard);
Tree eval_tslp(const Tslp& g, std::uint64_t guard = kDefaultGuard);
std::string render(const Tree& t, const SymbolTable& symbols);

Tslp monadize(const Tslp& g);

enum class RuleForm : std::uint8_t { none, a, b, c, d };
char to_char(RuleForm form);

// Decoded shape of one normalized rule.
struct NormalRule {
  RuleForm form = RuleForm::none;
  SymbolId outer = kNoSymbol;       // a, b: B in B(C) / B(C(x))
  SymbolId inner = kNoSymbol;       // a, b: C
  SymbolId terminal = kNoSymbol;    // c, d
  std::vector<SymbolId> args;       // d: A_1..A_n, kNoSymbol at the hole
  std::uint32_t hole = 0;           // d: 1-based position of x
};

struct NormalizedTslp {
  Tslp grammar;
  std::vector<NormalRule> rules;    // indexed by symbol id

  // Checks that every rule has one of the forms a-d and decodes it.
  static NormalizedTslp classify(Tslp g);

  RuleForm form(SymbolId id) const { return rules[id].form; }
  bool in_n1(SymbolId id) const { return form(id) == RuleForm::a || form(id) == RuleForm::b; }
  bool in_n2(SymbolId id) const { return form(id) == RuleForm::c || form(id) == RuleForm::d; }
  std::vector<SymbolId> with_form(RuleForm f) const;
};

NormalizedTslp normalize_monadic(const Tslp& g);
// monadize followed by normalize_monadic.
NormalizedTslp normalize(const Tslp& g);

enum class GenerateMode { chain, balanced, random };
std::optional<GenerateMode> parse_generate_mode(std::string_view name);

// A normal-form TSLP whose tree has between 2^k and 2^(k+1) nodes.
Tslp generate_tslp(GenerateMode mode, unsigned size_exp, std::uint64_t seed);

}  // namespace gct
