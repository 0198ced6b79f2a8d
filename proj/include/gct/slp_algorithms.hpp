#pragma once

#include <cstdint>
#include <vector>

#include "gct/core_model.hpp"

namespace gct {

// Polynomial hash modulo 2^61 - 1 with its length and base^length.
struct Fingerprint {
  std::uint64_t hash = 0;
  std::uint64_t pow = 1;
  std::uint64_t len = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline constexpr std::uint64_t kFingerprintModulus = (std::uint64_t{1} << 61) - 1;

Fingerprint concat(const Fingerprint& a, const Fingerprint& b);
// Hash code of a terminal; depends only on its name and rank.
std::uint64_t terminal_code(const Symbol& s);
std::uint64_t random_base(std::uint64_t seed);

// Fingerprints and lengths of every symbol of an SLP.
class FingerprintIndex {
 public:
  FingerprintIndex(const Slp& g, std::uint64_t base);

  const Slp& slp() const noexcept { return *g_; }
  std::uint64_t base() const noexcept { return base_; }
  std::uint64_t length(SymbolId x) const { return whole_[x].len; }
  const Fingerprint& whole(SymbolId x) const { return whole_[x]; }
  // Fingerprint of val(x)[1:n].
  Fingerprint prefix(SymbolId x, std::uint64_t n) const;
  // Fingerprint of val(x)[i:j], 1-based and inclusive; empty when j < i.
  Fingerprint substring(SymbolId x, std::uint64_t i, std::uint64_t j) const;
  // val(x)[i]
  SymbolId symbol_at(SymbolId x, std::uint64_t i) const;

 private:
  Fingerprint power(std::uint64_t len) const;

  const Slp* g_;
  std::uint64_t base_;
  std::vector<Fingerprint> whole_;
};

// Counts fingerprint verification failures across all queries.
std::uint64_t fingerprint_contradictions();

SymbolId symbol_at(const Slp& g, SymbolId x, std::uint64_t i);

struct SlpSlice {
  Slp slp;
  SymbolId root = kNoSymbol;  // nonterminal named _slice
};
SlpSlice substring_slp(const Slp& g, SymbolId x, std::uint64_t i, std::uint64_t j);

// Longest common prefix of val(x1) and val(x2). Symbols are compared by name
// and rank; both indexes must share a base.
std::uint64_t lcp(const FingerprintIndex& a, SymbolId x1, const FingerprintIndex& b, SymbolId x2);
std::uint64_t lcp(const Slp& g1, SymbolId x1, const Slp& g2, SymbolId x2, std::uint64_t seed = 0x9e3779b97f4a7c15);
// Longest common suffix of val(x1)[1:n1] and val(x2)[1:n2].
std::uint64_t lcs_of_prefixes(const FingerprintIndex& a, SymbolId x1, std::uint64_t n1, const FingerprintIndex& b,
                              SymbolId x2, std::uint64_t n2);

// The preorder label word of a normalized TSLP as an SLP: P(A) for rank-0
// nonterminals and Pre(A), Post(A) around the parameter for rank-1 ones.
// Post(A) is kNoSymbol when it derives the empty word.
struct PreorderSlp {
  Slp slp;
  std::vector<SymbolId> word;  // indexed by grammar symbol id
  std::vector<SymbolId> pre;
  std::vector<SymbolId> post;
};
PreorderSlp preorder_slp(const NormalizedTslp& g);

bool tslp_equal(const Tslp& g1, SymbolId a1, const Tslp& g2, SymbolId a2);

}  // namespace gct
