#include <atomic>
#include <random>

#include "gct/slp_algorithms.hpp"

namespace gct {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kFingerprintModulus);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kFingerprintModulus) r -= kFingerprintModulus;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kFingerprintModulus ? r - kFingerprintModulus : r;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kFingerprintModulus - b; }

}  // namespace

Fingerprint concat(const Fingerprint& a, const Fingerprint& b) {
  return {addmod(mulmod(a.hash, b.pow), b.hash), mulmod(a.pow, b.pow), a.len + b.len};
}

std::uint64_t terminal_code(const Symbol& s) {
  // FNV-1a over name and rank
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (char c : s.name) mix(static_cast<unsigned char>(c));
  mix(0);
  for (int k = 0; k < 4; ++k) mix(static_cast<unsigned char>(s.rank >> (8 * k)));
  return h % (kFingerprintModulus - 1) + 1;
}

std::uint64_t random_base(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1u << 16, kFingerprintModulus - 2);
  return pick(rng);
}

FingerprintIndex::FingerprintIndex(const Slp& g, std::uint64_t base) : g_(&g), base_(base % kFingerprintModulus) {
  if (base_ < 2) throw Error(ErrorCode::invalid_argument, "fingerprint base must be at least 2");
  whole_.resize(g.symbols.size());
  for (SymbolId s = 0; s < g.symbols.size(); ++s)
    if (!g.symbols.is_nonterminal(s)) whole_[s] = {terminal_code(g.symbols[s]), base_, 1};
  slp_lengths(g);  // overflow check
  for (SymbolId a : topological_order(g)) {
    Fingerprint f;
    for (SymbolId s : g.rhs[a]) f = concat(f, whole_[s]);
    whole_[a] = f;
  }
}

Fingerprint FingerprintIndex::prefix(SymbolId x, std::uint64_t n) const {
  if (n > length(x)) throw Error(ErrorCode::out_of_range, "prefix length exceeds string length", n);
  Fingerprint acc;
  SymbolId v = x;
  while (n > 0) {
    if (n == whole_[v].len) {
      acc = concat(acc, whole_[v]);
      break;
    }
    for (SymbolId s : g_->rhs[v]) {
      if (whole_[s].len <= n) {
        acc = concat(acc, whole_[s]);
        n -= whole_[s].len;
      } else {
        v = s;
        break;
      }
    }
  }
  return acc;
}

Fingerprint FingerprintIndex::power(std::uint64_t len) const {
  std::uint64_t r = 1, b = base_;
  for (std::uint64_t e = len; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
  }
  return {0, r, len};
}

Fingerprint FingerprintIndex::substring(SymbolId x, std::uint64_t i, std::uint64_t j) const {
  if (j < i) return {};
  if (i == 0 || j > length(x)) throw Error(ErrorCode::out_of_range, "substring out of range", j);
  Fingerprint whole = prefix(x, j);
  Fingerprint head = prefix(x, i - 1);
  Fingerprint p = power(j - i + 1);
  return {submod(whole.hash, mulmod(head.hash, p.pow)), p.pow, p.len};
}

SymbolId FingerprintIndex::symbol_at(SymbolId x, std::uint64_t i) const {
  if (i == 0 || i > length(x))
    throw Error(ErrorCode::out_of_range,
                "position " + std::to_string(i) + " outside 1.." + std::to_string(length(x)), i);
  SymbolId v = x;
  while (g_->symbols.is_nonterminal(v)) {
    for (SymbolId s : g_->rhs[v]) {
      if (i <= whole_[s].len) {
        v = s;
        break;
      }
      i -= whole_[s].len;
    }
  }
  return v;
}

namespace {
std::atomic<std::uint64_t> contradictions{0};

bool same_symbol(const FingerprintIndex& a, SymbolId s, const FingerprintIndex& b, SymbolId t) {
  const Symbol& x = a.slp().symbols[s];
  const Symbol& y = b.slp().symbols[t];
  return x.name == y.name && x.rank == y.rank;
}

[[noreturn]] void contradiction(std::uint64_t at) {
  contradictions.fetch_add(1, std::memory_order_relaxed);
  throw Error(ErrorCode::fingerprint_contradiction, "fingerprint verification failed at position " + std::to_string(at),
              at);
}

void require_same_base(const FingerprintIndex& a, const FingerprintIndex& b) {
  if (a.base() != b.base()) throw Error(ErrorCode::invalid_argument, "fingerprint indexes use different bases");
}

}  // namespace

std::uint64_t fingerprint_contradictions() { return contradictions.load(std::memory_order_relaxed); }

std::uint64_t lcp(const FingerprintIndex& a, SymbolId x1, const FingerprintIndex& b, SymbolId x2) {
  require_same_base(a, b);
  const std::uint64_t n = std::min(a.length(x1), b.length(x2));
  std::uint64_t lo = 0, hi = n;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (a.prefix(x1, mid) == b.prefix(x2, mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo < n && same_symbol(a, a.symbol_at(x1, lo + 1), b, b.symbol_at(x2, lo + 1))) contradiction(lo + 1);
  if (lo > 0 && !same_symbol(a, a.symbol_at(x1, lo), b, b.symbol_at(x2, lo))) contradiction(lo);
  return lo;
}

std::uint64_t lcs_of_prefixes(const FingerprintIndex& a, SymbolId x1, std::uint64_t n1, const FingerprintIndex& b,
                              SymbolId x2, std::uint64_t n2) {
  require_same_base(a, b);
  const std::uint64_t n = std::min(n1, n2);
  std::uint64_t lo = 0, hi = n;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (a.substring(x1, n1 - mid + 1, n1) == b.substring(x2, n2 - mid + 1, n2))
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo < n && same_symbol(a, a.symbol_at(x1, n1 - lo), b, b.symbol_at(x2, n2 - lo))) contradiction(n1 - lo);
  if (lo > 0 && !same_symbol(a, a.symbol_at(x1, n1 - lo + 1), b, b.symbol_at(x2, n2 - lo + 1)))
    contradiction(n1 - lo + 1);
  return lo;
}

std::uint64_t lcp(const Slp& g1, SymbolId x1, const Slp& g2, SymbolId x2, std::uint64_t seed) {
  std::uint64_t base = random_base(seed);
  FingerprintIndex a(g1, base), b(g2, base);
  return lcp(a, x1, b, x2);
}

}  // namespace gct
