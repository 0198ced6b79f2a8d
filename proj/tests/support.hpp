#pragma once

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gct/core_model.hpp"

namespace testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(GCT_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline gct::Tslp data_tslp(const std::string& name) { return gct::parse_tslp(read_data(name)); }
inline gct::Slp data_slp(const std::string& name) { return gct::parse_slp(read_data(name)); }

// Random SLP over {a,b,c}; rule R<i> uses terminals and earlier rules.
inline gct::Slp random_slp(std::mt19937_64& rng, int rules, int max_rhs = 4) {
  gct::Slp g;
  std::vector<gct::SymbolId> pool;
  for (const char* t : {"a", "b", "c"}) pool.push_back(g.add_terminal(t));
  std::size_t terminals = pool.size();
  for (int i = 0; i < rules; ++i) {
    int n = std::uniform_int_distribution<int>(1, max_rhs)(rng);
    std::vector<gct::SymbolId> body;
    for (int k = 0; k < n; ++k) {
      // prefer recent rules so that strings grow
      std::size_t lo = pool.size() > terminals + 3 && rng() % 2 ? pool.size() - 3 : 0;
      body.push_back(pool[std::uniform_int_distribution<std::size_t>(lo, pool.size() - 1)(rng)]);
    }
    pool.push_back(g.add_rule("R" + std::to_string(i), std::move(body)));
  }
  return g;
}

// Random TSLP with nonterminal ranks up to max_rank over the terminals
// a, b (rank 0), g (1), f (2), h (3). The last rule is the start.
inline gct::Tslp random_tslp(std::mt19937_64& rng, int rules, std::uint32_t max_rank, int budget = 3) {
  gct::Tslp g;
  struct Sym {
    gct::SymbolId id;
    std::uint32_t rank;
  };
  std::vector<Sym> pool;
  for (auto [n, r] : {std::pair{"a", 0u}, {"b", 0u}, {"g", 1u}, {"f", 2u}, {"h", 3u}})
    pool.push_back({g.terminal(n, r), r});
  auto coin = [&](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng) == 0; };
  std::function<gct::Term(int, std::vector<std::uint32_t>)> gen = [&](int b, std::vector<std::uint32_t> params) {
    if (params.size() == 1 && (b <= 0 || coin(3))) return gct::Term{g.symbols.parameter(params[0]), {}};
    Sym s{};
    if (b <= 0) {
      if (params.empty()) {
        std::vector<Sym> leaves;
        for (const Sym& p : pool)
          if (p.rank == 0) leaves.push_back(p);
        s = leaves[rng() % leaves.size()];
      } else {
        s = pool[3];  // f
      }
    } else {
      std::vector<Sym> ok;
      for (const Sym& p : pool)
        if (p.rank >= (params.empty() ? 0u : 1u)) ok.push_back(p);
      s = ok[rng() % ok.size()];
    }
    std::vector<std::vector<std::uint32_t>> parts(s.rank);
    std::shuffle(params.begin(), params.end(), rng);
    if (b <= 0 && params.size() > 1) {
      std::size_t half = params.size() / 2;
      parts[0].assign(params.begin(), params.begin() + half);
      parts[1].assign(params.begin() + half, params.end());
    } else {
      for (std::uint32_t p : params) parts[rng() % s.rank].push_back(p);
    }
    gct::Term t{s.id, {}};
    for (auto& part : parts) t.children.push_back(gen(b - 1, part));
    return t;
  };
  for (int i = 0; i < rules; ++i) {
    std::uint32_t rank = i + 1 == rules ? 0 : std::uniform_int_distribution<std::uint32_t>(0, max_rank)(rng);
    std::vector<std::uint32_t> params;
    for (std::uint32_t k = 1; k <= rank; ++k) params.push_back(k);
    gct::Term body = gen(budget, params);
    gct::SymbolId id = g.add_rule("N" + std::to_string(i), rank, std::move(body));
    pool.push_back({id, rank});
  }
  g.start = pool.back().id;
  return g;
}

// Random TSLP whose tree stays below max_nodes; retries with new draws.
inline gct::Tslp random_small_tslp(std::mt19937_64& rng, std::uint64_t max_nodes, std::uint32_t max_rank = 2) {
  while (true) {
    int rules = std::uniform_int_distribution<int>(1, 8)(rng);
    gct::Tslp g = random_tslp(rng, rules, max_rank);
    try {
      if (gct::tree_size(g) <= max_nodes) return g;
    } catch (const gct::Error&) {
    }
  }
}

// A decompressed tree with parent/child links and subtree extents.
struct OracleTree {
  gct::Tree t;
  std::vector<std::uint32_t> parent;
  std::vector<std::vector<std::uint32_t>> children;
  std::vector<std::uint32_t> end;  // one past the last preorder index of the subtree

  explicit OracleTree(gct::Tree tree) : t(std::move(tree)) {
    const std::size_t n = t.size();
    parent.assign(n, ~0u);
    children.resize(n);
    end.assign(n, 0);
    std::vector<std::uint32_t> open;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v > 0) {
        std::uint32_t p = open.back();
        parent[v] = p;
        children[p].push_back(v);
        if (children[p].size() == t.arity[p]) open.pop_back();
      }
      if (t.arity[v] > 0) open.push_back(v);
    }
    for (std::uint32_t v = static_cast<std::uint32_t>(n); v-- > 0;)
      end[v] = children[v].empty() ? v + 1 : end[children[v].back()];
  }

  bool subtree_equal(std::uint32_t u, std::uint32_t v) const {
    if (end[u] - u != end[v] - v) return false;
    for (std::uint32_t k = 0; k < end[u] - u; ++k)
      if (t.labels[u + k] != t.labels[v + k] || t.arity[u + k] != t.arity[v + k]) return false;
    return true;
  }

  // Child indexes from the root.
  std::vector<std::uint32_t> address(std::uint32_t v) const {
    std::vector<std::uint32_t> a;
    while (parent[v] != ~0u) {
      const auto& ch = children[parent[v]];
      a.push_back(static_cast<std::uint32_t>(std::find(ch.begin(), ch.end(), v) - ch.begin()) + 1);
      v = parent[v];
    }
    return {a.rbegin(), a.rend()};
  }
};

inline std::vector<std::string> label_names(const gct::Tree& t, const gct::SymbolTable& symbols) {
  std::vector<std::string> out;
  for (gct::SymbolId s : t.labels) out.push_back(symbols.name(s));
  return out;
}

}  // namespace testing
