#pragma once

#include <cstdint>
#include <string>

#include "gct/subtree_equality.hpp"

namespace gct {

enum class Walk { random, dfs };

struct BenchOptions {
  Walk walk = Walk::random;
  std::uint64_t steps = 1'000'000;
  std::uint64_t seed = 1;
  // Navigate with equality cursors and compare each new node with the
  // previous one via subtree_eq.
  bool eq = false;
};

struct BenchReport {
  std::uint64_t steps = 0;
  double seconds = 0;
  StepCounters total, max;
  std::uint64_t max_stack_ops = 0;  // pushes + pops in one step
  std::uint64_t max_depth = 0;      // largest cursor stack
  std::uint64_t edge_traversals = 0;
  std::uint64_t eq_queries = 0;
  std::uint64_t max_eq_lca = 0;     // LCA queries in one subtree_eq call

  std::string to_text() const;
};

BenchReport bench_tree(const NormalizedTslp& g, const BenchOptions& options);
// Random left/right walk on the string of x in a binary SLP.
BenchReport bench_string(const NextLinkIndex& idx, SymbolId x, std::uint64_t steps, std::uint64_t seed);

}  // namespace gct
