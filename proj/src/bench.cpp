#include "gct/bench.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <random>
#include <sstream>

namespace gct {

namespace {

void record(BenchReport& r, const StepCounters& c, std::size_t depth) {
  r.total += c;
  r.max.pushes = std::max(r.max.pushes, c.pushes);
  r.max.pops = std::max(r.max.pops, c.pops);
  r.max.next_link = std::max(r.max.next_link, c.next_link);
  r.max.lca = std::max(r.max.lca, c.lca);
  r.max_stack_ops = std::max(r.max_stack_ops, c.pushes + c.pops);
  r.max_depth = std::max<std::uint64_t>(r.max_depth, depth);
  ++r.steps;
}

double mean(std::uint64_t total, std::uint64_t steps) { return steps ? double(total) / double(steps) : 0.0; }

}  // namespace

std::string BenchReport::to_text() const {
  std::ostringstream out;
  out << "steps " << steps << "\n"
      << "seconds " << seconds << "\n"
      << "pushes max " << max.pushes << " mean " << mean(total.pushes, steps) << "\n"
      << "pops max " << max.pops << " mean " << mean(total.pops, steps) << "\n"
      << "stack_ops max " << max_stack_ops << "\n"
      << "next_link max " << max.next_link << " mean " << mean(total.next_link, steps) << "\n"
      << "lca max " << max.lca << " mean " << mean(total.lca, steps) << "\n"
      << "max_depth " << max_depth << "\n"
      << "edge_traversals " << edge_traversals << "\n";
  if (eq_queries) out << "eq_queries " << eq_queries << " max_lca " << max_eq_lca << "\n";
  return out.str();
}

BenchReport bench_tree(const NormalizedTslp& g, const BenchOptions& opt) {
  BenchReport r;
  if (opt.steps == 0) return r;
  std::optional<EqualityIndex> eq;
  std::optional<TreeNavigator> nav;
  if (opt.eq)
    eq.emplace(g);
  else
    nav.emplace(g);
  TreeCursor c = eq ? eq->root() : TreeCursor::root(*nav);
  TreeCursor prev = c;
  std::mt19937_64 rng(opt.seed);

  auto after_move = [&](bool ok) {
    if (!ok) throw std::logic_error("navigation step failed");
    StepCounters step = c.last_step();
    if (eq) {
      StepCounters q;
      eq->subtree_eq(c, prev, &q);
      ++r.eq_queries;
      r.max_eq_lca = std::max(r.max_eq_lca, q.lca);
      step += q;
      prev = c;
    }
    record(r, step, c.stack().size());
    ++r.edge_traversals;
  };

  auto start = std::chrono::steady_clock::now();
  if (opt.walk == Walk::random) {
    for (std::uint64_t i = 0; i < opt.steps; ++i) {
      std::uint32_t rank = c.rank();
      std::uint32_t moves = rank + (c.is_root() ? 0 : 1);
      if (moves == 0) break;  // a single-node tree
      std::uint32_t m = std::uniform_int_distribution<std::uint32_t>(0, moves - 1)(rng);
      after_move(m < rank ? c.child(m + 1) : c.parent());
    }
  } else {
    std::vector<std::uint32_t> index;
    bool done = false;
    while (!done && r.steps < opt.steps) {
      if (c.rank() > 0) {
        after_move(c.child(1));
        index.push_back(1);
        continue;
      }
      while (r.steps < opt.steps) {
        if (index.empty()) {
          done = true;
          break;
        }
        after_move(c.parent());
        std::uint32_t next = index.back() + 1;
        index.pop_back();
        if (next <= c.rank() && r.steps < opt.steps) {
          after_move(c.child(next));
          index.push_back(next);
          break;
        }
      }
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BenchReport bench_string(const NextLinkIndex& idx, SymbolId x, std::uint64_t steps, std::uint64_t seed) {
  BenchReport r;
  if (steps == 0) return r;
  StringCursor c = StringCursor::begin(idx, x);
  std::mt19937_64 rng(seed);
  const std::uint64_t n = idx.length(x);
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < steps && n > 1; ++i) {
    bool right = c.pos() == 1 || (c.pos() < n && (rng() & 1));
    if (!(right ? c.right() : c.left())) throw std::logic_error("string step failed");
    record(r, c.last_step(), c.stack().size());
    ++r.edge_traversals;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace gct
