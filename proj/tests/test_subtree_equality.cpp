#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gct/subtree_equality.hpp"
#include "support.hpp"

using namespace gct;

namespace {

std::uint64_t naive_lcp(const std::string& a, const std::string& b) {
  std::uint64_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

PatriciaTree patricia_of(const std::vector<std::string>& s) {
  PatriciaSource src;
  src.count = s.size();
  src.length = [&](std::size_t i) { return s[i].size(); };
  src.lcp = [&](std::size_t i, std::size_t j) { return naive_lcp(s[i], s[j]); };
  src.symbol = [&](std::size_t i, std::uint64_t k) { return static_cast<std::uint64_t>(s[i][k - 1]); };
  return build_patricia(src);
}

void check_patricia_shape(const PatriciaTree& t, std::size_t strings) {
  std::size_t leaves = 0;
  CHECK(t.nodes.size() <= 2 * strings - 1);
  for (const auto& n : t.nodes) {
    if (n.label == PatriciaTree::kLeaf) {
      ++leaves;
      continue;
    }
    CHECK(n.children.size() >= 2);
    for (std::uint32_t c : n.children)
      if (t.nodes[c].label != PatriciaTree::kLeaf) CHECK(t.nodes[c].label > n.label);
  }
  CHECK(leaves == strings);
}

TreeCursor walk(const EqualityIndex& idx, std::initializer_list<std::uint32_t> path) {
  TreeCursor c = idx.root();
  for (std::uint32_t i : path) REQUIRE(c.child(i));
  return c;
}

bool has_separator(const TreeCursor& c) {
  return std::any_of(c.stack().begin(), c.stack().end(), [](const Triple& t) { return t.kind == Kind::separator; });
}

// Every node of val(G) as an eq cursor, in preorder.
std::vector<TreeCursor> all_nodes(const EqualityIndex& idx) {
  std::vector<TreeCursor> out;
  std::vector<TreeCursor> work{idx.root()};
  while (!work.empty()) {
    TreeCursor c = std::move(work.back());
    work.pop_back();
    for (std::uint32_t i = c.rank(); i >= 1; --i) {
      TreeCursor d = c;
      REQUIRE(d.child(i));
      work.push_back(std::move(d));
    }
    out.push_back(std::move(c));
  }
  return out;
}

// The spine of A in the reduced grammar as grammar ids.
std::vector<SymbolId> spine(const EqualityIndex& idx, SymbolId a) {
  const TreeNavigator& nav = idx.navigator();
  std::vector<SymbolId> out;
  for (SymbolId h : eval_slp(nav.h(), nav.to_h(a), 10'000'000)) out.push_back(nav.to_g(h));
  return out;
}

// Checks s(A), A', r_A and the Patricia strings against a direct scan.
void check_splits(const EqualityIndex& idx) {
  Tslp g = idx.reduced().grammar.grammar;
  const NormalizedTslp& n = idx.reduced().grammar;
  std::map<std::string, SymbolId> rank0;
  for (SymbolId b : g.rules)
    if (g.rank(b) == 0) rank0.emplace(render(eval_tslp(g, b), g.symbols), b);
  std::map<std::string, std::uint32_t> r_ids;

  std::vector<std::string> words;
  for (SymbolId a : idx.spine_nonterminals()) {
    REQUIRE(n.form(a) == RuleForm::a);
    std::vector<SymbolId> sp = spine(idx, a);
    const SpineSplit& split = idx.splits()[a];
    CHECK(split.length == sp.size());
    std::uint64_t s = 0;
    SymbolId prime = kNoSymbol;
    for (std::uint64_t p = 2; p <= sp.size() && s == 0; ++p) {
      Term t{sp.back(), {}};
      for (std::uint64_t q = sp.size() - 1; q >= p; --q) t = Term{sp[q - 1], {std::move(t)}};
      auto it = rank0.find(render(eval_tslp(g, t), g.symbols));
      if (it != rank0.end()) {
        s = p;
        prime = it->second;
      }
    }
    REQUIRE(s != 0);
    CHECK(split.s == s);
    CHECK(split.prime == prime);
    CHECK(idx.split_points()[a].s == s);
    CHECK(split.r_symbol == sp[s - 2]);

    // r_A(A') as text identifies r_term
    Term r = g.rhs[split.r_symbol];
    for (Term& c : r.children)
      if (g.symbols.is_parameter(c.label)) c = Term{prime, {}};
    std::string text = to_text(r, g.symbols);
    auto [it, fresh] = r_ids.emplace(text, split.r_term);
    CHECK(it->second == split.r_term);
    if (fresh)
      for (auto& [other, id] : r_ids)
        if (other != text) CHECK(id != split.r_term);

    std::string w;
    for (std::uint64_t k = s - 2; k >= 1; --k) w += g.symbols.name(sp[k - 1]) + " ";
    words.push_back(w);
  }

  // lcs_query counts symbols, the words count names with separators
  auto count = [](const std::string& w, std::uint64_t chars) { return std::count(w.begin(), w.begin() + chars, ' '); };
  const auto& ids = idx.spine_nonterminals();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j) {
      std::uint64_t l = naive_lcp(words[i], words[j]);
      CHECK(idx.lcs_query(ids[i], ids[j]) == static_cast<std::uint64_t>(count(words[i], l)));
    }
  if (!ids.empty()) check_patricia_shape(idx.patricia(), ids.size());
}

}  // namespace

TEST_CASE("example 4 precomputation") {
  EqualityIndex idx(normalize(testing::data_tslp("example4.tslp")));
  const Tslp& g = idx.reduced().grammar.grammar;
  CHECK(idx.reduced().already_reduced());
  SymbolId s = g.symbols.require("S");
  const SpineSplit& sp = idx.splits()[s];
  CHECK(sp.length == 5);
  CHECK(sp.s == 3);
  CHECK(g.symbols.name(sp.prime) == "E");
  CHECK(g.symbols.name(sp.r_symbol) == "B");
  CHECK(to_text(g.rhs[sp.r_symbol], g.symbols) == "f(A,x1)");
  CHECK(idx.stats().find("S l=5 s=3 prime=E r=f(A,x1)") != std::string::npos);
  check_splits(idx);
}

TEST_CASE("example 4 boxed node equals val(E)") {
  EqualityIndex idx(normalize(testing::data_tslp("example4.tslp")));
  const SymbolTable& sym = idx.navigator().grammar().symbols;
  TreeCursor boxed = walk(idx, {1, 2});
  TreeCursor e = walk(idx, {2});
  CHECK(sym.name(boxed.label()) == "f");
  StepCounters counters;
  CHECK(idx.subtree_eq(boxed, e, &counters));
  CHECK(counters.lca <= 1);
  CHECK(idx.subtree_eq(e, boxed));
  CHECK_FALSE(idx.subtree_eq(idx.root(), e));
  CHECK_FALSE(idx.subtree_eq(walk(idx, {1}), e));
  CHECK(idx.subtree_eq(walk(idx, {1, 1}), walk(idx, {2, 1, 1})));
}

TEST_CASE("example 4 separator crossing") {
  EqualityIndex idx(normalize(testing::data_tslp("example4.tslp")));
  const SymbolTable& sym = idx.navigator().grammar().symbols;
  TreeCursor c = walk(idx, {1});
  REQUIRE(c.active_frame() != nullptr);
  CHECK(c.active_frame()->pos == 2);
  TreeCursor before = c;
  REQUIRE(c.child(2));
  CHECK(has_separator(c));
  CHECK(sym.name(c.label()) == "f");
  CHECK(c.valid());
  REQUIRE(c.parent());
  CHECK(c == before);
  CHECK(idx.root().is_root());
  TreeCursor r = idx.root();
  CHECK_FALSE(r.parent());
}

TEST_CASE("example 5 Patricia tree") {
  PatriciaTree t = patricia_of({"abba", "abbb", "ba", "baba", "babb"});
  std::multiset<std::uint64_t> labels;
  for (const auto& n : t.nodes)
    if (n.label != PatriciaTree::kLeaf) labels.insert(n.label);
  CHECK(labels == std::multiset<std::uint64_t>{0, 2, 3, 3});
  CHECK(t.to_string() == "0(3(#0,#1),2(#2,3(#3,#4)))");
  CHECK(t.query(0, 1) == 3);
  CHECK(t.query(3, 4) == 3);
  CHECK(t.query(2, 3) == 2);
  CHECK(t.query(0, 4) == 0);
  CHECK(t.query(2, 2) == 2);
  check_patricia_shape(t, 5);

  PatriciaTree two = patricia_of({"ab", "ba"});
  CHECK(two.to_string() == "0(#0,#1)");
}

TEST_CASE("Patricia trees agree with pairwise LCPs") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 500; ++round) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    std::vector<std::string> s(k);
    for (auto& w : s) {
      std::size_t len = rng() % 8;
      for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('a' + rng() % 2);
    }
    PatriciaTree t = patricia_of(s);
    check_patricia_shape(t, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) CHECK(t.query(i, j) == (i == j ? s[i].size() : naive_lcp(s[i], s[j])));
  }
}

TEST_CASE("reduce_grammar merges equal values") {
  Tslp g = parse_tslp("S -> f(A, B)\nA -> a\nB -> a\n");
  ReducedTslp r = reduce_grammar(normalize(g));
  CHECK(r.merged == 1);
  CHECK_FALSE(r.already_reduced());
  CHECK(r.representative[g.symbols.require("A")] == r.representative[g.symbols.require("B")]);
  CHECK(render(eval_tslp(r.grammar.grammar), r.grammar.grammar.symbols) == "f(a,a)");

  Tslp h = parse_tslp("S -> P(Q(a))\nP(x1) -> f(x1, b)\nQ(x1) -> f(x1, b)\n");
  ReducedTslp rh = reduce_grammar(normalize(h));
  CHECK(rh.merged >= 1);
  CHECK(render(eval_tslp(rh.grammar.grammar), rh.grammar.grammar.symbols) == "f(f(a,b),b)");
  CHECK(reduce_grammar(rh.grammar).already_reduced());
}

TEST_CASE("reduce_grammar classes match oracle values") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 300; ++round) {
    Tslp g = testing::random_small_tslp(rng, 2000, 2);
    // inject a duplicate of the start's value
    Tslp dup = g;
    dup.add_rule("Dup", 0, Term{g.start, {}});
    dup.start = dup.add_rule("Top", 0, Term{dup.terminal("f", 2), {Term{g.start, {}}, Term{dup.symbols.require("Dup"), {}}}});
    NormalizedTslp n = normalize(dup);
    ReducedTslp r = reduce_grammar(n);
    const Tslp& ng = n.grammar;
    std::map<std::pair<std::uint32_t, std::string>, SymbolId> classes;
    for (SymbolId a : ng.rules) {
      std::string v;
      if (ng.rank(a) == 0) {
        v = render(eval_tslp(ng, a), ng.symbols);
      } else {
        // substitute a fresh constant for x1
        Tslp probe = ng;
        SymbolId z = probe.terminal("zz", 0);
        v = render(eval_tslp(probe, Term{a, {Term{z, {}}}}), probe.symbols);
      }
      auto [it, fresh] = classes.emplace(std::pair{ng.rank(a), v}, r.representative[a]);
      CHECK(it->second == r.representative[a]);
      if (fresh)
        for (auto& [key, rep] : classes)
          if (key != std::pair{ng.rank(a), v}) CHECK(rep != r.representative[a]);
    }
    CHECK(r.grammar.grammar.size() <= ng.size());
    CHECK(render(eval_tslp(r.grammar.grammar), r.grammar.grammar.symbols) == render(eval_tslp(dup), dup.symbols));
    CHECK(reduce_grammar(r.grammar).already_reduced());
  }
}

TEST_CASE("subtree_eq agrees with the oracle on all pairs") {
  std::mt19937_64 rng(79);
  for (int round = 0; round < 300; ++round) {
    Tslp g = testing::random_small_tslp(rng, 400, 2);
    EqualityIndex idx(normalize(g));
    check_splits(idx);
    testing::OracleTree o(eval_tslp(g));
    std::vector<TreeCursor> nodes = all_nodes(idx);
    REQUIRE(nodes.size() == o.t.size());
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      REQUIRE(nodes[u].valid());
      for (std::size_t v = 0; v < nodes.size(); ++v) {
        StepCounters counters;
        bool got = idx.subtree_eq(nodes[u], nodes[v], &counters);
        CHECK(got == o.subtree_equal(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)));
        CHECK(counters.lca <= 1);
      }
    }
  }
}

TEST_CASE("eq navigation and plain navigation move in lockstep") {
  std::mt19937_64 rng(83);
  for (int round = 0; round < 200; ++round) {
    Tslp g = testing::random_small_tslp(rng, 10000, 2);
    NormalizedTslp n = normalize(g);
    EqualityIndex idx(n);
    TreeNavigator plain(idx.reduced().grammar);
    TreeCursor a = TreeCursor::root(plain), b = idx.root();
    const SymbolTable& sa = plain.grammar().symbols;
    const SymbolTable& sb = idx.navigator().grammar().symbols;
    for (int step = 0; step < 500; ++step) {
      REQUIRE(sa.name(a.label()) == sb.name(b.label()));
      REQUIRE(a.rank() == b.rank());
      REQUIRE(a.is_root() == b.is_root());
      bool down = a.rank() > 0 && (a.is_root() || rng() % 3 != 0);
      if (down) {
        std::uint32_t i = 1 + rng() % a.rank();
        REQUIRE(a.child(i));
        REQUIRE(b.child(i));
      } else if (!a.is_root()) {
        REQUIRE(a.parent());
        REQUIRE(b.parent());
      } else {
        break;
      }
      CHECK(b.last_step().pushes + b.last_step().pops <= 8);
      CHECK(b.last_step().next_link <= 1);
      REQUIRE(b.valid());
    }
  }
}

TEST_CASE("subtree_eq rejects cursors of another index") {
  EqualityIndex one(normalize(testing::data_tslp("example4.tslp")));
  EqualityIndex two(normalize(testing::data_tslp("example4.tslp")));
  CHECK_THROWS_AS(one.subtree_eq(one.root(), two.root()), std::invalid_argument);
  CHECK(one.subtree_eq(one.root(), one.root()));
}

TEST_CASE("lcs_query rejects nonterminals without a spine") {
  EqualityIndex idx(normalize(testing::data_tslp("example4.tslp")));
  const Tslp& g = idx.reduced().grammar.grammar;
  CHECK_THROWS_AS(idx.lcs_query(g.symbols.require("A"), g.symbols.require("S")), std::invalid_argument);
  SymbolId s = g.symbols.require("S");
  CHECK(idx.lcs_query(s, s) == idx.splits()[s].s - 2);
}
