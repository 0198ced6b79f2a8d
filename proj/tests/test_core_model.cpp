#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace gct;
using testing::read_data;

TEST_CASE("parse_slp reads example 2") {
  Slp g = testing::data_slp("example2.slp");
  CHECK(g.rules.size() == 5);
  CHECK(g.terminals().size() == 2);
  CHECK(spell(g.symbols, eval_slp(g, g.symbols.require("D"))) == "ab");
  CHECK(spell(g.symbols, eval_slp(g, g.symbols.require("C"))) == "aab");
  CHECK(spell(g.symbols, eval_slp(g, g.symbols.require("S"))) == "aabaabaabaabaab");
}

TEST_CASE("parse_slp single rule and errors") {
  Slp g = parse_slp("S -> a");
  CHECK(spell(g.symbols, eval_slp(g, g.symbols.require("S"))) == "a");
  try {
    parse_slp("S -> A\nA -> S");
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cycle);
  }
  CHECK_THROWS_AS(parse_slp(""), Error);
  CHECK_THROWS_AS(parse_slp("S -> a\nS -> b"), Error);
}

TEST_CASE("eval_slp guard reports the exact length") {
  Slp g = testing::data_slp("example2.slp");
  try {
    eval_slp(g, g.symbols.require("S"), 4);
    FAIL("guard ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::guard_exceeded);
    CHECK(e.value() == 15);
  }
}

TEST_CASE("slp text round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    Slp g = testing::random_slp(rng, 6);
    Slp h = parse_slp(to_text(g));
    CHECK(to_text(h) == to_text(g));
  }
}

TEST_CASE("binarize_slp splits long rules and keeps values") {
  Slp g = parse_slp("A -> a b c");
  BinarizedSlp b = binarize_slp(g);
  CHECK(b.slp.rules.size() == 2);
  for (SymbolId a : b.slp.rules) CHECK(b.slp.rhs[a].size() == 2);
  CHECK(spell(b.slp.symbols, eval_slp(b.slp, b.slp.symbols.require("A"))) == "abc");

  Slp ex2 = testing::data_slp("example2.slp");
  CHECK(to_text(binarize_slp(ex2).slp) == to_text(ex2));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Slp r = testing::random_slp(rng, std::uniform_int_distribution<int>(1, 200)(rng) % 12 + 1);
    auto lengths = slp_lengths(r);
    if (std::none_of(r.rules.begin(), r.rules.end(), [&](SymbolId a) { return lengths[a] >= 2; })) {
      CHECK_THROWS_AS(binarize_slp(r), Error);
      continue;
    }
    BinarizedSlp h = binarize_slp(r);
    CHECK(h.slp.size() <= 2 * r.size());
    for (SymbolId a : h.slp.rules) {
      CHECK(h.slp.rhs[a].size() == 2);
      const std::string& name = h.slp.symbols.name(a);
      if (auto old = r.symbols.find(name); old && r.symbols.is_nonterminal(*old) && slp_lengths(r)[*old] <= 100000)
        CHECK(spell(h.slp.symbols, eval_slp(h.slp, a, 100000)) == spell(r.symbols, eval_slp(r, *old, 100000)));
    }
  }
}

TEST_CASE("binarize_slp on a 200 rule grammar") {
  std::mt19937_64 rng(77);
  Slp r = testing::random_slp(rng, 200, 3);
  BinarizedSlp h = binarize_slp(r);
  CHECK(h.slp.size() <= 2 * r.size());
  SymbolId first = r.rules[20];
  auto kept = h.slp.symbols.find(r.symbols.name(first));
  if (kept && slp_lengths(r)[first] <= 100000)
    CHECK(spell(h.slp.symbols, eval_slp(h.slp, *kept, 100000)) == spell(r.symbols, eval_slp(r, first, 100000)));
}

TEST_CASE("example 1 size and value") {
  Tslp g = testing::data_tslp("example1.tslp");
  CHECK(g.size() == 12);
  CHECK(tree_size(g) == 7);
  CHECK(render(eval_tslp(g), g.symbols) == "b(b(a,a),b(a,a))");
}

TEST_CASE("parse_tslp edge cases") {
  Tslp single = parse_tslp("start S\nS -> a");
  CHECK(render(eval_tslp(single), single.symbols) == "a");
  CHECK(tree_size(single) == 1);
  CHECK_THROWS_AS(parse_tslp("S -> A(B)\nA -> a\n"), Error);
  CHECK_THROWS_AS(parse_tslp("S -> A\nA(x1) -> f(x1, x1)\n"), Error);
  CHECK_THROWS_AS(parse_tslp("S -> A(a)\nA(x1) -> f(x1, x2)\n"), Error);
  CHECK_THROWS_AS(parse_tslp("S -> f(a\n"), Error);
  try {
    parse_tslp("S -> A\nA -> S\n");
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cycle);
  }
}

TEST_CASE("tslp text round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Tslp g = testing::random_tslp(rng, 6, 3);
    Tslp h = parse_tslp(to_text(g));
    CHECK(to_text(h) == to_text(g));
  }
}

TEST_CASE("eval_tslp guard and example 3") {
  Tslp g = testing::data_tslp("example3.tslp");
  Tree t = eval_tslp(g);
  CHECK(t.size() == 19);
  CHECK(render(t, g.symbols) == "f(g(g(a)),f(f(g(g(a)),f(g(g(a)),g(g(a)))),g(g(a))))");
  try {
    eval_tslp(g, std::uint64_t{10});
    FAIL("guard ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::guard_exceeded);
    CHECK(e.value() == 19);
  }
  Tslp leaf = parse_tslp("S -> A\nA -> a\n");
  CHECK(render(eval_tslp(leaf, leaf.symbols.require("A")), leaf.symbols) == "a");
}

TEST_CASE("monadize keeps values") {
  Tslp ex1 = testing::data_tslp("example1.tslp");
  Tslp m = monadize(ex1);
  for (SymbolId a : m.rules) CHECK(m.rank(a) <= 1);
  CHECK(render(eval_tslp(m), m.symbols) == render(eval_tslp(ex1), ex1.symbols));

  Tslp mono = testing::data_tslp("example3.tslp");
  CHECK(to_text(monadize(mono)) == to_text(mono));

  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    Tslp g = testing::random_small_tslp(rng, 5000, 3);
    Tslp h = monadize(g);
    for (SymbolId a : h.rules) CHECK(h.rank(a) <= 1);
    CHECK(render(eval_tslp(h), h.symbols) == render(eval_tslp(g), g.symbols));
  }
}

TEST_CASE("normalize_monadic splits the Z rule into eight rules") {
  Tslp g = parse_tslp(
      "S -> Z(A)\n"
      "Z(x1) -> h(f(A, a), f(A, g(x1)), B(A))\n"
      "A -> a\n"
      "B(x1) -> k(x1)\n");
  NormalizedTslp n = normalize_monadic(g);
  const Tslp& h = n.grammar;
  std::size_t from_z = 0;
  for (SymbolId a : h.rules)
    if (h.symbols.name(a).rfind("Z", 0) == 0) ++from_z;
  CHECK(from_z == 8);
  SymbolId z = h.symbols.require("Z");
  CHECK(n.form(z) == RuleForm::b);
  CHECK(render(eval_tslp(h), h.symbols) == render(eval_tslp(g), g.symbols));
  // the inner pieces of Z
  std::vector<std::string> bodies;
  for (SymbolId a : h.rules) bodies.push_back(to_text(h.rhs[a], h.symbols));
  auto has = [&](const std::string& body) { return std::find(bodies.begin(), bodies.end(), body) != bodies.end(); };
  CHECK(has("f(A,x1)"));
  CHECK(has("g(x1)"));
  CHECK(has("a"));
  CHECK(has("B(A)"));
}

TEST_CASE("normalize_monadic on example 3 and already normal grammars") {
  Tslp g = testing::data_tslp("example3.tslp");
  NormalizedTslp n = normalize_monadic(g);
  CHECK(to_text(n.grammar) == to_text(g));
  std::vector<std::string> n1, n2;
  for (SymbolId a : n.grammar.rules) (n.in_n1(a) ? n1 : n2).push_back(n.grammar.symbols.name(a));
  CHECK(n1 == std::vector<std::string>{"S", "A", "B", "E", "F", "G"});
  CHECK(n2 == std::vector<std::string>{"C", "D", "H", "J"});
}

TEST_CASE("normalize eliminates aliases and keeps values within 2|G|") {
  Tslp g = parse_tslp(
      "S -> T\n"
      "T -> I(K(U))\n"
      "I(x1) -> x1\n"
      "K(x1) -> J(x1)\n"
      "J(x1) -> f(x1, a)\n"
      "U -> V\n"
      "V -> b\n");
  NormalizedTslp n = normalize(g);
  CHECK(n.grammar.symbols.find("I") == std::nullopt);
  CHECK(n.grammar.symbols.find("K") == std::nullopt);
  CHECK(n.grammar.symbols.find("U") == std::nullopt);
  CHECK(render(eval_tslp(n.grammar), n.grammar.symbols) == "f(b,a)");

  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    Tslp r = testing::random_small_tslp(rng, 5000, 1);
    NormalizedTslp m = normalize_monadic(r);
    CHECK(m.grammar.size() <= 2 * r.size());
    for (SymbolId a : m.grammar.rules) CHECK(m.form(a) != RuleForm::none);
    CHECK(render(eval_tslp(m.grammar), m.grammar.symbols) == render(eval_tslp(r), r.symbols));
  }
}

TEST_CASE("classify agrees with right-hand side shapes") {
  NormalizedTslp n = normalize(testing::data_tslp("example1.tslp"));
  for (SymbolId a : n.grammar.rules) {
    const Term& t = n.grammar.rhs[a];
    const SymbolTable& s = n.grammar.symbols;
    switch (n.form(a)) {
      case RuleForm::a: CHECK((s.is_nonterminal(t.label) && s.is_nonterminal(t.children[0].label) && t.children[0].children.empty())); break;
      case RuleForm::b: CHECK((s.is_nonterminal(t.label) && s.is_nonterminal(t.children[0].label) && s.is_parameter(t.children[0].children[0].label))); break;
      case RuleForm::c: CHECK((s.is_terminal(t.label) && t.children.empty())); break;
      case RuleForm::d: CHECK(s.is_terminal(t.label)); break;
      case RuleForm::none: FAIL("unclassified rule"); break;
    }
  }
  CHECK_THROWS_AS(NormalizedTslp::classify(testing::data_tslp("example1.tslp")), Error);
}

TEST_CASE("generate_tslp sizes and determinism") {
  for (auto mode : {GenerateMode::chain, GenerateMode::balanced, GenerateMode::random}) {
    for (unsigned k : {0u, 1u, 3u, 8u, 20u, 40u, 62u}) {
      Tslp g = generate_tslp(mode, k, 9);
      std::uint64_t n = tree_size(g);
      CHECK(n >= (std::uint64_t{1} << k));
      CHECK(n < (std::uint64_t{1} << (k + 1)));
      CHECK_NOTHROW(NormalizedTslp::classify(g));
      CHECK(to_text(generate_tslp(mode, k, 9)) == to_text(g));
    }
  }
  Tslp chain = generate_tslp(GenerateMode::chain, 3, 1);
  for (SymbolId a : chain.rules) CHECK(chain.rank(a) <= 1);
  Tslp bal = generate_tslp(GenerateMode::balanced, 1, 1);
  CHECK(eval_tslp(bal).size() == tree_size(bal));
  CHECK_THROWS_AS(generate_tslp(GenerateMode::chain, 63, 1), Error);
  CHECK(to_text(generate_tslp(GenerateMode::random, 12, 1)) != to_text(generate_tslp(GenerateMode::random, 12, 2)));
}

TEST_CASE("sizes overflow past 2^63") {
  std::string text = "S -> G0(a)\n";
  for (int i = 0; i < 64; ++i)
    text += "G" + std::to_string(i) + "(x1) -> G" + std::to_string(i + 1) + "(G" + std::to_string(i + 1) + "(x1))\n";
  text += "G64(x1) -> g(x1)\n";
  CHECK_THROWS_AS(tree_size(parse_tslp(text)), Error);
}
