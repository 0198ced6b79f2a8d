#include <doctest.h>

#include "gct/string_cursor.hpp"
#include "support.hpp"

using namespace gct;

namespace {

void check_step(const StepCounters& c) {
  CHECK(c.pushes <= 4);
  CHECK(c.pops <= 4);
  CHECK(c.next_link <= 1);
}

Slp random_binary_slp(std::mt19937_64& rng) {
  while (true) {
    Slp g = testing::random_slp(rng, std::uniform_int_distribution<int>(2, 10)(rng));
    auto len = slp_lengths(g);
    bool small = true, usable = false;
    for (SymbolId a : g.rules) {
      small = small && len[a] <= 5000;
      usable = usable || len[a] >= 2;
    }
    if (small && usable) return binarize_slp(g).slp;
  }
}

}  // namespace

TEST_CASE("begin and end on example 2") {
  Slp g = testing::data_slp("example2.slp");
  NextLinkIndex idx(g);
  auto id = [&](const char* n) { return g.symbols.require(n); };

  StringCursor s = StringCursor::begin(idx, id("S"));
  CHECK(s.to_string() == "(S,l,a)");
  CHECK(s.pos() == 1);
  CHECK(g.symbols.name(s.symbol()) == "a");
  CHECK(StringCursor::begin(idx, id("D")).to_string() == "(D,l,a)");
  CHECK(StringCursor::begin(idx, id("C")).to_string() == "(C,l,a)");

  StringCursor e = StringCursor::end(idx, id("S"));
  CHECK(e.to_string() == "(S,r,b)");
  CHECK(e.pos() == 15);
  CHECK(g.symbols.name(e.symbol()) == "b");
  StringCursor d = StringCursor::end(idx, id("D"));
  CHECK(d.to_string() == "(D,r,b)");
  CHECK(d.pos() == 2);
}

TEST_CASE("right and left on example 2") {
  Slp g = testing::data_slp("example2.slp");
  NextLinkIndex idx(g);
  SymbolId s = g.symbols.require("S");

  StringCursor c = StringCursor::begin(idx, s);
  CHECK(c.right());
  CHECK(c.to_string() == "(S,l,C)(C,r,D)(D,l,a)");
  CHECK(c.pos() == 2);
  CHECK(g.symbols.name(c.symbol()) == "a");

  StringCursor sweep = StringCursor::begin(idx, s);
  std::string word = g.symbols.name(sweep.symbol());
  for (int i = 0; i < 14; ++i) {
    CHECK(sweep.right());
    word += g.symbols.name(sweep.symbol());
  }
  CHECK(word == "aabaabaabaabaab");
  CHECK(sweep == StringCursor::end(idx, s));
  StringCursor before = sweep;
  CHECK_FALSE(sweep.right());
  CHECK(sweep == before);

  for (int i = 0; i < 14; ++i) CHECK(sweep.left());
  CHECK(sweep == StringCursor::begin(idx, s));
  CHECK_FALSE(sweep.left());
  CHECK(sweep == StringCursor::begin(idx, s));
}

TEST_CASE("sweeps agree with the oracle") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 300; ++round) {
    Slp g = random_binary_slp(rng);
    NextLinkIndex idx(g);
    for (SymbolId x : g.rules) {
      std::vector<SymbolId> v = eval_slp(g, x);
      std::vector<StringCursor> seen;
      StringCursor c = StringCursor::begin(idx, x);
      while (true) {
        REQUIRE(c.valid());
        CHECK(c.symbol() == v[c.pos() - 1]);
        seen.push_back(c);
        if (!c.right()) break;
        check_step(c.last_step());
      }
      CHECK(seen.size() == v.size());
      CHECK(c == StringCursor::end(idx, x));

      // walking back visits the same cursors in reverse
      for (std::size_t k = seen.size(); k-- > 1;) {
        CHECK(c == seen[k]);
        REQUIRE(c.left());
        check_step(c.last_step());
        REQUIRE(c.valid());
      }
      CHECK(c == seen[0]);
      CHECK_FALSE(c.left());

      // left after right and right after left are the identity
      for (std::size_t k = 0; k < seen.size(); ++k) {
        StringCursor t = seen[k];
        if (t.right()) {
          CHECK(t.left());
          CHECK(t == seen[k]);
        }
        t = seen[k];
        if (t.left()) {
          CHECK(t.right());
          CHECK(t == seen[k]);
        }
      }
    }
  }
}

TEST_CASE("stack depth stays within the derivation height") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 100; ++round) {
    Slp g = random_binary_slp(rng);
    NextLinkIndex idx(g);
    SymbolId x = g.rules.back();
    std::vector<std::uint64_t> height(g.symbols.size(), 0);
    for (SymbolId a : topological_order(g))
      for (SymbolId s : g.rhs[a]) height[a] = std::max(height[a], height[s] + 1);
    StringCursor c = StringCursor::begin(idx, x);
    do CHECK(c.stack().size() <= height[x]);
    while (c.right());
  }
}
