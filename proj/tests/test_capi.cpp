#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "gct/gct.h"

namespace {

std::string data(const std::string& name) {
  std::ifstream in(std::string(GCT_TEST_DATA) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  gct_free(s);
  return out;
}

struct Grammar {
  gct_grammar* g = nullptr;
  explicit Grammar(const std::string& text, gct_kind kind = GCT_AUTO) {
    REQUIRE(gct_grammar_parse(text.c_str(), kind, &g) == GCT_OK);
  }
  ~Grammar() { gct_grammar_free(g); }
};

}  // namespace

TEST_CASE("parse, report and decompress") {
  Grammar ex1(data("example1.tslp"));
  CHECK(gct_grammar_kind(ex1.g) == GCT_TSLP);
  char* out = nullptr;
  REQUIRE(gct_grammar_report(ex1.g, 0, &out) == GCT_OK);
  CHECK(take(out).rfind("TSLP, size 12, tree size 7", 0) == 0);
  REQUIRE(gct_grammar_decompress(ex1.g, gct_default_guard(), &out) == GCT_OK);
  CHECK(take(out) == "b(b(a,a),b(a,a))");

  REQUIRE(gct_grammar_report(ex1.g, 1, &out) == GCT_OK);
  std::string json = take(out);
  CHECK(json.find("\"size\": 12") != std::string::npos);

  Grammar ex2(data("example2.slp"));
  CHECK(gct_grammar_kind(ex2.g) == GCT_SLP);
  REQUIRE(gct_grammar_report(ex2.g, 0, &out) == GCT_OK);
  CHECK(take(out).rfind("SLP, |val(S)| = 15", 0) == 0);
}

TEST_CASE("errors carry status and message") {
  gct_grammar* g = nullptr;
  CHECK(gct_grammar_parse("", GCT_AUTO, &g) == GCT_ERR_SYNTAX);
  CHECK(g == nullptr);
  CHECK(std::string(gct_last_error()).size() > 0);
  CHECK(gct_grammar_parse("S -> A(B)\nA -> a\n", GCT_TSLP, &g) == GCT_ERR_INVALID);

  char* text = nullptr;
  REQUIRE(gct_generate("chain", 40, 1, &text) == GCT_OK);
  Grammar big(take(text));
  char* out = nullptr;
  CHECK(gct_grammar_decompress(big.g, gct_default_guard(), &out) == GCT_ERR_GUARD);
  CHECK(gct_last_error_value() >= (std::uint64_t{1} << 40));
  CHECK(gct_generate("spiral", 3, 1, &text) == GCT_ERR_ARGUMENT);
}

TEST_CASE("cursor navigation") {
  Grammar ex3(data("example3.tslp"));
  gct_navigator* nav = nullptr;
  REQUIRE(gct_navigator_new(ex3.g, 0, &nav) == GCT_OK);
  gct_cursor* c = nullptr;
  REQUIRE(gct_cursor_root(nav, &c) == GCT_OK);
  CHECK(std::string(gct_cursor_label(c)) == "f");
  CHECK(gct_cursor_rank(c) == 2);
  CHECK(gct_cursor_parent(c) == 0);
  CHECK(gct_cursor_child(c, 2) == 1);
  CHECK(gct_cursor_child(c, 2) == 1);
  char* out = nullptr;
  REQUIRE(gct_cursor_string(c, &out) == GCT_OK);
  CHECK(take(out) == "(S,l,A)(A,r,D)(D,2,F)(F,l,J)");
  CHECK(std::string(gct_cursor_label(c)) == "g");
  gct_counters k{};
  gct_cursor_last_step(c, &k);
  CHECK(k.pushes + k.pops <= 8);
  CHECK(gct_cursor_child(c, 3) == 0);

  gct_cursor* d = nullptr;
  REQUIRE(gct_cursor_clone(c, &d) == GCT_OK);
  CHECK(gct_cursor_parent(d) == 1);
  CHECK(std::string(gct_cursor_label(d)) == "f");
  CHECK(std::string(gct_cursor_label(c)) == "g");
  gct_cursor_free(d);
  gct_cursor_free(c);
  gct_navigator_free(nav);
}

TEST_CASE("subtree equality") {
  Grammar ex4(data("example4.tslp"));
  gct_navigator* nav = nullptr;
  REQUIRE(gct_navigator_new(ex4.g, 1, &nav) == GCT_OK);
  gct_cursor *a = nullptr, *b = nullptr;
  REQUIRE(gct_cursor_root(nav, &a) == GCT_OK);
  REQUIRE(gct_cursor_root(nav, &b) == GCT_OK);
  gct_cursor_child(a, 1);
  gct_cursor_child(a, 2);
  gct_cursor_child(b, 2);
  int equal = 0;
  REQUIRE(gct_subtree_eq(nav, a, b, &equal) == GCT_OK);
  CHECK(equal == 1);
  gct_cursor_parent(a);
  REQUIRE(gct_subtree_eq(nav, a, b, &equal) == GCT_OK);
  CHECK(equal == 0);
  char* out = nullptr;
  REQUIRE(gct_navigator_eq_stats(nav, 0, &out) == GCT_OK);
  CHECK(take(out).find("S l=5 s=3 prime=E r=f(A,x1)") != std::string::npos);

  gct_navigator* plain = nullptr;
  REQUIRE(gct_navigator_new(ex4.g, 0, &plain) == GCT_OK);
  CHECK(gct_subtree_eq(plain, a, b, &equal) == GCT_ERR_ARGUMENT);
  gct_cursor_free(a);
  gct_cursor_free(b);
  gct_navigator_free(plain);
  gct_navigator_free(nav);
}

TEST_CASE("string queries") {
  Grammar ex2(data("example2.slp"));
  char* out = nullptr;
  REQUIRE(gct_slp_at(ex2.g, "S", 3, &out) == GCT_OK);
  CHECK(take(out) == "b");
  CHECK(gct_slp_at(ex2.g, "S", 16, &out) == GCT_ERR_RANGE);
  REQUIRE(gct_slp_slice(ex2.g, "S", 1, 3, &out) == GCT_OK);
  CHECK(take(out).find("_slice") != std::string::npos);
  std::uint64_t n = 0;
  REQUIRE(gct_slp_lcp(ex2.g, "B", ex2.g, "A", &n) == GCT_OK);
  CHECK(n == 6);
  REQUIRE(gct_slp_walk(ex2.g, "S", 0, "", &out) == GCT_OK);
  std::string walk = take(out);
  CHECK(walk.rfind("1 a (S,l,a)\n", 0) == 0);
  CHECK(walk.find("15 b (S,r,b)") != std::string::npos);
}

TEST_CASE("encodings and bench") {
  char* out = nullptr;
  REQUIRE(gct_encode("a(b,c,d)", "fcns", 0, &out) == GCT_OK);
  CHECK(take(out) == "a(b(nil,c(nil,d(nil,nil))),nil)");
  REQUIRE(gct_encode("a(_bin2(b,c),d)", "bin", 1, &out) == GCT_OK);
  CHECK(take(out) == "a(b,c,d)");
  CHECK(gct_encode("a(b", "fcns", 0, &out) == GCT_ERR_SYNTAX);
  CHECK(gct_encode("a", "zip", 0, &out) == GCT_ERR_ARGUMENT);

  Grammar ex3(data("example3.tslp"));
  gct_bench_options o{"dfs", 1000000, 1, 0, 0};
  REQUIRE(gct_bench(ex3.g, &o, 0, &out) == GCT_OK);
  CHECK(take(out).find("edge_traversals 36") != std::string::npos);
  o.steps = 0;
  REQUIRE(gct_bench(ex3.g, &o, 0, &out) == GCT_OK);
  CHECK(take(out).find("steps 0") != std::string::npos);
}
