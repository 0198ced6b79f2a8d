// Command-line front end; everything goes through the C interface.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gct/gct.h"

namespace {

enum Exit { kOk = 0, kInvalid = 1, kGuard = 2 };

struct Result {
  std::string out, err;
  int code = kOk;
};

int exit_code(gct_status s) { return s == GCT_ERR_GUARD ? kGuard : kInvalid; }

Result failure(gct_status s) { return {"", std::string("error: ") + gct_last_error() + "\n", exit_code(s)}; }

std::string take(char* s) {
  std::string r = s ? s : "";
  gct_free(s);
  return r;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Grammar {
  gct_grammar* g = nullptr;
  ~Grammar() { gct_grammar_free(g); }
};

gct_kind kind_flag(bool slp, bool tslp) { return slp ? GCT_SLP : tslp ? GCT_TSLP : GCT_AUTO; }

// Loads a grammar; on failure fills `r` and returns false.
bool load(const std::string& path, gct_kind kind, Grammar& g, Result& r) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    r = {"", std::string("error: ") + e.what() + "\n", kInvalid};
    return false;
  }
  gct_status s = gct_grammar_parse(text.c_str(), kind, &g.g);
  if (s != GCT_OK) {
    r = {"", "error: " + path + ": " + gct_last_error() + "\n", exit_code(s)};
    return false;
  }
  return true;
}

std::uint64_t default_guard() {
  if (const char* env = std::getenv("GCT_MAX_NODES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
    std::cerr << "warning: ignoring malformed GCT_MAX_NODES\n";
  }
  return gct_default_guard();
}

// Runs `job` over all files with up to `jobs` threads and prints the
// results in input order.
int run_batch(const std::vector<std::string>& files, unsigned jobs, const std::function<Result(const std::string&)>& job) {
  std::vector<Result> results(files.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) results[i] = job(files[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = kOk;
  for (const Result& r : results) {
    std::cout << r.out;
    std::cerr << r.err;
    code = std::max(code, r.code);
  }
  return code;
}

int finish(const Result& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}

struct Cursor {
  gct_cursor* c = nullptr;
  Cursor() = default;
  Cursor(const Cursor&) = delete;
  Cursor& operator=(const Cursor&) = delete;
  ~Cursor() { gct_cursor_free(c); }
};

struct Navigator {
  gct_navigator* n = nullptr;
  ~Navigator() { gct_navigator_free(n); }
};

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> w;
  for (std::string s; in >> s;) w.push_back(s);
  return w;
}

bool parse_index(const std::string& s, std::uint32_t& out) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) return false;
  out = static_cast<std::uint32_t>(std::stoul(s));
  return true;
}

int run_nav(const std::string& path, gct_kind kind, bool eq, const std::string& script_path) {
  Grammar g;
  Result r;
  if (!load(path, kind, g, r)) return finish(r);
  Navigator nav;
  if (gct_status s = gct_navigator_new(g.g, eq, &nav.n); s != GCT_OK) return finish(failure(s));
  std::map<std::string, std::unique_ptr<Cursor>> marks;
  auto cur = std::make_unique<Cursor>();
  if (gct_status s = gct_cursor_root(nav.n, &cur->c); s != GCT_OK) return finish(failure(s));

  std::string script;
  try {
    script = read_file(script_path);
  } catch (const std::exception& e) {
    return finish({"", std::string("error: ") + e.what() + "\n", kInvalid});
  }
  for (char& ch : script)
    if (ch == ';' || ch == '/') ch = '\n';
  std::istringstream in(script);
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::vector<std::string> w = words(line);
    if (w.empty()) continue;
    const std::string& cmd = w[0];
    std::uint32_t i = 0;
    auto clone_into = [&](const Cursor& from, std::unique_ptr<Cursor>& to) {
      auto c = std::make_unique<Cursor>();
      if (gct_cursor_clone(from.c, &c->c) != GCT_OK) return false;
      to = std::move(c);
      return true;
    };
    if (cmd == "root" && w.size() == 1) {
      auto c = std::make_unique<Cursor>();
      if (gct_cursor_root(nav.n, &c->c) == GCT_OK) cur = std::move(c);
      std::cout << "ok\n";
    } else if (cmd == "child" && w.size() == 2 && parse_index(w[1], i)) {
      std::cout << (gct_cursor_child(cur->c, i) ? "ok" : "undefined") << "\n";
    } else if (cmd == "parent" && w.size() == 1) {
      std::cout << (gct_cursor_parent(cur->c) ? "ok" : "undefined") << "\n";
    } else if (cmd == "label" && w.size() == 1) {
      std::cout << gct_cursor_label(cur->c) << "\n";
    } else if (cmd == "rank" && w.size() == 1) {
      std::cout << gct_cursor_rank(cur->c) << "\n";
    } else if (cmd == "stack" && w.size() == 1) {
      char* s = nullptr;
      gct_cursor_string(cur->c, &s);
      std::cout << take(s) << "\n";
    } else if (cmd == "mark" && w.size() == 2) {
      std::cout << (clone_into(*cur, marks[w[1]]) ? "ok" : "error: cannot copy cursor") << "\n";
    } else if (cmd == "goto" && w.size() == 2) {
      auto it = marks.find(w[1]);
      if (it == marks.end())
        std::cout << "error: unknown mark " << w[1] << "\n";
      else
        std::cout << (clone_into(*it->second, cur) ? "ok" : "error: cannot copy cursor") << "\n";
    } else if (cmd == "eq" && w.size() == 3) {
      auto a = marks.find(w[1]), b = marks.find(w[2]);
      int equal = 0;
      if (a == marks.end() || b == marks.end())
        std::cout << "error: unknown mark\n";
      else if (gct_subtree_eq(nav.n, a->second->c, b->second->c, &equal) != GCT_OK)
        std::cout << "error: " << gct_last_error() << "\n";
      else
        std::cout << (equal ? "true" : "false") << "\n";
    } else {
      std::cout << "error: malformed command: " << line << "\n";
    }
  }
  return kOk;
}

// "2.1", "2,1" or "2 1"; "" and "." address the root.
bool walk_address(gct_cursor* c, const std::string& address, std::string& err) {
  std::string a = address;
  for (char& ch : a)
    if (ch == '.' || ch == ',' || ch == '/') ch = ' ';
  for (const std::string& step : words(a)) {
    std::uint32_t i = 0;
    if (!parse_index(step, i)) {
      err = "bad address " + address;
      return false;
    }
    if (!gct_cursor_child(c, i)) {
      err = "address " + address + " leaves the tree";
      return false;
    }
  }
  return true;
}

int run_eq(const std::string& path, gct_kind kind, const std::string& a, const std::string& b, bool stats,
           bool json) {
  Grammar g;
  Result r;
  if (!load(path, kind, g, r)) return finish(r);
  Navigator nav;
  if (gct_status s = gct_navigator_new(g.g, 1, &nav.n); s != GCT_OK) return finish(failure(s));
  if (stats) {
    char* s = nullptr;
    if (gct_status st = gct_navigator_eq_stats(nav.n, json, &s); st != GCT_OK) return finish(failure(st));
    std::cout << take(s);
  }
  Cursor c1, c2;
  if (gct_cursor_root(nav.n, &c1.c) != GCT_OK || gct_cursor_root(nav.n, &c2.c) != GCT_OK)
    return finish(failure(GCT_ERR_INTERNAL));
  std::string err;
  if (!walk_address(c1.c, a, err) || !walk_address(c2.c, b, err)) return finish({"", "error: " + err + "\n", kInvalid});
  int equal = 0;
  if (gct_status s = gct_subtree_eq(nav.n, c1.c, c2.c, &equal); s != GCT_OK) return finish(failure(s));
  if (json)
    std::cout << "{\"equal\": " << (equal ? "true" : "false") << "}\n";
  else
    std::cout << (equal ? "equal" : "not-equal") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Navigation and equality queries on grammar-compressed trees"};
  app.require_subcommand(1);
  bool json = false, slp = false, tslp = false;
  unsigned jobs = 1;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--jobs", jobs, "Worker threads for commands over several files")->check(CLI::Range(1u, 256u));
  app.add_flag("--slp", slp, "Read input as a string grammar");
  app.add_flag("--tslp", tslp, "Read input as a tree grammar")->excludes("--slp");

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "Check a grammar and print its sizes");
  validate->add_option("files", files, "Grammar files")->required();
  auto* stats = app.add_subcommand("stats", "Per-rule statistics");
  stats->add_option("files", files, "Grammar files")->required();

  std::uint64_t max_nodes = 0;
  auto* decompress = app.add_subcommand("decompress", "Print the tree or string of a grammar");
  decompress->add_option("files", files, "Grammar files")->required();
  decompress->add_option("--max-nodes", max_nodes, "Refuse outputs larger than this (default 10^6 or GCT_MAX_NODES)");

  std::string file;
  auto* normalize = app.add_subcommand("normalize", "Binarize an SLP or normalize a TSLP");
  normalize->add_option("file", file, "Grammar file")->required();

  bool eq_mode = false;
  std::string script = "-";
  auto* nav = app.add_subcommand("nav", "Run a navigation script (stdin by default)");
  nav->add_option("file", file, "Grammar file")->required();
  nav->add_option("--script", script, "Script file");
  nav->add_flag("--eq", eq_mode, "Preprocess for subtree equality and enable the eq command");

  std::string addr_a, addr_b;
  bool eq_stats = false;
  auto* eq = app.add_subcommand("eq", "Compare the subtrees at two node addresses such as 2.1");
  eq->add_option("file", file, "Grammar file")->required();
  eq->add_option("a", addr_a, "First address (child indexes from the root)")->required();
  eq->add_option("b", addr_b, "Second address")->required();
  eq->add_flag("--stats", eq_stats, "Print s(A), A' and r_A per nonterminal");

  auto* slp_cmd = app.add_subcommand("slp", "String grammar queries");
  slp_cmd->require_subcommand(1);
  std::string x1, x2, file2, moves;
  std::uint64_t i = 0, j = 0;
  bool from_end = false;
  auto* at = slp_cmd->add_subcommand("at", "Symbol at a 1-based position");
  at->add_option("file", file)->required();
  at->add_option("nonterminal", x1)->required();
  at->add_option("i", i)->required();
  auto* slice = slp_cmd->add_subcommand("slice", "Grammar for val(X)[i:j]");
  slice->add_option("file", file)->required();
  slice->add_option("nonterminal", x1)->required();
  slice->add_option("i", i)->required();
  slice->add_option("j", j)->required();
  auto* lcp = slp_cmd->add_subcommand("lcp", "Longest common prefix length");
  lcp->add_option("file1", file)->required();
  lcp->add_option("x1", x1)->required();
  lcp->add_option("file2", file2)->required();
  lcp->add_option("x2", x2)->required();
  auto* walk = slp_cmd->add_subcommand("walk", "Move a string cursor; prints pos, symbol and stack");
  walk->add_option("file", file)->required();
  walk->add_option("nonterminal", x1)->required();
  walk->add_option("--moves", moves, "Sequence of r and l; empty walks the whole string");
  walk->add_flag("--from-end", from_end, "Start at the last position");

  std::string mode;
  bool decode = false;
  std::string tree_file = "-";
  auto* encode = app.add_subcommand("encode", "Binary encodings of unranked trees");
  encode->add_option("--mode", mode, "fcns or bin")->required()->check(CLI::IsMember({"fcns", "bin"}));
  encode->add_flag("--decode", decode, "Decode instead of encode");
  encode->add_option("file", tree_file, "Tree file (stdin by default)");

  unsigned k = 10;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate a normal-form TSLP");
  gen->add_option("--mode", mode, "chain, balanced or random")->required();
  gen->add_option("-k", k, "Size exponent: the tree has 2^k to 2^(k+1) nodes")->required();
  gen->add_option("--seed", seed, "Random seed");

  std::uint64_t steps = 1'000'000;
  std::string walk_kind = "random";
  bool string_walk = false;
  auto* bench = app.add_subcommand("bench", "Instrumented navigation walk");
  bench->add_option("files", files, "Grammar files")->required();
  bench->add_option("--steps", steps, "Number of moves");
  bench->add_option("--walk", walk_kind, "random or dfs")->check(CLI::IsMember({"random", "dfs"}));
  bench->add_option("--seed", seed, "Random seed");
  bench->add_flag("--eq", eq_mode, "Use equality cursors and compare consecutive nodes");
  bench->add_flag("--string", string_walk, "Walk the spine string of the start symbol");

  bool dot = false;
  auto* tries = app.add_subcommand("tries", "Left and right tries of the (spine) SLP");
  tries->add_option("file", file, "Grammar file")->required();
  tries->add_flag("--dot", dot, "DOT output (the only format)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  const gct_kind kind = kind_flag(slp, tslp);

  auto on_grammar = [&](auto&& body) {
    return [&, body](const std::string& path) {
      Grammar g;
      Result r;
      if (!load(path, kind, g, r)) return r;
      return body(g.g);
    };
  };
  // Takes the status first so that `out` is read after the call filled it.
  auto text_result = [](gct_status s, char*& out) {
    if (s != GCT_OK) return failure(s);
    return Result{take(out), "", kOk};
  };

  if (*validate || *stats) {
    bool is_stats = static_cast<bool>(*stats);
    return run_batch(files, jobs, on_grammar([&, is_stats](gct_grammar* g) {
      char* out = nullptr;
      gct_status s = is_stats ? gct_grammar_stats(g, json, &out) : gct_grammar_report(g, json, &out);
      return text_result(s, out);
    }));
  }
  if (*decompress) {
    std::uint64_t guard = max_nodes ? max_nodes : default_guard();
    return run_batch(files, jobs, on_grammar([&](gct_grammar* g) {
      char* out = nullptr;
      gct_status s = gct_grammar_decompress(g, guard, &out);
      if (s != GCT_OK) return failure(s);
      std::string text = take(out);
      if (json) text = "{\"value\": \"" + text + "\"}";
      return Result{text + "\n", "", kOk};
    }));
  }
  if (*normalize || *tries) {
    bool is_tries = static_cast<bool>(*tries);
    return run_batch({file}, 1, on_grammar([&, is_tries](gct_grammar* g) {
      char* out = nullptr;
      gct_status s = is_tries ? gct_grammar_tries_dot(g, &out) : gct_grammar_normalize(g, &out);
      return text_result(s, out);
    }));
  }
  if (*nav) return run_nav(file, kind, eq_mode, script);
  if (*eq) return run_eq(file, kind, addr_a, addr_b, eq_stats, json);
  if (*slp_cmd) {
    const gct_kind skind = GCT_SLP;
    Grammar g, g2;
    Result r;
    if (!load(file, skind, g, r)) return finish(r);
    char* out = nullptr;
    if (*at) {
      gct_status s = gct_slp_at(g.g, x1.c_str(), i, &out);
      if (s != GCT_OK) return finish(failure(s));
      return finish({take(out) + "\n", "", kOk});
    }
    if (*slice) {
      gct_status s = gct_slp_slice(g.g, x1.c_str(), i, j, &out);
      return finish(text_result(s, out));
    }
    if (*walk) {
      gct_status s = gct_slp_walk(g.g, x1.c_str(), from_end, moves.c_str(), &out);
      return finish(text_result(s, out));
    }
    if (!load(file2, skind, g2, r)) return finish(r);
    std::uint64_t n = 0;
    if (gct_status s = gct_slp_lcp(g.g, x1.c_str(), g2.g, x2.c_str(), &n); s != GCT_OK) return finish(failure(s));
    return finish({std::to_string(n) + "\n", "", kOk});
  }
  if (*encode) {
    std::string text;
    try {
      text = read_file(tree_file);
    } catch (const std::exception& e) {
      return finish({"", std::string("error: ") + e.what() + "\n", kInvalid});
    }
    char* out = nullptr;
    gct_status s = gct_encode(text.c_str(), mode.c_str(), decode, &out);
    if (s != GCT_OK) return finish(failure(s));
    return finish({take(out) + "\n", "", kOk});
  }
  if (*gen) {
    char* out = nullptr;
    gct_status s = gct_generate(mode.c_str(), k, seed, &out);
    return finish(text_result(s, out));
  }
  if (*bench) {
    gct_bench_options o{walk_kind.c_str(), steps, seed, eq_mode ? 1 : 0, string_walk ? 1 : 0};
    return run_batch(files, jobs, on_grammar([&](gct_grammar* g) {
      char* out = nullptr;
      gct_status s = gct_bench(g, &o, json, &out);
      return text_result(s, out);
    }));
  }
  return kInvalid;
}
