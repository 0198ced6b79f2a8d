#include "gct/gct.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <string>

#include <json.hpp>

#include "gct/bench.hpp"
#include "gct/encodings.hpp"
#include "gct/subtree_equality.hpp"

using gct::Error;
using gct::ErrorCode;
using nlohmann::json;

struct gct_grammar {
  gct_kind kind = GCT_TSLP;
  gct::Slp slp;
  gct::Tslp tslp;
};

struct gct_navigator {
  std::unique_ptr<gct::TreeNavigator> plain;
  std::unique_ptr<gct::EqualityIndex> eq;

  const gct::TreeNavigator& nav() const { return eq ? eq->navigator() : *plain; }
};

struct gct_cursor {
  const gct_navigator* owner;
  gct::TreeCursor c;
};

namespace {

thread_local std::string last_error;
thread_local std::uint64_t last_value = 0;

gct_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return GCT_ERR_SYNTAX;
    case ErrorCode::overflow: return GCT_ERR_OVERFLOW;
    case ErrorCode::guard_exceeded: return GCT_ERR_GUARD;
    case ErrorCode::out_of_range: return GCT_ERR_RANGE;
    case ErrorCode::invalid_argument: return GCT_ERR_ARGUMENT;
    case ErrorCode::fingerprint_contradiction: return GCT_ERR_INTERNAL;
    default: return GCT_ERR_INVALID;
  }
}

template <class F>
gct_status guarded(F&& f) {
  last_error.clear();
  last_value = 0;
  try {
    f();
    return GCT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    last_value = e.value();
    return status_of(e.code());
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return GCT_ERR_RANGE;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return GCT_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCT_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Tree grammars use parentheses or a start line; a right-hand side with
// several blank-separated symbols is a string rule.
gct_kind detect(std::string_view text) {
  bool several = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (auto h = line.find('#'); h != std::string::npos) line = trim(line.substr(0, h));
    if (line.empty()) continue;
    if (line.rfind("start", 0) == 0 && (line.size() == 5 || line[5] == ' ' || line[5] == '\t')) return GCT_TSLP;
    if (line.rfind("terminals", 0) == 0) return GCT_SLP;
    if (line.find('(') != std::string::npos) return GCT_TSLP;
    if (auto arrow = line.find("->"); arrow != std::string::npos) {
      std::string rhs = trim(line.substr(arrow + 2));
      if (rhs.find_first_of(" \t") != std::string::npos) several = true;
    }
  }
  return several ? GCT_SLP : GCT_TSLP;
}

const gct::Slp& need_slp(const gct_grammar* g) {
  require(g && g->kind == GCT_SLP, "a string grammar is required");
  return g->slp;
}

const gct::Tslp& need_tslp(const gct_grammar* g) {
  require(g && g->kind == GCT_TSLP, "a tree grammar is required");
  return g->tslp;
}

gct::SymbolId slp_start(const gct::Slp& s) {
  require(!s.rules.empty(), "the grammar has no rules");
  return s.rules.front();
}

gct::SymbolId nonterminal(const gct::Slp& s, const char* name) {
  require(name != nullptr, "missing nonterminal name");
  auto id = s.symbols.find(name);
  if (!id || !s.symbols.is_nonterminal(*id))
    throw Error(ErrorCode::invalid_argument, std::string("unknown nonterminal ") + name);
  return *id;
}

json size_or_overflow(const std::function<std::uint64_t()>& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::overflow) throw;
    return "overflow";
  }
}

std::string show(const json& v) { return v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::uint64_t>()); }

json report_json(const gct_grammar* g) {
  json j;
  if (g->kind == GCT_SLP) {
    const gct::Slp& s = g->slp;
    gct::SymbolId start = slp_start(s);
    j["kind"] = "SLP";
    j["start"] = s.symbols.name(start);
    j["size"] = s.size();
    j["rules"] = s.rules.size();
    j["length"] = size_or_overflow([&] { return gct::slp_lengths(s)[start]; });
    bool binary = true;
    for (gct::SymbolId a : s.rules) binary = binary && s.rhs[a].size() == 2;
    j["normal_form"] = binary ? "binary" : "none";
    return j;
  }
  const gct::Tslp& t = g->tslp;
  j["kind"] = "TSLP";
  j["start"] = t.symbols.name(t.start);
  j["size"] = t.size();
  j["rules"] = t.rules.size();
  j["tree_size"] = size_or_overflow([&] { return gct::tree_size(t); });
  std::uint32_t max_rank = 0;
  for (gct::SymbolId a : t.rules) max_rank = std::max(max_rank, t.rank(a));
  j["max_rank"] = max_rank;
  try {
    gct::NormalizedTslp n = gct::NormalizedTslp::classify(t);
    json forms = json::object();
    for (gct::RuleForm f : {gct::RuleForm::a, gct::RuleForm::b, gct::RuleForm::c, gct::RuleForm::d})
      forms[std::string(1, gct::to_char(f))] = n.with_form(f).size();
    j["normal_form"] = "normalized";
    j["forms"] = forms;
  } catch (const Error&) {
    j["normal_form"] = max_rank <= 1 ? "monadic" : "none";
  }
  return j;
}

std::string report_text(const json& j) {
  std::string out;
  if (j["kind"] == "SLP") {
    out = "SLP, |val(" + j["start"].get<std::string>() + ")| = " + show(j["length"]) +
          ", size " + show(j["size"]) + "\n";
  } else {
    out = "TSLP, size " + show(j["size"]) + ", tree size " + show(j["tree_size"]) + "\n";
    out += "max rank " + show(j["max_rank"]) + "\n";
  }
  out += "rules " + show(j["rules"]) + "\n";
  out += "normal form " + j["normal_form"].get<std::string>();
  if (j.contains("forms"))
    for (auto& [k, v] : j["forms"].items()) out += " " + k + "=" + show(v);
  out += "\n";
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* gct_last_error(void) { return last_error.c_str(); }
uint64_t gct_last_error_value(void) { return last_value; }
void gct_free(char* s) { std::free(s); }
uint64_t gct_default_guard(void) { return gct::kDefaultGuard; }

gct_status gct_grammar_parse(const char* text, gct_kind kind, gct_grammar** out) {
  return guarded([&] {
    require(text && out, "null argument");
    auto g = std::make_unique<gct_grammar>();
    g->kind = kind == GCT_AUTO ? detect(text) : kind;
    if (g->kind == GCT_SLP) {
      g->slp = gct::parse_slp(text);
      slp_start(g->slp);
    } else {
      g->tslp = gct::parse_tslp(text);
    }
    *out = g.release();
  });
}

void gct_grammar_free(gct_grammar* g) { delete g; }
gct_kind gct_grammar_kind(const gct_grammar* g) { return g ? g->kind : GCT_AUTO; }

gct_status gct_grammar_report(const gct_grammar* g, int as_json, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    json j = report_json(g);
    *out = dup(as_json ? dump(j) : report_text(j));
  });
}

gct_status gct_grammar_stats(const gct_grammar* g, int as_json, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    json j = report_json(g);
    json rules = json::array();
    if (g->kind == GCT_SLP) {
      const gct::Slp& s = g->slp;
      std::vector<std::uint64_t> len;
      try {
        len = gct::slp_lengths(s);
      } catch (const Error&) {
      }
      for (gct::SymbolId a : s.rules) {
        json r{{"name", s.symbols.name(a)}, {"rhs_length", s.rhs[a].size()}};
        r["length"] = len.empty() ? json("overflow") : json(len[a]);
        rules.push_back(r);
      }
    } else {
      const gct::Tslp& t = g->tslp;
      std::vector<std::uint64_t> size;
      try {
        size = gct::tree_sizes(t);
      } catch (const Error&) {
      }
      std::vector<gct::RuleForm> form;
      try {
        gct::NormalizedTslp n = gct::NormalizedTslp::classify(t);
        for (const auto& r : n.rules) form.push_back(r.form);
      } catch (const Error&) {
      }
      for (gct::SymbolId a : t.rules) {
        json r{{"name", t.symbols.name(a)}, {"rank", t.rank(a)}, {"rhs_size", gct::term_size(t.rhs[a], t.symbols)}};
        r["tree_size"] = size.empty() ? json("overflow") : json(size[a]);
        if (!form.empty()) r["form"] = std::string(1, gct::to_char(form[a]));
        rules.push_back(r);
      }
    }
    j["rule_stats"] = rules;
    if (as_json) {
      *out = dup(dump(j));
      return;
    }
    std::string text = report_text(j);
    for (const json& r : rules) {
      text += r["name"].get<std::string>();
      for (auto& [k, v] : r.items())
        if (k != "name") text += " " + k + "=" + show(v);
      text += "\n";
    }
    *out = dup(text);
  });
}

gct_status gct_grammar_decompress(const gct_grammar* g, uint64_t guard, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    if (g->kind == GCT_SLP) {
      std::vector<gct::SymbolId> w = gct::eval_slp(g->slp, slp_start(g->slp), guard);
      *out = dup(gct::spell(g->slp.symbols, w));
    } else {
      *out = dup(gct::render(gct::eval_tslp(g->tslp, guard), g->tslp.symbols));
    }
  });
}

gct_status gct_grammar_normalize(const gct_grammar* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    if (g->kind == GCT_SLP)
      *out = dup(gct::to_text(gct::binarize_slp(g->slp).slp));
    else
      *out = dup(gct::to_text(gct::normalize(g->tslp).grammar));
  });
}

gct_status gct_grammar_tries_dot(const gct_grammar* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    if (g->kind == GCT_SLP) {
      gct::NextLinkIndex idx(gct::binarize_slp(g->slp).slp);
      *out = dup(idx.to_dot());
    } else {
      gct::TreeNavigator nav(gct::normalize(g->tslp));
      *out = dup(nav.index().to_dot());
    }
  });
}

gct_status gct_navigator_new(const gct_grammar* g, int eq, gct_navigator** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const gct::Tslp& t = need_tslp(g);
    auto n = std::make_unique<gct_navigator>();
    if (eq)
      n->eq = std::make_unique<gct::EqualityIndex>(gct::normalize(t));
    else
      n->plain = std::make_unique<gct::TreeNavigator>(gct::normalize(t));
    *out = n.release();
  });
}

void gct_navigator_free(gct_navigator* n) { delete n; }

gct_status gct_navigator_eq_stats(const gct_navigator* n, int as_json, char** out) {
  return guarded([&] {
    require(n && out, "null argument");
    require(n->eq != nullptr, "the navigator was built without equality support");
    const gct::EqualityIndex& e = *n->eq;
    if (!as_json) {
      *out = dup(e.stats());
      return;
    }
    const gct::Tslp& g = e.navigator().grammar();
    json j{{"merged", e.reduced().merged}, {"already_reduced", e.reduced().already_reduced()}};
    json rows = json::array();
    for (gct::SymbolId a : e.spine_nonterminals()) {
      const gct::SpineSplit& sp = e.splits()[a];
      rows.push_back({{"name", g.symbols.name(a)},
                      {"l", sp.length},
                      {"s", sp.s},
                      {"prime", g.symbols.name(sp.prime)},
                      {"r", gct::to_text(g.rhs[sp.r_symbol], g.symbols)}});
    }
    j["splits"] = rows;
    *out = dup(dump(j));
  });
}

gct_status gct_cursor_root(const gct_navigator* n, gct_cursor** out) {
  return guarded([&] {
    require(n && out, "null argument");
    gct::TreeCursor c = n->eq ? n->eq->root() : gct::TreeCursor::root(*n->plain);
    *out = new gct_cursor{n, std::move(c)};
  });
}

gct_status gct_cursor_clone(const gct_cursor* c, gct_cursor** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = new gct_cursor(*c);
  });
}

void gct_cursor_free(gct_cursor* c) { delete c; }
int gct_cursor_child(gct_cursor* c, uint32_t i) { return c && c->c.child(i) ? 1 : 0; }
int gct_cursor_parent(gct_cursor* c) { return c && c->c.parent() ? 1 : 0; }

const char* gct_cursor_label(const gct_cursor* c) {
  if (!c) return "";
  return c->c.navigator().grammar().symbols.name(c->c.label()).c_str();
}

uint32_t gct_cursor_rank(const gct_cursor* c) { return c ? c->c.rank() : 0; }

gct_status gct_cursor_string(const gct_cursor* c, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = dup(c->c.to_string());
  });
}

void gct_cursor_last_step(const gct_cursor* c, gct_counters* out) {
  if (!c || !out) return;
  const gct::StepCounters& s = c->c.last_step();
  *out = {s.pushes, s.pops, s.next_link, s.lca};
}

gct_status gct_subtree_eq(const gct_navigator* n, const gct_cursor* a, const gct_cursor* b, int* equal) {
  return guarded([&] {
    require(n && a && b && equal, "null argument");
    require(n->eq != nullptr, "the navigator was built without equality support");
    require(a->owner == n && b->owner == n, "cursors belong to another navigator");
    *equal = n->eq->subtree_eq(a->c, b->c) ? 1 : 0;
  });
}

gct_status gct_slp_at(const gct_grammar* g, const char* x, uint64_t i, char** symbol) {
  return guarded([&] {
    require(symbol != nullptr, "null argument");
    const gct::Slp& s = need_slp(g);
    gct::SymbolId a = nonterminal(s, x);
    std::uint64_t n = gct::slp_lengths(s)[a];
    if (i == 0 || i > n)
      throw Error(ErrorCode::out_of_range, "position " + std::to_string(i) + " outside 1.." + std::to_string(n), n);
    *symbol = dup(s.symbols.name(gct::symbol_at(s, a, i)));
  });
}

gct_status gct_slp_slice(const gct_grammar* g, const char* x, uint64_t i, uint64_t j, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const gct::Slp& s = need_slp(g);
    gct::SlpSlice slice = gct::substring_slp(s, nonterminal(s, x), i, j);
    *out = dup(gct::to_text(slice.slp));
  });
}

gct_status gct_slp_lcp(const gct_grammar* g1, const char* x1, const gct_grammar* g2, const char* x2, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const gct::Slp& a = need_slp(g1);
    const gct::Slp& b = need_slp(g2);
    *out = gct::lcp(a, nonterminal(a, x1), b, nonterminal(b, x2));
  });
}

gct_status gct_slp_walk(const gct_grammar* g, const char* x, int from_end, const char* moves, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    const gct::Slp& s = need_slp(g);
    nonterminal(s, x);
    gct::BinarizedSlp b = gct::binarize_slp(s);
    auto id = b.slp.symbols.find(x);
    if (!id || !b.slp.symbols.is_nonterminal(*id))
      throw Error(ErrorCode::invalid_argument, std::string(x) + " derives fewer than two symbols");
    gct::NextLinkIndex idx(std::move(b.slp));
    gct::StringCursor c = from_end ? gct::StringCursor::end(idx, *id) : gct::StringCursor::begin(idx, *id);
    std::string script = moves ? moves : "";
    if (script.empty() && idx.length(*id) > gct::kDefaultGuard)
      throw Error(ErrorCode::guard_exceeded, "string of length " + std::to_string(idx.length(*id)), idx.length(*id));
    std::string text;
    auto line = [&] {
      text += std::to_string(c.pos()) + " " + idx.slp().symbols.name(c.symbol()) + " " + c.to_string() + "\n";
    };
    line();
    if (script.empty()) {
      while (from_end ? c.left() : c.right()) line();
    } else {
      for (char m : script) {
        if (m == ' ' || m == ',') continue;
        if (m != 'r' && m != 'l') throw Error(ErrorCode::syntax, std::string("unknown move ") + m);
        if (m == 'r' ? c.right() : c.left())
          line();
        else
          text += "undefined\n";
      }
    }
    *out = dup(text);
  });
}

gct_status gct_encode(const char* tree, const char* mode, int decode, char** out) {
  return guarded([&] {
    require(tree && mode && out, "null argument");
    gct::LabeledTree t = gct::parse_labeled_tree(tree);
    std::string m = mode;
    gct::LabeledTree r;
    if (m == "fcns")
      r = decode ? gct::fcns_decode(t) : gct::fcns_encode(t);
    else if (m == "bin")
      r = decode ? gct::bin_decode(t) : gct::bin_encode(t);
    else
      throw Error(ErrorCode::invalid_argument, "unknown encoding " + m);
    *out = dup(gct::to_string(r));
  });
}

gct_status gct_generate(const char* mode, unsigned size_exp, uint64_t seed, char** out) {
  return guarded([&] {
    require(mode && out, "null argument");
    auto m = gct::parse_generate_mode(mode);
    if (!m) throw Error(ErrorCode::invalid_argument, std::string("unknown generator ") + mode);
    *out = dup(gct::to_text(gct::generate_tslp(*m, size_exp, seed)));
  });
}

gct_status gct_bench(const gct_grammar* g, const gct_bench_options* options, int as_json, char** out) {
  return guarded([&] {
    require(g && options && out, "null argument");
    gct::BenchReport r;
    std::string walk = options->walk ? options->walk : "random";
    if (walk != "random" && walk != "dfs") throw Error(ErrorCode::invalid_argument, "unknown walk " + walk);
    if (g->kind == GCT_SLP) {
      require(walk == "random", "string walks are random");
      gct::BinarizedSlp b = gct::binarize_slp(g->slp);
      gct::SymbolId start = slp_start(b.slp);
      gct::NextLinkIndex idx(std::move(b.slp));
      r = gct::bench_string(idx, start, options->steps, options->seed);
    } else if (options->string_walk) {
      require(walk == "random", "string walks are random");
      gct::TreeNavigator nav(gct::normalize(g->tslp));
      gct::SymbolId start = nav.grammar().start;
      require(nav.normalized().form(start) == gct::RuleForm::a, "the start tree has no spine");
      r = gct::bench_string(nav.index(), nav.to_h(start), options->steps, options->seed);
    } else {
      gct::BenchOptions o;
      o.walk = walk == "dfs" ? gct::Walk::dfs : gct::Walk::random;
      o.steps = options->steps;
      o.seed = options->seed;
      o.eq = options->eq != 0;
      r = gct::bench_tree(gct::normalize(g->tslp), o);
    }
    if (!as_json) {
      *out = dup(r.to_text());
      return;
    }
    auto counters = [](const gct::StepCounters& c) {
      return json{{"pushes", c.pushes}, {"pops", c.pops}, {"next_link", c.next_link}, {"lca", c.lca}};
    };
    json j{{"steps", r.steps},
           {"seconds", r.seconds},
           {"max", counters(r.max)},
           {"total", counters(r.total)},
           {"max_stack_ops", r.max_stack_ops},
           {"max_depth", r.max_depth},
           {"edge_traversals", r.edge_traversals},
           {"eq_queries", r.eq_queries},
           {"max_eq_lca", r.max_eq_lca}};
    *out = dup(dump(j));
  });
}

}  // extern "C"
