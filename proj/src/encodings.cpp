#include "gct/encodings.hpp"

#include <stdexcept>
#include <utility>

#include "gct/core_model.hpp"

namespace gct {

namespace {

bool is_label_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_gadget(std::string_view label) { return label.substr(0, kGadgetPrefix.size()) == kGadgetPrefix; }

std::uint32_t gadget_leaves(std::string_view label) {
  std::string_view digits = label.substr(kGadgetPrefix.size());
  if (digits.empty() || digits.size() > 9) throw Error(ErrorCode::syntax, "bad gadget label " + std::string(label));
  std::uint32_t n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorCode::syntax, "bad gadget label " + std::string(label));
    n = n * 10 + static_cast<std::uint32_t>(c - '0');
  }
  if (n < 2) throw Error(ErrorCode::syntax, "bad gadget label " + std::string(label));
  return n;
}

std::uint32_t leaves(const LabeledTree& b, std::uint32_t v) {
  return is_gadget(b.labels[v]) ? gadget_leaves(b.labels[v]) : 1;
}

}  // namespace

LabeledTree LabeledTree::from_preorder(std::vector<std::string> labels, const std::vector<std::uint32_t>& arity) {
  LabeledTree t;
  const std::size_t n = labels.size();
  if (n == 0 || arity.size() != n) throw Error(ErrorCode::invalid_argument, "empty or inconsistent preorder");
  t.labels = std::move(labels);
  t.children.resize(n);
  t.parent.assign(n, kNoParent);
  std::vector<std::uint32_t> open;  // nodes still expecting children
  for (std::uint32_t v = 0; v < n; ++v) {
    if (v > 0) {
      if (open.empty()) throw Error(ErrorCode::invalid_argument, "preorder describes a forest");
      std::uint32_t p = open.back();
      t.parent[v] = p;
      t.children[p].push_back(v);
      if (t.children[p].size() == arity[p]) open.pop_back();
    }
    if (arity[v] > 0) open.push_back(v);
  }
  if (!open.empty()) throw Error(ErrorCode::invalid_argument, "preorder ends early");
  return t;
}

LabeledTree parse_labeled_tree(std::string_view text) {
  std::vector<std::string> labels;
  std::vector<std::uint32_t> arity;
  std::vector<std::uint32_t> open;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  };
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::syntax, what + " at offset " + std::to_string(i), i);
  };
  while (true) {
    skip();
    std::size_t b = i;
    while (i < text.size() && is_label_char(text[i])) ++i;
    if (b == i) throw fail("expected a label");
    if (!open.empty()) ++arity[open.back()];
    labels.emplace_back(text.substr(b, i - b));
    arity.push_back(0);
    skip();
    if (i < text.size() && text[i] == '(') {
      ++i;
      open.push_back(static_cast<std::uint32_t>(labels.size() - 1));
      continue;
    }
    while (true) {
      skip();
      if (open.empty()) {
        if (i != text.size()) throw fail("trailing input");
        return LabeledTree::from_preorder(std::move(labels), arity);
      }
      if (i < text.size() && text[i] == ',') {
        ++i;
        break;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        open.pop_back();
        continue;
      }
      throw fail("expected ',' or ')'");
    }
  }
}

std::string to_string(const LabeledTree& t) {
  std::string out;
  if (t.size() == 0) return out;
  // (node, next child index)
  std::vector<std::pair<std::uint32_t, std::size_t>> st{{0, 0}};
  out += t.labels[0];
  while (!st.empty()) {
    auto& [v, k] = st.back();
    const auto& ch = t.children[v];
    if (k == ch.size()) {
      if (!ch.empty()) out += ')';
      st.pop_back();
      continue;
    }
    out += k == 0 ? '(' : ',';
    std::uint32_t c = ch[k++];
    out += t.labels[c];
    st.emplace_back(c, 0);
  }
  return out;
}

LabeledTree fcns_encode(const LabeledTree& t) {
  std::vector<std::string> labels;
  std::vector<std::uint32_t> arity;
  labels.reserve(2 * t.size() + 1);
  constexpr std::uint32_t nil = LabeledTree::kNoParent;
  std::vector<std::uint32_t> next_sibling(t.size(), nil);
  for (const auto& ch : t.children)
    for (std::size_t k = 0; k + 1 < ch.size(); ++k) next_sibling[ch[k]] = ch[k + 1];
  std::vector<std::uint32_t> todo{0};
  while (!todo.empty()) {
    std::uint32_t v = todo.back();
    todo.pop_back();
    if (v == nil) {
      labels.emplace_back(kNilLabel);
      arity.push_back(0);
      continue;
    }
    if (t.labels[v] == kNilLabel) throw Error(ErrorCode::invalid_argument, "label nil is reserved");
    labels.push_back(t.labels[v]);
    arity.push_back(2);
    todo.push_back(next_sibling[v]);
    todo.push_back(t.children[v].empty() ? nil : t.children[v][0]);
  }
  return LabeledTree::from_preorder(std::move(labels), arity);
}

LabeledTree fcns_decode(const LabeledTree& b) {
  if (b.size() == 0 || b.labels[0] == kNilLabel) throw Error(ErrorCode::invalid_argument, "not an fcns encoding");
  for (std::uint32_t v = 0; v < b.size(); ++v) {
    bool nil = b.labels[v] == kNilLabel;
    if (b.children[v].size() != (nil ? 0u : 2u)) throw Error(ErrorCode::invalid_argument, "not an fcns encoding");
  }
  if (b.labels[b.children[0][1]] != kNilLabel) throw Error(ErrorCode::invalid_argument, "root has a sibling");
  std::vector<std::string> labels;
  std::vector<std::uint32_t> arity;
  // preorder of t is the preorder of the non-nil nodes of b
  for (std::uint32_t v = 0; v < b.size(); ++v) {
    if (b.labels[v] == kNilLabel) continue;
    labels.push_back(b.labels[v]);
    std::uint32_t n = 0;
    for (std::uint32_t c = b.children[v][0]; b.labels[c] != kNilLabel; c = b.children[c][1]) ++n;
    arity.push_back(n);
  }
  return LabeledTree::from_preorder(std::move(labels), arity);
}

LabeledTree bin_encode(const LabeledTree& t) {
  std::vector<std::string> labels;
  std::vector<std::uint32_t> arity;
  struct Task {
    std::uint32_t node;
    std::uint32_t lo, hi;  // child range for gadget nodes, lo == hi otherwise
  };
  std::vector<Task> todo{{0, 0, 0}};
  auto push_range = [&](std::uint32_t v, std::uint32_t lo, std::uint32_t hi) {
    if (hi - lo == 1)
      todo.push_back({t.children[v][lo], 0, 0});
    else
      todo.push_back({v, lo, hi});
  };
  while (!todo.empty()) {
    Task k = todo.back();
    todo.pop_back();
    std::uint32_t s = k.lo == k.hi ? static_cast<std::uint32_t>(t.children[k.node].size()) : k.hi - k.lo;
    std::uint32_t lo = k.lo == k.hi ? 0 : k.lo;
    if (k.lo == k.hi) {
      if (is_gadget(t.labels[k.node]))
        throw Error(ErrorCode::invalid_argument, "labels starting with _bin are reserved");
      labels.push_back(t.labels[k.node]);
      if (s <= 2) {
        arity.push_back(s);
        for (std::uint32_t c = s; c-- > 0;) todo.push_back({t.children[k.node][c], 0, 0});
        continue;
      }
    } else {
      labels.push_back(std::string(kGadgetPrefix) + std::to_string(s));
    }
    arity.push_back(2);
    std::uint32_t mid = lo + (s + 1) / 2;
    push_range(k.node, mid, lo + s);
    push_range(k.node, lo, mid);
  }
  if (labels.size() > 3 * t.size()) throw std::logic_error("bin encoding exceeds 3|t|");
  return LabeledTree::from_preorder(std::move(labels), arity);
}

std::uint32_t bin_rank(const LabeledTree& b, std::uint32_t v) {
  std::uint32_t n = 0;
  for (std::uint32_t c : b.children[v]) n += leaves(b, c);
  return n;
}

LabeledTree bin_decode(const LabeledTree& b) {
  if (b.size() == 0 || is_gadget(b.labels[0])) throw Error(ErrorCode::invalid_argument, "not a bin encoding");
  std::vector<std::string> labels;
  std::vector<std::uint32_t> arity;
  for (std::uint32_t v = 0; v < b.size(); ++v) {
    if (is_gadget(b.labels[v])) {
      std::uint32_t n = gadget_leaves(b.labels[v]);
      const auto& ch = b.children[v];
      if (ch.size() != 2 || leaves(b, ch[0]) != (n + 1) / 2 || leaves(b, ch[1]) != n / 2)
        throw Error(ErrorCode::invalid_argument, "malformed gadget " + b.labels[v]);
      continue;
    }
    std::uint32_t s = bin_rank(b, v);
    if (s > 2 && (b.children[v].size() != 2 || leaves(b, b.children[v][0]) != (s + 1) / 2))
      throw Error(ErrorCode::invalid_argument, "malformed fan-out below " + b.labels[v]);
    labels.push_back(b.labels[v]);
    arity.push_back(s);
  }
  return LabeledTree::from_preorder(std::move(labels), arity);
}

BinStep bin_nav(const LabeledTree& b, std::uint32_t v, std::uint32_t child) {
  if (v >= b.size() || is_gadget(b.labels[v])) throw Error(ErrorCode::invalid_argument, "not an original node");
  BinStep r{v, 0};
  if (child == 0) {
    do {
      r.node = b.parent[r.node];
      if (r.node == LabeledTree::kNoParent) throw Error(ErrorCode::out_of_range, "the root has no parent");
      ++r.steps;
    } while (is_gadget(b.labels[r.node]));
    return r;
  }
  if (child > bin_rank(b, v)) throw Error(ErrorCode::out_of_range, "no child " + std::to_string(child));
  std::uint32_t i = child;
  do {
    const auto& ch = b.children[r.node];
    std::uint32_t left = leaves(b, ch[0]);
    if (ch.size() == 1 || i <= left) {
      r.node = ch[0];
    } else {
      i -= left;
      r.node = ch[1];
    }
    ++r.steps;
  } while (is_gadget(b.labels[r.node]));
  return r;
}

}  // namespace gct
