/* Copyright 2026 The lpcode Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/


#include "lpcode/trace.hpp"

#include <set>

#include "lpcode/parser.hpp"
#include "lpcode/render.hpp"

namespace lpc {

TraceDoc emit_trace(const AgentStore& store, const AgentKey& root) {
  TraceDoc doc;
  doc.root = root;
  if (!store.find(root)) throw UnboundLocation(render(root));
  // Iterative post-order over dependency edges.
  std::set<AgentKey> done;
  std::vector<std::pair<AgentKey, std::size_t>> stack{{root, 0}};
  std::set<AgentKey> open{root};
  while (!stack.empty()) {
    auto& [key, next] = stack.back();
    const Binding* b = store.find(key);
    if (!b) throw UnboundLocation(render(key));
    if (next < b->deps.size()) {
      const AgentKey& dep = b->deps[next++];
      if (!done.count(dep) && !open.count(dep)) {
        open.insert(dep);
        stack.emplace_back(dep, 0);
      }
      continue;
    }
    doc.nodes.push_back(TraceNode{key, b->formula, b->deps, b->derivation});
    done.insert(key);
    open.erase(key);
    stack.pop_back();
  }
  return doc;
}

std::string render(const Derivation& d) {
  switch (d.kind) {
    case Derivation::Kind::Fact:
      return "(fact " + d.source + " " + render(d.conclusion) + ")";
    case Derivation::Kind::Axiom:
      return "(axiom " + d.source + ")";
    case Derivation::Kind::Pick:
      return "(pick " + std::to_string(d.index) + " " + render(d.premises.at(0)) + ")";
    case Derivation::Kind::Conj: {
      std::string out = "(and";
      for (const auto& p : d.premises) out += " " + render(p);
      return out + ")";
    }
    case Derivation::Kind::Rule: {
      std::string out = "(rule " + d.source + " " + render(d.subst) + " (";
      for (std::size_t i = 0; i < d.premises.size(); ++i) {
        if (i) out += " ";
        out += render(d.premises[i]);
      }
      return out + ") " + render(d.conclusion) + ")";
    }
  }
  return "";
}

std::string render_trace(const TraceDoc& doc) {
  std::string out = "lpcode-trace 1\nroot " + render(doc.root) + "\n";
  for (const auto& n : doc.nodes) {
    out += "node " + render(n.key) + "\n";
    out += "  formula " + render(n.formula) + "\n";
    out += "  deps";
    for (const auto& d : n.deps) out += " " + render(d);
    out += "\n  moves";
    for (const auto& m : n.key.moves) out += " " + m.str();
    out += "\n  derivation " + render(n.derivation) + "\n";
    out += "end\n";
  }
  return out;
}

namespace {

AgentKey read_key(Parser& p) {
  LocRef ref = p.locref();
  if (!ref.is_concrete()) p.fail({"concrete location"});
  AgentKey key{ref.concrete(), {}};
  if (p.accept(Tok::Lt)) {
    do key.moves.push_back(p.integer());
    while (p.accept(Tok::Comma));
    p.expect(Tok::Gt);
  }
  return key;
}

Derivation read_derivation(Parser& p) {
  p.expect(Tok::LParen);
  Derivation d;
  if (p.at_ident("fact")) {
    p.advance();
    d.kind = Derivation::Kind::Fact;
    d.source = render(read_key(p));
    d.conclusion = p.atom();
  } else if (p.at_ident("axiom")) {
    p.advance();
    d.kind = Derivation::Kind::Axiom;
    d.source = render(read_key(p));
  } else if (p.at_ident("pick")) {
    p.advance();
    d.kind = Derivation::Kind::Pick;
    std::int64_t index = p.small_integer();
    if (index < 0) p.fail({"natural number"});
    d.index = static_cast<std::size_t>(index);
    d.premises.push_back(read_derivation(p));
  } else if (p.at_ident("and")) {
    p.advance();
    d.kind = Derivation::Kind::Conj;
    while (!p.at(Tok::RParen)) d.premises.push_back(read_derivation(p));
  } else if (p.at_ident("rule")) {
    p.advance();
    d.kind = Derivation::Kind::Rule;
    d.source = render(read_key(p));
    p.expect(Tok::LBrace);
    if (!p.at(Tok::RBrace)) {
      do {
        std::string name = p.identifier();
        p.expect(Tok::Eq);
        if (!d.subst.emplace(name, p.term()).second) p.fail({"distinct variable"});
      } while (p.accept(Tok::Comma));
    }
    p.expect(Tok::RBrace);
    p.expect(Tok::LParen);
    while (!p.at(Tok::RParen)) d.premises.push_back(read_derivation(p));
    p.expect(Tok::RParen);
    d.conclusion = p.atom();
  } else {
    p.fail({"fact", "rule", "pick", "and", "axiom"});
  }
  p.expect(Tok::RParen);
  return d;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines_.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }

  bool done() const { return at_ >= lines_.size(); }
  int line() const { return static_cast<int>(at_) + 1; }

  // Consumes a line `indent keyword rest` and parses `rest` with `fn`.
  template <typename Fn>
  auto field(std::string_view indent, std::string_view keyword, Fn fn) {
    std::string_view l = done() ? std::string_view{} : lines_[at_];
    std::string head = std::string(indent) + std::string(keyword);
    if (l.substr(0, head.size()) != head ||
        (l.size() > head.size() && l[head.size()] != ' '))
      throw ParseError(line(), 1, {head}, done() ? "end of input" : std::string(l));
    std::string_view rest = l.size() > head.size() ? l.substr(head.size() + 1) : "";
    int column = static_cast<int>(head.size()) + 2;
    try {
      Parser p(rest);
      auto value = fn(p);
      if (!p.at(Tok::End)) p.fail({"end of line"});
      ++at_;
      return value;
    } catch (const ParseError& e) {
      throw ParseError(line(), column + e.column() - 1, e.expected(), e.found());
    }
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t at_ = 0;
};

}  // namespace

TraceDoc parse_trace(std::string_view text) {
  LineReader r(text);
  TraceDoc doc;
  r.field("", "lpcode-trace", [](Parser& p) {
    if (p.integer() != 1) p.fail({"1"});
    return 0;
  });
  doc.root = r.field("", "root", read_key);
  while (!r.done()) {
    TraceNode n;
    n.key = r.field("", "node", read_key);
    n.formula = r.field("  ", "formula", [](Parser& p) { return p.formula(); });
    n.deps = r.field("  ", "deps", [](Parser& p) {
      std::vector<AgentKey> deps;
      while (!p.at(Tok::End)) deps.push_back(read_key(p));
      return deps;
    });
    auto moves = r.field("  ", "moves", [](Parser& p) {
      std::vector<BigInt> moves;
      while (!p.at(Tok::End)) moves.push_back(p.integer());
      return moves;
    });
    if (moves != n.key.moves)
      throw ParseError(r.line() - 1, 1, {"moves matching " + render(n.key)}, "other moves");
    n.derivation = r.field("  ", "derivation", read_derivation);
    r.field("", "end", [](Parser&) { return 0; });
    doc.nodes.push_back(std::move(n));
  }
  return doc;
}

}  // namespace lpc
