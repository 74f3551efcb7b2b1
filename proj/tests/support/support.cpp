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


#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "lpcode/parser.hpp"
#include "lpcode/render.hpp"
#include "lpcode/wf.hpp"

#ifndef LPCODE_CLI
#error "LPCODE_CLI must name the command-line tool"
#endif

#ifndef LPCODE_FIXTURES
#error "LPCODE_FIXTURES must name the fixture directory"
#endif

namespace lpc::testing {

std::string fixture_path(const std::string& name) {
  return std::string(LPCODE_FIXTURES) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProgramModel load_fixture(const std::string& name) {
  return ProgramModel(parse_program(read_file(fixture_path(name))));
}

Location loc(const std::string& text) {
  Parser p(text);
  return p.locref().concrete();
}

BigInt fib_oracle(unsigned n) {
  BigInt a = 1, b = 1;
  for (unsigned i = 2; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return n <= 2 ? BigInt(1) : b;
}

std::string render(const Pattern& p) {
  std::string out = p.pred + "(";
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) out += ",";
    if (const int* c = std::get_if<int>(&p.args[i]))
      out += std::to_string(*c);
    else
      out += std::get<std::string>(p.args[i]);
  }
  return out + ")";
}

namespace {

constexpr int kConstants = 6;  // 0..5
const char* kVars[] = {"X", "Y", "Z"};

Pattern random_pattern(const std::string& pred, std::size_t arity, std::mt19937_64& rng,
                       int var_percent, std::size_t nvars) {
  Pattern p{pred, {}};
  std::uniform_int_distribution<int> pct(0, 99), c(0, kConstants - 1);
  std::uniform_int_distribution<std::size_t> v(0, nvars - 1);
  for (std::size_t i = 0; i < arity; ++i) {
    if (pct(rng) < var_percent)
      p.args.emplace_back(std::string(kVars[v(rng)]));
    else
      p.args.emplace_back(c(rng));
  }
  return p;
}

std::set<std::string> vars_in(const Pattern& p) {
  std::set<std::string> out;
  for (const auto& a : p.args)
    if (const auto* s = std::get_if<std::string>(&a)) out.insert(*s);
  return out;
}

}  // namespace

RandomProgram random_program(std::mt19937_64& rng) {
  RandomProgram prog;
  std::uniform_int_distribution<int> npred(2, 6), arity(1, 2), nfacts(1, 8), nrules(0, 4),
      nbody(1, 2);
  int preds = npred(rng);
  std::vector<std::size_t> ar(static_cast<std::size_t>(preds));
  for (auto& a : ar) a = static_cast<std::size_t>(arity(rng));
  std::uniform_int_distribution<int> pick(0, preds - 1);
  auto name = [](int i) { return "p" + std::to_string(i); };

  int facts = nfacts(rng);
  for (int i = 0; i < facts; ++i) {
    int p = pick(rng);
    prog.facts.push_back(random_pattern(name(p), ar[static_cast<std::size_t>(p)], rng, 0, 1));
  }
  int rules = nrules(rng);
  for (int r = 0; r < rules; ++r) {
    std::vector<Pattern> body;
    int n = nbody(rng);
    std::set<std::string> bound;
    for (int i = 0; i < n; ++i) {
      int p = pick(rng);
      body.push_back(random_pattern(name(p), ar[static_cast<std::size_t>(p)], rng, 70, 3));
      for (const auto& v : vars_in(body.back())) bound.insert(v);
    }
    int h = pick(rng);
    Pattern head{name(h), {}};
    std::vector<std::string> pool(bound.begin(), bound.end());
    std::uniform_int_distribution<int> pct(0, 99), c(0, kConstants - 1);
    for (std::size_t i = 0; i < ar[static_cast<std::size_t>(h)]; ++i) {
      if (!pool.empty() && pct(rng) < 75) {
        std::uniform_int_distribution<std::size_t> v(0, pool.size() - 1);
        head.args.emplace_back(pool[v(rng)]);
      } else {
        head.args.emplace_back(c(rng));
      }
    }
    prog.rules.emplace_back(std::move(body), std::move(head));
  }
  return prog;
}

KnowledgeBase RandomProgram::kb() const {
  KnowledgeBase kb;
  std::size_t n = 0;
  for (const auto& f : facts)
    kb.entries.push_back({"/f[" + std::to_string(n++) + "]", parse_formula(render(f))});
  n = 0;
  for (const auto& [body, head] : rules) {
    std::set<std::string> vars;
    std::string text;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) text += " & ";
      text += render(body[i]);
      for (const auto& v : vars_in(body[i])) vars.insert(v);
    }
    text = "(" + text + ") -> " + render(head);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) text = "all " + *it + ". " + text;
    kb.entries.push_back({"/g[" + std::to_string(n++) + "]", parse_formula(text)});
  }
  return kb;
}

std::string as_source(const RandomProgram& p, const Pattern& goal) {
  std::string out, deps;
  KnowledgeBase kb = p.kb();
  for (const auto& e : kb.entries) {
    out += e.source + " = " + lpc::render(e.formula) + ".\n";
    deps += (deps.empty() ? "" : ", ") + e.source;
  }
  return out + "/q = " + goal_text(goal) + " ^ {" + deps + "}.\n";
}

Pattern random_goal(const RandomProgram& p, std::mt19937_64& rng) {
  std::map<std::string, std::size_t> arity;
  for (const auto& f : p.facts) arity[f.pred] = f.args.size();
  for (const auto& [body, head] : p.rules) {
    arity[head.pred] = head.args.size();
    for (const auto& b : body) arity[b.pred] = b.args.size();
  }
  std::uniform_int_distribution<std::size_t> pick(0, arity.size() - 1);
  auto it = arity.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
  Pattern g = random_pattern(it->first, it->second, rng, 50, 2);
  for (auto& a : g.args)
    if (auto* s = std::get_if<std::string>(&a)) *s = *s == "X" ? "V0" : "V1";
  return g;
}

std::string goal_text(const Pattern& goal) {
  std::string prefix;
  for (const auto& v : vars_in(goal)) prefix += "?" + v + ". ";
  return prefix + render(goal);
}

namespace {

using Tuple = std::pair<std::string, std::vector<int>>;

bool match(const Pattern& p, const Tuple& t, std::map<std::string, int>& env) {
  if (p.pred != t.first || p.args.size() != t.second.size()) return false;
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (const int* c = std::get_if<int>(&p.args[i])) {
      if (*c != t.second[i]) return false;
      continue;
    }
    const auto& v = std::get<std::string>(p.args[i]);
    auto [it, fresh] = env.emplace(v, t.second[i]);
    if (!fresh && it->second != t.second[i]) return false;
  }
  return true;
}

Tuple ground(const Pattern& p, const std::map<std::string, int>& env) {
  Tuple t{p.pred, {}};
  for (const auto& a : p.args)
    t.second.push_back(std::holds_alternative<int>(a) ? std::get<int>(a)
                                                      : env.at(std::get<std::string>(a)));
  return t;
}

std::string render(const Tuple& t) {
  std::string out = t.first + "(";
  for (std::size_t i = 0; i < t.second.size(); ++i)
    out += (i ? "," : "") + std::to_string(t.second[i]);
  return out + ")";
}

void join(const std::vector<Pattern>& body, std::size_t i, const std::set<Tuple>& db,
          std::map<std::string, int> env, const Pattern& head, std::set<Tuple>& out) {
  if (i == body.size()) {
    out.insert(ground(head, env));
    return;
  }
  for (const auto& t : db) {
    auto e = env;
    if (match(body[i], t, e)) join(body, i + 1, db, e, head, out);
  }
}

}  // namespace

std::set<std::string> fixpoint(const RandomProgram& p) {
  std::set<Tuple> db;
  for (const auto& f : p.facts) db.insert(ground(f, {}));
  while (true) {
    std::set<Tuple> next = db;
    for (const auto& [body, head] : p.rules) join(body, 0, db, {}, head, next);
    if (next == db) break;
    db = std::move(next);
  }
  std::set<std::string> out;
  for (const auto& t : db) out.insert(render(t));
  return out;
}

std::set<std::string> goal_answers(const Pattern& goal, const std::set<std::string>& model) {
  std::set<std::string> out;
  for (const auto& atom : model) {
    Pattern g = goal;
    // Parse `pN(a,b)` back into a tuple.
    auto open = atom.find('(');
    Tuple t{atom.substr(0, open), {}};
    std::stringstream ss(atom.substr(open + 1, atom.size() - open - 2));
    std::string part;
    while (std::getline(ss, part, ',')) t.second.push_back(std::stoi(part));
    std::map<std::string, int> env;
    if (match(g, t, env)) out.insert(atom);
  }
  return out;
}

Agreement oracle_agreement(int count, std::uint64_t seed) {
  Agreement a;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    auto prog = random_program(rng);
    auto goal = random_goal(prog, rng);
    auto answers = goal_answers(goal, fixpoint(prog));
    KnowledgeBase kb = prog.kb();
    DeriveResult r = derive(conj_goal_of(parse_formula(goal_text(goal))), kb, {});
    ++a.programs;
    if (r.status == ProofStatus::BoundExhausted) ++a.exhausted;
    bool ok;
    if (r.status == ProofStatus::Proved) {
      std::string got =
          render(instantiate_goal(conj_goal_of(parse_formula(goal_text(goal))),
                                  r.witnesses));
      ok = answers.count(got) > 0;
      VerifyResult v = verify_derivation(r.derivation, parse_formula(goal_text(goal)),
                                         parse_formula(got), [&] {
                                           std::map<std::string, Formula> m;
                                           for (const auto& e : kb.entries) m.emplace(e.source, e.formula);
                                           return m;
                                         }());
      ok = ok && v.accepted;
    } else {
      ok = answers.empty();
    }
    if (ok)
      ++a.agree;
    else if (a.first_disagreement.empty())
      a.first_disagreement = "program " + std::to_string(i) + " goal " + goal_text(goal);
  }
  return a;
}

const char* const kFibStoreAt4 =
    "/r[1] = fib(1,1).\n"
    "/r[2] = fib(2,1).\n"
    "/r[3] = all x. all y. all z. (fib(x,y) & fib(x+1,z) -> fib(x+2,y+z)).\n"
    "/a[1] = fib(1,1).\n"
    "/a[2] = fib(2,1).\n"
    "/a[3] = fib(3,2).\n"
    "/a[4] = fib(4,3).\n"
    "/istep = for i in 5..inf: /a[i] = ?y. fib(i,y) ^ {/a[i-1], /a[i-2], /r[3]}.\n"
    "/fib<4> = fib(4,3).\n"
    "/query<4> = fib(4,3).\n";

std::string mutate_fixture(const std::string& fixture, const std::string& from,
                           const std::string& to) {
  std::string text = read_file(fixture_path(fixture));
  auto at = text.find(from);
  if (at == std::string::npos) throw std::runtime_error("no '" + from + "' in " + fixture);
  return text.replace(at, from.size(), to);
}

const std::vector<SchemeMutation>& scheme_mutations() {
  static const std::vector<SchemeMutation> all = {
      // dropped bases
      {"fib.lp", "/fib", "{GIND, /a[1], /a[2], /istep}", "{GIND, /a[1], /istep}"},
      {"fib.lp", "/fib", "{GIND, /a[1], /a[2], /istep}", "{GIND, /a[2], /istep}"},
      {"ind.lp", "/q", "{IND, /a[1], /istep}", "{IND, /istep}"},
      // shifted loop origin
      {"fib.lp", "/fib", "for i in 3..inf", "for i in 4..inf"},
      {"ind.lp", "/q", "for i in 2..inf", "for i in 3..inf"},
      {"ind.lp", "/q", "for i in 2..inf", "for i in 1..inf"},
      // wrong step deps
      {"fib.lp", "/fib", "{/a[i-1], /a[i-2], /r[3]}", "{/a[i-1], /r[3]}"},
      {"fib.lp", "/fib", "{/a[i-1], /a[i-2], /r[3]}", "{/a[i-1], /a[i-3], /r[3]}"},
      {"ind.lp", "/q", "{/a[i-1], /r[2]}", "{/a[i-2], /r[2]}"},
      // order mismatch and tag problems
      {"fib.lp", "/fib", "{GIND, /a[1], /a[2], /istep}", "{IND, /a[1], /a[2], /istep}"},
      {"ind.lp", "/q", "{IND, /a[1], /istep}", "{IND, /a[1]}"},
      {"ind.lp", "/q", "(!x. ?y. d(x,y))", "(?x. ?y. d(x,y))"},
      {"ind.lp", "/q", "for i in 2..inf", "for i in 2..9"},
      {"ind.lp", "/q", "/a[1] = ?y. d(1,y)", "/a[1] = ?y. d(2,y)"},
  };
  return all;
}

namespace {

std::vector<Derivation*> subnodes(Derivation& d) {
  std::vector<Derivation*> out{&d};
  for (auto& p : d.premises)
    for (auto* s : subnodes(p)) out.push_back(s);
  return out;
}

Atom bumped(const Atom& a) {
  Atom out = a;
  if (out.args.empty()) out.predicate += "x";
  else out.args[0] = Term::integer(eval_term(out.args[0]).value_or(0) + 1);
  return out;
}

}  // namespace

std::vector<std::pair<std::string, TraceDoc>> trace_mutations(const TraceDoc& doc) {
  using lpc::render;
  std::vector<std::pair<std::string, TraceDoc>> out;
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    std::string at = render(doc.nodes[i].key);
    auto add = [&](const std::string& what, const std::function<void(TraceNode&)>& fn) {
      TraceDoc m = doc;
      fn(m.nodes[i]);
      if (!(m == doc)) out.emplace_back(at + " " + what, std::move(m));
    };
    add("formula", [](TraceNode& n) {
      n.formula = n.formula.kind() == Formula::Kind::Atomic ? Formula::atomic(bumped(n.formula.atom()))
                                                            : Formula::falsity();
    });
    for (std::size_t d = 0; d < doc.nodes[i].deps.size(); ++d) {
      add("drop dep", [d](TraceNode& n) { n.deps.erase(n.deps.begin() + static_cast<long>(d)); });
      add("repeat dep", [d](TraceNode& n) { n.deps.push_back(n.deps[d]); });
    }
    if (doc.nodes[i].deps.size() > 1)
      add("reorder deps", [](TraceNode& n) { std::swap(n.deps[0], n.deps[1]); });
    add("moves", [](TraceNode& n) {
      if (n.key.moves.empty()) n.key.moves.push_back(1);
      else n.key.moves[0] += 1;
    });

    TraceNode copy = doc.nodes[i];
    std::size_t count = subnodes(copy.derivation).size();
    for (std::size_t s = 0; s < count; ++s) {
      auto sub = [s](TraceNode& n) { return subnodes(n.derivation)[s]; };
      std::string p = "derivation#" + std::to_string(s);
      add(p + " kind", [&](TraceNode& n) {
        Derivation* d = sub(n);
        d->kind = d->kind == Derivation::Kind::Fact ? Derivation::Kind::Axiom
                                                    : Derivation::Kind::Fact;
      });
      const Derivation* orig = subnodes(copy.derivation)[s];
      using K = Derivation::Kind;
      bool sourced = orig->kind == K::Fact || orig->kind == K::Rule || orig->kind == K::Axiom;
      if (sourced) {
        add(p + " source", [&](TraceNode& n) { sub(n)->source = "/nowhere"; });
        for (const auto& dep : doc.nodes[i].deps)
          add(p + " source " + render(dep), [&](TraceNode& n) { sub(n)->source = render(dep); });
      }
      if (orig->kind == K::Fact || orig->kind == K::Rule)
        add(p + " conclusion", [&](TraceNode& n) {
          Derivation* d = sub(n);
          d->conclusion = bumped(d->conclusion);
        });
      if (orig->kind == K::Pick) add(p + " index", [&](TraceNode& n) { sub(n)->index += 1; });
      for (const auto& [k, v] : orig->subst) {
        std::string key = k;
        add(p + " subst " + key, [&, key](TraceNode& n) {
          auto& t = sub(n)->subst.at(key);
          t = Term::integer(t.value() + 1);
        });
        add(p + " drop subst " + key, [&, key](TraceNode& n) { sub(n)->subst.erase(key); });
      }
      if (orig->premises.size() > 1)
        add(p + " premise order",
            [&](TraceNode& n) { std::swap(sub(n)->premises[0], sub(n)->premises[1]); });
      if (!orig->premises.empty())
        add(p + " drop premise", [&](TraceNode& n) { sub(n)->premises.pop_back(); });
    }
  }
  return out;
}


namespace {

std::string quoted(const std::string& word) {
  std::string out = "'";
  for (char ch : word) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  std::string base = std::filesystem::temp_directory_path() /
                     ("lpcode_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::string cmd = quoted(LPCODE_CLI);
  for (const auto& a : args) cmd += " " + quoted(a);
  cmd += " </dev/null >" + quoted(base + ".out") + " 2>" + quoted(base + ".err");
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(base + ".out");
  r.err = read_file(base + ".err");
  std::filesystem::remove(base + ".out");
  std::filesystem::remove(base + ".err");
  return r;
}

}  // namespace lpc::testing
