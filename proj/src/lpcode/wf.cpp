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


#include "lpcode/wf.hpp"

#include <algorithm>
#include <set>
#include <variant>

#include "lpcode/render.hpp"

namespace lpc {

std::string render(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "ERROR " : "WARNING ";
  out += d.code + " " + d.loc + ":" + std::to_string(d.pos.line) + ":" +
         std::to_string(d.pos.column) + " " + d.message;
  return out;
}

const char* to_string(WfVerdict::Kind k) {
  switch (k) {
    case WfVerdict::Kind::WellFormed: return "well-formed";
    case WfVerdict::Kind::NotWellFormed: return "not well-formed";
    case WfVerdict::Kind::Unknown: return "unknown";
    case WfVerdict::Kind::WellFormedByScheme: return "well-formed by scheme";
  }
  return "?";
}

bool CheckReport::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

Formula matrix_of(const Formula& f) {
  Formula cur = f;
  while (cur.kind() == Formula::Kind::ChAll) cur = cur.body();
  return cur;
}

// Goal shape of a `!`-headed formula with its `!` variables left open.
ConjGoal open_goal(const Formula& f) {
  std::vector<std::string> universals = choice_universals(f);
  Formula closed = matrix_of(f);
  for (auto it = universals.rbegin(); it != universals.rend(); ++it)
    closed = Formula::quant(Formula::Kind::ChExists, *it, closed);
  ConjGoal g = conj_goal_of(closed);
  g.existentials.erase(g.existentials.begin(),
                       g.existentials.begin() + static_cast<std::ptrdiff_t>(universals.size()));
  return g;
}

// The formula with its `!` variables and the loop index set to sample
// values, so that its goal shape can be read.
Formula shape_instance(const Formula& f, const ForLoop* loop) {
  Formula cur = strip_universals(f, std::vector<BigInt>(choice_universals(f).size(), 0));
  if (loop) cur = substitute(cur, Substitution{{loop->index_var, Term::integer(loop->lower)}});
  return cur;
}

// ---------------------------------------------------------------------------
// Structural checks

class Structural {
 public:
  explicit Structural(const Program& p) : model_(p) {}

  std::vector<Diagnostic> run() {
    for (const auto& loc : model_.duplicates()) {
      auto decl = model_.find(loc);
      SourcePos pos = decl ? pos_of(decl->pos) : SourcePos{};
      error("WF002", pos, render(loc), render(loc) + " is assigned more than once");
    }
    for (const auto& [pos, a] : model_.assignments()) check_arity(*a, render(a->target));
    for (const auto& [pos, loop] : model_.loops()) check_arity(loop->body, render(loop->name));
    for (const auto& [pos, a] : model_.assignments()) check_assignment(*a, nullptr);
    for (const auto& [pos, loop] : model_.loops()) check_loop(*loop);
    check_cycles();
    std::stable_sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.pos.line, a.pos.column) < std::tie(b.pos.line, b.pos.column);
    });
    return std::move(out_);
  }

 private:
  SourcePos pos_of(ItemPos p) const {
    const Item& item = model_.program().statements[p.statement].items[p.item];
    if (const auto* a = std::get_if<Assignment>(&item)) return a->pos;
    return std::get<ForLoop>(item).pos;
  }

  void error(const std::string& code, SourcePos pos, const std::string& loc, std::string msg) {
    out_.push_back(Diagnostic{Severity::Error, code, pos, loc, std::move(msg)});
  }

  void check_arity(const Assignment& a, const std::string& loc) {
    std::vector<ArityClash> clashes;
    collect_arities(a.formula, arities_, clashes);
    for (const auto& c : clashes)
      error("WF007", a.pos, loc,
            "predicate " + c.predicate + " used with arity " + std::to_string(c.second_arity) +
                " and " + std::to_string(c.first_arity));
  }

  bool resolves(const Location& l) const { return model_.find(l) || model_.loop_named(l); }

  // Deps, free variables and formula shape of an assignment; `loop` is the
  // enclosing loop for a loop body.
  void check_assignment(const Assignment& a, const ForLoop* loop) {
    std::string loc = loop ? render(loop->name) : render(a.target);
    bool deps_ok = true;
    for (const auto& d : a.deps) {
      if (d.is_tag()) continue;
      if (!d.loc.is_concrete()) {
        if (!loop || *d.loc.index->var != loop->index_var) {
          error("WF006", d.loc.pos, loc,
                "index variable in " + render(d.loc) + " is not bound by an enclosing loop");
          deps_ok = false;
        }
        continue;
      }
      Location l = d.loc.concrete();
      if (!resolves(l)) {
        error("WF006", d.loc.pos, loc, "dependency " + render(l) + " is not declared");
        deps_ok = false;
      } else if (model_.loop_named(l) && !a.induction_tag()) {
        error("WF003", d.loc.pos, loc,
              "loop " + render(l) + " can only be referenced by an IND/GIND statement");
        deps_ok = false;
      }
    }

    std::set<std::string> free = free_vars(a.formula);
    if (loop) free.erase(loop->index_var);
    if (!free.empty()) {
      std::string names;
      for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
      error("WF005", a.pos, loc, "formula has free variables: " + names);
      return;
    }

    bool axiom = a.deps.empty() && !has_choice(a.formula);
    try {
      if (axiom)
        clauses_of(a.formula, loc);
      else
        goal_of(shape_instance(a.formula, loop));
    } catch (const UnsupportedFormula& e) {
      error("WF005", a.pos, loc, e.what());
      return;
    }
    if (a.induction_tag() && deps_ok) {
      try {
        validate_induction(a, model_);
      } catch (const ModelError& e) {
        error("WF003", a.pos, loc, e.what());
      }
    }
  }

  void loop_error(const SourcePos& pos, const std::string& loc, const std::string& msg) {
    malformed_loop_ = true;
    error("WF008", pos, loc, msg);
  }

  void check_loop(const ForLoop& loop) {
    std::string loc = render(loop.name);
    if (!loop.name.is_concrete() || loop.name.index) {
      loop_error( loop.pos, loc, "loop name must be a plain location");
      return;
    }
    if (loop.upper && loop.lower > *loop.upper) {
      loop_error( loop.pos, loc, "loop range is empty");
      return;
    }
    const LocRef& t = loop.body.target;
    if (!t.index || !t.index->var || *t.index->var != loop.index_var || t.index->offset != 0) {
      loop_error( t.pos, loc,
            "loop body must assign /" + t.name + "[" + loop.index_var + "]");
      return;
    }
    std::int64_t reach = 0;
    for (const auto& d : loop.body.deps) {
      if (d.is_tag() || d.loc.is_concrete() || *d.loc.index->var != loop.index_var) continue;
      if (d.loc.name == t.name && d.loc.index->offset >= 0) {
        loop_error( d.loc.pos, loc,
              render(d.loc) + " does not refer to an earlier element of /" + t.name);
        return;
      }
      reach = std::max(reach, -d.loc.index->offset);
    }
    check_assignment(loop.body, &loop);
    // Instances whose indexed deps fall before the loop must find them declared.
    std::int64_t last = loop.lower + reach;
    if (loop.upper) last = std::min(last, *loop.upper);
    for (std::int64_t i = loop.lower; i <= last; ++i) {
      try {
        Assignment inst = instantiate(loop, i);
        for (const auto& d : inst.deps)
          if (!d.is_tag() && d.loc.is_concrete() && !resolves(d.loc.concrete())) {
            error("WF006", d.loc.pos, loc,
                  "dependency " + render(d.loc) + " of instance " + std::to_string(i) +
                      " is not declared");
            return;
          }
      } catch (const IndexOutOfRange& e) {
        loop_error( loop.pos, loc, e.what());
        return;
      } catch (const ModelError&) {
        return;
      }
    }
  }

  // A malformed loop can make the dependency graph infinite.
  void check_cycles() {
    if (malformed_loop_) return;
    std::vector<std::pair<SourcePos, Location>> roots;
    for (const auto& [pos, a] : model_.assignments())
      if (a->target.is_concrete()) roots.emplace_back(a->pos, a->target.concrete());
    for (const auto& [pos, loop] : model_.loops())
      roots.emplace_back(loop->pos, Location{loop->body.target.name, loop->lower});
    std::set<std::set<Location>> reported;
    for (const auto& [pos, loc] : roots) {
      try {
        dependency_order(model_, loc);
      } catch (const CycleError& e) {
        std::set<Location> members(e.cycle().begin(), e.cycle().end());
        if (reported.insert(members).second) error("WF004", pos, render(loc), e.what());
      } catch (const UnknownLocation&) {
        // reported as WF006
      } catch (const ModelError& e) {
        error("WF008", pos, render(loc), e.what());
      }
    }
  }

  ProgramModel model_;
  std::map<std::string, std::size_t> arities_;
  std::vector<Diagnostic> out_;
  bool malformed_loop_ = false;
};

// ---------------------------------------------------------------------------
// Semantic checks

Diagnostic diag(Severity s, std::string code, const Assignment& a, const std::string& loc,
                std::string msg) {
  return Diagnostic{s, std::move(code), a.pos, loc, std::move(msg)};
}

WfVerdict from_outcome(const Outcome& o, const Assignment& a, const std::string& loc) {
  WfVerdict v;
  switch (o.status) {
    case RunStatus::Success:
      v.kind = WfVerdict::Kind::WellFormed;
      return v;
    case RunStatus::LimitExhausted:
      v.kind = WfVerdict::Kind::Unknown;
      v.diagnostic = diag(Severity::Warning, "WF102", a, loc, o.message);
      return v;
    case RunStatus::Unsupported:
      v.kind = WfVerdict::Kind::NotWellFormed;
      v.diagnostic = diag(Severity::Error, "WF005", a, loc, o.message);
      return v;
    case RunStatus::UnknownLocation:
      v.kind = WfVerdict::Kind::NotWellFormed;
      v.diagnostic = diag(Severity::Error, "WF006", a, loc, o.message);
      return v;
    default:
      v.kind = WfVerdict::Kind::NotWellFormed;
      v.diagnostic = diag(Severity::Error, "WF001", a, loc, o.message);
      return v;
  }
}

Outcome execute_in(const ProgramModel& model, AgentStore& store, const Location& loc,
                   const SearchLimits& lim) {
  Executor exec(model, store, ExecLimits{lim, ExecLimits{}.max_unfold});
  ScriptedMoves none({});
  return exec.execute(loc, none);
}

// The target answers its `!` moves by passing them to services and copying
// their answers back: every goal atom must match a service atom so that the
// target's `!` variables stay distinct and rigid and each service `?`
// variable stays an unconstrained fresh value.
bool copycat(const Formula& target, const std::vector<Formula>& services) {
  std::vector<std::string> rigid = choice_universals(target);
  ConjGoal goal;
  try {
    goal = open_goal(target);
  } catch (const UnsupportedFormula&) {
    return false;
  }
  Substitution s;
  std::set<std::string> service_univ, service_exist;
  for (std::size_t i = 0; i < goal.atoms.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < services.size() && !matched; ++j) {
      std::string prefix = "_c" + std::to_string(i) + "_" + std::to_string(j) + "_";
      Substitution rename;
      for (const auto& v : all_vars(services[j])) rename[v] = Term::var(prefix + v);
      ConjGoal sg;
      try {
        sg = open_goal(services[j]);
      } catch (const UnsupportedFormula&) {
        continue;
      }
      for (const auto& sa : sg.atoms) {
        auto u = unify(goal.atoms[i], substitute(sa, rename), s, {});
        if (!u || !u->constraints.empty()) continue;
        s = u->subst;
        for (const auto& v : choice_universals(services[j])) service_univ.insert(prefix + v);
        for (const auto& v : sg.existentials) service_exist.insert(prefix + v);
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  auto rep = [&](const std::string& v) -> std::optional<std::string> {
    Term t = substitute(Term::var(v), s);
    if (!t.is_var()) return std::nullopt;
    return t.name();
  };
  std::set<std::string> taken;
  for (const auto& r : rigid) {
    auto k = rep(r);
    if (!k || !taken.insert(*k).second) return false;
  }
  for (const auto& u : service_univ)
    if (auto k = rep(u)) taken.insert(*k);
  for (const auto& e : service_exist) {
    auto k = rep(e);
    if (!k || !taken.insert(*k).second) return false;
  }
  return true;
}

}  // namespace

std::vector<Diagnostic> check_structural(const Program& p) { return Structural(p).run(); }

WfVerdict check_semantic(const ProgramModel& model, const Location& loc, AgentStore& scratch,
                         const SearchLimits& lim) {
  WfVerdict v;
  if (const ForLoop* loop = model.loop_named(loc)) {
    Location first{loop->body.target.name, loop->lower};
    return from_outcome(execute_in(model, scratch, first, lim), loop->body, render(loc));
  }
  auto decl = model.find(loc);
  if (!decl || !decl->assignment) {
    v.kind = WfVerdict::Kind::NotWellFormed;
    v.diagnostic = Diagnostic{Severity::Error, "WF006", {}, render(loc), "no statement declares " + render(loc)};
    return v;
  }
  const Assignment& a = *decl->assignment;
  std::string name = render(loc);

  if (a.induction_tag()) {
    try {
      v.scheme = validate_induction(a, model);
    } catch (const ModelError& e) {
      v.kind = WfVerdict::Kind::NotWellFormed;
      v.diagnostic = diag(Severity::Error, "WF003", a, name, e.what());
      return v;
    }
    std::vector<Location> parts = v.scheme->bases;
    parts.push_back(Location{v.scheme->array, static_cast<std::int64_t>(v.scheme->order) + 1});
    for (const auto& part : parts) {
      WfVerdict pv = from_outcome(execute_in(model, scratch, part, lim), a, name);
      if (pv.kind != WfVerdict::Kind::WellFormed) {
        if (pv.diagnostic)
          pv.diagnostic->message = "case " + render(part) + ": " + pv.diagnostic->message;
        return pv;
      }
    }
    v.kind = WfVerdict::Kind::WellFormedByScheme;
    return v;
  }

  if (a.formula.kind() == Formula::Kind::ChAll) {
    std::vector<Formula> services;
    bool all_services = true;
    for (const auto& d : model.data_deps(a)) {
      auto dd = model.find(d);
      Formula f = model.assignment_for(d).formula;
      if (f.kind() != Formula::Kind::ChAll || !dd) all_services = false;
      services.push_back(f);
    }
    if (all_services && !services.empty() && copycat(a.formula, services)) {
      v.kind = WfVerdict::Kind::WellFormed;
      return v;
    }
    v.kind = WfVerdict::Kind::Unknown;
    v.diagnostic = diag(Severity::Warning, "WF101", a, name,
                        "universal claim is checked per instance at run time");
    return v;
  }
  return from_outcome(execute_in(model, scratch, loc, lim), a, name);
}

CheckReport check_program(const Program& p, const SearchLimits& lim) {
  CheckReport report;
  report.diagnostics = check_structural(p);
  if (!report.ok()) return report;
  ProgramModel model(p);
  AgentStore scratch;
  for (const auto& st : model.program().statements) {
    for (const auto& item : st.items) {
      Location loc = std::holds_alternative<Assignment>(item)
                         ? std::get<Assignment>(item).target.concrete()
                         : std::get<ForLoop>(item).name.concrete();
      WfVerdict v = check_semantic(model, loc, scratch, lim);
      if (v.diagnostic) report.diagnostics.push_back(*v.diagnostic);
      report.verdicts.emplace_back(loc, std::move(v));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

class Verifier {
 public:
  Verifier(const std::map<std::string, Formula>& kb, VerifyResult& res) : kb_(kb), res_(res) {}

  bool fail(const std::string& path, const std::string& reason) {
    res_.accepted = false;
    res_.path = path;
    res_.reason = reason;
    return false;
  }

  // Binds goal existentials so that `pattern` equals the ground `atom`.
  bool match(const Atom& pattern, const Atom& atom, const std::vector<std::string>& exist,
             Substitution& w) {
    ++res_.work;
    if (pattern.predicate != atom.predicate || pattern.args.size() != atom.args.size())
      return false;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      Term p = normalize(substitute(pattern.args[i], w));
      if (is_ground(p)) {
        if (!(p == atom.args[i])) return false;
      } else if (p.is_var() &&
                 std::find(exist.begin(), exist.end(), p.name()) != exist.end()) {
        w[p.name()] = atom.args[i];
      } else {
        return false;
      }
    }
    return true;
  }

  bool literal_fact(const Formula& f, const Atom& a) {
    ++res_.work;
    if (f.kind() == Formula::Kind::Atomic) return f.atom() == a;
    if (f.kind() == Formula::Kind::ParAnd)
      for (const auto& p : f.parts())
        if (literal_fact(p, a)) return true;
    return false;
  }

  static void conjuncts(const Formula& f, std::vector<Formula>& out) {
    if (f.kind() == Formula::Kind::ParAnd)
      for (const auto& p : f.parts()) conjuncts(p, out);
    else
      out.push_back(f);
  }

  // Checks one rule candidate against the node without looking at premises'
  // own derivations.
  bool rule_fits(const Formula& rule, const Derivation& d) {
    ++res_.work;
    std::set<std::string> vars;
    Formula cur = rule;
    while (cur.kind() == Formula::Kind::BlindAll) {
      vars.insert(cur.var());
      cur = cur.body();
    }
    if (cur.kind() != Formula::Kind::Implies) return false;
    const Formula& head = cur.consequent();
    if (head.kind() != Formula::Kind::Atomic) return false;
    std::vector<Formula> body;
    conjuncts(cur.antecedent(), body);
    std::set<std::string> keys;
    for (const auto& [k, v] : d.subst) {
      if (!v.is_int()) return false;
      keys.insert(k);
    }
    if (keys != vars || body.size() != d.premises.size()) return false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i].kind() != Formula::Kind::Atomic) return false;
      if (!(normalize(substitute(body[i].atom(), d.subst)) == d.premises[i].conclusion))
        return false;
    }
    return normalize(substitute(head.atom(), d.subst)) == d.conclusion;
  }

  bool atom_derivation(const Derivation& d, const std::string& path) {
    ++res_.work;
    if (d.kind != Derivation::Kind::Fact && d.kind != Derivation::Kind::Rule)
      return fail(path, "expected a fact or rule node");
    if (!is_ground(d.conclusion)) return fail(path, "conclusion is not ground");
    auto it = kb_.find(d.source);
    if (it == kb_.end()) return fail(path, d.source + " is not a dependency of this node");
    if (d.kind == Derivation::Kind::Fact) {
      if (!d.premises.empty() || !d.subst.empty()) return fail(path, "fact node has premises");
      if (!literal_fact(it->second, d.conclusion))
        return fail(path, render(d.conclusion) + " is not stated at " + d.source);
      return true;
    }
    std::vector<Formula> candidates;
    conjuncts(it->second, candidates);
    bool fits = std::any_of(candidates.begin(), candidates.end(),
                            [&](const Formula& r) { return rule_fits(r, d); });
    if (!fits)
      return fail(path, "rule at " + d.source + " does not yield " + render(d.conclusion) +
                            " under " + render(d.subst));
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      if (!atom_derivation(d.premises[i], path + ".premises[" + std::to_string(i) + "]"))
        return false;
    return true;
  }

  bool goal_derivation(const Derivation& d, const Formula& goal_f, const Formula& evolved) {
    Goal goal;
    try {
      goal = goal_of(goal_f);
    } catch (const UnsupportedFormula& e) {
      return fail("derivation", e.what());
    }
    std::string path = "derivation";
    const Derivation* body = &d;
    ConjGoal cg = goal.conj;
    if (goal.is_pick) {
      if (d.kind != Derivation::Kind::Pick || d.premises.size() != 1)
        return fail(path, "expected a pick node");
      if (d.index >= goal.pick.candidates.size())
        return fail(path, "pick index " + std::to_string(d.index) + " out of range");
      cg = goal.pick.candidates[d.index];
      body = &d.premises[0];
      path += ".pick";
    } else if (d.kind == Derivation::Kind::Pick) {
      return fail(path, "pick node for a goal without candidates");
    }
    std::vector<const Derivation*> parts;
    if (cg.atoms.size() == 1) {
      parts.push_back(body);
    } else {
      if (body->kind != Derivation::Kind::Conj || body->premises.size() != cg.atoms.size())
        return fail(path, "expected (and ...) with " + std::to_string(cg.atoms.size()) +
                              " parts");
      for (const auto& p : body->premises) parts.push_back(&p);
    }
    Substitution w;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string ppath = cg.atoms.size() == 1 ? path : path + ".and[" + std::to_string(i) + "]";
      if (!match(cg.atoms[i], parts[i]->conclusion, cg.existentials, w))
        return fail(ppath, render(parts[i]->conclusion) + " does not answer " +
                               render(cg.atoms[i]));
      if (!atom_derivation(*parts[i], ppath)) return false;
    }
    if (!(instantiate_goal(cg, w) == evolved))
      return fail("formula", render(evolved) + " is not what the derivation establishes");
    return true;
  }

 private:
  const std::map<std::string, Formula>& kb_;
  VerifyResult& res_;
};

}  // namespace

VerifyResult verify_derivation(const Derivation& d, const Formula& goal, const Formula& evolved,
                               const std::map<std::string, Formula>& kb) {
  VerifyResult res;
  Verifier(kb, res).goal_derivation(d, goal, evolved);
  return res;
}

VerifyResult verify_trace(const TraceDoc& doc, const ProgramModel& model) {
  VerifyResult res;
  auto reject = [&](const std::string& path, const std::string& reason) {
    res.accepted = false;
    res.path = path;
    res.reason = reason;
    return res;
  };
  if (doc.nodes.empty() || !(doc.nodes.back().key == doc.root))
    return reject(render(doc.root), "root is not the last node");
  std::map<AgentKey, const TraceNode*> seen;
  for (const auto& node : doc.nodes) {
    std::string path = render(node.key);
    ++res.work;
    if (seen.count(node.key)) return reject(path, "node appears twice");
    if (!model.find(node.key.loc) || model.loop_named(node.key.loc))
      return reject(path, "not declared by the program");
    Assignment a;
    try {
      a = model.assignment_for(node.key.loc);
    } catch (const ModelError& e) {
      return reject(path, e.what());
    }
    std::vector<std::string> universals = choice_universals(a.formula);
    if (node.key.moves.size() != universals.size())
      return reject(path, "expected " + std::to_string(universals.size()) + " move(s)");
    for (std::size_t i = 0; i < node.deps.size(); ++i) {
      if (!seen.count(node.deps[i]))
        return reject(path + " deps", render(node.deps[i]) + " has no earlier node");
      for (std::size_t j = 0; j < i; ++j)
        if (node.deps[j] == node.deps[i])
          return reject(path + " deps", render(node.deps[i]) + " is listed twice");
    }

    try {
      if (a.induction_tag()) {
        InductionScheme scheme = validate_induction(a, model);
        const BigInt& n = node.key.moves.front();
        if (n < 1 || n > std::numeric_limits<std::int64_t>::max())
          return reject(path, "move has no element of /" + scheme.array);
        AgentKey want{Location{scheme.array, static_cast<std::int64_t>(n)}, {}};
        if (node.deps != std::vector<AgentKey>{want})
          return reject(path + " deps", "induction dispatches to " + render(want) + " only");
      } else {
        std::size_t at = 0;
        for (const auto& d : model.data_deps(a)) {
          bool service = model.assignment_for(d).formula.kind() == Formula::Kind::ChAll;
          std::size_t count = 0;
          while (at < node.deps.size() && node.deps[at].loc == d) {
            if (node.deps[at].moves.empty() == service)
              return reject(path + " deps", render(node.deps[at]) + " has the wrong moves");
            ++at;
            ++count;
          }
          if (!service && count != 1)
            return reject(path + " deps", "expected " + render(d) + " exactly once");
        }
        if (at != node.deps.size())
          return reject(path + " deps", render(node.deps[at]) + " is not a dependency");
      }
    } catch (const ModelError& e) {
      return reject(path, e.what());
    }

    if (a.deps.empty() && !has_choice(a.formula)) {
      if (node.derivation.kind != Derivation::Kind::Axiom || node.derivation.source != path ||
          !node.derivation.premises.empty())
        return reject(path + " derivation", "expected (axiom " + path + ")");
      if (!(node.formula == a.formula))
        return reject(path + " formula", "does not match the declared statement");
    } else {
      std::map<std::string, Formula> kb;
      for (const auto& dep : node.deps) kb.emplace(render(dep), seen.at(dep)->formula);
      VerifyResult r =
          verify_derivation(node.derivation, strip_universals(a.formula, node.key.moves),
                            node.formula, kb);
      res.work += r.work;
      if (!r.accepted) return reject(path + " " + r.path, r.reason);
    }
    seen.emplace(node.key, &node);
  }
  return res;
}

}  // namespace lpc
