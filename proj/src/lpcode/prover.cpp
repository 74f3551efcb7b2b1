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

#include "lpcode/prover.hpp"

#include <functional>
#include <map>
#include <memory>

#include "lpcode/render.hpp"

namespace lpc {

// ---------------------------------------------------------------------------
// Knowledge-base fragment

namespace {

std::vector<Atom> body_atoms(const Formula& f) {
  if (f.kind() == Formula::Kind::Atomic) return {f.atom()};
  if (f.kind() == Formula::Kind::ParAnd) {
    std::vector<Atom> out;
    for (const auto& p : f.parts()) {
      if (p.kind() != Formula::Kind::Atomic)
        throw UnsupportedFormula("rule body must be a conjunction of atoms: " + render(f));
      out.push_back(p.atom());
    }
    return out;
  }
  throw UnsupportedFormula("rule body must be a conjunction of atoms: " + render(f));
}

void collect_clauses(const Formula& f, const std::string& source, std::vector<Clause>& out) {
  switch (f.kind()) {
    case Formula::Kind::Truth:
      return;
    case Formula::Kind::Atomic:
      if (!is_ground(f.atom()))
        throw UnsupportedFormula("fact is not variable-free: " + render(f));
      out.push_back(Clause{source, {}, {}, normalize(f.atom())});
      return;
    case Formula::Kind::ParAnd:
      for (const auto& p : f.parts()) collect_clauses(p, source, out);
      return;
    default:
      break;
  }
  std::vector<std::string> vars;
  const Formula* cur = &f;
  while (cur->kind() == Formula::Kind::BlindAll) {
    vars.push_back(cur->var());
    cur = &cur->body();
  }
  if (cur->kind() != Formula::Kind::Implies)
    throw UnsupportedFormula("not a fact or Horn rule: " + render(f));
  if (cur->consequent().kind() != Formula::Kind::Atomic)
    throw UnsupportedFormula("rule head must be an atom: " + render(f));
  Clause c{source, vars, body_atoms(cur->antecedent()), cur->consequent().atom()};
  if (c.body.empty()) throw UnsupportedFormula("rule has an empty body: " + render(f));
  if (!free_vars(f).empty())
    throw UnsupportedFormula("rule has free variables: " + render(f));
  std::set<std::string> body_vars;
  for (const auto& a : c.body) {
    auto vs = vars_of(a);
    body_vars.insert(vs.begin(), vs.end());
  }
  for (const auto& v : vars_of(c.head))
    if (!body_vars.count(v))
      throw UnsupportedFormula("head variable '" + v + "' does not occur in the body: " +
                               render(f));
  out.push_back(std::move(c));
}

}  // namespace

std::vector<Clause> clauses_of(const Formula& f, const std::string& source) {
  std::vector<Clause> out;
  collect_clauses(f, source, out);
  return out;
}

std::vector<Clause> compile(const KnowledgeBase& kb) {
  std::vector<Clause> out;
  for (const auto& e : kb.entries) collect_clauses(e.formula, e.source, out);
  return out;
}

ConjGoal conj_goal_of(const Formula& f) {
  ConjGoal g;
  const Formula* cur = &f;
  while (cur->kind() == Formula::Kind::ChExists) {
    g.existentials.push_back(cur->var());
    cur = &cur->body();
  }
  switch (cur->kind()) {
    case Formula::Kind::Truth:
      break;
    case Formula::Kind::Atomic:
      g.atoms.push_back(cur->atom());
      break;
    case Formula::Kind::ParAnd:
      for (const auto& p : cur->parts()) {
        if (p.kind() != Formula::Kind::Atomic)
          throw UnsupportedFormula("goal must be a conjunction of atoms: " + render(f));
        g.atoms.push_back(p.atom());
      }
      break;
    default:
      throw UnsupportedFormula("goal must be a conjunction of atoms: " + render(f));
  }
  std::set<std::string> exist(g.existentials.begin(), g.existentials.end());
  for (const auto& v : free_vars(f))
    if (!exist.count(v)) throw UnsupportedFormula("goal has free variable '" + v + "'");
  return g;
}

Goal goal_of(const Formula& f) {
  Goal g;
  if (f.kind() == Formula::Kind::ChoiceOr) {
    g.is_pick = true;
    for (const auto& p : f.parts()) g.pick.candidates.push_back(conj_goal_of(p));
    return g;
  }
  g.conj = conj_goal_of(f);
  return g;
}

Formula instantiate_goal(const ConjGoal& goal, const Substitution& witnesses) {
  if (goal.atoms.empty()) return Formula::truth();
  std::vector<Formula> parts;
  for (const auto& a : goal.atoms)
    parts.push_back(Formula::atomic(normalize(substitute(a, witnesses))));
  if (parts.size() == 1) return parts.front();
  return Formula::nary(Formula::Kind::ParAnd, std::move(parts));
}

// ---------------------------------------------------------------------------
// Derivation

Derivation Derivation::fact(std::string source, Atom atom) {
  Derivation d;
  d.kind = Kind::Fact;
  d.source = std::move(source);
  d.conclusion = std::move(atom);
  return d;
}

Derivation Derivation::axiom(std::string source) {
  Derivation d;
  d.kind = Kind::Axiom;
  d.source = std::move(source);
  return d;
}

Derivation Derivation::pick(std::size_t index, Derivation sub) {
  Derivation d;
  d.kind = Kind::Pick;
  d.index = index;
  d.premises.push_back(std::move(sub));
  return d;
}

Derivation Derivation::conj(std::vector<Derivation> parts) {
  Derivation d;
  d.kind = Kind::Conj;
  d.premises = std::move(parts);
  return d;
}

const char* to_string(ProofStatus s) {
  switch (s) {
    case ProofStatus::Proved: return "proved";
    case ProofStatus::NotDerivable: return "not derivable";
    case ProofStatus::BoundExhausted: return "bound exhausted";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Unification with deferred arithmetic

namespace {

struct State {
  Substitution subst;
  ConstraintStore constraints;
};

Term resolve(const Term& t, const Substitution& s) { return normalize(substitute(t, s)); }

Atom resolve(const Atom& a, const Substitution& s) { return normalize(substitute(a, s)); }

bool bind_var(State& st, const std::string& var, const Term& value) {
  if (vars_of(value).count(var)) return false;
  Substitution single{{var, value}};
  for (auto& [k, v] : st.subst) v = normalize(substitute(v, single));
  st.subst[var] = value;
  return true;
}

// Sum of variables (with multiplicity) plus a constant.
struct Linear {
  std::map<std::string, int> vars;
  BigInt constant = 0;
};

void flatten(const Term& t, Linear& out) {
  switch (t.kind()) {
    case Term::Kind::Int:
      out.constant += t.value();
      return;
    case Term::Kind::Var:
      ++out.vars[t.name()];
      return;
    case Term::Kind::Sum:
      flatten(t.lhs(), out);
      flatten(t.rhs(), out);
      return;
  }
}

enum class Step { Ok, Fail, Undecided };

// Solves `t = n` when t is a single variable plus a constant.
Step solve_linear(const Term& t, const BigInt& n, State& st) {
  Linear lin;
  flatten(t, lin);
  if (lin.vars.size() != 1 || lin.vars.begin()->second != 1) return Step::Undecided;
  BigInt v = n - lin.constant;
  if (v < 0) return Step::Fail;
  return bind_var(st, lin.vars.begin()->first, Term::integer(v)) ? Step::Ok : Step::Fail;
}

Step unify_terms(const Term& lhs, const Term& rhs, State& st) {
  Term a = resolve(lhs, st.subst);
  Term b = resolve(rhs, st.subst);
  if (a == b) return Step::Ok;
  auto ga = eval_term(a);
  auto gb = eval_term(b);
  if (ga && gb) return Step::Fail;
  if (a.is_var() && (b.is_var() || gb)) return bind_var(st, a.name(), b) ? Step::Ok : Step::Fail;
  if (b.is_var() && ga) return bind_var(st, b.name(), a) ? Step::Ok : Step::Fail;
  if (ga) return solve_linear(b, *ga, st);
  if (gb) return solve_linear(a, *gb, st);
  return Step::Undecided;
}

// Re-examines pending constraints until none can make progress.
bool propagate(State& st) {
  bool changed = true;
  while (changed) {
    changed = false;
    auto& pending = st.constraints.pending;
    for (std::size_t i = 0; i < pending.size();) {
      auto [a, b] = pending[i];
      Step r = unify_terms(a, b, st);
      if (r == Step::Fail) return false;
      if (r == Step::Ok) {
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }
  return true;
}

bool unify_into(const Atom& goal, const Atom& head, State& st) {
  if (goal.predicate != head.predicate || goal.args.size() != head.args.size()) return false;
  for (std::size_t i = 0; i < goal.args.size(); ++i) {
    Step r = unify_terms(goal.args[i], head.args[i], st);
    if (r == Step::Fail) return false;
    if (r == Step::Undecided)
      st.constraints.pending.emplace_back(resolve(goal.args[i], st.subst),
                                          resolve(head.args[i], st.subst));
  }
  return propagate(st);
}

}  // namespace

std::optional<UnifyResult> unify(const Atom& goal, const Atom& head, const Substitution& s,
                                 const ConstraintStore& c) {
  State st{s, c};
  if (!unify_into(goal, head, st)) return std::nullopt;
  return UnifyResult{std::move(st.subst), std::move(st.constraints)};
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct StepLimitHit {};

struct Ancestor {
  Atom atom;
  std::shared_ptr<const Ancestor> next;
};
using AncestorList = std::shared_ptr<const Ancestor>;

struct Solution {
  Substitution witnesses;
  Derivation derivation;
};

bool finalize(Derivation& d, const Substitution& s) {
  bool ground = true;
  if (d.kind == Derivation::Kind::Fact || d.kind == Derivation::Kind::Rule) {
    d.conclusion = resolve(d.conclusion, s);
    ground = is_ground(d.conclusion);
  }
  for (auto& [k, v] : d.subst) {
    v = resolve(v, s);
    ground = ground && is_ground(v);
  }
  for (auto& p : d.premises) ground = finalize(p, s) && ground;
  return ground;
}

class Search {
 public:
  Search(const std::vector<Clause>& clauses, const SearchLimits& lim, std::size_t& steps)
      : clauses_(clauses), lim_(lim), steps_(steps) {}

  std::optional<Solution> run(const ConjGoal& goal, std::size_t depth_limit) {
    depth_limit_ = depth_limit;
    cutoff_ = false;
    std::optional<Solution> found;
    State st;
    prove_all(goal.atoms, 0, 0, nullptr, st, {},
              [&](State& done, std::vector<Derivation>&& parts) {
                if (!done.constraints.empty()) return false;
                Solution sol;
                for (const auto& v : goal.existentials) {
                  Term t = resolve(Term::var(v), done.subst);
                  if (!is_ground(t)) return false;
                  sol.witnesses[v] = t;
                }
                sol.derivation = parts.size() == 1 ? std::move(parts.front())
                                                   : Derivation::conj(std::move(parts));
                if (!finalize(sol.derivation, done.subst)) return false;
                found = std::move(sol);
                return true;
              });
    return found;
  }

  bool cutoff() const { return cutoff_; }

 private:
  using AtomK = std::function<bool(State&, Derivation&&)>;
  using ListK = std::function<bool(State&, std::vector<Derivation>&&)>;

  void tick() {
    if (++steps_ > lim_.max_steps) throw StepLimitHit{};
  }

  bool prove_all(const std::vector<Atom>& atoms, std::size_t i, std::size_t level,
                 const AncestorList& anc, State& st, std::vector<Derivation> done,
                 const ListK& k) {
    if (i == atoms.size()) return k(st, std::move(done));
    return prove_one(atoms[i], level, anc, st, [&](State& next, Derivation&& d) {
      std::vector<Derivation> more = done;
      more.push_back(std::move(d));
      return prove_all(atoms, i + 1, level, anc, next, std::move(more), k);
    });
  }

  bool prove_one(const Atom& raw_goal, std::size_t level, const AncestorList& anc,
                 const State& st, const AtomK& k) {
    Atom goal = resolve(raw_goal, st.subst);
    if (is_ground(goal)) {
      // A proof that repeats a ground goal on its own branch can be shortened.
      for (const Ancestor* a = anc.get(); a; a = a->next.get())
        if (a->atom == goal) return false;
    }
    for (const auto& clause : clauses_) {
      if (clause.head.predicate != goal.predicate ||
          clause.head.args.size() != goal.args.size())
        continue;
      tick();
      if (clause.is_fact()) {
        State next = st;
        if (!unify_into(goal, clause.head, next)) continue;
        if (k(next, Derivation::fact(clause.source, clause.head))) return true;
        continue;
      }
      Substitution rename;
      for (const auto& v : clause.vars)
        rename[v] = Term::var("_" + v + "_" + std::to_string(++fresh_));
      Atom head = substitute(clause.head, rename);
      State next = st;
      if (!unify_into(goal, head, next)) continue;
      if (level + 2 > depth_limit_) {
        cutoff_ = true;
        continue;
      }
      std::vector<Atom> body;
      for (const auto& b : clause.body) body.push_back(substitute(b, rename));
      Atom settled = resolve(goal, next.subst);
      AncestorList below =
          is_ground(settled) ? std::make_shared<const Ancestor>(Ancestor{settled, anc}) : anc;
      bool stop = prove_all(body, 0, level + 1, below, next, {},
                            [&](State& done, std::vector<Derivation>&& premises) {
                              Derivation d;
                              d.kind = Derivation::Kind::Rule;
                              d.source = clause.source;
                              d.subst = rename;
                              d.conclusion = head;
                              d.premises = std::move(premises);
                              return k(done, std::move(d));
                            });
      if (stop) return true;
    }
    return false;
  }

  const std::vector<Clause>& clauses_;
  const SearchLimits& lim_;
  std::size_t& steps_;
  std::size_t depth_limit_ = 1;
  std::size_t fresh_ = 0;
  bool cutoff_ = false;
};

}  // namespace

DeriveResult derive(const ConjGoal& goal, const KnowledgeBase& kb, const SearchLimits& lim) {
  std::vector<Clause> clauses = compile(kb);
  DeriveResult result;
  std::size_t steps = 0;
  Search search(clauses, lim, steps);
  try {
    for (std::size_t depth = 1; depth <= lim.max_depth; ++depth) {
      auto sol = search.run(goal, depth);
      if (sol) {
        result.status = ProofStatus::Proved;
        result.witnesses = std::move(sol->witnesses);
        result.derivation = std::move(sol->derivation);
        result.depth = depth;
        result.steps = steps;
        return result;
      }
      if (!search.cutoff()) {
        result.status = ProofStatus::NotDerivable;
        result.steps = steps;
        return result;
      }
    }
  } catch (const StepLimitHit&) {
  }
  result.status = ProofStatus::BoundExhausted;
  result.steps = steps;
  return result;
}

SelectResult select_lemma(const ChoicePick& candidates, const KnowledgeBase& kb,
                          const SearchLimits& lim) {
  SelectResult out;
  bool exhausted = false;
  for (std::size_t i = 0; i < candidates.candidates.size(); ++i) {
    DeriveResult r = derive(candidates.candidates[i], kb, lim);
    out.steps += r.steps;
    if (r.status == ProofStatus::Proved) {
      out.status = ProofStatus::Proved;
      out.index = i;
      out.witnesses = std::move(r.witnesses);
      out.derivation = Derivation::pick(i, std::move(r.derivation));
      return out;
    }
    if (r.status == ProofStatus::BoundExhausted) exhausted = true;
  }
  out.status = exhausted ? ProofStatus::BoundExhausted : ProofStatus::NotDerivable;
  return out;
}

}  // namespace lpc
