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

#include "lpcode/executor.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lpcode/render.hpp"

namespace lpc {

std::string render(const AgentKey& key) {
  std::string out = render(key.loc);
  if (!key.moves.empty()) {
    out += "<";
    for (std::size_t i = 0; i < key.moves.size(); ++i) {
      if (i) out += ",";
      out += key.moves[i].str();
    }
    out += ">";
  }
  return out;
}

// ---------------------------------------------------------------------------
// AgentStore

const Binding* AgentStore::find(const AgentKey& key) const {
  auto it = bindings_.find(key);
  return it == bindings_.end() ? nullptr : &it->second;
}

void AgentStore::bind(AgentKey key, Binding binding) {
  std::string name = render(key);
  if (!bindings_.emplace(std::move(key), std::move(binding)).second)
    throw std::logic_error("destructive assignment to " + name);
}

std::optional<std::int64_t> AgentStore::next_index(const Location& loop) const {
  auto it = next_index_.find(loop);
  if (it == next_index_.end()) return std::nullopt;
  return it->second;
}

void AgentStore::set_next_index(const Location& loop, std::int64_t next) {
  next_index_[loop] = next;
}

bool operator==(const AgentStore& a, const AgentStore& b) {
  if (a.next_index_ != b.next_index_ || a.bindings_.size() != b.bindings_.size()) return false;
  auto it = b.bindings_.begin();
  for (const auto& [k, v] : a.bindings_) {
    if (!(k == it->first) || !(v.formula == it->second.formula) ||
        !(v.derivation == it->second.derivation) || v.deps != it->second.deps ||
        v.prover_calls != it->second.prover_calls)
      return false;
    ++it;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Moves

std::optional<BigInt> ScriptedMoves::next(const std::string&) {
  if (cursor_ >= moves_.size()) return std::nullopt;
  return moves_[cursor_++];
}

std::optional<BigInt> InteractiveMoves::next(const std::string& var) {
  std::string line;
  while (true) {
    out_ << "move for " << var << "? " << std::flush;
    if (!std::getline(in_, line)) return std::nullopt;
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::string word = line.substr(b, e - b + 1);
    if (std::all_of(word.begin(), word.end(),
                    [](unsigned char c) { return c >= '0' && c <= '9'; }))
      return BigInt(word);
    out_ << "moves are natural numbers\n";
  }
}

// ---------------------------------------------------------------------------
// Choice resolution

std::vector<std::string> choice_universals(const Formula& f) {
  std::vector<std::string> out;
  for (const Formula* cur = &f; cur->kind() == Formula::Kind::ChAll; cur = &cur->body())
    out.push_back(cur->var());
  return out;
}

Formula strip_universals(const Formula& f, const std::vector<BigInt>& moves) {
  Formula cur = f;
  for (const auto& m : moves) {
    if (cur.kind() != Formula::Kind::ChAll)
      throw std::invalid_argument("more moves than choice universals");
    cur = substitute(cur.body(), Substitution{{cur.var(), Term::integer(m)}});
  }
  return cur;
}

Resolution resolve_choices(const Formula& f, const KnowledgeBase& kb, MoveSource& moves,
                           const SearchLimits& lim) {
  Resolution r;
  Formula cur = f;
  while (cur.kind() == Formula::Kind::ChAll) {
    auto m = moves.next(cur.var());
    if (!m) throw MoveUnderflow(cur.var());
    r.consumed.push_back(*m);
    cur = substitute(cur.body(), Substitution{{cur.var(), Term::integer(*m)}});
  }
  Goal goal = goal_of(cur);
  if (goal.is_pick) {
    SelectResult s = select_lemma(goal.pick, kb, lim);
    r.status = s.status;
    r.steps = s.steps;
    if (s.status == ProofStatus::Proved) {
      r.evolved = instantiate_goal(goal.pick.candidates[s.index], s.witnesses);
      r.derivation = std::move(s.derivation);
    }
    return r;
  }
  DeriveResult d = derive(goal.conj, kb, lim);
  r.status = d.status;
  r.steps = d.steps;
  if (d.status == ProofStatus::Proved) {
    r.evolved = instantiate_goal(goal.conj, d.witnesses);
    r.derivation = std::move(d.derivation);
  }
  return r;
}

namespace {

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  if (f.kind() == Formula::Kind::Atomic) {
    out.push_back(f.atom());
    return;
  }
  for (const auto& p : f.parts()) collect_atoms(p, out);
}

}  // namespace

std::vector<std::vector<BigInt>> service_instances(const Formula& goal, const Formula& service) {
  std::vector<std::string> universals = choice_universals(service);
  Substitution rename;
  for (const auto& v : all_vars(service)) rename[v] = Term::var("_s_" + v);
  Formula matrix = service;
  for (std::size_t i = 0; i < universals.size(); ++i) matrix = matrix.body();

  std::vector<Atom> goal_atoms, service_atoms;
  collect_atoms(goal, goal_atoms);
  collect_atoms(matrix, service_atoms);

  std::vector<std::vector<BigInt>> out;
  std::set<std::vector<BigInt>> seen;
  for (const auto& ga : goal_atoms) {
    for (const auto& sa : service_atoms) {
      auto u = unify(ga, substitute(sa, rename), {}, {});
      if (!u) continue;
      std::vector<BigInt> moves;
      for (const auto& v : universals) {
        auto value = eval_term(normalize(substitute(rename[v], u->subst)));
        if (!value || *value < 0) break;
        moves.push_back(*value);
      }
      if (moves.size() == universals.size() && seen.insert(moves).second)
        out.push_back(std::move(moves));
    }
  }
  return out;
}

AgentMode ModeTracker::mode(const AgentKey& key) const {
  if (stack_.empty()) return AgentMode::Idle;
  if (stack_.front() == key) return AgentMode::Proactive;
  for (const auto& k : stack_)
    if (k == key) return AgentMode::Reactive;
  return AgentMode::Idle;
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Failure: return "failure";
    case RunStatus::WellFormednessViolation: return "well-formedness violation";
    case RunStatus::LimitExhausted: return "limit exhausted";
    case RunStatus::MoveUnderflow: return "move underflow";
    case RunStatus::ExtraMoves: return "extra moves";
    case RunStatus::UnknownLocation: return "unknown location";
    case RunStatus::Unsupported: return "unsupported formula";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Executor

namespace {

struct ExecFailure {
  RunStatus status;
  std::string message;
};

class ModeGuard {
 public:
  ModeGuard(ModeTracker& t, const AgentKey& key) : t_(t) { t_.enter(key); }
  ~ModeGuard() { t_.leave(); }
  ModeGuard(const ModeGuard&) = delete;
  ModeGuard& operator=(const ModeGuard&) = delete;

 private:
  ModeTracker& t_;
};

}  // namespace

Executor::Executor(const ProgramModel& model, AgentStore& store, ExecLimits lim)
    : model_(model), store_(store), lim_(lim) {
  if (!model.duplicates().empty())
    throw ModelError("location " + render(model.duplicates().front()) + " is assigned twice");
}

void Executor::notify() {
  if (observer_) observer_(modes_);
}

bool Executor::is_service(const Location& loc) const {
  return model_.assignment_for(loc).formula.kind() == Formula::Kind::ChAll;
}

void Executor::ensure_unfolded(const ProgramModel::Decl& decl, std::int64_t index) {
  const ForLoop& loop = *decl.loop;
  Location name = loop.name.concrete();
  std::int64_t next = store_.next_index(name).value_or(loop.lower);
  if (index < next) return;
  ForLoop rest = loop;
  rest.lower = next;
  UnfoldResult u = unfold_loop(rest, index);
  std::size_t generated = u.instances.size() + (u.residual ? 1 : 0);
  if (unfolded_ + generated > lim_.max_unfold)
    throw ExecFailure{RunStatus::LimitExhausted,
                      "unfolding " + render(name) + " to " + std::to_string(index) +
                          " exceeds the unfold cap of " + std::to_string(lim_.max_unfold)};
  unfolded_ += generated;
  store_.set_next_index(name, index + 1);
  // Generated instances execute in index order; the caller runs `index`.
  for (std::int64_t i = next; i < index; ++i) run(Location{loop.body.target.name, i}, {});
}

const Binding& Executor::run(const Location& loc, const std::vector<BigInt>& moves) {
  AgentKey key{loc, moves};
  if (const Binding* b = store_.find(key)) return *b;
  auto decl = model_.find(loc);
  if (!decl) throw UnknownLocation(render(loc));
  if (model_.loop_named(loc)) throw UnknownLocation(render(loc) + " names a loop");

  ModeGuard guard(modes_, key);
  notify();
  if (decl->loop) ensure_unfolded(*decl, *loc.index);
  Assignment a = model_.assignment_for(loc);

  std::vector<Location> order = dependency_order(model_, loc);
  std::map<const ForLoop*, std::pair<ProgramModel::Decl, std::int64_t>> highest;
  for (const auto& p : order) {
    auto d = model_.find(p);
    if (d && d->loop) {
      auto [it, fresh] = highest.try_emplace(d->loop, *d, *p.index);
      if (!fresh) it->second.second = std::max(it->second.second, *p.index);
    }
  }
  for (const auto& [loop, entry] : highest) ensure_unfolded(entry.first, entry.second);
  for (const auto& p : order)
    if (!(p == loc) && !is_service(p)) run(p, {});
  notify();

  Binding binding;
  if (a.deps.empty() && !has_choice(a.formula)) {
    binding.formula = a.formula;
    binding.derivation = Derivation::axiom(render(key));
  } else {
    Formula instance = strip_universals(a.formula, moves);
    KnowledgeBase kb;
    if (a.induction_tag()) {
      auto it = schemes_.find(loc);
      if (it == schemes_.end()) it = schemes_.emplace(loc, validate_induction(a, model_)).first;
      const InductionScheme& scheme = it->second;
      const BigInt& n = moves.front();
      if (n < 1 || n > std::numeric_limits<std::int64_t>::max())
        throw ExecFailure{RunStatus::Failure, render(key) + ": /" + scheme.array +
                                                  " has no element at " + n.str()};
      AgentKey dispatched{Location{scheme.array, static_cast<std::int64_t>(n)}, {}};
      const Binding& b = run(dispatched.loc, {});
      kb.entries.push_back({render(dispatched), b.formula});
      binding.deps.push_back(dispatched);
    } else {
      for (const auto& d : model_.data_deps(a)) {
        if (is_service(d)) {
          Formula service = model_.assignment_for(d).formula;
          for (const auto& m : service_instances(instance, service)) {
            const Binding& b = run(d, m);
            AgentKey dk{d, m};
            kb.entries.push_back({render(dk), b.formula});
            binding.deps.push_back(std::move(dk));
          }
          continue;
        }
        AgentKey dk{d, {}};
        const Binding* b = store_.find(dk);
        if (!b) throw ExecFailure{RunStatus::Failure, render(dk) + " is not bound"};
        kb.entries.push_back({render(dk), b->formula});
        binding.deps.push_back(std::move(dk));
      }
    }
    ScriptedMoves none({});
    ++calls_;
    binding.prover_calls = 1;
    Resolution r = resolve_choices(instance, kb, none, lim_.search);
    if (r.status == ProofStatus::NotDerivable) {
      bool static_claim = decl->assignment && moves.empty();
      throw ExecFailure{static_claim ? RunStatus::WellFormednessViolation : RunStatus::Failure,
                        render(key) + ": " + render(instance) + " is not derivable from its " +
                            "knowledge base"};
    }
    if (r.status == ProofStatus::BoundExhausted)
      throw ExecFailure{RunStatus::LimitExhausted,
                        render(key) + ": search limits exhausted after " +
                            std::to_string(r.steps) + " steps"};
    binding.formula = r.evolved;
    binding.derivation = std::move(r.derivation);
  }
  store_.bind(key, std::move(binding));
  written_.push_back(key);
  return *store_.find(key);
}

Outcome Executor::execute(const Location& target, MoveSource& moves) {
  Outcome out;
  calls_ = 0;
  written_.clear();
  try {
    if (!model_.find(target) || model_.loop_named(target))
      throw UnknownLocation(render(target));
    Assignment a = model_.assignment_for(target);
    std::vector<BigInt> ms;
    for (const auto& v : choice_universals(a.formula)) {
      auto m = moves.next(v);
      if (!m) throw MoveUnderflow(v);
      if (*m < 0) throw ExecFailure{RunStatus::Failure, "moves are natural numbers"};
      ms.push_back(*m);
    }
    out.key = AgentKey{target, ms};
    const Binding& b = run(target, ms);
    out.status = RunStatus::Success;
    out.binding = b.formula;
  } catch (const ExecFailure& f) {
    out.status = f.status;
    out.message = f.message;
  } catch (const MoveUnderflow& e) {
    out.status = RunStatus::MoveUnderflow;
    out.message = e.what();
  } catch (const UnknownLocation& e) {
    out.status = RunStatus::UnknownLocation;
    out.message = e.what();
  } catch (const SchemeError& e) {
    out.status = RunStatus::WellFormednessViolation;
    out.message = e.what();
  } catch (const CycleError& e) {
    out.status = RunStatus::WellFormednessViolation;
    out.message = e.what();
  } catch (const ModelError& e) {
    out.status = RunStatus::Failure;
    out.message = e.what();
  } catch (const UnsupportedFormula& e) {
    out.status = RunStatus::Unsupported;
    out.message = e.what();
  }
  out.prover_calls = calls_;
  out.new_bindings = written_;
  return out;
}

RunResult run_query(const ProgramModel& model, const Location& target,
                    const std::vector<BigInt>& moves, const ExecLimits& lim) {
  RunResult result;
  Executor exec(model, result.store, lim);
  ScriptedMoves script(moves);
  result.outcome = exec.execute(target, script);
  if (result.outcome.status == RunStatus::Success && script.remaining() > 0) {
    result.outcome.status = RunStatus::ExtraMoves;
    result.outcome.message = std::to_string(script.remaining()) + " unused move(s)";
    result.outcome.binding.reset();
  }
  return result;
}

std::string render_store(const AgentStore& store, const ProgramModel& model) {
  using Line = std::tuple<ItemPos, std::int64_t, std::vector<BigInt>, std::string>;
  std::vector<Line> lines;
  for (const auto& [key, binding] : store.bindings()) {
    auto decl = model.find(key.loc);
    ItemPos pos = decl ? decl->pos : ItemPos{};
    lines.emplace_back(pos, key.loc.index.value_or(-1), key.moves,
                       render(key) + " = " + render(binding.formula) + ".");
  }
  for (const auto& [pos, loop] : model.loops()) {
    ForLoop rest = *loop;
    if (auto next = store.next_index(loop->name.concrete())) rest.lower = *next;
    if (rest.upper && rest.lower > *rest.upper) continue;
    lines.emplace_back(pos, std::numeric_limits<std::int64_t>::max(), std::vector<BigInt>{},
                       render(rest) + ".");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += std::get<3>(l) + "\n";
  return out;
}

}  // namespace lpc
