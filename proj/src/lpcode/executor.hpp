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

#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpcode/program.hpp"
#include "lpcode/prover.hpp"

namespace lpc {

// A binding slot: the location plus the choice-universal moves that
// instantiated it. Statements without a leading `!` have no moves.
struct AgentKey {
  Location loc;
  std::vector<BigInt> moves;

  friend bool operator==(const AgentKey&, const AgentKey&) = default;
  friend bool operator<(const AgentKey& a, const AgentKey& b) {
    if (a.loc != b.loc) return a.loc < b.loc;
    return a.moves < b.moves;
  }
};

// `/a[3]`, `/fib<4>`, `/f<1,2>`
std::string render(const AgentKey& key);

struct Binding {
  Formula formula;                // evolved, closed, choice-free
  Derivation derivation;
  std::vector<AgentKey> deps;     // bindings the derivation drew on
  std::size_t prover_calls = 0;
};

// Write-once map from agent keys to evolved formulas, plus how far each loop
// has been unfolded.
class AgentStore {
 public:
  const Binding* find(const AgentKey& key) const;
  // Throws std::logic_error when the key is already bound.
  void bind(AgentKey key, Binding binding);
  const std::map<AgentKey, Binding>& bindings() const { return bindings_; }

  // First index not yet generated for the loop named `loop`, if it was unfolded.
  std::optional<std::int64_t> next_index(const Location& loop) const;
  void set_next_index(const Location& loop, std::int64_t next);
  const std::map<Location, std::int64_t>& unfolded() const { return next_index_; }

  friend bool operator==(const AgentStore&, const AgentStore&);

 private:
  std::map<AgentKey, Binding> bindings_;
  std::map<Location, std::int64_t> next_index_;
};

// Supplies environment moves for leading `!` quantifiers.
class MoveSource {
 public:
  virtual ~MoveSource() = default;
  // nullopt when no move is available.
  virtual std::optional<BigInt> next(const std::string& var) = 0;
};

class ScriptedMoves : public MoveSource {
 public:
  explicit ScriptedMoves(std::vector<BigInt> moves) : moves_(std::move(moves)) {}
  std::optional<BigInt> next(const std::string& var) override;
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return moves_.size() - cursor_; }

 private:
  std::vector<BigInt> moves_;
  std::size_t cursor_ = 0;
};

// Prompts `move for x?` and reads a natural number per line; non-numerals
// re-prompt, end of input yields no move.
class InteractiveMoves : public MoveSource {
 public:
  InteractiveMoves(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  std::optional<BigInt> next(const std::string& var) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

class MoveUnderflow : public std::runtime_error {
 public:
  explicit MoveUnderflow(const std::string& var)
      : std::runtime_error("no move available for " + var) {}
};

struct Resolution {
  ProofStatus status = ProofStatus::NotDerivable;
  Formula evolved;
  Derivation derivation;
  std::vector<BigInt> consumed;
  std::size_t steps = 0;
};

// Resolves the choice prefix of `f`: leading `!x` take moves, one `#|` picks
// the lowest derivable candidate, `?y` take witnesses from the prover.
// Throws MoveUnderflow or UnsupportedFormula.
Resolution resolve_choices(const Formula& f, const KnowledgeBase& kb, MoveSource& moves,
                           const SearchLimits& lim);

// Leading `!` variables of a formula, outermost first.
std::vector<std::string> choice_universals(const Formula& f);
Formula strip_universals(const Formula& f, const std::vector<BigInt>& moves);

// Instances of a `!`-headed service whose matrix matches an atom of `goal`:
// the service's `!` values read off by unification, in goal-atom order.
std::vector<std::vector<BigInt>> service_instances(const Formula& goal, const Formula& service);

enum class AgentMode { Idle, Reactive, Proactive };

// The agent being executed is proactive; agents waiting on it are reactive.
class ModeTracker {
 public:
  AgentMode mode(const AgentKey& key) const;
  void enter(const AgentKey& key) { stack_.push_back(key); }
  void leave() { stack_.pop_back(); }
  const std::vector<AgentKey>& active() const { return stack_; }

 private:
  std::vector<AgentKey> stack_;
};

enum class RunStatus {
  Success,
  Failure,
  WellFormednessViolation,
  LimitExhausted,
  MoveUnderflow,
  ExtraMoves,
  UnknownLocation,
  Unsupported,
};

const char* to_string(RunStatus s);

struct ExecLimits {
  SearchLimits search;
  std::size_t max_unfold = 10000;
};

struct Outcome {
  RunStatus status = RunStatus::Failure;
  std::optional<AgentKey> key;      // the binding slot of the target
  std::optional<Formula> binding;   // present iff Success
  std::string message;
  std::size_t prover_calls = 0;     // made during this execution
  std::vector<AgentKey> new_bindings;  // in the order they were written
};

class Executor {
 public:
  // Throws ModelError if the model declares a location twice.
  Executor(const ProgramModel& model, AgentStore& store, ExecLimits lim);

  Outcome execute(const Location& target, MoveSource& moves);

  // Called whenever an agent starts or finishes proactive work.
  void on_mode_change(std::function<void(const ModeTracker&)> fn) { observer_ = std::move(fn); }

  std::size_t unfolded() const { return unfolded_; }

 private:
  const Binding& run(const Location& loc, const std::vector<BigInt>& moves);
  void ensure_unfolded(const ProgramModel::Decl& decl, std::int64_t index);
  bool is_service(const Location& loc) const;
  void notify();

  const ProgramModel& model_;
  AgentStore& store_;
  ExecLimits lim_;
  ModeTracker modes_;
  std::function<void(const ModeTracker&)> observer_;
  std::map<Location, InductionScheme> schemes_;
  std::size_t unfolded_ = 0;
  std::size_t calls_ = 0;
  std::vector<AgentKey> written_;
};

// Fresh store, one execution; extra scripted moves report ExtraMoves.
struct RunResult {
  Outcome outcome;
  AgentStore store;
};
RunResult run_query(const ProgramModel& model, const Location& target,
                    const std::vector<BigInt>& moves, const ExecLimits& lim);

// The store as a program listing: bindings, then remaining loop residuals.
std::string render_store(const AgentStore& store, const ProgramModel& model);

}  // namespace lpc
