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

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lpcode/executor.hpp"
#include "lpcode/formula.hpp"
#include "lpcode/program.hpp"
#include "lpcode/prover.hpp"
#include "lpcode/trace.hpp"

namespace lpc::testing {

std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);
ProgramModel load_fixture(const std::string& name);
Location loc(const std::string& text);

// Fibonacci by iteration, fib(1) = fib(2) = 1.
BigInt fib_oracle(unsigned n);

// Atom pattern over small constants and variables.
struct Pattern {
  std::string pred;
  std::vector<std::variant<int, std::string>> args;
};

std::string render(const Pattern& p);

// A function-free Horn program with ground facts and range-restricted rules.
struct RandomProgram {
  std::vector<Pattern> facts;
  std::vector<std::pair<std::vector<Pattern>, Pattern>> rules;  // body, head
  KnowledgeBase kb() const;
};

RandomProgram random_program(std::mt19937_64& rng);
Pattern random_goal(const RandomProgram& p, std::mt19937_64& rng);
// `?V0. ?V1. p2(V0,3)`
std::string goal_text(const Pattern& goal);

// The program as source text: facts at /f[k], rules at /g[k] and the goal at
// /q depending on all of them.
std::string as_source(const RandomProgram& p, const Pattern& goal);

// Naive bottom-up fixpoint: every derivable ground atom, rendered.
std::set<std::string> fixpoint(const RandomProgram& p);

// Ground instances of `goal` contained in `model`.
std::set<std::string> goal_answers(const Pattern& goal, const std::set<std::string>& model);

// Runs derive on random programs and goals: agreement means a proof exactly
// when the oracle has an answer, with a verified derivation whose answer the
// oracle contains.
struct Agreement {
  int programs = 0;
  int agree = 0;
  int exhausted = 0;
  std::string first_disagreement;
};
Agreement oracle_agreement(int count, std::uint64_t seed);

// The store listing after running /query with move 4 on fib.lp.
extern const char* const kFibStoreAt4;

// Replaces the first occurrence of `from` in the fixture text.
std::string mutate_fixture(const std::string& fixture, const std::string& from,
                           const std::string& to);

// One-edit variants of the induction fixtures that break their scheme.
struct SchemeMutation {
  const char* fixture;
  const char* query;
  const char* from;
  const char* to;
};
const std::vector<SchemeMutation>& scheme_mutations();

// Every single-field edit of every node of `doc`, labelled; edits that leave
// the document unchanged are skipped.
std::vector<std::pair<std::string, TraceDoc>> trace_mutations(const TraceDoc& doc);

// Runs the command-line tool with `args` (each passed as one word).
struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace lpc::testing
