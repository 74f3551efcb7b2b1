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

#include <optional>
#include <string>
#include <vector>

#include "lpcode/executor.hpp"
#include "lpcode/program.hpp"
#include "lpcode/trace.hpp"

namespace lpc {

enum class Severity { Error, Warning };

// Codes: WF001 not derivable, WF002 destructive assignment, WF003 scheme,
// WF004 cycle, WF005 unsupported formula, WF006 unknown dependency,
// WF007 arity clash, WF008 malformed loop; WF101 checked per instance at run
// time, WF102 search limits exhausted.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  SourcePos pos;
  std::string loc;
  std::string message;
};

// `ERROR WF001 /z:3:1 p(0,5) is not derivable ...`
std::string render(const Diagnostic& d);

struct WfVerdict {
  enum class Kind { WellFormed, NotWellFormed, Unknown, WellFormedByScheme };
  Kind kind = Kind::Unknown;
  std::optional<Diagnostic> diagnostic;
  std::optional<InductionScheme> scheme;
};

const char* to_string(WfVerdict::Kind k);

std::vector<Diagnostic> check_structural(const Program& p);

// Verdict for the item declaring `loc` (for a loop, its name). `scratch`
// collects bindings between calls so earlier statements are not re-derived.
WfVerdict check_semantic(const ProgramModel& model, const Location& loc, AgentStore& scratch,
                         const SearchLimits& lim);

struct CheckReport {
  std::vector<Diagnostic> diagnostics;
  std::vector<std::pair<Location, WfVerdict>> verdicts;  // empty after structural errors
  bool ok() const;
};

CheckReport check_program(const Program& p, const SearchLimits& lim);

struct VerifyResult {
  bool accepted = true;
  std::string path;    // node where checking stopped, e.g. `/a[4] derivation.premises[1]`
  std::string reason;
  std::size_t work = 0;  // derivation nodes and formulas examined
};

// Checks a derivation of `goal` against the formulas available at each source
// without any proof search.
VerifyResult verify_derivation(const Derivation& d, const Formula& goal, const Formula& evolved,
                               const std::map<std::string, Formula>& kb);

VerifyResult verify_trace(const TraceDoc& doc, const ProgramModel& model);

}  // namespace lpc
