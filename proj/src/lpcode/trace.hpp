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

#include <string>
#include <string_view>
#include <vector>

#include "lpcode/executor.hpp"

namespace lpc {

class UnboundLocation : public std::runtime_error {
 public:
  explicit UnboundLocation(const std::string& key)
      : std::runtime_error(key + " is not bound") {}
};

struct TraceNode {
  AgentKey key;
  Formula formula;
  std::vector<AgentKey> deps;
  Derivation derivation;

  friend bool operator==(const TraceNode&, const TraceNode&) = default;
};

// Nodes are listed dependency-first; the root comes last.
struct TraceDoc {
  AgentKey root;
  std::vector<TraceNode> nodes;

  friend bool operator==(const TraceDoc&, const TraceDoc&) = default;
};

TraceDoc emit_trace(const AgentStore& store, const AgentKey& root);

// Text form:
//
//   lpcode-trace 1
//   root /query<4>
//   node /a[3]
//     formula fib(3,2)
//     deps /a[2] /a[1] /r[3]
//     moves
//     derivation (rule /r[3] {x=1, y=1, z=1} ((fact /a[1] fib(1,1)) (fact /a[2] fib(2,1))) fib(3,2))
//   end
//
// Derivations: (fact SRC ATOM) | (rule SRC SUBST (PREMISE...) ATOM) |
// (pick INDEX SUB) | (and SUB...) | (axiom SRC).
std::string render_trace(const TraceDoc& doc);
std::string render(const Derivation& d);

// Throws ParseError.
TraceDoc parse_trace(std::string_view text);

}  // namespace lpc
