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

#include "lpcode/syntax.hpp"

#include <cassert>

namespace lpc {

Location LocRef::concrete() const {
  assert(is_concrete());
  Location l{name, std::nullopt};
  if (index) l.index = index->offset;
  return l;
}

std::optional<Dep::Kind> Assignment::induction_tag() const {
  for (const auto& d : deps)
    if (d.is_tag()) return d.kind;
  return std::nullopt;
}

std::vector<LocRef> Assignment::dep_locations() const {
  std::vector<LocRef> out;
  for (const auto& d : deps)
    if (!d.is_tag()) out.push_back(d.loc);
  return out;
}

}  // namespace lpc
