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

#include "lpcode/formula.hpp"
#include "lpcode/syntax.hpp"

namespace lpc {

// Concrete syntax accepted back by the parser: parse(render(x)) == x.
std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Formula& f);
std::string render(const Location& l);
std::string render(const LocRef& l);
std::string render(const Dep& d);
std::string render(const std::vector<Dep>& deps);
std::string render(const Assignment& a);
std::string render(const ForLoop& loop);
std::string render(const Statement& s);
std::string render(const Program& p);
// `{x=2, y=1}`; keys in map order.
std::string render(const Substitution& s);

}  // namespace lpc
