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


#include "lpcode/lpcode.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "lpcode/executor.hpp"
#include "lpcode/parser.hpp"
#include "lpcode/render.hpp"
#include "lpcode/trace.hpp"
#include "lpcode/wf.hpp"

struct lpc_program {
  explicit lpc_program(lpc::Program p) : model(std::move(p)) {}
  lpc::ProgramModel model;
  std::vector<lpc::Diagnostic> structural;
};

struct lpc_store {
  lpc::AgentStore store;
  const lpc_program* owner = nullptr;
};

struct lpc_result {
  lpc_status status = LPC_FAILURE;
  std::optional<std::string> binding;
  std::optional<std::string> trace;
  std::string message;
  size_t prover_calls = 0;
};

namespace {

thread_local std::string last_error;

lpc_status set_error(lpc_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lpc::ExecLimits exec_limits(const lpc_limits* l) {
  lpc_limits v = l ? *l : lpc_limits_default();
  return lpc::ExecLimits{lpc::SearchLimits{v.max_depth, v.max_steps}, v.max_unfold};
}

bool valid(const lpc_limits* l) {
  return !l || (l->max_depth >= 1 && l->max_steps >= 1 && l->max_unfold >= 1);
}

lpc_status status_of(lpc::RunStatus s) {
  switch (s) {
    case lpc::RunStatus::Success: return LPC_OK;
    case lpc::RunStatus::Failure: return LPC_FAILURE;
    case lpc::RunStatus::WellFormednessViolation: return LPC_WF_VIOLATION;
    case lpc::RunStatus::LimitExhausted: return LPC_LIMIT_EXHAUSTED;
    case lpc::RunStatus::MoveUnderflow: return LPC_MOVE_UNDERFLOW;
    case lpc::RunStatus::ExtraMoves: return LPC_EXTRA_MOVES;
    case lpc::RunStatus::UnknownLocation: return LPC_UNKNOWN_LOCATION;
    case lpc::RunStatus::Unsupported: return LPC_UNSUPPORTED;
  }
  return LPC_INTERNAL_ERROR;
}

bool is_numeral(const char* s) {
  if (!s || !*s) return false;
  for (; *s; ++s)
    if (*s < '0' || *s > '9') return false;
  return true;
}

class CallbackMoves : public lpc::MoveSource {
 public:
  CallbackMoves(lpc_move_fn fn, void* user) : fn_(fn), user_(user) {}
  std::optional<lpc::BigInt> next(const std::string& var) override {
    char buf[256];
    while (true) {
      buf[0] = '\0';
      if (fn_(user_, var.c_str(), buf, sizeof buf) != 0) return std::nullopt;
      buf[sizeof buf - 1] = '\0';
      if (is_numeral(buf)) return lpc::BigInt(buf);
    }
  }

 private:
  lpc_move_fn fn_;
  void* user_;
};

template <typename Fn>
lpc_status guarded(Fn fn) {
  try {
    return fn();
  } catch (const std::bad_alloc&) {
    return set_error(LPC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LPC_INTERNAL_ERROR, e.what());
  }
}

}  // namespace

extern "C" {

lpc_limits lpc_limits_default(void) {
  lpc::ExecLimits d;
  return lpc_limits{d.search.max_depth, d.search.max_steps, d.max_unfold};
}

const char* lpc_last_error(void) { return last_error.c_str(); }

lpc_status lpc_program_parse(const char* text, size_t len, lpc_program** out) {
  if (!out || (!text && len)) return set_error(LPC_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    try {
      auto p = std::make_unique<lpc_program>(
          lpc::parse_program(std::string_view(text ? text : "", len)));
      p->structural = lpc::check_structural(p->model.program());
      *out = p.release();
      return LPC_OK;
    } catch (const lpc::ParseError& e) {
      return set_error(LPC_PARSE_ERROR, e.what());
    }
  });
}

lpc_status lpc_program_load(const char* path, lpc_program** out) {
  if (!path || !out) return set_error(LPC_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return set_error(LPC_IO_ERROR, std::string("cannot read ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  lpc_status s = lpc_program_parse(text.data(), text.size(), out);
  if (s == LPC_PARSE_ERROR) last_error = std::string(path) + ":" + last_error;
  return s;
}

void lpc_program_free(lpc_program* program) { delete program; }

lpc_status lpc_check(const lpc_program* program, const lpc_limits* limits, char** report) {
  if (!program || !report) return set_error(LPC_INVALID_ARGUMENT, "null argument");
  if (!valid(limits)) return set_error(LPC_INVALID_ARGUMENT, "limits must be at least 1");
  *report = nullptr;
  return guarded([&] {
    lpc::CheckReport r = lpc::check_program(program->model.program(), exec_limits(limits).search);
    std::string text;
    for (const auto& d : r.diagnostics) text += lpc::render(d) + "\n";
    *report = dup_string(text);
    if (r.ok()) return LPC_OK;
    return set_error(LPC_WF_VIOLATION, "program is not well-formed");
  });
}

lpc_store* lpc_store_new(void) { return new (std::nothrow) lpc_store; }

void lpc_store_free(lpc_store* store) { delete store; }

char* lpc_store_render(const lpc_store* store, const lpc_program* program) {
  if (!store || !program) return nullptr;
  try {
    return dup_string(lpc::render_store(store->store, program->model));
  } catch (const std::exception& e) {
    last_error = e.what();
    return nullptr;
  }
}

lpc_status lpc_run(const lpc_program* program, lpc_store* store, const char* query,
                   const char* const* moves, size_t n_moves, lpc_move_fn interactive, void* user,
                   const lpc_limits* limits, lpc_result** out) {
  if (!program || !store || !query || !out || (n_moves && !moves))
    return set_error(LPC_INVALID_ARGUMENT, "null argument");
  if (!valid(limits)) return set_error(LPC_INVALID_ARGUMENT, "limits must be at least 1");
  if (interactive && n_moves)
    return set_error(LPC_INVALID_ARGUMENT, "scripted and interactive moves are exclusive");
  if (store->owner && store->owner != program)
    return set_error(LPC_INVALID_ARGUMENT, "store belongs to another program");
  *out = nullptr;
  for (const auto& d : program->structural)
    if (d.severity == lpc::Severity::Error)
      return set_error(LPC_STRUCTURE_ERROR, lpc::render(d));
  return guarded([&] {
    lpc::Location target;
    try {
      lpc::Parser p(query);
      lpc::LocRef ref = p.locref();
      if (!ref.is_concrete() || !p.at(lpc::Tok::End)) p.fail({"location"});
      target = ref.concrete();
    } catch (const lpc::ParseError& e) {
      return set_error(LPC_INVALID_ARGUMENT, std::string("bad query location: ") + e.what());
    }
    std::vector<lpc::BigInt> scripted;
    for (size_t i = 0; i < n_moves; ++i) {
      if (!is_numeral(moves[i]))
        return set_error(LPC_INVALID_ARGUMENT,
                         std::string("moves are natural numbers: ") + (moves[i] ? moves[i] : ""));
      scripted.emplace_back(moves[i]);
    }
    store->owner = program;
    lpc::Executor exec(program->model, store->store, exec_limits(limits));
    lpc::ScriptedMoves script(scripted);
    CallbackMoves prompt(interactive, user);
    lpc::MoveSource& source = interactive ? static_cast<lpc::MoveSource&>(prompt) : script;
    lpc::Outcome o = exec.execute(target, source);
    if (o.status == lpc::RunStatus::Success && !interactive && script.remaining() > 0) {
      o.status = lpc::RunStatus::ExtraMoves;
      o.message = std::to_string(script.remaining()) + " unused move(s)";
    }
    auto r = std::make_unique<lpc_result>();
    r->status = status_of(o.status);
    r->message = o.message;
    r->prover_calls = o.prover_calls;
    if (o.status == lpc::RunStatus::Success) {
      r->binding = lpc::render(*o.binding);
      r->trace = lpc::render_trace(lpc::emit_trace(store->store, *o.key));
    }
    lpc_status s = r->status;
    *out = r.release();
    if (s != LPC_OK) last_error = (*out)->message;
    return s;
  });
}

lpc_status lpc_result_status(const lpc_result* r) { return r ? r->status : LPC_INVALID_ARGUMENT; }

const char* lpc_result_binding(const lpc_result* r) {
  return r && r->binding ? r->binding->c_str() : nullptr;
}

const char* lpc_result_message(const lpc_result* r) { return r ? r->message.c_str() : ""; }

const char* lpc_result_trace(const lpc_result* r) {
  return r && r->trace ? r->trace->c_str() : nullptr;
}

size_t lpc_result_prover_calls(const lpc_result* r) { return r ? r->prover_calls : 0; }

void lpc_result_free(lpc_result* r) { delete r; }

lpc_status lpc_verify_trace(const lpc_program* program, const char* trace, size_t len,
                            char** reason) {
  if (!program || (!trace && len)) return set_error(LPC_INVALID_ARGUMENT, "null argument");
  if (reason) *reason = nullptr;
  return guarded([&] {
    lpc::TraceDoc doc;
    try {
      doc = lpc::parse_trace(std::string_view(trace ? trace : "", len));
    } catch (const lpc::ParseError& e) {
      return set_error(LPC_PARSE_ERROR, std::string("trace:") + e.what());
    }
    lpc::VerifyResult v = lpc::verify_trace(doc, program->model);
    if (v.accepted) return LPC_OK;
    std::string text = v.path + ": " + v.reason;
    if (reason) *reason = dup_string(text);
    return set_error(LPC_REJECTED, text);
  });
}

void lpc_string_free(char* s) { std::free(s); }

}  // extern "C"
