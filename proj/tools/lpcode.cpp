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


// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpcode/lpcode.h"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

int load(const std::string& path, lpc_program** p) {
  lpc_status s = lpc_program_load(path.c_str(), p);
  if (s == LPC_OK) return kOk;
  std::cerr << "error: " << lpc_last_error() << "\n";
  return kUsage;
}

int exit_code(lpc_status s) {
  switch (s) {
    case LPC_OK: return kOk;
    case LPC_LIMIT_EXHAUSTED:
    case LPC_MOVE_UNDERFLOW: return kLimit;
    case LPC_EXTRA_MOVES:
    case LPC_UNKNOWN_LOCATION:
    case LPC_PARSE_ERROR:
    case LPC_IO_ERROR:
    case LPC_INVALID_ARGUMENT: return kUsage;
    default: return kFail;
  }
}

int prompt(void*, const char* var, char* move, size_t cap) {
  std::string line;
  while (true) {
    std::cerr << "move for " << var << "? " << std::flush;
    if (!std::getline(std::cin, line)) return 1;
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, e - b + 1);
    bool numeral = line.find_first_not_of("0123456789") == std::string::npos;
    if (numeral && line.size() < cap) {
      std::snprintf(move, cap, "%s", line.c_str());
      return 0;
    }
    std::cerr << "moves are natural numbers\n";
  }
}

int cmd_check(const std::string& path, const lpc_limits& lim) {
  lpc_program* p = nullptr;
  if (int rc = load(path, &p)) return rc;
  char* report = nullptr;
  lpc_status s = lpc_check(p, &lim, &report);
  if (report) std::cout << report;
  lpc_string_free(report);
  lpc_program_free(p);
  if (s == LPC_OK) return kOk;
  if (s != LPC_WF_VIOLATION) std::cerr << "error: " << lpc_last_error() << "\n";
  return s == LPC_WF_VIOLATION ? kFail : exit_code(s);
}

struct RunOptions {
  std::string path;
  std::string query;
  std::vector<std::string> moves;
  bool scripted = false;
  std::string trace;
  bool show_store = false;
};

int cmd_run(const RunOptions& o, const lpc_limits& lim) {
  lpc_program* p = nullptr;
  if (int rc = load(o.path, &p)) return rc;
  lpc_store* store = lpc_store_new();
  std::vector<const char*> moves;
  for (const auto& m : o.moves) moves.push_back(m.c_str());
  lpc_result* r = nullptr;
  lpc_status s = lpc_run(p, store, o.query.c_str(), moves.data(), moves.size(),
                         o.scripted ? nullptr : prompt, nullptr, &lim, &r);
  int rc = exit_code(s);
  if (!r) {
    std::cerr << "error: " << lpc_last_error() << "\n";
    if (s == LPC_STRUCTURE_ERROR) rc = kFail;
  } else if (s == LPC_OK) {
    std::cout << lpc_result_binding(r) << "\n";
    if (o.show_store) {
      char* listing = lpc_store_render(store, p);
      if (listing) std::cout << listing;
      lpc_string_free(listing);
    }
    if (!o.trace.empty()) {
      std::ofstream out(o.trace, std::ios::binary);
      out << lpc_result_trace(r);
      if (!out.flush()) {
        std::cerr << "error: cannot write " << o.trace << "\n";
        rc = kUsage;
      }
    }
  } else {
    std::cerr << "error: " << lpc_result_message(r) << "\n";
  }
  lpc_result_free(r);
  lpc_store_free(store);
  lpc_program_free(p);
  return rc;
}

int cmd_verify(const std::string& trace_path, const std::string& path) {
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << trace_path << "\n";
    return kUsage;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  lpc_program* p = nullptr;
  if (int rc = load(path, &p)) return rc;
  char* reason = nullptr;
  lpc_status s = lpc_verify_trace(p, text.data(), text.size(), &reason);
  lpc_program_free(p);
  if (s == LPC_OK) {
    std::cout << "accepted\n";
    return kOk;
  }
  if (s == LPC_REJECTED) {
    std::cout << "rejected at " << (reason ? reason : "") << "\n";
    lpc_string_free(reason);
    return kFail;
  }
  std::cerr << "error: " << lpc_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checker and interpreter for logical pseudocode"};
  app.require_subcommand(1);
  lpc_limits lim = lpc_limits_default();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Report well-formedness diagnostics");
  check->add_option("file", check_path, "Program file")->required();

  RunOptions ro;
  auto* run = app.add_subcommand("run", "Execute a query location");
  run->add_option("file", ro.path, "Program file")->required();
  run->add_option("--query", ro.query, "Location to execute, e.g. /query")->required();
  auto* moves_opt = run->add_option("--moves", ro.moves, "Comma-separated moves; prompts when absent")
                        ->delimiter(',')
                        ->allow_extra_args(false);
  run->add_option("--depth", lim.max_depth, "Maximum proof depth")
      ->check(CLI::PositiveNumber);
  run->add_option("--steps", lim.max_steps, "Maximum search steps per prover call")
      ->check(CLI::PositiveNumber);
  run->add_option("--max-unfold", lim.max_unfold, "Maximum loop statements generated per run")
      ->check(CLI::PositiveNumber);
  run->add_option("--trace", ro.trace, "Write the derivation trace here");
  run->add_flag("--store", ro.show_store, "Print the store after a successful run");

  std::string trace_path, verify_path;
  auto* verify = app.add_subcommand("verify", "Check a trace against a program");
  verify->add_option("trace", trace_path, "Trace file")->required();
  verify->add_option("file", verify_path, "Program file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  ro.scripted = moves_opt->count() > 0;
  std::erase(ro.moves, std::string{});
  if (*check) return cmd_check(check_path, lim);
  if (*run) return cmd_run(ro, lim);
  return cmd_verify(trace_path, verify_path);
}
