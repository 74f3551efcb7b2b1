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


#include <gtest/gtest.h>

#include <random>

#include "lpcode/executor.hpp"
#include "lpcode/parser.hpp"
#include "lpcode/render.hpp"
#include "lpcode/trace.hpp"
#include "lpcode/wf.hpp"
#include "support/support.hpp"

namespace lpc {
namespace {

using testing::load_fixture;
using testing::loc;

std::vector<std::string> codes(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& d : check_structural(parse_program(text))) out.push_back(d.code);
  return out;
}

TEST(Structural, Examples) {
  EXPECT_EQ(codes("/x = p(0,1).\n/x = p(0,2)."), std::vector<std::string>{"WF002"});
  EXPECT_TRUE(check_structural(load_fixture("fib.lp").program()).empty());
  EXPECT_EQ(codes("/y = ?w. p(w) ^ {/w}."), std::vector<std::string>{"WF006"});
}

TEST(Structural, EachCode) {
  EXPECT_EQ(codes("/x = ?w. p(w) ^ {/y}.\n/y = ?w. p(w) ^ {/x}."),
            std::vector<std::string>{"WF004"});
  EXPECT_EQ(codes("/x = p(0,1) | p(0,2)."), std::vector<std::string>{"WF005"});
  EXPECT_EQ(codes("/x = p(0,y)."), std::vector<std::string>{"WF005"});
  EXPECT_EQ(codes("/x = p(0).\n/y = ?w. (p(w) #& p(w)) ^ {/x}."),
            std::vector<std::string>{"WF005"});
  EXPECT_EQ(codes("/x = p(0,1).\n/y = p(0) ^ {/x}."), std::vector<std::string>{"WF007"});
  EXPECT_EQ(codes("/l = for i in 3..1: /a[i] = p(i)."), std::vector<std::string>{"WF008"});
  EXPECT_EQ(codes("/l = for i in 1..inf: /a[i] = p(i) ^ {/a[i+1]}."),
            std::vector<std::string>{"WF008"});
  EXPECT_EQ(codes("/l = for i in 1..inf: /b[i+1] = p(i)."), std::vector<std::string>{"WF008"});
  EXPECT_EQ(codes("/x = ?w. p(w) ^ {/a[i]}."), std::vector<std::string>{"WF006"});
  EXPECT_EQ(codes("/l = for i in 3..inf: /a[i] = p(i) ^ {/a[i-1]}."),
            std::vector<std::string>{"WF006"});
  EXPECT_EQ(codes("/a[1] = p(1).\n/l = for i in 2..inf: /a[i] = p(i) ^ {/a[i-1]}.\n"
                  "/q = (!x. p(x)) ^ {GIND, /a[1], /l}."),
            std::vector<std::string>{});
  EXPECT_EQ(codes("/a[1] = p(1).\n/l = for i in 2..inf: /a[i] = p(i) ^ {/a[i-1]}.\n"
                  "/q = (!x. p(x)) ^ {GIND, /a[1], /a[2], /l}."),
            std::vector<std::string>{"WF003"});
  EXPECT_EQ(codes("/a[1] = p(1).\n/l = for i in 2..inf: /a[i] = p(i) ^ {/a[i-1]}.\n"
                  "/q = ?x. p(x) ^ {/l}."),
            std::vector<std::string>{"WF003"});
}

TEST(Structural, RenderedDiagnostic) {
  auto report = check_program(load_fixture("wf_triple.lp").program(), {});
  ASSERT_EQ(report.diagnostics.size(), 1u);
  EXPECT_EQ(render(report.diagnostics[0]),
            "ERROR WF001 /z:3:1 /z: p(0,5) is not derivable from its knowledge base");
}

WfVerdict verdict(const std::string& fixture, const std::string& at) {
  ProgramModel m = load_fixture(fixture);
  AgentStore scratch;
  return check_semantic(m, loc(at), scratch, {});
}

TEST(Semantic, TripleAndFibonacciClassification) {
  EXPECT_EQ(verdict("wf_triple.lp", "/y").kind, WfVerdict::Kind::WellFormed);
  WfVerdict z = verdict("wf_triple.lp", "/z");
  EXPECT_EQ(z.kind, WfVerdict::Kind::NotWellFormed);
  ASSERT_TRUE(z.diagnostic);
  EXPECT_EQ(z.diagnostic->code, "WF001");
  WfVerdict fib = verdict("fib.lp", "/fib");
  ASSERT_EQ(fib.kind, WfVerdict::Kind::WellFormedByScheme);
  EXPECT_EQ(fib.scheme->kind, Dep::Kind::Gind);
  EXPECT_EQ(fib.scheme->order, 2u);
  EXPECT_EQ(verdict("fib.lp", "/query").kind, WfVerdict::Kind::WellFormed);
  EXPECT_EQ(verdict("ind.lp", "/q").kind, WfVerdict::Kind::WellFormedByScheme);
  auto report = check_program(load_fixture("fib.lp").program(), {});
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.diagnostics.empty());
}

TEST(Semantic, UnknownVerdicts) {
  ProgramModel m(parse_program("/x = p(0,1).\n/u = (!n. ?w. p(n,w)) ^ {/x}."));
  AgentStore scratch;
  WfVerdict u = check_semantic(m, loc("/u"), scratch, {});
  EXPECT_EQ(u.kind, WfVerdict::Kind::Unknown);
  EXPECT_EQ(u.diagnostic->code, "WF101");
  EXPECT_EQ(u.diagnostic->severity, Severity::Warning);

  ProgramModel fib = load_fixture("fib.lp");
  AgentStore s2;
  WfVerdict tight = check_semantic(fib, loc("/istep"), s2, SearchLimits{1, 100000});
  EXPECT_EQ(tight.kind, WfVerdict::Kind::Unknown);
  EXPECT_EQ(tight.diagnostic->code, "WF102");

  ProgramModel mismatch(parse_program(
      "/s = (!n. ?w. p(n,w)) ^ {/x}.\n/x = p(0,1).\n/t = (!n. ?w. q(n,w)) ^ {/s}."));
  AgentStore s3;
  EXPECT_EQ(check_semantic(mismatch, loc("/t"), s3, {}).kind, WfVerdict::Kind::Unknown);
}

TEST(Semantic, BrokenInductionCase) {
  ProgramModel m(parse_program(
      "/a[1] = p(1).\n/l = for i in 2..inf: /a[i] = p(i) ^ {/a[i-1]}.\n"
      "/q = (!x. p(x)) ^ {IND, /a[1], /l}."));
  AgentStore scratch;
  WfVerdict v = check_semantic(m, loc("/q"), scratch, {});
  EXPECT_EQ(v.kind, WfVerdict::Kind::NotWellFormed);
  EXPECT_EQ(v.diagnostic->code, "WF001");
}

// ---------------------------------------------------------------------------
// Trace verification

TraceDoc trace_of(const ProgramModel& m, const std::string& target, std::vector<BigInt> moves) {
  RunResult r = run_query(m, loc(target), std::move(moves), {});
  EXPECT_EQ(r.outcome.status, RunStatus::Success) << r.outcome.message;
  return emit_trace(r.store, *r.outcome.key);
}

TEST(Verify, Examples) {
  ProgramModel fib = load_fixture("fib.lp");
  TraceDoc doc = trace_of(fib, "/query", {4});
  EXPECT_TRUE(verify_trace(doc, fib).accepted);

  TraceDoc bad = doc;
  for (auto& n : bad.nodes)
    if (n.key == AgentKey{loc("/a[4]"), {}}) n.derivation.conclusion = parse_formula("fib(4,4)").atom();
  VerifyResult r = verify_trace(bad, fib);
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.path.rfind("/a[4]", 0), 0u) << r.path;

  ProgramModel single(parse_program("/x = p(0,1)."));
  EXPECT_TRUE(verify_trace(trace_of(single, "/x", {}), single).accepted);

  ProgramModel other = load_fixture("ind.lp");
  EXPECT_FALSE(verify_trace(doc, other).accepted);
}

TEST(Verify, SurvivesTextRoundTrip) {
  ProgramModel fib = load_fixture("fib.lp");
  TraceDoc doc = trace_of(fib, "/query", {7});
  EXPECT_TRUE(verify_trace(parse_trace(render_trace(doc)), fib).accepted);
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

TEST(Verify, WorkIsLinear) {
  ProgramModel fib = load_fixture("fib.lp");
  for (unsigned n : {4u, 12u, 30u}) {
    TraceDoc doc = trace_of(fib, "/query", {n});
    std::size_t size = 0;
    for (const auto& node : doc.nodes) size += 1 + derivation_size(node.derivation);
    VerifyResult r = verify_trace(doc, fib);
    ASSERT_TRUE(r.accepted);
    EXPECT_LE(r.work, 8 * size) << n;
  }
}

void expect_mutations_rejected(const TraceDoc& doc, const ProgramModel& m) {
  ASSERT_TRUE(verify_trace(doc, m).accepted);
  auto all = testing::trace_mutations(doc);
  EXPECT_GT(all.size(), doc.nodes.size());
  for (const auto& [what, mutant] : all) EXPECT_FALSE(verify_trace(mutant, m).accepted) << what;
}

TEST(Verify, SingleFieldMutationsAreRejected) {
  ProgramModel fib = load_fixture("fib.lp");
  expect_mutations_rejected(trace_of(fib, "/query", {4}), fib);
  expect_mutations_rejected(trace_of(fib, "/query", {1}), fib);
  ProgramModel ind = load_fixture("ind.lp");
  expect_mutations_rejected(trace_of(ind, "/q", {5}), ind);
  ProgramModel lemma = load_fixture("lemma.lp");
  expect_mutations_rejected(trace_of(lemma, "/lemma", {}), lemma);
  ProgramModel fwd = load_fixture("forward.lp");
  expect_mutations_rejected(trace_of(fwd, "/z", {}), fwd);
}

TEST(Verify, AcceptsEveryTraceOfRandomPrograms) {
  std::mt19937_64 rng(99);
  int accepted = 0;
  for (int i = 0; i < 200; ++i) {
    auto prog = testing::random_program(rng);
    auto goal = testing::random_goal(prog, rng);
    ProgramModel m(parse_program(testing::as_source(prog, goal)));
    RunResult r = run_query(m, loc("/q"), {}, {});
    if (r.outcome.status != RunStatus::Success) continue;
    TraceDoc doc = emit_trace(r.store, *r.outcome.key);
    VerifyResult v = verify_trace(parse_trace(render_trace(doc)), m);
    EXPECT_TRUE(v.accepted) << testing::as_source(prog, goal) << v.path << ": " << v.reason;
    ++accepted;
  }
  EXPECT_GT(accepted, 50);
}

}  // namespace
}  // namespace lpc
