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

#include <iostream>
#include <random>

#include "lpcode/parser.hpp"
#include "lpcode/prover.hpp"
#include "lpcode/render.hpp"
#include "lpcode/wf.hpp"
#include "support/support.hpp"

namespace lpc {
namespace {

Atom atom_of(const std::string& text) { return parse_formula(text).atom(); }

KnowledgeBase kb_of(std::vector<std::pair<std::string, std::string>> entries) {
  KnowledgeBase kb;
  for (auto& [src, text] : entries) kb.entries.push_back({src, parse_formula(text)});
  return kb;
}

const char* kFibRule = "all x,y,z. (fib(x,y) & fib(x+1,z)) -> fib(x+2,y+z)";

TEST(Unify, ArithmeticHeadDefersSum) {
  auto r = unify(atom_of("fib(4,W)"), atom_of("fib(x+2,y+z)"), {}, {});
  ASSERT_TRUE(r);
  EXPECT_EQ(render(r->subst.at("x")), "2");
  ASSERT_EQ(r->constraints.pending.size(), 1u);
  EXPECT_EQ(render(r->constraints.pending[0].first), "W");
  EXPECT_EQ(render(r->constraints.pending[0].second), "y+z");
}

TEST(Unify, PlainVariable) {
  auto r = unify(atom_of("p(0,1)"), atom_of("p(X,1)"), {}, {});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->subst.size(), 1u);
  EXPECT_EQ(render(r->subst.at("X")), "0");
  EXPECT_TRUE(r->constraints.empty());
}

TEST(Unify, Mismatches) {
  EXPECT_FALSE(unify(atom_of("p(0,1)"), atom_of("q(0,1)"), {}, {}));
  EXPECT_FALSE(unify(atom_of("p(0,1)"), atom_of("p(0,1,2)"), {}, {}));
  EXPECT_FALSE(unify(atom_of("p(1)"), atom_of("p(x+2)"), {}, {}));
  EXPECT_FALSE(unify(atom_of("p(X,X)"), atom_of("p(0,1)"), {}, {}));
}

TEST(Derive, WitnessFromFact) {
  auto kb = kb_of({{"/x", "p(0,1)"}});
  auto r = derive(conj_goal_of(parse_formula("?w. p(0,w)")), kb, {});
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_EQ(render(r.witnesses.at("w")), "1");
  EXPECT_EQ(r.derivation.kind, Derivation::Kind::Fact);
  EXPECT_EQ(r.derivation.source, "/x");
}

TEST(Derive, NotDerivable) {
  auto kb = kb_of({{"/x", "p(0,1)"}});
  EXPECT_EQ(derive(conj_goal_of(parse_formula("p(0,5)")), kb, {}).status,
            ProofStatus::NotDerivable);
}

TEST(Derive, FibonacciStep) {
  auto kb = kb_of({{"/a[2]", "fib(2,1)"}, {"/a[3]", "fib(3,2)"}, {"/r[3]", kFibRule}});
  auto r = derive(conj_goal_of(parse_formula("?y. fib(4,y)")), kb, {});
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_EQ(render(r.witnesses.at("y")), "3");
  ASSERT_EQ(r.derivation.kind, Derivation::Kind::Rule);
  EXPECT_EQ(r.derivation.source, "/r[3]");
  ASSERT_EQ(r.derivation.premises.size(), 2u);
  EXPECT_EQ(r.derivation.premises[0].kind, Derivation::Kind::Fact);
  EXPECT_EQ(r.derivation.premises[1].kind, Derivation::Kind::Fact);
  EXPECT_EQ(render(r.derivation.conclusion), "fib(4,3)");
}

TEST(Derive, GroundGoalFact) {
  auto kb = kb_of({{"/x", "p(0,1)"}});
  auto r = derive(conj_goal_of(parse_formula("p(0,1)")), kb, {});
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_TRUE(r.witnesses.empty());
  EXPECT_EQ(r.derivation.kind, Derivation::Kind::Fact);
}

TEST(Derive, LimitsAreReported) {
  auto kb = kb_of({{"/f", "fib(1,1)"}, {"/g", "fib(2,1)"}, {"/r", kFibRule}});
  SearchLimits tight{3, 100000};
  EXPECT_EQ(derive(conj_goal_of(parse_formula("?y. fib(8,y)")), kb, tight).status,
            ProofStatus::BoundExhausted);
  auto r = derive(conj_goal_of(parse_formula("?y. fib(8,y)")), kb, {});
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_EQ(render(r.witnesses.at("y")), testing::fib_oracle(8).str());
}

TEST(Derive, RejectsUnsupportedKb) {
  auto kb = kb_of({{"/x", "p(0,1) | p(0,2)"}});
  EXPECT_THROW(derive(conj_goal_of(parse_formula("p(0,1)")), kb, {}), UnsupportedFormula);
}

TEST(Derive, MonotoneInLimits) {
  auto kb = kb_of({{"/f", "fib(1,1)"}, {"/g", "fib(2,1)"}, {"/r", kFibRule}});
  auto goal = conj_goal_of(parse_formula("?y. fib(6,y)"));
  auto base = derive(goal, kb, SearchLimits{12, 5000});
  ASSERT_EQ(base.status, ProofStatus::Proved);
  for (std::size_t d : {12, 20, 64})
    for (std::size_t s : {5000, 20000, 100000}) {
      auto r = derive(goal, kb, SearchLimits{d, s});
      ASSERT_EQ(r.status, ProofStatus::Proved);
      EXPECT_EQ(r.witnesses, base.witnesses);
      EXPECT_EQ(r.derivation, base.derivation);
    }
}

bool has_sum(const Derivation& d) {
  for (const auto& a : d.conclusion.args)
    if (a.is_sum()) return true;
  for (const auto& p : d.premises)
    if (has_sum(p)) return true;
  return false;
}

TEST(Derive, ConstraintsAreDischarged) {
  auto kb = kb_of({{"/f", "fib(1,1)"}, {"/g", "fib(2,1)"}, {"/r", kFibRule}});
  for (int n = 3; n <= 9; ++n) {
    auto r = derive(conj_goal_of(parse_formula("?y. fib(" + std::to_string(n) + ",y)")), kb, {});
    ASSERT_EQ(r.status, ProofStatus::Proved);
    EXPECT_FALSE(has_sum(r.derivation));
    EXPECT_EQ(render(r.witnesses.at("y")), testing::fib_oracle(static_cast<unsigned>(n)).str());
  }
}

TEST(SelectLemma, Examples) {
  auto kb = kb_of({{"/x", "p(0,1)"}});
  auto first = select_lemma(goal_of(parse_formula("p(0,1) #| p(0,5)")).pick, kb, {});
  ASSERT_EQ(first.status, ProofStatus::Proved);
  EXPECT_EQ(first.index, 0u);
  EXPECT_EQ(first.derivation.kind, Derivation::Kind::Pick);
  auto none = select_lemma(goal_of(parse_formula("p(0,5) #| p(0,5)")).pick, kb, {});
  EXPECT_EQ(none.status, ProofStatus::NotDerivable);
  auto second = select_lemma(goal_of(parse_formula("p(0,5) #| ?w. p(0,w)")).pick, kb, {});
  ASSERT_EQ(second.status, ProofStatus::Proved);
  EXPECT_EQ(second.index, 1u);
}

TEST(SelectLemma, FibonacciCandidates) {
  KnowledgeBase kb;
  for (unsigned i = 1; i <= 6; ++i)
    kb.entries.push_back({"/a[" + std::to_string(i) + "]",
                          parse_formula("fib(" + std::to_string(i) + "," +
                                        testing::fib_oracle(i).str() + ")")});
  auto r = select_lemma(goal_of(parse_formula("(?x. fib(5,x)) #| (?x. fib(6,x))")).pick, kb, {});
  ASSERT_EQ(r.status, ProofStatus::Proved);
  EXPECT_EQ(r.index, 0u);
  EXPECT_EQ(render(r.witnesses.at("x")), testing::fib_oracle(5).str());
}

TEST(Derive, AgreesWithBottomUpOracle) {
  auto a = testing::oracle_agreement(600, 2026);
  EXPECT_EQ(a.agree, a.programs) << a.first_disagreement;
  std::cout << a.agree << "/" << a.programs << " agree, " << a.exhausted << " hit a search bound\n";
}

TEST(Derive, Deterministic) {
  auto kb = kb_of({{"/f", "fib(1,1)"}, {"/g", "fib(2,1)"}, {"/r", kFibRule}});
  auto goal = conj_goal_of(parse_formula("?y. fib(7,y)"));
  auto a = derive(goal, kb, {});
  auto b = derive(goal, kb, {});
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(a.derivation, b.derivation);
  EXPECT_EQ(a.steps, b.steps);
}

}  // namespace
}  // namespace lpc
