#include <doctest.h>

#include <json.hpp>
#include <string>

#include "ulim/json_io.hpp"
#include "ulim/latex.hpp"
#include "ulim/parse.hpp"
#include "ulim/prover.hpp"

using namespace ulim;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Sequent S(const char* s) { return parse_sequent(s); }

DerivationPtr prove(const char* s) {
  ProofCache cache;
  auto d = prove_g4(S(s), cache);
  REQUIRE(d);
  return *d;
}

}  // namespace

TEST_CASE("io: rule application JSON") {
  auto apps = backward_apps(S("p, p -> q => r"), CalculusId::G4iM);
  const RuleApp* lp = nullptr;
  for (const RuleApp& a : apps)
    if (a.rule == RuleId::LpImp) lp = &a;
  REQUIRE(lp);
  CHECK(rule_app_json(*lp) ==
        R"({"rule":"LpImp","conclusion":"p, p -> q => r",)"
        R"("premises":["p, q => r"],"contextual":[true]})");
  CHECK(rule_app_json(*lp) == rule_app_json(*lp));  // byte stable
  CHECK_FALSE(nlohmann::json::parse(rule_app_json(*lp), nullptr,
                                    false).is_discarded());
}

TEST_CASE("io: derivation JSON round trips") {
  CHECK(derivation_json(prove("p => p")) ==
        R"({"rule":"Ax","conclusion":"p => p","premises":[]})");

  for (const char* s : {"p & q => q & p", "=> [](p & q) -> []p & []q",
                        "[]p, []p -> q => q | r"}) {
    std::string doc = derivation_json(prove(s));
    DerivationPtr back = derivation_from_json(doc);
    CAPTURE(s);
    CHECK(derivation_json(back) == doc);
    CHECK(check_derivation(back, CalculusId::G4iM));
  }
}

TEST_CASE("io: derivation JSON is parsed, not trusted") {
  // A well-formed document with an unsound step still loads; validation is
  // check_derivation's job.
  DerivationPtr bogus = derivation_from_json(
      R"({"rule":"Ax","conclusion":"p => q","premises":[]})");
  REQUIRE(bogus);
  CHECK(bogus->rule == RuleId::Ax);
  CHECK(bogus->seq == S("p => q"));
  CHECK_FALSE(check_derivation(bogus, CalculusId::G4iM));
}

TEST_CASE("io: malformed derivation documents throw") {
  CHECK_THROWS_AS(derivation_from_json("{"), ParseError);
  CHECK_THROWS_AS(derivation_from_json("[1, 2]"), ParseError);
  CHECK_THROWS_AS(derivation_from_json(R"({"rule":"Ax"})"), ParseError);
  CHECK_THROWS_AS(derivation_from_json(
                      R"({"rule":"Nope","conclusion":"p => p","premises":[]})"),
                  ParseError);
  CHECK_THROWS_AS(derivation_from_json(
                      R"({"rule":"Ax","conclusion":"p => => q","premises":[]})"),
                  ParseError);
  CHECK_THROWS_AS(derivation_from_json(
                      R"({"rule":"Ax","conclusion":42,"premises":[]})"),
                  ParseError);
  CHECK_THROWS_AS(derivation_json(nullptr), InternalError);
}

TEST_CASE("io: LaTeX formulas") {
  CHECK(latex_formula(F("p -> q & ~r")) == "p \\to q \\wedge (r \\to \\bot)");
  CHECK(latex_formula(F("[](p | q)")) == "\\Box (p \\vee q)");
  CHECK(latex_formula(F("[][]p")) == "\\Box \\Box p");
  CHECK(latex_formula(F("(p & q) & r")) == "p \\wedge q \\wedge r");
  CHECK(latex_formula(F("p & (q & r)")) == "p \\wedge (q \\wedge r)");
  CHECK(latex_formula(F("(p -> q) -> r")) == "(p \\to q) \\to r");
  CHECK(latex_formula(F("p -> q -> r")) == "p \\to q \\to r");
  CHECK(latex_formula(F("#t")) == "\\top");
  CHECK(latex_formula(F("#f")) == "\\bot");
  CHECK(latex_formula(F("p_1")) == "p\\_1");
}

TEST_CASE("io: LaTeX sequents") {
  CHECK(latex_sequent(S("p, q => r")) == "p, q \\Rightarrow r");
  CHECK(latex_sequent(S("=> p")) == "\\Rightarrow p");
  CHECK(latex_sequent(S("p =>")) == "p \\Rightarrow");
  CHECK(latex_sequent(S("=>")) == "\\Rightarrow");
}

TEST_CASE("io: LaTeX rule labels are distinct where rules differ") {
  CHECK(latex_rule_label(RuleId::LImpImp) == "L\\to\\to");
  CHECK(latex_rule_label(RuleId::LMImp) == "L\\Box\\to");
  // The two modal rules carry the same display name by design.
  CHECK(latex_rule_label(RuleId::M) == latex_rule_label(RuleId::MSeq));
}

TEST_CASE("io: LaTeX derivations") {
  CHECK(latex_derivation(prove("p => p")) ==
        "\\begin{prooftree}\n"
        "  \\AxiomC{}\n"
        "  \\RightLabel{\\scriptsize$Ax$}\n"
        "  \\UnaryInfC{$p \\Rightarrow p$}\n"
        "\\end{prooftree}\n");

  std::string two = latex_derivation(prove("=> p -> p & p"));
  CHECK(two.find("\\BinaryInfC{$p \\Rightarrow p \\wedge p$}") !=
        std::string::npos);
  CHECK(two.find("\\RightLabel{\\scriptsize$R\\to$}") != std::string::npos);
  CHECK_THROWS_AS(latex_derivation(nullptr), InternalError);
}
