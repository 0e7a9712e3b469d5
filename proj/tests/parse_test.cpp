#include <doctest.h>

#include <string>

#include "ulim/enumerate.hpp"
#include "ulim/formula.hpp"
#include "ulim/parse.hpp"
#include "ulim/sequent.hpp"

using namespace ulim;

namespace {
Formula F(const char* s) { return parse_formula(s); }

std::size_t error_position(const char* text) {
  try {
    (void)parse_formula(text);
  } catch (const ParseError& e) {
    return e.position;
  }
  const std::string msg = std::string("no parse error for: ") + text;
  FAIL(msg);
  return std::size_t(-1);
}
}  // namespace

TEST_CASE("parse: precedence") {
  // & over | over ->, all right associative.
  CHECK(F("p & q | r -> s") ==
        Formula::imp(Formula::disj(F("p & q"), F("r")), F("s")));
  CHECK(F("p -> q -> r") == Formula::imp(F("p"), F("q -> r")));
  CHECK(F("a & b & c") == Formula::conj(F("a"), F("b & c")));
  CHECK(F("a | b | c") == Formula::disj(F("a"), F("b | c")));
  CHECK(F("(p -> q) -> r") != F("p -> q -> r"));
}

TEST_CASE("parse: box binds tightest and needs no space") {
  CHECK(F("[](p&q)") == Formula::box(F("p & q")));
  CHECK(F("[]p & q") == Formula::conj(F("[]p"), F("q")));
  CHECK(F("[]p -> []q") == Formula::imp(F("[]p"), F("[]q")));
  CHECK(F("[][]p") == Formula::box(Formula::box(F("p"))));
  CHECK(F("[] [] p") == F("[][]p"));
}

TEST_CASE("parse: negation sugar expands at the parser") {
  CHECK(F("~p") == F("p -> #f"));
  CHECK(F("~~p") == F("(p -> #f) -> #f"));
  CHECK(F("~p & q") == F("(p -> #f) & q"));
  CHECK(F("~[]p") == F("[]p -> #f"));
}

TEST_CASE("parse: constants and atom names") {
  CHECK(F("#f").kind() == Kind::Bot);
  CHECK(F("#t").kind() == Kind::Top);
  CHECK(F("pQ_7").name() == "pQ_7");
  CHECK(F("ab1").kind() == Kind::Atom);
}

TEST_CASE("parse: formula lists") {
  CHECK(parse_formula_list("").empty());
  CHECK(parse_formula_list("  ").empty());
  CHECK(parse_formula_list("p, q & r").size() == 2);
  CHECK(parse_formula_list("p")[0] == F("p"));
}

TEST_CASE("parse: sequents") {
  Sequent s = parse_sequent("p, q => r");
  CHECK(s.ante.total() == 2);
  CHECK(s.succ == F("r"));

  Sequent empty = parse_sequent("=>");
  CHECK(empty.ante.empty());
  CHECK_FALSE(empty.succ.has_value());

  CHECK(parse_sequent("p, p =>").ante.count(F("p")) == 2);
  CHECK_FALSE(parse_sequent("p =>").succ.has_value());
  CHECK(parse_sequent("  => q").succ == F("q"));
  CHECK(parse_sequent("p,q=>r") == parse_sequent("q , p => r"));
}

TEST_CASE("parse: error positions are exact") {
  CHECK(error_position("") == 0);
  CHECK(error_position("p &") == 3);
  CHECK(error_position("p & & q") == 4);
  CHECK(error_position("(p") == 2);
  CHECK(error_position("p)") == 1);
  CHECK(error_position("p | | q") == 4);
  CHECK(error_position("P") == 0);
  CHECK(error_position("#x") == 0);

  try {
    (void)parse_sequent("p => q => r");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
    CHECK(std::string(e.what()).find("(at offset 7)") != std::string::npos);
  }
  try {
    (void)parse_sequent("p q => r");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("parse: renders round trip") {
  const char* samples[] = {
      "p",       "#f",          "#t",          "[]p",
      "p & q",   "p | q -> r",  "[](p & q)",   "((p -> q) -> p) -> p",
      "~p & ~q", "[][](p | #t)", "p -> q -> r", "(p | q) & (q | r)",
  };
  for (const char* s : samples) {
    Formula f = F(s);
    CHECK(parse_formula(f.text()) == f);
  }
}

TEST_CASE("parse: round trip over sampled surface formulas") {
  FormulaSampler sampler({"p", "q", "r"}, 20260823);
  for (int i = 0; i < 10000; ++i) {
    Formula f = sampler.sample_surface(7);
    CAPTURE(f.text());
    CHECK(parse_formula(f.text()) == f);
  }
}

TEST_CASE("parse: sequent text round trips") {
  FormulaSampler sampler({"p", "q"}, 7);
  for (int i = 0; i < 2000; ++i) {
    Sequent s(sampler.sample_bag(3, 5),
              i % 2 ? std::optional<Formula>(sampler.sample(5)) : std::nullopt);
    CHECK(parse_sequent(s.text()) == s);
  }
}
