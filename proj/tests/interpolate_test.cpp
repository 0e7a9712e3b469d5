#include <doctest.h>

#include <string>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/interpolate.hpp"
#include "ulim/parse.hpp"
#include "ulim/prover.hpp"

using namespace ulim;

namespace {

Formula F(const char* s) { return parse_formula(s); }

FormulaBag bag(const char* csv) {
  return FormulaBag(parse_formula_list(csv));
}

bool proves(const Sequent& s) {
  ProofCache cache;
  return derivable(s, cache);
}

}  // namespace

TEST_CASE("interpolate: axiom part of the antecedent quantifier") {
  CHECK(exists_ax_part(bag("p, q, p -> q"), "p", Polarity::Pos).text() ==
        "q & (p -> q)");
  CHECK(exists_ax_part(bag("p"), "p", Polarity::Pos).text() == "#f -> #f");
  CHECK(exists_ax_part(bag("p"), "p", Polarity::Neg).text() == "p");
  CHECK(exists_ax_part(bag("q, q"), "p", Polarity::Pos).text() == "q & q");
  CHECK(exists_ax_part(FormulaBag(), "p", Polarity::Pos).text() == "#f -> #f");
}

TEST_CASE("interpolate: axiom part of the succedent quantifier") {
  ProofCache cache;
  // Derivable sequents yield verum in its normal form.
  CHECK(forall_ax_part(parse_sequent("p => p"), "p", Polarity::Pos, cache) ==
        Formula::top().normalized());
  CHECK(forall_ax_part(parse_sequent("=> q"), "p", Polarity::Pos, cache).text() ==
        "q");
  CHECK(forall_ax_part(parse_sequent("=> p"), "p", Polarity::Pos, cache) ==
        Formula::bot());
  CHECK(forall_ax_part(parse_sequent("q =>"), "p", Polarity::Pos, cache) ==
        Formula::bot());
  // The succedent is usable when only the other polarity of the atom occurs.
  CHECK(forall_ax_part(parse_sequent("=> p -> q"), "p", Polarity::Pos,
                       cache).text() == "p -> q");
}

TEST_CASE("interpolate: atomic implication family") {
  auto idx = atom_imp_index(bag("q, q -> r, p -> r, (p & q) -> r"), "p",
                            Polarity::Pos);
  REQUIRE(idx.size() == 1);
  CHECK(idx[0].first.text() == "q");
  CHECK(idx[0].second.text() == "r");

  // Negatively, the atom itself is admissible as an antecedent.
  idx = atom_imp_index(bag("q -> r, p -> r"), "p", Polarity::Neg);
  REQUIRE(idx.size() == 2);
  CHECK(idx[0].first.text() == "p");
  CHECK(idx[1].first.text() == "q");

  CHECK(atom_imp_index(bag("q, r"), "p", Polarity::Pos).empty());
}

TEST_CASE("interpolate: modal triple family") {
  ProofCache cache;
  CHECK(modal_triple_index(bag("[]p, []q -> r"), cache).empty());

  auto t = modal_triple_index(bag("[]p, []p -> r"), cache);
  REQUIRE(t.size() == 1);
  CHECK(t[0][0].text() == "p");
  CHECK(t[0][1].text() == "p");
  CHECK(t[0][2].text() == "r");

  t = modal_triple_index(bag("[](p & q), []p -> r"), cache);
  REQUIRE(t.size() == 1);
  CHECK(t[0][0].text() == "p & q");

  // One triple per derivable (box, implication) pair, box in the outer loop.
  t = modal_triple_index(bag("[]p, []p -> r, []p -> s"), cache);
  REQUIRE(t.size() == 2);
  CHECK(t[0][2].text() == "r");
  CHECK(t[1][2].text() == "s");
}

TEST_CASE("interpolate: antecedent quantifier on pinned bags") {
  InterpCache cache;
  // The positive occurrence is eliminable outright.
  CHECK(simplify(exists_q(bag("p"), "p", Polarity::Pos, cache)) ==
        Formula::top());
  // A bag not mentioning the atom survives untouched up to equivalence.
  Formula raw = exists_q(bag("q"), "p", Polarity::Pos, cache);
  CHECK(raw.text() == "((#f -> #f) -> #f -> #f) & q");
  CHECK(simplify(raw).text() == "q");
  // An atomic implication transfers its conclusion.
  Formula imp = exists_q(bag("p, p -> q"), "p", Polarity::Pos, cache);
  CHECK(proves(Sequent(FormulaBag::of({imp}), F("q"))));
  CHECK(imp.polarity_free("p", Polarity::Pos));
}

TEST_CASE("interpolate: succedent quantifier on pinned sequents") {
  InterpCache cache;
  CHECK(simplify(forall_q(parse_sequent("=> p"), "p", Polarity::Pos, cache)) ==
        Formula::bot());
  CHECK(simplify(forall_q(parse_sequent("=> []q"), "p", Polarity::Pos,
                          cache)).text() == "[] q");
  // Condition (3) instances: the interpolant discharges its sequent.
  for (const char* s : {"=> p", "=> p | q", "q => p & q", "[]q => []p"}) {
    Sequent seq = parse_sequent(s);
    Formula theta = forall_q(seq, "p", Polarity::Pos, cache);
    CAPTURE(s);
    CHECK(proves(Sequent(seq.ante.plus(theta), seq.succ)));
    CHECK(theta.polarity_free("p", Polarity::Pos));
  }
}

TEST_CASE("interpolate: two-sided quantifiers on pinned formulas") {
  InterpCache cache;
  CHECK(simplify(uip_exists(F("q"), "p", cache)).text() == "q");
  CHECK(simplify(uip_exists(F("p | q"), "p", cache)) == Formula::top());
  CHECK(simplify(uip_forall(F("p"), "p", cache)) == Formula::bot());
  CHECK(simplify(uip_forall(F("q"), "p", cache)).text() == "q");

  // Both polarities of the atom are gone, and the defining implications hold.
  for (const char* s : {"p -> q", "q -> p", "p & q", "[](p -> q)", "p | ~p"}) {
    Formula f = F(s);
    Formula ex = uip_exists(f, "p", cache);
    Formula fa = uip_forall(f, "p", cache);
    CAPTURE(s);
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      CHECK(ex.polarity_free("p", pol));
      CHECK(fa.polarity_free("p", pol));
    }
    CHECK(proves(Sequent(FormulaBag::of({f}), ex)));
    CHECK(proves(Sequent(FormulaBag::of({fa}), f)));
  }
}

TEST_CASE("interpolate: interpolants from derivable implications") {
  InterpCache cache;
  CHECK(simplify(lyndon_interpolant(F("p & q"), F("q | r"), cache)).text() ==
        "q");
  CHECK(simplify(lyndon_interpolant(F("p"), F("p"), cache)).text() == "p");

  struct Pair {
    const char* phi;
    const char* psi;
  };
  const Pair pairs[] = {
      {"p & q", "q | r"},
      {"p & (p -> q)", "q"},
      {"[](p & q)", "[]p | r"},
      {"p & #f", "r"},
      {"q", "p -> q"},
  };
  for (const Pair& pr : pairs) {
    Formula phi = F(pr.phi), psi = F(pr.psi);
    Formula theta = lyndon_interpolant(phi, psi, cache);
    CAPTURE(pr.phi);
    CAPTURE(pr.psi);
    CHECK(proves(Sequent(FormulaBag::of({phi}), theta)));
    CHECK(proves(Sequent(FormulaBag::of({theta}), psi)));
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      for (const std::string& v : theta.vars(pol)) {
        CAPTURE(v);
        CHECK_FALSE(phi.polarity_free(v, pol));
        CHECK_FALSE(psi.polarity_free(v, pol));
      }
    }
  }

  CHECK_THROWS_AS(lyndon_interpolant(F("p"), F("q"), cache), NotATheoremError);
  CHECK_THROWS_AS(lyndon_interpolant(F("p | q"), F("p & q"), cache),
                  NotATheoremError);
}

TEST_CASE("interpolate: cleanup rewrites") {
  CHECK(simplify(F("#t & (q -> #t)")) == Formula::top());
  CHECK(simplify(F("(q & q) | #f")).text() == "q");
  CHECK(simplify(F("[]q & #t")).text() == "[] q");
  CHECK(simplify(F("#f -> q")) == Formula::top());
  CHECK(simplify(F("p -> #t")) == Formula::top());
  CHECK(simplify(F("p | p | p")).text() == "p");
  CHECK(simplify(F("p & q")).text() == "p & q");  // nothing to do

  // Idempotent, and Verified mode agrees with Fast.
  ProofCache cache;
  FormulaSampler sampler({"p", "q"}, 0x51a9);
  for (int i = 0; i < 150; ++i) {
    Formula f = sampler.sample_surface(6);
    Formula fast = simplify(f);
    CAPTURE(f.text());
    CHECK(simplify(fast) == fast);
    CHECK(simplify(f, SimplifyMode::Verified, &cache) == fast);
    // Equivalence also holds through the independent oracle.
    Formula norm = f.normalized();
    CHECK(prove_g3(Sequent(FormulaBag::of({norm}), fast)));
    CHECK(prove_g3(Sequent(FormulaBag::of({fast}), norm)));
  }
}

TEST_CASE("interpolate: bounded verification of the antecedent quantifier") {
  InterpCache cache;
  QuantifierReport r = verify_exists(bag("q -> p"), "p", Polarity::Pos, 3,
                                     {"p", "q"}, cache);
  CHECK(r.ok());
  REQUIRE(r.conditions.size() == 3);
  CHECK(r.conditions[0].name == "var");
  CHECK(r.conditions[1].name == "c1");
  CHECK(r.conditions[2].name == "c2");
  CHECK(r.conditions[2].contexts > 0);
  CHECK(r.conditions[2].premises <= r.conditions[2].contexts);
  for (const ConditionReport& c : r.conditions)
    CHECK(c.counterexamples.empty());

  CHECK(verify_exists(bag("p"), "p", Polarity::Neg, 3, {"p", "q"}, cache).ok());
  CHECK(verify_exists(bag("p & q, p -> q"), "p", Polarity::Pos, 3, {"p", "q"},
                      cache).ok());
}

TEST_CASE("interpolate: bounded verification of the succedent quantifier") {
  InterpCache cache;
  QuantifierReport r = verify_forall(parse_sequent("[]q => []p"), "p",
                                     Polarity::Neg, 3, {"p", "q"}, cache);
  CHECK(r.ok());
  REQUIRE(r.conditions.size() == 3);
  CHECK(r.conditions[0].name == "var");
  CHECK(r.conditions[1].name == "c3");
  CHECK(r.conditions[2].name == "c4");
  CHECK(r.conditions[2].contexts > 0);

  CHECK(verify_forall(parse_sequent("=> p | q"), "p", Polarity::Pos, 3,
                      {"p", "q"}, cache).ok());
  CHECK(verify_forall(parse_sequent("q, q -> p => p & q"), "p", Polarity::Pos,
                      3, {"p", "q"}, cache).ok());
}

TEST_CASE("interpolate: budget and memo controls") {
  InterpCache cache;
  InterpOptions tiny;
  tiny.budget = 1;
  CHECK_THROWS_AS(
      exists_q(bag("(p -> q) -> q, p | q"), "p", Polarity::Pos, cache, tiny),
      BudgetError);

  InterpOptions no_memo;
  no_memo.memoize = false;
  InterpCache scratch;
  Formula with = uip_exists(F("(p -> q) & (q -> p)"), "p", cache);
  Formula without = uip_exists(F("(p -> q) & (q -> p)"), "p", scratch, no_memo);
  CHECK(with == without);
  CHECK(cache.size() > 0);
  CHECK(scratch.size() == 0);
  cache.clear();
  CHECK(cache.size() == 0);
}
