#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/parse.hpp"
#include "ulim/sequent.hpp"

using namespace ulim;

namespace {

Formula F(const char* s) { return parse_formula(s); }

FormulaBag bag(const char* csv) { return FormulaBag(parse_formula_list(csv)); }

// Independent restatement of the order: multiset-subtract the common part
// with a counting map, then require a nonempty d remainder whose maximal
// weight tops every g remainder weight.
bool oracle_precedes(const FormulaBag& g, const FormulaBag& d) {
  std::map<FormulaId, long> diff;
  for (Formula f : g.expanded()) ++diff[f.id()];
  for (Formula f : d.expanded()) --diff[f.id()];
  std::uint64_t gmax = 0, dmax = 0;
  bool drem = false;
  for (auto [id, n] : diff) {
    std::uint64_t w = Formula::from_id(id).weight();
    if (n > 0) gmax = std::max(gmax, w);
    if (n < 0) {
      drem = true;
      dmax = std::max(dmax, w);
    }
  }
  return drem && gmax < dmax;
}

}  // namespace

TEST_CASE("sequent: bag membership and counts") {
  FormulaBag b = bag("q, p, p");
  CHECK(b.total() == 3);
  CHECK(b.distinct() == 2);
  CHECK(b.count(F("p")) == 2);
  CHECK(b.count(F("q")) == 1);
  CHECK(b.count(F("r")) == 0);
  CHECK(b.contains(F("p")));
  CHECK_FALSE(b.contains(F("p & q")));
  CHECK(b.text() == "p, p, q");  // canonical member order
  CHECK(b.total_weight() == 3);
  CHECK(bag("p, p & q").total_weight() == 5);
  CHECK(FormulaBag{}.empty());
}

TEST_CASE("sequent: bag editing") {
  FormulaBag b = bag("p, q");
  CHECK(b.plus(F("p")).count(F("p")) == 2);
  CHECK(b.plus(F("r"), 3).total() == 5);
  CHECK(b.minus_one(F("q")) == bag("p"));
  CHECK_THROWS_AS((void)b.minus_one(F("r")), std::invalid_argument);
  CHECK(b.replaced_one(F("p"), {F("a"), F("b")}) == bag("a, b, q"));
  CHECK(b.replaced_one(F("q"), {}) == bag("p"));
  CHECK(b.united(bag("p, r")) == bag("p, p, q, r"));
  CHECK(bag("p, p, q").contracted() == bag("p, q"));
  CHECK(bag("p, #t, #t").normalized() == bag("p, #f -> #f, #f -> #f"));

  CHECK(bag("p, q").includes(bag("p")));
  CHECK(bag("p, p").includes(bag("p, p")));
  CHECK_FALSE(bag("p").includes(bag("p, p")));
  CHECK_FALSE(bag("p, q").includes(bag("r")));
}

TEST_CASE("sequent: bag variables are the plain union") {
  FormulaBag b = bag("p -> q, r");
  CHECK(b.vars(Polarity::Pos) == std::vector<std::string>{"q", "r"});
  CHECK(b.vars(Polarity::Neg) == std::vector<std::string>{"p"});
}

TEST_CASE("sequent: sequent variables swap over the antecedent") {
  Sequent s = parse_sequent("p -> q, r => s -> t");
  CHECK(s.vars(Polarity::Pos) == std::vector<std::string>{"p", "t"});
  CHECK(s.vars(Polarity::Neg) == std::vector<std::string>{"q", "r", "s"});

  Sequent noante = parse_sequent("=> p");
  CHECK(noante.vars(Polarity::Pos) == std::vector<std::string>{"p"});
  CHECK(noante.vars(Polarity::Neg).empty());
}

TEST_CASE("sequent: measure joins both sides") {
  Sequent s = parse_sequent("p, q => r");
  CHECK(s.measure() == bag("p, q, r"));
  CHECK(parse_sequent("p =>").measure() == bag("p"));
}

TEST_CASE("sequent: multiply merges with at most one succedent") {
  Sequent a = parse_sequent("p =>");
  Sequent b = parse_sequent("q => r");
  CHECK(multiply(a, b) == parse_sequent("p, q => r"));
  CHECK(multiply(b, a) == parse_sequent("p, q => r"));
  CHECK_THROWS_AS((void)multiply(b, b), std::invalid_argument);
}

TEST_CASE("sequent: order on hand-picked bags") {
  CHECK(bag_precedes(bag("p, q"), bag("p & q")));  // two atoms below one &
  CHECK(bag_precedes(FormulaBag{}, bag("p")));     // drop to nothing
  CHECK_FALSE(bag_precedes(bag("p & q"), bag("p & q")));  // irreflexive
  CHECK(bag_precedes(bag("p"), bag("p, p")));
  CHECK_FALSE(bag_precedes(bag("p, p"), bag("p")));
  // Weight ties never dominate: all three remainder formulas weigh one.
  CHECK_FALSE(bag_precedes(bag("p"), bag("q, r")));
  CHECK_FALSE(bag_precedes(bag("p"), bag("q")));
  // A long light remainder sits below one heavy formula.
  CHECK(bag_precedes(bag("p, q, r, s, t"), bag("p & q")));
  CHECK(bag_precedes(bag("p -> q"), bag("p & q")));
}

TEST_CASE("sequent: order on hand-picked sequents") {
  CHECK(seq_precedes(parse_sequent("p => q"), parse_sequent("p => p -> q")));
  CHECK_FALSE(seq_precedes(parse_sequent("=> p"), parse_sequent("=> p")));
  // Each premise instance of the modal rule must be lower.
  FormulaSampler sampler({"p", "q"}, 99);
  for (int i = 0; i < 200; ++i) {
    Formula phi = sampler.sample(6), psi = sampler.sample(6);
    Sequent prem(FormulaBag::of({phi}), psi);
    Sequent conc(FormulaBag::of({Formula::box(phi)}), Formula::box(psi));
    CHECK(seq_precedes(prem, conc));
    CHECK_FALSE(seq_precedes(conc, prem));
  }
}

TEST_CASE("sequent: order agrees with an independent restatement") {
  FormulaSampler sampler({"p", "q"}, 0xbeef);
  std::vector<FormulaBag> bags;
  for (int i = 0; i < 60; ++i) bags.push_back(sampler.sample_bag(3, 4));
  for (const FormulaBag& g : bags)
    for (const FormulaBag& d : bags) {
      CAPTURE(g.text());
      CAPTURE(d.text());
      CHECK(bag_precedes(g, d) == oracle_precedes(g, d));
    }
}

TEST_CASE("sequent: order is transitive and asymmetric on samples") {
  FormulaSampler sampler({"p", "q"}, 0xcafe);
  std::vector<FormulaBag> bags;
  for (int i = 0; i < 25; ++i) bags.push_back(sampler.sample_bag(3, 4));
  for (const FormulaBag& a : bags)
    for (const FormulaBag& b : bags) {
      if (bag_precedes(a, b)) CHECK_FALSE(bag_precedes(b, a));
      for (const FormulaBag& c : bags)
        if (bag_precedes(a, b) && bag_precedes(b, c))
          CHECK(bag_precedes(a, c));
    }
}

TEST_CASE("sequent: canonical keys identify sequents") {
  CHECK(canonical_key(parse_sequent("p, q => r")) ==
        canonical_key(parse_sequent("q, p => r")));
  CHECK(canonical_key(parse_sequent("p => q")) !=
        canonical_key(parse_sequent("p, p => q")));
  CHECK(canonical_key(parse_sequent("p =>")) !=
        canonical_key(parse_sequent("=> p")));
  CHECK(canonical_key(parse_sequent("=>")) !=
        canonical_key(parse_sequent("p =>")));
}

TEST_CASE("sequent: normalization reaches both sides") {
  Sequent s = parse_sequent("p & #t => #t");
  Sequent n = s.normalized();
  CHECK(n == parse_sequent("p & (#f -> #f) => #f -> #f"));
  CHECK(n.normalized() == n);
}
