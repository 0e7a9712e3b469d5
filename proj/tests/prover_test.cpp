#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/json_io.hpp"
#include "ulim/parse.hpp"
#include "ulim/prover.hpp"

using namespace ulim;

namespace {

Sequent S(const char* s) { return parse_sequent(s); }

bool g4(const char* s) {
  ProofCache cache;
  return derivable(S(s), cache);
}

struct Verdict {
  const char* seq;
  bool provable;
};

// Hand-checked decisions.  The propositional half separates intuitionistic
// from classical validity; the modal half pins down that box is monotone
// and nothing more: no K, no T, no 4, no necessitation.
const Verdict kVerdicts[] = {
    {"=> p -> p", true},
    {"=> #f -> p", true},
    {"=> #t", true},
    {"#t => p", false},
    {"p & q => q & p", true},
    {"p -> q, q -> r => p -> r", true},
    {"~p | q => p -> q", true},
    {"p -> q => ~p | q", false},
    {"=> ~(p & ~p)", true},
    {"=> p | ~p", false},
    {"=> ~~p -> p", false},
    {"=> p -> ~~p", true},
    {"=> ((p -> q) -> p) -> p", false},
    {"=> (p -> q) | (q -> p)", false},
    {"=> [](p & q) -> []p & []q", true},
    {"=> []p & []q -> [](p & q)", false},
    {"[](p & q) => [](q & p)", true},
    {"=> []p -> p", false},
    {"=> []p -> [][]p", false},
    {"=> [](#f -> #f)", false},
    {"[]p => []p", true},
    {"[]p, []p -> q => q", true},
    {"[]p, [](p -> q) => []q", false},
    {"[]p, []q -> r => r | s", false},
    {"[]p, []p -> r => r | s", true},
};

}  // namespace

TEST_CASE("prover: decisions on pinned sequents") {
  for (const Verdict& v : kVerdicts) {
    CAPTURE(v.seq);
    CHECK(g4(v.seq) == v.provable);
  }
}

TEST_CASE("prover: the oracle agrees on pinned sequents") {
  for (const Verdict& v : kVerdicts) {
    CAPTURE(v.seq);
    CHECK(prove_g3(S(v.seq)) == v.provable);
  }
}

TEST_CASE("prover: the oracle caches soundly") {
  G3Cache cache;
  for (const Verdict& v : kVerdicts) {
    CAPTURE(v.seq);
    CHECK(prove_g3(S(v.seq), cache) == v.provable);
    CHECK(prove_g3(S(v.seq), cache) == v.provable);  // cached path
  }
}

TEST_CASE("prover: derivations exist exactly for provable sequents") {
  ProofCache cache;
  for (const Verdict& v : kVerdicts) {
    auto d = prove_g4(S(v.seq), cache);
    CAPTURE(v.seq);
    CHECK(d.has_value() == v.provable);
    if (d) {
      CHECK((*d)->seq == S(v.seq).normalized());
      CHECK(check_derivation(*d, CalculusId::G4iM));
    }
  }
}

TEST_CASE("prover: derivations use the committed calculus") {
  ProofCache cache;
  auto d = prove_g4(S("p, p -> q => q"), cache);
  REQUIRE(d);
  CHECK(check_derivation(*d, CalculusId::G4iM));
  // The tree analyzes the implication by its antecedent shape, which the
  // oracle calculus does not recognize.
  CHECK_FALSE(check_derivation(*d, CalculusId::G3));

  auto ax = prove_g4(S("p => p"), cache);
  REQUIRE(ax);
  CHECK(check_derivation(*ax, CalculusId::G3));  // axioms are shared
}

TEST_CASE("prover: derivation checking rejects invalid trees") {
  auto leaf = [](const char* s, RuleId r) {
    return std::make_shared<const Derivation>(
        Derivation{parse_sequent(s), r, {}});
  };
  // Axiom on a compound succedent.
  CHECK_FALSE(check_derivation(leaf("p & q => p & q", RuleId::Ax),
                               CalculusId::G4iM));
  CHECK(check_derivation(leaf("p => p", RuleId::Ax), CalculusId::G4iM));
  // Modal step with a side formula.
  auto bad_m = std::make_shared<const Derivation>(Derivation{
      parse_sequent("r, []p => []p"), RuleId::M, {leaf("p => p", RuleId::Ax)}});
  CHECK_FALSE(check_derivation(bad_m, CalculusId::G4iM));
  // Right implication with the premise backwards.
  auto bad_ri = std::make_shared<const Derivation>(
      Derivation{parse_sequent("=> p -> q"),
                 RuleId::RImp,
                 {leaf("q => p", RuleId::Ax)}});
  CHECK_FALSE(check_derivation(bad_ri, CalculusId::G4iM));
  // A bad node deep in an otherwise fine tree is still caught.
  auto wrapped = std::make_shared<const Derivation>(
      Derivation{parse_sequent("r => p -> q"), RuleId::RImp, {bad_ri}});
  CHECK_FALSE(check_derivation(wrapped, CalculusId::G4iM));
  CHECK_FALSE(check_derivation(nullptr, CalculusId::G4iM));
}

TEST_CASE("prover: search is deterministic and memo independent") {
  const char* samples[] = {
      "p & q => q & p",
      "=> [](p & q) -> []p & []q",
      "[]p, []p -> q => q | r",
      "p | q, p -> r, q -> r => r",
  };
  // First pass: fresh cache per query.
  std::vector<std::string> fresh;
  for (const char* s : samples) {
    ProofCache cache;
    auto d = prove_g4(S(s), cache);
    REQUIRE(d);
    fresh.push_back(derivation_json(*d));
  }
  // Second pass: one shared, warmed cache.
  ProofCache shared;
  for (const char* s : samples) derivable(S(s), shared);
  for (std::size_t i = 0; i < std::size(samples); ++i) {
    auto d = prove_g4(S(samples[i]), shared);
    REQUIRE(d);
    CHECK(derivation_json(*d) == fresh[i]);
  }
  // Third pass: repetition is stable.
  for (std::size_t i = 0; i < std::size(samples); ++i) {
    auto d = prove_g4(S(samples[i]), shared);
    REQUIRE(d);
    CHECK(derivation_json(*d) == fresh[i]);
  }
}

TEST_CASE("prover: cache bookkeeping") {
  ProofCache cache;
  CHECK(cache.max_entries() == ProofCache::kDefaultMaxEntries);
  CHECK(ProofCache(0).max_entries() == 1);

  derivable(S("p & q => q & p"), cache);
  CHECK(cache.size() > 0);
  CHECK(cache.lookups() > 0);
  const auto lookups = cache.lookups();
  derivable(S("p & q => q & p"), cache);
  CHECK(cache.hits() >= 1);
  CHECK(cache.lookups() > lookups);

  cache.clear();
  CHECK(cache.size() == 0);

  // A tiny cache stays correct, it just forgets.
  ProofCache tiny(2);
  for (const Verdict& v : kVerdicts) {
    CAPTURE(v.seq);
    CHECK(derivable(S(v.seq), tiny) == v.provable);
  }
  CHECK(tiny.size() <= 2);
}

TEST_CASE("prover: descent instrumentation counts checks") {
  const auto checks = diag::descent_checks();
  const auto violations = diag::descent_violations();
  ProofCache cache;
  CHECK(derivable(S("p | q, p -> r, q -> r => r"), cache));
  CHECK(diag::descent_checks() > checks);
  CHECK(diag::descent_violations() == violations);
}

TEST_CASE("prover: agreement with the oracle on sampled sequents") {
  FormulaSampler sampler({"p", "q"}, 0xf00d);
  ProofCache cache;
  G3Cache g3cache;
  for (int i = 0; i < 200; ++i) {
    Sequent s(sampler.sample_bag(2, 4),
              i % 5 ? std::optional<Formula>(sampler.sample(4)) : std::nullopt);
    CAPTURE(s.text());
    CHECK(derivable(s, cache) == prove_g3(s, g3cache));
  }
}

namespace {

Sequent contracted(const Sequent& s) {
  return Sequent(s.ante.contracted(), s.succ);
}

// A comparable fingerprint of one application's premise list.
std::multiset<std::string> premise_key(const std::vector<Sequent>& premises) {
  std::multiset<std::string> key;
  for (const Sequent& p : premises) key.insert(contracted(p).text());
  return key;
}

}  // namespace

TEST_CASE("prover: the oracle's move generator matches the rule table") {
  // g3_search_apps drives the oracle's backward search; it must offer
  // exactly the applications the declarative enumeration produces, up to
  // antecedent contraction.
  FormulaSampler sampler({"p", "q"}, 0xabcde);
  for (int i = 0; i < 250; ++i) {
    Sequent s = contracted(
        Sequent(sampler.sample_bag(3, 5),
                i % 4 ? std::optional<Formula>(sampler.sample(5)) : std::nullopt));
    std::set<std::multiset<std::string>> from_search;
    for (const auto& premises : detail::g3_search_apps(s))
      from_search.insert(premise_key(premises));
    std::set<std::multiset<std::string>> from_rules;
    for (const RuleApp& a : backward_apps(s, CalculusId::G3))
      from_rules.insert(premise_key(a.premises));
    CAPTURE(s.text());
    CHECK(from_search == from_rules);
  }
}
