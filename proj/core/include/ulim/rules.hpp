#pragma once

// Sequent calculus rules.
//
// Three calculi share one rule vocabulary:
//   g3   the cut-free calculus with unrestricted left implication (LImpG3)
//        and the context-absorbing modal rule (MSeq);
//   g4w  the terminating propositional calculus: implications are analyzed
//        by the shape of their antecedent (LpImp, LAndImp, LOrImp, LImpImp)
//        and weakening is explicit (Lw, Rw);
//   g4   g4w plus the modal rules M (no side context) and LMImp.
//
// A RuleApp records one backward application: the conclusion, the premises
// in display order, and which premises are contextual (carry the
// conclusion's succedent).  Non-contextual premises come first wherever a
// rule has both.  Construction asserts, for every rule of g4 and for the
// modal g3 rule, that each premise strictly precedes the conclusion in the
// multiset order, and, for all rules, that premises introduce no variables
// beyond those of the conclusion (per polarity).
//
// Enumeration order of backward_apps is deterministic: left rules per
// distinct antecedent formula in canonical order, then right rules, then
// (g4w, g4) Lw per distinct formula and Rw, then (g4) M and LMImp with the
// box ranging in the outer loop; for g3, MSeq replaces the weakening and g4
// modal blocks.  Duplicate (rule, premises) pairs are not emitted.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ulim/sequent.hpp"

namespace ulim {

enum class RuleId : std::uint8_t {
  Ax, LBot,
  LAnd, RAnd, LOr, ROr1, ROr2, RImp,
  LImpG3, MSeq,
  LpImp, LAndImp, LOrImp, LImpImp, Lw, Rw,
  M, LMImp,
};

std::string_view rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);

enum class CalculusId : std::uint8_t { G3, G4w, G4iM };

std::string_view calculus_name(CalculusId c);
std::optional<CalculusId> calculus_from_name(std::string_view name);  // g3, g4w, g4

struct RuleApp {
  RuleId rule;
  Sequent conclusion;
  std::vector<Sequent> premises;
  std::vector<std::uint8_t> contextual;  // parallel to premises
  Formula principal;

  RuleApp(RuleId rule, Sequent conclusion, std::vector<Sequent> premises,
          std::vector<std::uint8_t> contextual, Formula principal);
};

// Ax when the succedent is an atom occurring in the antecedent, else LBot
// when #f occurs in the antecedent.  Shared by all three calculi.
std::optional<RuleId> axiom_kind(const Sequent& s);

// All backward rule applications with the given sequent as conclusion.  The
// input is #t-normalized first; premises are normalized as a consequence.
std::vector<RuleApp> backward_apps(const Sequent& s, CalculusId c);

// Left rule applications used by the antecedent-quantifier construction:
// the g4w apps on the succedent-free sequent (sigma =>).
std::vector<RuleApp> backward_left_apps(const FormulaBag& sigma);

// Checks one forward instance: does `conclusion / premises` match some
// backward application of `rule` in calculus `c`?  Premise order is ignored.
bool valid_app(RuleId rule, const Sequent& conclusion,
               const std::vector<Sequent>& premises, CalculusId c);

}  // namespace ulim
