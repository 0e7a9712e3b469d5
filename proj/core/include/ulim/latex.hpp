#pragma once

// LaTeX output: formulas and sequents as math, derivations as bussproofs
// trees with rule labels on the right.

#include <string>

#include "ulim/prover.hpp"
#include "ulim/rules.hpp"

namespace ulim {

std::string latex_formula(Formula f);
std::string latex_sequent(const Sequent& s);
std::string latex_rule_label(RuleId r);

// A complete prooftree environment; throws InternalError on a null tree.
std::string latex_derivation(const DerivationPtr& d);

}  // namespace ulim
