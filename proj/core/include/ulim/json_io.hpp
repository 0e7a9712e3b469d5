#pragma once

// Stable JSON forms for rule applications and derivations.  Formulas and
// sequents travel as their canonical text, so a document round-trips
// through the parser.  Schemas:
//
//   rule application   {"rule": name, "conclusion": text,
//                       "premises": [text...], "contextual": [bool...]}
//   derivation node    {"rule": name, "conclusion": text,
//                       "premises": [node...]}
//
// Emission is deterministic: identical inputs give identical bytes.

#include <string>

#include "ulim/prover.hpp"
#include "ulim/rules.hpp"

namespace ulim {

std::string rule_app_json(const RuleApp& app);
std::string derivation_json(const DerivationPtr& d);

// Parses a derivation node document; throws ParseError on malformed input
// (bad JSON, unknown rule names, unparsable sequents).
DerivationPtr derivation_from_json(const std::string& text);

}  // namespace ulim
