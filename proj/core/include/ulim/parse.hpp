#pragma once

// Text syntax for formulas and sequents.
//
//   formula  :=  imp
//   imp      :=  or  [ '->' imp ]            right associative
//   or       :=  and [ '|' or ]
//   and      :=  unary [ '&' and ]
//   unary    :=  '[]' unary | '~' unary | primary
//   primary  :=  atom | '#f' | '#t' | '(' formula ')'
//   atom     :=  [a-z][A-Za-z0-9_]*
//
// '~ x' is sugar for 'x -> #f' and is expanded while parsing.  A sequent is
// written 'a, b => c'; both sides may be empty.  Errors carry the byte
// offset of the offending token.

#include <optional>
#include <string_view>
#include <vector>

#include "ulim/formula.hpp"

namespace ulim {

Formula parse_formula(std::string_view text);

// Comma separated formulas; all-whitespace input yields the empty list.
std::vector<Formula> parse_formula_list(std::string_view text);

struct SequentParts {
  std::vector<Formula> ante;
  std::optional<Formula> succ;
};

SequentParts parse_sequent_parts(std::string_view text);

}  // namespace ulim
