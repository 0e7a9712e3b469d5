#pragma once

// Multisets of formulas and single-succedent sequents.
//
// A FormulaBag stores (formula, count) pairs in canonical formula order, so
// equal bags compare equal structurally and serialize to identical keys.  A
// Sequent has a bag antecedent and at most one succedent formula.
//
// The order `precedes` is the multiset extension of the weight order: G
// precedes D when G is obtained from D by replacing one or more formula
// occurrences with zero or more occurrences of strictly smaller weight.
// Sequents are measured by the union of antecedent and succedent.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "ulim/formula.hpp"

namespace ulim {

class FormulaBag {
 public:
  using Item = std::pair<FormulaId, std::uint32_t>;

  FormulaBag() = default;
  explicit FormulaBag(const std::vector<Formula>& fs);
  static FormulaBag of(std::initializer_list<Formula> fs);

  void add(Formula f, std::uint32_t n = 1);
  void add_id(FormulaId id, std::uint32_t n = 1);
  // Removes one occurrence; throws std::invalid_argument when absent.
  void remove_one(Formula f);

  [[nodiscard]] FormulaBag plus(Formula f, std::uint32_t n = 1) const;
  [[nodiscard]] FormulaBag minus_one(Formula f) const;
  // Replaces one occurrence of `from` by the given formulas.
  [[nodiscard]] FormulaBag replaced_one(Formula from,
                                        std::initializer_list<Formula> to) const;
  [[nodiscard]] FormulaBag united(const FormulaBag& other) const;
  [[nodiscard]] FormulaBag contracted() const;  // counts clamped to 1
  [[nodiscard]] FormulaBag normalized() const;  // #t eliminated memberwise

  std::uint32_t count(Formula f) const;
  bool contains(Formula f) const { return count(f) > 0; }
  bool contains_id(FormulaId id) const;
  std::size_t total() const;      // occurrences
  std::size_t distinct() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t total_weight() const;

  const std::vector<Item>& items() const { return items_; }
  std::vector<Formula> expanded() const;  // with multiplicity, canonical order

  bool includes(const FormulaBag& other) const;  // sub-multiset

  std::vector<std::string> vars(Polarity p) const;  // plain union over members
  bool has_var(std::uint32_t name_idx, Polarity p) const;

  void append_key(std::string& out) const;
  std::string text() const;  // "p, p & q"

  friend bool operator==(const FormulaBag&, const FormulaBag&) = default;

 private:
  // sorted by compare_ids
  std::vector<Item> items_;
  std::size_t find(FormulaId id) const;  // insertion position
};

struct Sequent {
  FormulaBag ante;
  std::optional<Formula> succ;

  Sequent() = default;
  explicit Sequent(FormulaBag a, std::optional<Formula> s = std::nullopt)
      : ante(std::move(a)), succ(s) {}

  [[nodiscard]] Sequent normalized() const;
  std::string text() const;  // "p, q => r", "p =>", "=>"

  // Sequent variables: an atom occurs positively when it occurs negatively
  // in the antecedent or positively in the succedent, and dually.
  std::vector<std::string> vars(Polarity p) const;
  bool has_var(std::uint32_t name_idx, Polarity p) const;

  FormulaBag measure() const;  // antecedent plus succedent as one bag

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

Sequent parse_sequent(std::string_view text);

bool bag_precedes(const FormulaBag& g, const FormulaBag& d);
bool seq_precedes(const Sequent& s, const Sequent& t);
bool bag_precedes_seq(const FormulaBag& g, const Sequent& t);
bool seq_precedes_bag(const Sequent& s, const FormulaBag& d);

// Union of two sequents; throws std::invalid_argument when both have a
// succedent.
Sequent multiply(const Sequent& s, const Sequent& t);

// Byte key identifying a sequent within this process (memoization).
std::string canonical_key(const Sequent& s);

}  // namespace ulim
