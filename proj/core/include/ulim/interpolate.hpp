#pragma once

// Propositional quantification and interpolation.
//
// For an atom p and a polarity °, two mutually recursive constructions over
// the terminating calculus:
//
//   exists_q(Sigma, p, °)   a formula free of p° entailed by the multiset
//                           Sigma, strong enough to stand in for Sigma on
//                           the left of any sequent that avoids p°;
//   forall_q(S, p, °)       a formula free of p° that, added to the
//                           antecedent, makes the sequent S derivable, and
//                           is entailed by any p°-avoiding multiset that
//                           does so.
//
// Both assemble their result from the backward rule applications of the
// argument (the propositional ones for forall, the left ones for exists),
// an atomic-implication family, and a modal family; every recursive
// argument strictly descends in the multiset order, which is asserted at
// runtime.  Results are #t-free; conjunctions and disjunctions fold to the
// right in construction order.
//
// The two-sided quantifiers chain the polarities: exists over both
// polarities of p is exists+ applied after exists-, and dually for forall.
// lyndon_interpolant eliminates, from a premise phi of a derivable
// implication phi -> psi, the positive variables not occurring positively
// in psi and the negative ones not occurring negatively, yielding an
// interpolant whose variables are polarity-contained in both sides.

#include <array>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ulim/prover.hpp"

namespace ulim {

namespace detail {
struct InterpEngine;
}

struct InterpOptions {
  std::uint64_t budget = 200'000'000;  // recursion steps; BudgetError beyond
  bool memoize = true;
};

// Memo for both quantifiers plus the prover cache they consult (membership
// of the modal family and the derivability base case need proof search).
class InterpCache {
 public:
  static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 22;

  InterpCache() = default;
  explicit InterpCache(std::size_t prover_entries,
                       std::size_t max_entries = kDefaultMaxEntries)
      : prover_(prover_entries), max_entries_(max_entries ? max_entries : 1) {}

  ProofCache& prover() { return prover_; }
  void clear();
  std::size_t size() const { return exists_.size() + forall_.size(); }

 private:
  friend struct detail::InterpEngine;
  std::unordered_map<std::string, FormulaId> exists_, forall_;
  ProofCache prover_;
  std::size_t max_entries_ = kDefaultMaxEntries;
};

Formula exists_q(const FormulaBag& sigma, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts = {});
Formula forall_q(const Sequent& s, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts = {});

// Single-formula bridges: exists over {f}, forall over (=> f).
Formula exists_q(Formula f, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts = {});
Formula forall_q(Formula f, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts = {});

Formula uip_exists(Formula f, std::string_view atom, InterpCache& cache,
                   const InterpOptions& opts = {});
Formula uip_forall(Formula f, std::string_view atom, InterpCache& cache,
                   const InterpOptions& opts = {});

// Throws NotATheoremError when phi => psi is not derivable.
Formula lyndon_interpolant(Formula phi, Formula psi, InterpCache& cache,
                           const InterpOptions& opts = {});

// Assembly ingredients, exposed for inspection and tests.

// Conjunction of the p°-free members of sigma (with multiplicity), #f -> #f
// when there are none.
Formula exists_ax_part(const FormulaBag& sigma, std::string_view atom, Polarity pol);
// Top for a derivable sequent; else the succedent when present and
// p°-free, else #f.
Formula forall_ax_part(const Sequent& s, std::string_view atom, Polarity pol,
                       ProofCache& prover);
// Pairs (q, psi) with q -> psi in the bag, q an atom free of p°.
std::vector<std::pair<Formula, Formula>> atom_imp_index(const FormulaBag& sigma,
                                                        std::string_view atom,
                                                        Polarity pol);
// Triples (phi, psi, theta) with []phi and []psi -> theta in the bag and
// phi => psi derivable; box occurrences range in the outer loop.
std::vector<std::array<Formula, 3>> modal_triple_index(const FormulaBag& sigma,
                                                       ProofCache& prover);

enum class SimplifyMode : std::uint8_t { Fast, Verified };

// Equivalence-preserving cleanup: unit laws for #t and #f, collapse of
// A -> #t, #f -> A, #t -> A, and duplicate conjuncts or disjuncts.  In
// Verified mode the result is proved equivalent to the input (both
// directions); an inequivalence throws InternalError.
Formula simplify(Formula f, SimplifyMode mode = SimplifyMode::Fast,
                 ProofCache* cache = nullptr);

// Bounded-context verification of the quantifier properties.
struct ConditionReport {
  std::string name;
  bool ok = true;
  std::uint64_t contexts = 0;  // context instances enumerated
  std::uint64_t premises = 0;  // instances whose premise held
  std::vector<std::string> counterexamples;  // capped at kMaxCounterexamples
};

struct QuantifierReport {
  Formula interpolant;
  std::vector<ConditionReport> conditions;
  bool ok() const {
    for (const ConditionReport& c : conditions)
      if (!c.ok) return false;
    return true;
  }
};

inline constexpr std::size_t kMaxCounterexamples = 10;

// Checks, for the antecedent quantifier: freeness and variable containment
// (var); Sigma => interpolant (1); and, over every context C => D built
// from the alphabet with total antecedent weight and succedent weight at
// most context_weight and p° not among the context's sequent variables,
// that derivability of Sigma, C => D implies derivability of
// interpolant, C => D (2).
QuantifierReport verify_exists(const FormulaBag& sigma, std::string_view atom,
                               Polarity pol, std::uint32_t context_weight,
                               const std::vector<std::string>& alphabet,
                               InterpCache& cache, const InterpOptions& opts = {});

// Checks, for the succedent quantifier: (var) as above; that the
// interpolant added to the antecedent derives S (3); and, over every
// antecedent context C free of p° (memberwise), that derivability of S
// with C added implies C, exists_q(S antecedent, p, dual) => interpolant (4).
QuantifierReport verify_forall(const Sequent& s, std::string_view atom,
                               Polarity pol, std::uint32_t context_weight,
                               const std::vector<std::string>& alphabet,
                               InterpCache& cache, const InterpOptions& opts = {});

}  // namespace ulim
