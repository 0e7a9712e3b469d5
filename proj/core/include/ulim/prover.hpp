#pragma once

// Proof search.
//
// derivable/prove_g4 decide the terminating modal calculus (g4).  The
// strategy: try the axioms, then commit to the first invertible rule found
// scanning the antecedent in canonical order (LAnd, LOr, LpImp, LAndImp,
// LOrImp) and then the succedent (RAnd, RImp); otherwise branch over ROr1,
// ROr2, LImpImp per occurrence, LMImp per (box, implication) pair, and
// finally, for a boxed succedent, a macro step that weakens the antecedent
// to a single box and applies M.  Weakening is never explored blindly.
// Every recursive call is checked to strictly descend in the multiset
// order; a violation throws InternalError and is counted (see diag).
//
// prove_g3 decides the non-terminating calculus with LImpG3 and MSeq by
// exhaustive backward search over contracted sequents with a loop check on
// the current branch.  It shares no search code with g4 and serves as an
// independent oracle.  Failures are only memoized when no loop check above
// the current node was involved, so cached results are context free.
//
// check_derivation validates a finished tree node by node against the
// declarative rule enumeration, independently of how the tree was found.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

#include "ulim/rules.hpp"

namespace ulim {

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent seq;
  RuleId rule;
  std::vector<DerivationPtr> children;
};

namespace detail {
struct G4Driver;
struct G3Driver;
}  // namespace detail

// Decision and derivation cache for g4, keyed by sequent.  Results are
// context free, so entries never need invalidation; when the map outgrows
// max_entries it is dropped wholesale and rebuilt on demand.
class ProofCache {
 public:
  static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 22;

  explicit ProofCache(std::size_t max_entries = kDefaultMaxEntries)
      : max_entries_(max_entries ? max_entries : 1) {}

  void clear() { map_.clear(); }
  std::size_t size() const { return map_.size(); }
  std::size_t max_entries() const { return max_entries_; }

  std::uint64_t lookups() const { return lookups_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t clears() const { return clears_; }

 private:
  friend struct detail::G4Driver;

  struct Entry {
    std::uint8_t provable;  // 1 yes, 0 no
    DerivationPtr deriv;    // present once a tree was requested
  };
  std::unordered_map<std::string, Entry> map_;
  std::size_t max_entries_;
  std::uint64_t lookups_ = 0, hits_ = 0, clears_ = 0;
};

// Memo of oracle results, same clearing policy.
class G3Cache {
 public:
  static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 22;

  explicit G3Cache(std::size_t max_entries = kDefaultMaxEntries)
      : max_entries_(max_entries ? max_entries : 1) {}

  void clear() { map_.clear(); }
  std::size_t size() const { return map_.size(); }

 private:
  friend struct detail::G3Driver;
  std::unordered_map<std::string, std::uint8_t> map_;
  std::size_t max_entries_;
};

bool derivable(const Sequent& s, ProofCache& cache);
std::optional<DerivationPtr> prove_g4(const Sequent& s, ProofCache& cache);

bool prove_g3(const Sequent& s);
bool prove_g3(const Sequent& s, G3Cache& cache);

bool check_derivation(const DerivationPtr& d, CalculusId c);

namespace detail {
// The oracle's move generator, exposed so tests can cross-check it against
// backward_apps: premise lists of every g3 application, contracted.
std::vector<std::vector<Sequent>> g3_search_apps(const Sequent& s);
}  // namespace detail

namespace diag {

std::uint64_t descent_checks();
std::uint64_t descent_violations();
void reset_descent();

// Records one descent check; throws InternalError when it failed.
void require_descent(bool ok, const char* where);

}  // namespace diag

}  // namespace ulim
