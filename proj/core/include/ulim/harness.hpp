#pragma once

// Property-test drivers shared by the acceptance gate, the command line
// front end, and the unit tests.  Each suite is deterministic for a fixed
// option set and reports how many instances it checked, how many failed,
// and a capped list of failing instances.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ulim/enumerate.hpp"
#include "ulim/interpolate.hpp"

namespace ulim {

struct SuiteOptions {
  std::vector<std::string> atoms = {"p", "q"};
  std::uint32_t weight_bound = 5;    // formula universe / sampler bound
  std::uint32_t bag_limit = 2;       // antecedent members for bag sampling
  std::uint32_t context_weight = 4;  // context bound for quantifier checks
  std::uint64_t samples = 500;       // instances per sampled property
  std::uint64_t seed = 0x5eed;
  bool progress = false;  // coarse progress lines on stderr
};

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> examples;  // failing instances, capped at 10
  double seconds = 0.0;

  bool ok() const { return failures == 0 && checked > 0; }
};

// Exhaustive agreement between the terminating prover and the oracle
// calculus over every sequent whose antecedent has at most bag_limit
// members drawn from the weight-bounded universe.
SuiteResult run_equivalence_suite(const SuiteOptions& opts);

// Sampled admissibility properties of the terminating calculus: antecedent
// weakening, contraction, inversion of the right implication rule, and
// cut.  Premises are sampled with a bias toward provable shapes so each
// property reaches its instance count.
SuiteResult run_admissibility_suite(const SuiteOptions& opts);

// Box monotonicity: distribution over conjunction, and congruence under
// provable equivalence.
SuiteResult run_monotonicity_suite(const SuiteOptions& opts);

// Quantifier conditions for every universe formula, every alphabet atom,
// both polarities, both quantifiers.  Raw interpolants are handed to the
// sink when one is given.
SuiteResult run_quantifier_suite(
    const SuiteOptions& opts, const std::function<void(Formula)>& raw_sink = {});

// Interpolants for the curated list of provable implications, checked
// against the three interpolant conditions.
SuiteResult run_interpolant_suite(const SuiteOptions& opts);

// Verified-mode simplification over the given formulas.
SuiteResult run_simplify_suite(const std::vector<Formula>& formulas,
                               const SuiteOptions& opts);

// The curated premise/conclusion pairs of the interpolant suite.
const std::vector<std::pair<std::string, std::string>>& curated_implications();

}  // namespace ulim
