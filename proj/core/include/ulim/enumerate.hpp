#pragma once

// Exhaustive universes of normalized formulas and bags over a fixed atom
// alphabet, in canonical order, plus a weight-driven random sampler for
// property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ulim/sequent.hpp"

namespace ulim {

// All #t-free formulas over the alphabet with weight at most max_weight,
// sorted by weight and then text.
std::vector<Formula> formula_universe(const std::vector<std::string>& alphabet,
                                      std::uint32_t max_weight);

// All bags whose member weights sum to at most max_total_weight, the empty
// bag first, then by member index sequence over the formula universe.
std::vector<FormulaBag> bag_universe_by_weight(
    const std::vector<std::string>& alphabet, std::uint32_t max_total_weight);

// All bags with at most max_members members, each member of weight at most
// max_member_weight.
std::vector<FormulaBag> bag_universe_by_size(
    const std::vector<std::string>& alphabet, std::uint32_t max_members,
    std::uint32_t max_member_weight);

// Random formulas with a uniformly drawn weight and a uniformly drawn shape
// of that weight.  Surface sampling may also yield #t leaves, to exercise
// the normalizing front end; everything else is #t-free.
class FormulaSampler {
 public:
  FormulaSampler(std::vector<std::string> alphabet, std::uint64_t seed);

  Formula sample(std::uint32_t max_weight);
  Formula sample_exact(std::uint32_t weight);
  Formula sample_surface(std::uint32_t max_weight);
  FormulaBag sample_bag(std::uint32_t max_members, std::uint32_t max_weight);

  std::mt19937_64& rng() { return rng_; }

 private:
  Formula grow(std::uint32_t weight, bool surface);

  std::vector<Formula> atoms_;
  std::mt19937_64 rng_;
};

}  // namespace ulim
