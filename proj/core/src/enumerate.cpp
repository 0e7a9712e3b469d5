#include "ulim/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace ulim {

std::vector<Formula> formula_universe(const std::vector<std::string>& alphabet,
                                      std::uint32_t max_weight) {
  std::vector<std::vector<Formula>> by_weight(max_weight + 1);
  if (max_weight >= 1) {
    for (const std::string& name : alphabet)
      by_weight[1].push_back(Formula::atom(name));
    by_weight[1].push_back(Formula::bot());
  }
  for (std::uint32_t w = 2; w <= max_weight; ++w) {
    std::vector<Formula>& out = by_weight[w];
    for (Formula f : by_weight[w - 1]) out.push_back(Formula::box(f));
    for (std::uint32_t wa = 1; w >= 3 && wa <= w - 2; ++wa)
      for (Formula a : by_weight[wa])
        for (Formula b : by_weight[w - 1 - wa]) {
          out.push_back(Formula::disj(a, b));
          out.push_back(Formula::imp(a, b));
        }
    for (std::uint32_t wa = 1; w >= 4 && wa <= w - 3; ++wa)
      for (Formula a : by_weight[wa])
        for (Formula b : by_weight[w - 2 - wa])
          out.push_back(Formula::conj(a, b));
  }
  std::vector<Formula> all;
  for (const std::vector<Formula>& cls : by_weight)
    all.insert(all.end(), cls.begin(), cls.end());
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

void extend_bags(const std::vector<Formula>& fs, std::size_t start,
                 std::uint32_t budget, FormulaBag& cur,
                 std::vector<FormulaBag>& out) {
  out.push_back(cur);
  for (std::size_t i = start; i < fs.size(); ++i) {
    std::uint64_t w = fs[i].weight();
    if (w > budget) break;  // ascending weights
    cur.add(fs[i]);
    extend_bags(fs, i, budget - static_cast<std::uint32_t>(w), cur, out);
    cur.remove_one(fs[i]);
  }
}

}  // namespace

std::vector<FormulaBag> bag_universe_by_weight(
    const std::vector<std::string>& alphabet, std::uint32_t max_total_weight) {
  const std::vector<Formula> fs = formula_universe(alphabet, max_total_weight);
  std::vector<FormulaBag> out;
  FormulaBag cur;
  extend_bags(fs, 0, max_total_weight, cur, out);
  return out;
}

namespace {

void extend_bags_by_size(const std::vector<Formula>& fs, std::size_t start,
                         std::uint32_t slots, FormulaBag& cur,
                         std::vector<FormulaBag>& out) {
  out.push_back(cur);
  if (slots == 0) return;
  for (std::size_t i = start; i < fs.size(); ++i) {
    cur.add(fs[i]);
    extend_bags_by_size(fs, i, slots - 1, cur, out);
    cur.remove_one(fs[i]);
  }
}

}  // namespace

std::vector<FormulaBag> bag_universe_by_size(
    const std::vector<std::string>& alphabet, std::uint32_t max_members,
    std::uint32_t max_member_weight) {
  const std::vector<Formula> fs = formula_universe(alphabet, max_member_weight);
  std::vector<FormulaBag> out;
  FormulaBag cur;
  extend_bags_by_size(fs, 0, max_members, cur, out);
  return out;
}

FormulaSampler::FormulaSampler(std::vector<std::string> alphabet,
                               std::uint64_t seed)
    : rng_(seed) {
  for (const std::string& name : alphabet)
    atoms_.push_back(Formula::atom(name));
  if (atoms_.empty())
    throw std::invalid_argument("sampler needs a nonempty alphabet");
}

Formula FormulaSampler::grow(std::uint32_t weight, bool surface) {
  auto pick = [this](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng_);
  };
  if (weight <= 1) {
    // Leaves: the atoms, #f, and in surface mode also #t.
    std::uint32_t extras = surface ? 2 : 1;
    std::uint32_t n =
        pick(0, static_cast<std::uint32_t>(atoms_.size()) + extras - 1);
    if (n < atoms_.size()) return atoms_[n];
    return n == atoms_.size() ? Formula::bot() : Formula::top();
  }
  if (weight == 2) return Formula::box(grow(1, surface));
  // Feasible connectives: box always, or/imp from weight 3, and from 4.
  std::uint32_t choices = weight >= 4 ? 4 : 3;
  switch (pick(0, choices - 1)) {
    case 0:
      return Formula::box(grow(weight - 1, surface));
    case 1: {
      std::uint32_t wa = pick(1, weight - 2);
      Formula a = grow(wa, surface);
      return Formula::disj(a, grow(weight - 1 - wa, surface));
    }
    case 2: {
      std::uint32_t wa = pick(1, weight - 2);
      Formula a = grow(wa, surface);
      return Formula::imp(a, grow(weight - 1 - wa, surface));
    }
    default: {
      std::uint32_t wa = pick(1, weight - 3);
      Formula a = grow(wa, surface);
      return Formula::conj(a, grow(weight - 2 - wa, surface));
    }
  }
}

Formula FormulaSampler::sample(std::uint32_t max_weight) {
  std::uint32_t w = std::uniform_int_distribution<std::uint32_t>(
      1, std::max<std::uint32_t>(max_weight, 1))(rng_);
  return grow(w, false);
}

Formula FormulaSampler::sample_exact(std::uint32_t weight) {
  return grow(weight, false);
}

Formula FormulaSampler::sample_surface(std::uint32_t max_weight) {
  std::uint32_t w = std::uniform_int_distribution<std::uint32_t>(
      1, std::max<std::uint32_t>(max_weight, 1))(rng_);
  return grow(w, true);
}

FormulaBag FormulaSampler::sample_bag(std::uint32_t max_members,
                                      std::uint32_t max_weight) {
  std::uint32_t n =
      std::uniform_int_distribution<std::uint32_t>(0, max_members)(rng_);
  FormulaBag bag;
  for (std::uint32_t i = 0; i < n; ++i) bag.add(sample(max_weight));
  return bag;
}

}  // namespace ulim
