#include "ulim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "ulim/parse.hpp"

namespace ulim {
namespace {

constexpr std::size_t kMaxExamples = 10;

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void fail(SuiteResult& r, std::string what) {
  ++r.failures;
  if (r.examples.size() < kMaxExamples) r.examples.push_back(std::move(what));
}

void note_progress(const SuiteOptions& opts, const SuiteResult& r,
                   std::uint64_t every) {
  if (opts.progress && r.checked % every == 0)
    std::fprintf(stderr, "[%s] %llu checked, %llu failed\n", r.name.c_str(),
                 static_cast<unsigned long long>(r.checked),
                 static_cast<unsigned long long>(r.failures));
}

}  // namespace

SuiteResult run_equivalence_suite(const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "equivalence";
  ProofCache pc;
  G3Cache g3;
  const std::vector<Formula> fs = formula_universe(opts.atoms, opts.weight_bound);
  const std::vector<FormulaBag> bags =
      bag_universe_by_size(opts.atoms, opts.bag_limit, opts.weight_bound);
  for (const FormulaBag& bag : bags) {
    Sequent s(bag);
    for (std::size_t si = 0; si <= fs.size(); ++si) {
      if (si == 0)
        s.succ.reset();
      else
        s.succ = fs[si - 1];
      bool g4_says = derivable(s, pc);
      bool g3_says = prove_g3(s, g3);
      ++r.checked;
      if (g4_says != g3_says)
        fail(r, s.text() + "  g4=" + (g4_says ? "yes" : "no") +
                    " oracle=" + (g3_says ? "yes" : "no"));
      note_progress(opts, r, 1u << 20);
    }
  }
  r.seconds = clock.seconds();
  return r;
}

namespace {

// Draws sequents whose derivability is frequent enough to exercise the
// admissible-rule implications: half the draws plant an axiom-like shape,
// the rest are unconstrained.
struct BiasedDraw {
  FormulaSampler& sampler;
  const SuiteOptions& opts;

  std::uint64_t dice(std::uint64_t n) { return sampler.rng()() % n; }

  Sequent sequent() {
    FormulaBag ante = sampler.sample_bag(opts.bag_limit, opts.weight_bound);
    std::optional<Formula> succ;
    switch (dice(4)) {
      case 0: {  // succedent already among the antecedent members
        if (ante.empty()) ante.add(sampler.sample(opts.weight_bound));
        const auto& items = ante.items();
        succ = Formula::from_id(items[dice(items.size())].first);
        break;
      }
      case 1:  // inconsistent antecedent
        ante.add(Formula::bot());
        succ = sampler.sample(opts.weight_bound);
        break;
      case 2:
        succ = sampler.sample(opts.weight_bound);
        break;
      default:
        break;  // empty succedent
    }
    return Sequent(std::move(ante), succ);
  }
};

}  // namespace

SuiteResult run_admissibility_suite(const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "admissibility";
  ProofCache pc;
  FormulaSampler sampler(opts.atoms, opts.seed);
  BiasedDraw draw{sampler, opts};
  const std::uint64_t per_property = opts.samples;
  const std::uint64_t attempt_cap = per_property * 2000;

  auto run_property = [&](const char* name, auto&& one_instance) {
    std::uint64_t done = 0, attempts = 0;
    while (done < per_property && ++attempts <= attempt_cap)
      if (one_instance()) {
        ++done;
        ++r.checked;
        note_progress(opts, r, 256);
      }
    if (done < per_property)
      fail(r, std::string(name) + ": only " + std::to_string(done) + " of " +
                  std::to_string(per_property) + " premise instances found");
  };

  run_property("weakening", [&] {
    Sequent s = draw.sequent();
    if (!derivable(s, pc)) return false;
    Sequent weakened(s.ante.plus(sampler.sample(opts.weight_bound)), s.succ);
    if (!derivable(weakened, pc))
      fail(r, "weakening broke " + s.text() + " into " + weakened.text());
    return true;
  });

  run_property("contraction", [&] {
    Sequent s = draw.sequent();
    Formula extra = sampler.sample(opts.weight_bound);
    Sequent doubled(s.ante.plus(extra, 2), s.succ);
    if (!derivable(doubled, pc)) return false;
    Sequent single(s.ante.plus(extra), s.succ);
    if (!derivable(single, pc))
      fail(r, "contraction broke " + doubled.text());
    return true;
  });

  run_property("implication inversion", [&] {
    Formula a = sampler.sample(opts.weight_bound);
    Formula b = sampler.sample(opts.weight_bound);
    FormulaBag ante = sampler.sample_bag(opts.bag_limit, opts.weight_bound);
    if (draw.dice(2) == 0) ante.add(b);  // makes the premise frequent
    Sequent premise(ante, Formula::imp(a, b));
    if (!derivable(premise, pc)) return false;
    Sequent inverted(ante.plus(a), b);
    if (!derivable(inverted, pc))
      fail(r, "inversion broke " + premise.text());
    return true;
  });

  run_property("cut", [&] {
    Formula mid = sampler.sample(opts.weight_bound);
    FormulaBag left = sampler.sample_bag(1, opts.weight_bound);
    if (draw.dice(2) == 0) left.add(mid);
    if (!derivable(Sequent(left, mid), pc)) return false;
    Sequent right = draw.sequent();
    Sequent with_mid(right.ante.plus(mid), right.succ);
    if (!derivable(with_mid, pc)) return false;
    Sequent cut(left.united(right.ante), right.succ);
    if (!derivable(cut, pc))
      fail(r, "cut broke " + Sequent(left, mid).text() + " with " +
                  with_mid.text());
    return true;
  });

  r.seconds = clock.seconds();
  return r;
}

SuiteResult run_monotonicity_suite(const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "monotonicity";
  ProofCache pc;
  FormulaSampler sampler(opts.atoms, opts.seed);

  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    Formula a = sampler.sample(opts.weight_bound);
    Formula b = sampler.sample(opts.weight_bound);
    Formula goal = Formula::imp(Formula::box(Formula::conj(a, b)),
                                Formula::conj(Formula::box(a), Formula::box(b)));
    ++r.checked;
    if (!derivable(Sequent(FormulaBag{}, goal), pc))
      fail(r, "box does not distribute over " + Formula::conj(a, b).text());
    note_progress(opts, r, 16);
  }

  // Congruence: rebuild a formula into a provably equivalent shape and ask
  // for the boxed implication.
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    Formula a = sampler.sample(opts.weight_bound);
    Formula c = sampler.sample(3);
    Formula b;
    switch (sampler.rng()() % 5) {
      case 0: b = Formula::conj(a, a); break;
      case 1: b = Formula::disj(a, a); break;
      case 2: b = Formula::conj(a, Formula::imp(c, c)); break;
      case 3: b = Formula::imp(Formula::imp(c, c), a); break;
      default: b = Formula::disj(a, Formula::conj(c, Formula::bot())); break;
    }
    ++r.checked;
    if (!derivable(Sequent(FormulaBag::of({a}), b), pc) ||
        !derivable(Sequent(FormulaBag::of({b}), a), pc)) {
      fail(r, "equivalence transform broke on " + a.text());
      continue;
    }
    if (!derivable(Sequent(FormulaBag{},
                           Formula::imp(Formula::box(a), Formula::box(b))),
                   pc))
      fail(r, "box congruence failed for " + a.text() + " vs " + b.text());
    note_progress(opts, r, 16);
  }

  r.seconds = clock.seconds();
  return r;
}

SuiteResult run_quantifier_suite(
    const SuiteOptions& opts, const std::function<void(Formula)>& raw_sink) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "quantifier";
  InterpCache cache;
  const std::vector<Formula> fs = formula_universe(opts.atoms, opts.weight_bound);

  std::uint64_t seen = 0;
  for (Formula f : fs) {
    // All atom/polarity combinations in a row: the provability queries of
    // the context sweeps do not depend on them, so the prover cache is hot.
    for (const std::string& atom : opts.atoms) {
      for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
        QuantifierReport ex = verify_exists(FormulaBag::of({f}), atom, pol,
                                            opts.context_weight, opts.atoms,
                                            cache);
        QuantifierReport fa =
            verify_forall(Sequent(FormulaBag{}, f), atom, pol,
                          opts.context_weight, opts.atoms, cache);
        for (const QuantifierReport* rep : {&ex, &fa}) {
          for (const ConditionReport& c : rep->conditions) {
            ++r.checked;
            if (!c.ok)
              fail(r, std::string(rep == &ex ? "exists" : "forall") + " " +
                          std::string(polarity_name(pol)) + atom + " of " +
                          f.text() + " breaks " + c.name +
                          (c.counterexamples.empty()
                               ? std::string()
                               : " at " + c.counterexamples.front()));
          }
          if (raw_sink) raw_sink(rep->interpolant);
        }
      }
    }
    if (opts.progress && ++seen % 50 == 0)
      std::fprintf(stderr, "[quantifier] %llu/%zu formulas\n",
                   static_cast<unsigned long long>(seen), fs.size());
  }

  r.seconds = clock.seconds();
  return r;
}

const std::vector<std::pair<std::string, std::string>>& curated_implications() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"p & q", "q | r"},
      {"[](p & q)", "[]p"},
      {"p", "p"},
      {"#f", "q"},
      {"p & (p -> q)", "q | r"},
      {"(p & (p -> q)) & (q -> r)", "r"},
      {"[]p", "[](p | q)"},
      {"[](p & q)", "[](q & p)"},
      {"[][](p & q)", "[][]p"},
      {"p", "q -> p"},
      {"p & #f", "r"},
      {"p | q", "q | p"},
      {"p -> (q & r)", "p -> q"},
      {"p -> #f", "p -> q"},
      {"(p -> q) -> r", "q -> r"},
      {"p | (q & r)", "p | q"},
      {"[](p & (q & r))", "[]r"},
      {"(p & q) | (p & r)", "p"},
      {"q", "(p -> q) | r"},
      {"[](p & q) & s", "[]p | t"},
  };
  return pairs;
}

SuiteResult run_interpolant_suite(const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "interpolant";
  InterpCache cache;
  (void)opts;

  for (const auto& [from, to] : curated_implications()) {
    Formula phi = parse_formula(from);
    Formula psi = parse_formula(to);
    Formula theta;
    try {
      theta = lyndon_interpolant(phi, psi, cache);
    } catch (const NotATheoremError& e) {
      r.checked += 3;
      fail(r, from + " -> " + to + ": " + e.what());
      continue;
    }
    ++r.checked;
    if (!derivable(Sequent(FormulaBag::of({phi}), theta), cache.prover()))
      fail(r, from + " does not entail its interpolant " + theta.text());
    ++r.checked;
    if (!derivable(Sequent(FormulaBag::of({theta}), psi), cache.prover()))
      fail(r, "interpolant " + theta.text() + " does not entail " + to);
    ++r.checked;
    bool contained = true;
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      std::vector<std::string> lhs = phi.vars(pol), rhs = psi.vars(pol);
      std::vector<std::string> both;
      std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                            std::back_inserter(both));
      for (const std::string& v : theta.vars(pol))
        if (!std::binary_search(both.begin(), both.end(), v)) contained = false;
    }
    if (!contained)
      fail(r, "interpolant of " + from + " -> " + to +
                  " uses variables outside both sides: " + theta.text());
  }

  r.seconds = clock.seconds();
  return r;
}

SuiteResult run_simplify_suite(const std::vector<Formula>& formulas,
                               const SuiteOptions& opts) {
  Stopwatch clock;
  SuiteResult r;
  r.name = "simplify";
  ProofCache pc;

  for (Formula f : formulas) {
    ++r.checked;
    try {
      Formula out = simplify(f, SimplifyMode::Verified, &pc);
      for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
        std::vector<std::string> allowed = f.vars(pol);
        for (const std::string& v : out.vars(pol))
          if (!std::binary_search(allowed.begin(), allowed.end(), v))
            fail(r, "simplify invented " + v + " in " + f.text());
      }
    } catch (const InternalError& e) {
      fail(r, e.what());
    }
    note_progress(opts, r, 1u << 12);
  }

  r.seconds = clock.seconds();
  return r;
}

}  // namespace ulim
