#include "ulim/interpolate.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "ulim/enumerate.hpp"
#include "ulim/rules.hpp"

namespace ulim {
namespace {

using detail::Arena;

FormulaId top_id() { return Arena::get().top_normal(); }
FormulaId bot_id() { return Arena::get().bot(); }

FormulaId mk(Kind k, FormulaId a, FormulaId b = kNoFormula) {
  return Arena::get().make(k, a, b);
}

// Empty conjunction is top, empty disjunction is bottom; both fold to the
// right so the construction order is visible in the result.
FormulaId fold_right(Kind k, const std::vector<FormulaId>& parts) {
  if (parts.empty()) return k == Kind::And ? top_id() : bot_id();
  FormulaId acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = mk(k, parts[i], acc);
  return acc;
}

bool boxed_imp(FormulaId id) {
  return detail::fkind(id) == Kind::Imp &&
         detail::fkind(detail::fnode(id).a) == Kind::Box;
}

// Pairs (q, psi) with q -> psi in the bag and q an atom avoiding the given
// polarity of the distinguished variable.  Bag order; distinct items give
// distinct pairs, so no dedup is needed.
std::vector<std::pair<FormulaId, FormulaId>> atom_imps(const FormulaBag& sigma,
                                                       std::uint32_t name_idx,
                                                       Polarity pol) {
  std::vector<std::pair<FormulaId, FormulaId>> out;
  for (const auto& [id, n] : sigma.items()) {
    (void)n;
    if (detail::fkind(id) != Kind::Imp) continue;
    FormulaId q = detail::fnode(id).a;
    if (detail::fkind(q) != Kind::Atom) continue;
    if (!detail::polarity_free(q, name_idx, pol)) continue;
    out.emplace_back(q, detail::fnode(id).b);
  }
  return out;
}

struct ModalPair {
  FormulaId phi;  // from some boxed member
  FormulaId imp;  // some boxed implication [](psi) -> theta with phi => psi
};

// One entry per index triple: boxed members in the outer loop, boxed
// implications in the inner one, filtered by provability of phi => psi.
std::vector<ModalPair> modal_pairs(const FormulaBag& sigma, ProofCache& prover) {
  std::vector<ModalPair> out;
  for (const auto& [b, bn] : sigma.items()) {
    (void)bn;
    if (detail::fkind(b) != Kind::Box) continue;
    FormulaId phi = detail::fnode(b).a;
    for (const auto& [im, in] : sigma.items()) {
      (void)in;
      if (!boxed_imp(im)) continue;
      FormulaId psi = detail::fnode(detail::fnode(im).a).a;
      FormulaBag one;
      one.add_id(phi);
      if (!derivable(Sequent(std::move(one), Formula::from_id(psi)), prover))
        continue;
      out.push_back({phi, im});
    }
  }
  return out;
}

FormulaId exists_ax_id(const FormulaBag& sigma, std::uint32_t name_idx,
                       Polarity pol) {
  std::vector<FormulaId> parts;
  for (const auto& [id, n] : sigma.items())
    if (detail::polarity_free(id, name_idx, pol))
      parts.insert(parts.end(), n, id);
  return fold_right(Kind::And, parts);
}

std::uint32_t checked_name_index(std::string_view atom) {
  Formula::atom(atom);  // validates and interns
  return Arena::get().name_index(atom);
}

}  // namespace

namespace detail {

// Mutual recursion over the multiset order for one distinguished atom.
// Every recursive argument is checked to lie strictly below the current
// node; a violation is an implementation bug and throws.
struct InterpEngine {
  InterpCache& cache;
  const InterpOptions& opts;
  std::uint32_t name_idx;
  std::uint64_t steps = 0;

  InterpEngine(InterpCache& c, const InterpOptions& o, std::string_view atom)
      : cache(c), opts(o), name_idx(checked_name_index(atom)) {}

  void step() {
    if (++steps > opts.budget)
      throw BudgetError("quantifier recursion exceeded its step budget (" +
                        std::to_string(opts.budget) + ")");
  }

  std::string bag_key(const FormulaBag& b, Polarity pol) const {
    std::string k(1, pol == Polarity::Pos ? '+' : '-');
    k += std::to_string(name_idx);
    k += ':';
    b.append_key(k);
    return k;
  }

  std::string seq_key(const Sequent& s, Polarity pol) const {
    std::string k(1, pol == Polarity::Pos ? '+' : '-');
    k += std::to_string(name_idx);
    k += ':';
    k += canonical_key(s);
    return k;
  }

  void remember(std::unordered_map<std::string, FormulaId>& map,
                std::string&& key, FormulaId value) {
    if (!opts.memoize) return;
    if (cache.exists_.size() + cache.forall_.size() >= cache.max_entries_) {
      cache.exists_.clear();
      cache.forall_.clear();
    }
    map.emplace(std::move(key), value);
  }

  FormulaId exists(const FormulaBag& sigma, Polarity pol) {
    step();
    if (sigma.empty()) return top_id();
    std::string key;
    if (opts.memoize) {
      key = bag_key(sigma, pol);
      if (auto it = cache.exists_.find(key); it != cache.exists_.end())
        return it->second;
    }

    std::vector<FormulaId> conj;

    // One conjunct per left rule application on (sigma =>): the
    // non-contextual premises feed the antecedent of an implication whose
    // conclusion collects the contextual ones.
    for (const RuleApp& app : backward_left_apps(sigma)) {
      std::vector<FormulaId> hyp, con;
      for (std::size_t i = 0; i < app.premises.size(); ++i) {
        const Sequent& prem = app.premises[i];
        diag::require_descent(bag_precedes(prem.ante, sigma),
                              "exists: rule premise antecedent");
        if (app.contextual[i]) {
          con.push_back(exists(prem.ante, pol));
        } else {
          diag::require_descent(seq_precedes_bag(prem, sigma),
                                "exists: rule premise");
          hyp.push_back(
              mk(Kind::Imp, exists(prem.ante, pol), forall(prem, dual(pol))));
        }
      }
      conj.push_back(
          mk(Kind::Imp, fold_right(Kind::And, hyp), fold_right(Kind::Or, con)));
    }

    // The axiom conjunct: the members already avoiding the polarity.
    conj.push_back(exists_ax_id(sigma, name_idx, pol));

    // Atomic implications, indexed at the dual polarity.
    for (const auto& [q, psi] : atom_imps(sigma, name_idx, dual(pol))) {
      FormulaBag rep = sigma.replaced_one(Formula::from_id(mk(Kind::Imp, q, psi)),
                                          {Formula::from_id(psi)});
      diag::require_descent(bag_precedes(rep, sigma), "exists: atomic family");
      conj.push_back(mk(Kind::Imp, q, exists(rep, pol)));
    }

    // Modal family: boxed members, then boxed implications, then the pairs
    // with a provable body implication.
    for (const auto& [id, n] : sigma.items()) {
      (void)n;
      if (detail::fkind(id) != Kind::Box) continue;
      FormulaBag one;
      one.add_id(detail::fnode(id).a);
      diag::require_descent(bag_precedes(one, sigma), "exists: boxed member");
      conj.push_back(mk(Kind::Box, exists(one, pol)));
    }
    for (const auto& [id, n] : sigma.items()) {
      (void)n;
      if (!boxed_imp(id)) continue;
      FormulaId psi = detail::fnode(detail::fnode(id).a).a;
      FormulaId theta = detail::fnode(id).b;
      Sequent spsi(FormulaBag{}, Formula::from_id(psi));
      diag::require_descent(seq_precedes_bag(spsi, sigma),
                            "exists: boxed implication body");
      FormulaBag rep =
          sigma.replaced_one(Formula::from_id(id), {Formula::from_id(theta)});
      diag::require_descent(bag_precedes(rep, sigma),
                            "exists: boxed implication replacement");
      conj.push_back(mk(Kind::Imp, mk(Kind::Box, forall(spsi, dual(pol))),
                        exists(rep, pol)));
    }
    for (const ModalPair& mp : modal_pairs(sigma, cache.prover_)) {
      FormulaId theta = detail::fnode(mp.imp).b;
      FormulaBag rep =
          sigma.replaced_one(Formula::from_id(mp.imp), {Formula::from_id(theta)});
      diag::require_descent(bag_precedes(rep, sigma), "exists: modal pair");
      conj.push_back(exists(rep, pol));
    }

    FormulaId out = fold_right(Kind::And, conj);
    remember(cache.exists_, std::move(key), out);
    return out;
  }

  FormulaId forall(const Sequent& s, Polarity pol) {
    step();
    std::string key;
    if (opts.memoize) {
      key = seq_key(s, pol);
      if (auto it = cache.forall_.find(key); it != cache.forall_.end())
        return it->second;
    }

    if (derivable(s, cache.prover_)) {
      remember(cache.forall_, std::move(key), top_id());
      return top_id();
    }

    std::vector<FormulaId> disj;

    // One disjunct per backward rule application, propositional and
    // structural rules alike: a conjunction over all premises.
    for (const RuleApp& app : backward_apps(s, CalculusId::G4w)) {
      std::vector<FormulaId> parts;
      for (const Sequent& prem : app.premises) {
        diag::require_descent(seq_precedes(prem, s), "forall: rule premise");
        diag::require_descent(bag_precedes_seq(prem.ante, s),
                              "forall: rule premise antecedent");
        parts.push_back(
            mk(Kind::Imp, exists(prem.ante, dual(pol)), forall(prem, pol)));
      }
      disj.push_back(fold_right(Kind::And, parts));
    }

    // The axiom disjunct; the sequent is not derivable here, so this is the
    // succedent when it avoids the polarity and bottom otherwise.
    disj.push_back(s.succ && detail::polarity_free(s.succ->id(), name_idx, pol)
                       ? s.succ->id()
                       : bot_id());

    // Atomic implications at the same polarity, each its own disjunct.
    for (const auto& [q, psi] : atom_imps(s.ante, name_idx, pol)) {
      FormulaBag rep = s.ante.replaced_one(Formula::from_id(mk(Kind::Imp, q, psi)),
                                           {Formula::from_id(psi)});
      Sequent srep(rep, s.succ);
      diag::require_descent(bag_precedes_seq(rep, s),
                            "forall: atomic family antecedent");
      diag::require_descent(seq_precedes(srep, s), "forall: atomic family");
      disj.push_back(mk(
          Kind::And, q,
          mk(Kind::Imp, exists(rep, dual(pol)), forall(srep, pol))));
    }

    // Modal family: a bare boxed succedent steps inside the box; otherwise
    // boxed implications contribute paired disjuncts, and the provable
    // pairs their replacement alone.
    if (s.ante.empty() && s.succ && s.succ->kind() == Kind::Box) {
      Sequent spsi(FormulaBag{}, s.succ->body());
      diag::require_descent(seq_precedes(spsi, s), "forall: boxed succedent");
      disj.push_back(mk(Kind::Box, forall(spsi, pol)));
    } else {
      for (const auto& [id, n] : s.ante.items()) {
        (void)n;
        if (!boxed_imp(id)) continue;
        FormulaId psi = detail::fnode(detail::fnode(id).a).a;
        FormulaId theta = detail::fnode(id).b;
        Sequent srep(s.ante.replaced_one(Formula::from_id(id),
                                         {Formula::from_id(theta)}),
                     s.succ);
        Sequent spsi(FormulaBag{}, Formula::from_id(psi));
        diag::require_descent(seq_precedes(srep, s),
                              "forall: boxed implication replacement");
        diag::require_descent(seq_precedes(spsi, s),
                              "forall: boxed implication body");
        disj.push_back(
            mk(Kind::And, forall(srep, pol), mk(Kind::Box, forall(spsi, pol))));
      }
      for (const ModalPair& mp : modal_pairs(s.ante, cache.prover_)) {
        FormulaId theta = detail::fnode(mp.imp).b;
        Sequent srep(s.ante.replaced_one(Formula::from_id(mp.imp),
                                         {Formula::from_id(theta)}),
                     s.succ);
        diag::require_descent(seq_precedes(srep, s), "forall: modal pair");
        disj.push_back(forall(srep, pol));
      }
    }

    FormulaId out = fold_right(Kind::Or, disj);
    remember(cache.forall_, std::move(key), out);
    return out;
  }
};

}  // namespace detail

void InterpCache::clear() {
  exists_.clear();
  forall_.clear();
  prover_.clear();
}

Formula exists_q(const FormulaBag& sigma, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts) {
  detail::InterpEngine engine(cache, opts, atom);
  return Formula::from_id(engine.exists(sigma.normalized(), pol));
}

Formula forall_q(const Sequent& s, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts) {
  detail::InterpEngine engine(cache, opts, atom);
  return Formula::from_id(engine.forall(s.normalized(), pol));
}

Formula exists_q(Formula f, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts) {
  return exists_q(FormulaBag::of({f}), atom, pol, cache, opts);
}

Formula forall_q(Formula f, std::string_view atom, Polarity pol,
                 InterpCache& cache, const InterpOptions& opts) {
  return forall_q(Sequent(FormulaBag{}, f), atom, pol, cache, opts);
}

// The composed quantifiers feed each round the cleaned-up output of the
// previous one.  Raw outputs blow up as trees (they share subterms heavily),
// and a second round on the raw form is intractable; the rewrite preserves
// equivalence, which is all the quantifier conditions can see.
Formula uip_exists(Formula f, std::string_view atom, InterpCache& cache,
                   const InterpOptions& opts) {
  Formula inner = simplify(exists_q(f, atom, Polarity::Neg, cache, opts));
  return exists_q(inner, atom, Polarity::Pos, cache, opts);
}

Formula uip_forall(Formula f, std::string_view atom, InterpCache& cache,
                   const InterpOptions& opts) {
  Formula inner = simplify(forall_q(f, atom, Polarity::Neg, cache, opts));
  return forall_q(inner, atom, Polarity::Pos, cache, opts);
}

Formula lyndon_interpolant(Formula phi, Formula psi, InterpCache& cache,
                           const InterpOptions& opts) {
  Sequent goal(FormulaBag::of({phi}), psi);
  if (!derivable(goal, cache.prover()))
    throw NotATheoremError("premise does not entail conclusion: " +
                           goal.normalized().text());
  Formula theta = phi.normalized();
  // Negative round first, then positive; atoms in name order within each.
  // Each elimination works on the cleaned-up previous output (see uip_exists).
  for (Polarity pol : {Polarity::Neg, Polarity::Pos}) {
    const std::vector<std::string> keep = psi.vars(pol);
    for (const std::string& v : phi.vars(pol)) {
      if (std::binary_search(keep.begin(), keep.end(), v)) continue;
      theta = simplify(exists_q(theta, v, pol, cache, opts));
    }
  }
  return theta;
}

Formula exists_ax_part(const FormulaBag& sigma, std::string_view atom,
                       Polarity pol) {
  std::uint32_t idx = checked_name_index(atom);
  return Formula::from_id(exists_ax_id(sigma.normalized(), idx, pol));
}

Formula forall_ax_part(const Sequent& s, std::string_view atom, Polarity pol,
                       ProofCache& prover) {
  std::uint32_t idx = checked_name_index(atom);
  Sequent n = s.normalized();
  if (derivable(n, prover)) return Formula::from_id(top_id());
  if (n.succ && detail::polarity_free(n.succ->id(), idx, pol)) return *n.succ;
  return Formula::bot();
}

std::vector<std::pair<Formula, Formula>> atom_imp_index(const FormulaBag& sigma,
                                                        std::string_view atom,
                                                        Polarity pol) {
  std::uint32_t idx = checked_name_index(atom);
  std::vector<std::pair<Formula, Formula>> out;
  for (const auto& [q, psi] : atom_imps(sigma.normalized(), idx, pol))
    out.emplace_back(Formula::from_id(q), Formula::from_id(psi));
  return out;
}

std::vector<std::array<Formula, 3>> modal_triple_index(const FormulaBag& sigma,
                                                       ProofCache& prover) {
  std::vector<std::array<Formula, 3>> out;
  for (const ModalPair& mp : modal_pairs(sigma.normalized(), prover)) {
    FormulaId psi = detail::fnode(detail::fnode(mp.imp).a).a;
    FormulaId theta = detail::fnode(mp.imp).b;
    out.push_back({Formula::from_id(mp.phi), Formula::from_id(psi),
                   Formula::from_id(theta)});
  }
  return out;
}

namespace {

// Bottom-up rewriting with unit laws.  After children are simplified, any
// subformula equivalent to a constant by those laws is literally #t or #f,
// so constant tests on the rewritten children suffice.
struct Simplifier {
  std::unordered_map<FormulaId, FormulaId> memo;
  const FormulaId tt = Arena::get().top();
  const FormulaId ff = Arena::get().bot();

  void collect(Kind k, FormulaId id, std::vector<FormulaId>& out) {
    if (detail::fkind(id) == k) {
      collect(k, detail::fnode(id).a, out);
      collect(k, detail::fnode(id).b, out);
    } else {
      out.push_back(id);
    }
  }

  FormulaId chain(Kind k, FormulaId a, FormulaId b) {
    const FormulaId unit = k == Kind::And ? tt : ff;
    const FormulaId zero = k == Kind::And ? ff : tt;
    std::vector<FormulaId> flat, kept;
    collect(k, a, flat);
    collect(k, b, flat);
    for (FormulaId f : flat) {
      if (f == zero) return zero;
      if (f == unit) continue;
      if (std::find(kept.begin(), kept.end(), f) == kept.end())
        kept.push_back(f);
    }
    if (kept.empty()) return unit;
    FormulaId acc = kept.back();
    for (std::size_t i = kept.size() - 1; i-- > 0;) acc = mk(k, kept[i], acc);
    return acc;
  }

  FormulaId go(FormulaId id) {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const detail::FormulaNode& n = detail::fnode(id);
    FormulaId out = id;
    switch (n.kind) {
      case Kind::Atom:
      case Kind::Bot:
      case Kind::Top:
        break;
      case Kind::Box:
        out = mk(Kind::Box, go(n.a));
        break;
      case Kind::Imp: {
        FormulaId a = go(n.a), b = go(n.b);
        if (b == tt || a == ff)
          out = tt;
        else if (a == tt)
          out = b;
        else
          out = mk(Kind::Imp, a, b);
        break;
      }
      case Kind::And:
      case Kind::Or:
        out = chain(n.kind, go(n.a), go(n.b));
        break;
    }
    memo.emplace(id, out);
    return out;
  }
};

}  // namespace

Formula simplify(Formula f, SimplifyMode mode, ProofCache* cache) {
  Simplifier s;
  Formula out = Formula::from_id(s.go(f.id()));
  if (mode == SimplifyMode::Verified) {
    ProofCache own;
    ProofCache& pc = cache ? *cache : own;
    if (!derivable(Sequent(FormulaBag::of({f}), out), pc) ||
        !derivable(Sequent(FormulaBag::of({out}), f), pc))
      throw InternalError("simplify changed the meaning of " + f.text() +
                          " into " + out.text());
  }
  return out;
}

namespace {

void check_freeness(ConditionReport& rep, Formula raw, std::uint32_t idx,
                    Polarity pol) {
  if (!detail::polarity_free(raw.id(), idx, pol)) {
    rep.ok = false;
    rep.counterexamples.push_back("interpolant still carries the eliminated " +
                                  std::string(polarity_name(pol)) +
                                  " occurrence");
  }
}

void check_containment(ConditionReport& rep, Formula raw,
                       const std::vector<std::string>& allowed, Polarity pol) {
  for (const std::string& v : raw.vars(pol)) {
    if (std::binary_search(allowed.begin(), allowed.end(), v)) continue;
    rep.ok = false;
    if (rep.counterexamples.size() < kMaxCounterexamples)
      rep.counterexamples.push_back("unexpected " +
                                    std::string(polarity_name(pol)) +
                                    " variable " + v);
  }
}

// The derivability conditions are invariant under provable equivalence of
// the interpolant (the calculus admits cut), so they are checked with a
// simplification whose equivalence to the raw output is proved first; raw
// interpolants grow fast enough that deciding thousands of contexts
// against them directly is impractical.  If the equivalence proof fails
// the raw form is used, so a simplifier defect cannot fake a pass.
Formula proven_equivalent(Formula raw, ProofCache& pc) {
  try {
    return simplify(raw, SimplifyMode::Verified, &pc);
  } catch (const InternalError&) {
    return raw;
  }
}

}  // namespace

QuantifierReport verify_exists(const FormulaBag& sigma_in, std::string_view atom,
                               Polarity pol, std::uint32_t context_weight,
                               const std::vector<std::string>& alphabet,
                               InterpCache& cache, const InterpOptions& opts) {
  const FormulaBag sigma = sigma_in.normalized();
  Formula raw = exists_q(sigma, atom, pol, cache, opts);
  const std::uint32_t idx = checked_name_index(atom);
  ProofCache& pc = cache.prover();
  const Formula small = proven_equivalent(raw, pc);
  QuantifierReport report{raw, {}};

  ConditionReport var;
  var.name = "var";
  check_freeness(var, raw, idx, pol);
  for (Polarity q : {Polarity::Pos, Polarity::Neg})
    check_containment(var, raw, sigma.vars(q), q);
  report.conditions.push_back(std::move(var));

  ConditionReport c1;
  c1.name = "c1";
  c1.contexts = c1.premises = 1;
  if (Sequent goal(sigma, small); !derivable(goal, pc)) {
    c1.ok = false;
    c1.counterexamples.push_back(Sequent(sigma, raw).text());
  }
  report.conditions.push_back(std::move(c1));

  ConditionReport c2;
  c2.name = "c2";
  const std::vector<FormulaBag> bags =
      bag_universe_by_weight(alphabet, context_weight);
  const std::vector<Formula> succs = formula_universe(alphabet, context_weight);
  for (const FormulaBag& cbar : bags) {
    for (std::size_t si = 0; si <= succs.size(); ++si) {
      std::optional<Formula> d;
      if (si < succs.size()) d = succs[si];
      Sequent ctx(cbar, d);
      if (ctx.has_var(idx, pol)) continue;
      ++c2.contexts;
      if (!derivable(Sequent(sigma.united(cbar), d), pc)) continue;
      ++c2.premises;
      if (!derivable(Sequent(cbar.plus(small), d), pc)) {
        c2.ok = false;
        if (c2.counterexamples.size() < kMaxCounterexamples)
          c2.counterexamples.push_back(ctx.text());
      }
    }
  }
  report.conditions.push_back(std::move(c2));
  return report;
}

QuantifierReport verify_forall(const Sequent& s_in, std::string_view atom,
                               Polarity pol, std::uint32_t context_weight,
                               const std::vector<std::string>& alphabet,
                               InterpCache& cache, const InterpOptions& opts) {
  const Sequent s = s_in.normalized();
  Formula raw = forall_q(s, atom, pol, cache, opts);
  const std::uint32_t idx = checked_name_index(atom);
  ProofCache& pc = cache.prover();
  const Formula small = proven_equivalent(raw, pc);
  QuantifierReport report{raw, {}};

  ConditionReport var;
  var.name = "var";
  check_freeness(var, raw, idx, pol);
  for (Polarity q : {Polarity::Pos, Polarity::Neg})
    check_containment(var, raw, s.vars(q), q);
  report.conditions.push_back(std::move(var));

  ConditionReport c3;
  c3.name = "c3";
  c3.contexts = c3.premises = 1;
  if (Sequent goal(s.ante.plus(small), s.succ); !derivable(goal, pc)) {
    c3.ok = false;
    c3.counterexamples.push_back(Sequent(s.ante.plus(raw), s.succ).text());
  }
  report.conditions.push_back(std::move(c3));

  ConditionReport c4;
  c4.name = "c4";
  Formula dual_small =
      proven_equivalent(exists_q(s.ante, atom, dual(pol), cache, opts), pc);
  for (const FormulaBag& cbar : bag_universe_by_weight(alphabet, context_weight)) {
    if (cbar.has_var(idx, pol)) continue;
    ++c4.contexts;
    if (!derivable(Sequent(s.ante.united(cbar), s.succ), pc)) continue;
    ++c4.premises;
    if (!derivable(Sequent(cbar.plus(dual_small), small), pc)) {
      c4.ok = false;
      if (c4.counterexamples.size() < kMaxCounterexamples)
        c4.counterexamples.push_back(cbar.empty() ? "(empty context)"
                                                  : cbar.text());
    }
  }
  report.conditions.push_back(std::move(c4));
  return report;
}

}  // namespace ulim
