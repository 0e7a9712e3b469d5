#include "ulim/rules.hpp"

#include <algorithm>
#include <array>

#include "ulim/prover.hpp"

namespace ulim {
namespace {

constexpr std::array<std::string_view, 18> kRuleNames = {
    "Ax",   "LBot",   "LAnd",   "RAnd",   "LOr", "ROr1", "ROr2", "RImp",
    "LImpG3", "MSeq", "LpImp",  "LAndImp", "LOrImp", "LImpImp", "Lw", "Rw",
    "M",    "LMImp",
};

// Rules whose instances always descend in the multiset order.  LImpG3 does
// not (its left premise trades the succedent for an arbitrary antecedent
// part), so it is exempt from the descent assertion.
constexpr bool descent_checked(RuleId r) { return r != RuleId::LImpG3; }

std::vector<std::uint32_t> seq_var_idxs(const Sequent& s, Polarity p) {
  std::vector<std::uint32_t> out;
  for (const FormulaBag::Item& it : s.ante.items()) {
    const std::vector<std::uint32_t>& v = detail::fvars(it.first, dual(p));
    out.insert(out.end(), v.begin(), v.end());
  }
  if (s.succ) {
    const std::vector<std::uint32_t>& v = detail::fvars(s.succ->id(), p);
    out.insert(out.end(), v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string_view rule_name(RuleId r) {
  return kRuleNames[static_cast<std::size_t>(r)];
}

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleId>(i);
  return std::nullopt;
}

std::string_view calculus_name(CalculusId c) {
  switch (c) {
    case CalculusId::G3: return "g3";
    case CalculusId::G4w: return "g4w";
    default: return "g4";
  }
}

std::optional<CalculusId> calculus_from_name(std::string_view name) {
  if (name == "g3") return CalculusId::G3;
  if (name == "g4w") return CalculusId::G4w;
  if (name == "g4") return CalculusId::G4iM;
  return std::nullopt;
}

RuleApp::RuleApp(RuleId rule_, Sequent conclusion_, std::vector<Sequent> premises_,
                 std::vector<std::uint8_t> contextual_, Formula principal_)
    : rule(rule_),
      conclusion(std::move(conclusion_)),
      premises(std::move(premises_)),
      contextual(std::move(contextual_)),
      principal(principal_) {
  if (premises.size() != contextual.size())
    throw InternalError("rule application: contextual flags do not match premises");
  for (const Sequent& p : premises) {
    if (descent_checked(rule))
      diag::require_descent(seq_precedes(p, conclusion), "rule construction");
    for (Polarity pol : {Polarity::Pos, Polarity::Neg}) {
      std::vector<std::uint32_t> pv = seq_var_idxs(p, pol);
      std::vector<std::uint32_t> cv = seq_var_idxs(conclusion, pol);
      if (!std::includes(cv.begin(), cv.end(), pv.begin(), pv.end()))
        throw InternalError(std::string("rule application introduces variables: ") +
                            std::string(rule_name(rule)) + " premise '" + p.text() +
                            "' under '" + conclusion.text() + "'");
    }
  }
}

std::optional<RuleId> axiom_kind(const Sequent& s) {
  Sequent sq = s.normalized();
  if (sq.succ && sq.succ->kind() == Kind::Atom && sq.ante.contains(*sq.succ))
    return RuleId::Ax;
  if (sq.ante.contains(Formula::bot())) return RuleId::LBot;
  return std::nullopt;
}

std::vector<RuleApp> backward_apps(const Sequent& s, CalculusId c) {
  Sequent sq = s.normalized();
  std::vector<RuleApp> out;
  const bool g3 = c == CalculusId::G3;
  const bool modal = c == CalculusId::G4iM;

  for (const FormulaBag::Item& item : sq.ante.items()) {
    Formula f = Formula::from_id(item.first);
    switch (f.kind()) {
      case Kind::And:
        out.emplace_back(
            RuleId::LAnd, sq,
            std::vector<Sequent>{
                Sequent(sq.ante.replaced_one(f, {f.lhs(), f.rhs()}), sq.succ)},
            std::vector<std::uint8_t>{1}, f);
        break;
      case Kind::Or:
        out.emplace_back(
            RuleId::LOr, sq,
            std::vector<Sequent>{
                Sequent(sq.ante.replaced_one(f, {f.lhs()}), sq.succ),
                Sequent(sq.ante.replaced_one(f, {f.rhs()}), sq.succ)},
            std::vector<std::uint8_t>{1, 1}, f);
        break;
      case Kind::Imp: {
        Formula x = f.lhs(), y = f.rhs();
        if (g3) {
          out.emplace_back(
              RuleId::LImpG3, sq,
              std::vector<Sequent>{Sequent(sq.ante, x),
                                   Sequent(sq.ante.replaced_one(f, {y}), sq.succ)},
              std::vector<std::uint8_t>{0, 1}, f);
          break;
        }
        switch (x.kind()) {
          case Kind::Atom:
            if (sq.ante.contains(x))
              out.emplace_back(
                  RuleId::LpImp, sq,
                  std::vector<Sequent>{
                      Sequent(sq.ante.replaced_one(f, {y}), sq.succ)},
                  std::vector<std::uint8_t>{1}, f);
            break;
          case Kind::And:
            out.emplace_back(
                RuleId::LAndImp, sq,
                std::vector<Sequent>{Sequent(
                    sq.ante.replaced_one(
                        f, {Formula::imp(x.lhs(), Formula::imp(x.rhs(), y))}),
                    sq.succ)},
                std::vector<std::uint8_t>{1}, f);
            break;
          case Kind::Or:
            out.emplace_back(
                RuleId::LOrImp, sq,
                std::vector<Sequent>{Sequent(
                    sq.ante.replaced_one(
                        f, {Formula::imp(x.lhs(), y), Formula::imp(x.rhs(), y)}),
                    sq.succ)},
                std::vector<std::uint8_t>{1}, f);
            break;
          case Kind::Imp:
            out.emplace_back(
                RuleId::LImpImp, sq,
                std::vector<Sequent>{
                    Sequent(sq.ante.replaced_one(f, {Formula::imp(x.rhs(), y)}),
                            x),
                    Sequent(sq.ante.replaced_one(f, {y}), sq.succ)},
                std::vector<std::uint8_t>{0, 1}, f);
            break;
          default:
            // Box antecedents pair with a box on the left (LMImp, below);
            // #f antecedents have no left rule.
            break;
        }
        break;
      }
      default:
        break;
    }
  }

  if (sq.succ) {
    Formula d = *sq.succ;
    switch (d.kind()) {
      case Kind::And:
        out.emplace_back(RuleId::RAnd, sq,
                         std::vector<Sequent>{Sequent(sq.ante, d.lhs()),
                                              Sequent(sq.ante, d.rhs())},
                         std::vector<std::uint8_t>{0, 0}, d);
        break;
      case Kind::Or:
        out.emplace_back(RuleId::ROr1, sq,
                         std::vector<Sequent>{Sequent(sq.ante, d.lhs())},
                         std::vector<std::uint8_t>{0}, d);
        out.emplace_back(RuleId::ROr2, sq,
                         std::vector<Sequent>{Sequent(sq.ante, d.rhs())},
                         std::vector<std::uint8_t>{0}, d);
        break;
      case Kind::Imp:
        out.emplace_back(
            RuleId::RImp, sq,
            std::vector<Sequent>{Sequent(sq.ante.plus(d.lhs()), d.rhs())},
            std::vector<std::uint8_t>{0}, d);
        break;
      default:
        break;
    }
  }

  if (g3) {
    if (sq.succ && sq.succ->kind() == Kind::Box) {
      for (const FormulaBag::Item& item : sq.ante.items()) {
        Formula f = Formula::from_id(item.first);
        if (f.kind() != Kind::Box) continue;
        out.emplace_back(
            RuleId::MSeq, sq,
            std::vector<Sequent>{Sequent(FormulaBag::of({f.body()}), sq.succ->body())},
            std::vector<std::uint8_t>{0}, *sq.succ);
      }
    }
    return out;
  }

  for (const FormulaBag::Item& item : sq.ante.items()) {
    Formula f = Formula::from_id(item.first);
    out.emplace_back(RuleId::Lw, sq,
                     std::vector<Sequent>{Sequent(sq.ante.minus_one(f), sq.succ)},
                     std::vector<std::uint8_t>{1}, f);
  }
  if (sq.succ)
    out.emplace_back(RuleId::Rw, sq, std::vector<Sequent>{Sequent(sq.ante)},
                     std::vector<std::uint8_t>{0}, *sq.succ);

  if (!modal) return out;

  if (sq.succ && sq.succ->kind() == Kind::Box && sq.ante.distinct() == 1 &&
      sq.ante.items()[0].second == 1) {
    Formula f = Formula::from_id(sq.ante.items()[0].first);
    if (f.kind() == Kind::Box)
      out.emplace_back(
          RuleId::M, sq,
          std::vector<Sequent>{Sequent(FormulaBag::of({f.body()}), sq.succ->body())},
          std::vector<std::uint8_t>{0}, *sq.succ);
  }

  for (const FormulaBag::Item& box_item : sq.ante.items()) {
    Formula g = Formula::from_id(box_item.first);
    if (g.kind() != Kind::Box) continue;
    for (const FormulaBag::Item& imp_item : sq.ante.items()) {
      Formula f = Formula::from_id(imp_item.first);
      if (f.kind() != Kind::Imp || f.lhs().kind() != Kind::Box) continue;
      out.emplace_back(
          RuleId::LMImp, sq,
          std::vector<Sequent>{
              Sequent(FormulaBag::of({g.body()}), f.lhs().body()),
              Sequent(sq.ante.replaced_one(f, {f.rhs()}), sq.succ)},
          std::vector<std::uint8_t>{0, 1}, f);
    }
  }
  return out;
}

std::vector<RuleApp> backward_left_apps(const FormulaBag& sigma) {
  return backward_apps(Sequent(sigma), CalculusId::G4w);
}

bool valid_app(RuleId rule, const Sequent& conclusion,
               const std::vector<Sequent>& premises, CalculusId c) {
  std::vector<std::string> want;
  want.reserve(premises.size());
  for (const Sequent& p : premises) want.push_back(canonical_key(p.normalized()));
  std::sort(want.begin(), want.end());

  for (const RuleApp& app : backward_apps(conclusion, c)) {
    if (app.rule != rule || app.premises.size() != want.size()) continue;
    std::vector<std::string> got;
    got.reserve(app.premises.size());
    for (const Sequent& p : app.premises) got.push_back(canonical_key(p));
    std::sort(got.begin(), got.end());
    if (got == want) return true;
  }
  return false;
}

}  // namespace ulim
