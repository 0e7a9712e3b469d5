#include "ulim/latex.hpp"

namespace ulim {
namespace {

// Binding strength for parenthesization, loosest first.
int rank(Kind k) {
  switch (k) {
    case Kind::Imp: return 0;
    case Kind::Or: return 1;
    case Kind::And: return 2;
    default: return 3;
  }
}

void escape_name(std::string_view name, std::string& out) {
  for (char c : name) {
    if (c == '_') out += "\\_";
    else out += c;
  }
}

void render(Formula f, std::string& out) {
  auto child = [&out](Formula c, bool parens) {
    if (parens) out += '(';
    render(c, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Kind::Atom:
      escape_name(f.name(), out);
      break;
    case Kind::Bot:
      out += "\\bot";
      break;
    case Kind::Top:
      out += "\\top";
      break;
    case Kind::Box:
      out += "\\Box ";
      child(f.body(), rank(f.body().kind()) < 3);
      break;
    case Kind::And:
    case Kind::Or: {
      // Left-to-right chains of one connective go unparenthesized.
      int self = rank(f.kind());
      child(f.lhs(), rank(f.lhs().kind()) < self);
      out += f.kind() == Kind::And ? " \\wedge " : " \\vee ";
      child(f.rhs(), rank(f.rhs().kind()) < self ||
                         (f.rhs().kind() == f.kind()));
      break;
    }
    case Kind::Imp:
      // Right associative: parenthesize an implication on the left only.
      child(f.lhs(), f.lhs().kind() == Kind::Imp);
      out += " \\to ";
      render(f.rhs(), out);
      break;
  }
}

}  // namespace

std::string latex_formula(Formula f) {
  std::string out;
  render(f, out);
  return out;
}

std::string latex_sequent(const Sequent& s) {
  std::string out;
  bool first = true;
  for (Formula f : s.ante.expanded()) {
    if (!first) out += ", ";
    first = false;
    render(f, out);
  }
  out += out.empty() ? "\\Rightarrow" : " \\Rightarrow";
  if (s.succ) {
    out += ' ';
    render(*s.succ, out);
  }
  return out;
}

std::string latex_rule_label(RuleId r) {
  switch (r) {
    case RuleId::Ax: return "Ax";
    case RuleId::LBot: return "L\\bot";
    case RuleId::LAnd: return "L\\wedge";
    case RuleId::RAnd: return "R\\wedge";
    case RuleId::LOr: return "L\\vee";
    case RuleId::ROr1: return "R\\vee_1";
    case RuleId::ROr2: return "R\\vee_2";
    case RuleId::RImp: return "R\\to";
    case RuleId::LImpG3: return "L\\to";
    case RuleId::MSeq: return "M";
    case RuleId::LpImp: return "Lp\\to";
    case RuleId::LAndImp: return "L\\wedge\\to";
    case RuleId::LOrImp: return "L\\vee\\to";
    case RuleId::LImpImp: return "L\\to\\to";
    case RuleId::Lw: return "Lw";
    case RuleId::Rw: return "Rw";
    case RuleId::M: return "M";
    case RuleId::LMImp: return "L\\Box\\to";
  }
  return "?";
}

namespace {

void emit_node(const DerivationPtr& d, std::string& out) {
  for (const DerivationPtr& c : d->children) emit_node(c, out);
  out += "  ";
  if (d->children.empty()) {
    out += "\\AxiomC{}\n  \\RightLabel{\\scriptsize$" +
           latex_rule_label(d->rule) + "$}\n  \\UnaryInfC{$" +
           latex_sequent(d->seq) + "$}\n";
    return;
  }
  out += "\\RightLabel{\\scriptsize$" + latex_rule_label(d->rule) + "$}\n  ";
  switch (d->children.size()) {
    case 1: out += "\\UnaryInfC"; break;
    case 2: out += "\\BinaryInfC"; break;
    default: out += "\\TrinaryInfC"; break;
  }
  out += "{$" + latex_sequent(d->seq) + "$}\n";
}

}  // namespace

std::string latex_derivation(const DerivationPtr& d) {
  if (!d) throw InternalError("cannot render an empty derivation");
  std::string out = "\\begin{prooftree}\n";
  emit_node(d, out);
  out += "\\end{prooftree}\n";
  return out;
}

}  // namespace ulim
