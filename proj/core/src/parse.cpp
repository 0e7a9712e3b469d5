#include "ulim/parse.hpp"

#include <cctype>

namespace ulim {
namespace {

enum class Tok : std::uint8_t {
  Atom, False, True, LParen, RParen, BoxOp, Tilde, AndOp, OrOp, ImpOp,
  Comma, Turnstile, End,
};

const char* tok_desc(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::False: return "'#f'";
    case Tok::True: return "'#t'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::BoxOp: return "'[]'";
    case Tok::Tilde: return "'~'";
    case Tok::AndOp: return "'&'";
    case Tok::OrOp: return "'|'";
    case Tok::ImpOp: return "'->'";
    case Tok::Comma: return "','";
    case Tok::Turnstile: return "'=>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { next(); }

  Tok tok() const { return tok_; }
  std::size_t pos() const { return tok_pos_; }
  std::string_view atom_text() const { return atom_; }

  void next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    tok_pos_ = pos_;
    if (pos_ == text_.size()) {
      tok_ = Tok::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; tok_ = Tok::LParen; return;
      case ')': ++pos_; tok_ = Tok::RParen; return;
      case '~': ++pos_; tok_ = Tok::Tilde; return;
      case '&': ++pos_; tok_ = Tok::AndOp; return;
      case '|': ++pos_; tok_ = Tok::OrOp; return;
      case ',': ++pos_; tok_ = Tok::Comma; return;
      case '[':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == ']') {
          pos_ += 2;
          tok_ = Tok::BoxOp;
          return;
        }
        throw ParseError("expected ']' after '['", pos_);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          tok_ = Tok::ImpOp;
          return;
        }
        throw ParseError("expected '>' after '-'", pos_);
      case '=':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          tok_ = Tok::Turnstile;
          return;
        }
        throw ParseError("expected '>' after '='", pos_);
      case '#':
        if (pos_ + 1 < text_.size() &&
            (text_[pos_ + 1] == 'f' || text_[pos_ + 1] == 't')) {
          tok_ = text_[pos_ + 1] == 'f' ? Tok::False : Tok::True;
          pos_ += 2;
          return;
        }
        throw ParseError("expected 'f' or 't' after '#'", pos_);
      default:
        if (std::islower(static_cast<unsigned char>(c))) {
          std::size_t start = pos_;
          ++pos_;
          while (pos_ < text_.size()) {
            char d = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(d)) || d == '_')
              ++pos_;
            else
              break;
          }
          atom_ = text_.substr(start, pos_ - start);
          tok_ = Tok::Atom;
          return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  void expect(Tok t) {
    if (tok_ != t)
      throw ParseError(std::string("expected ") + tok_desc(t) + ", found " +
                           tok_desc(tok_),
                       tok_pos_);
    next();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t tok_pos_ = 0;
  Tok tok_ = Tok::End;
  std::string_view atom_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula formula() { return imp(); }

  std::vector<Formula> list_until(Tok stop) {
    std::vector<Formula> out;
    if (lex_.tok() == stop) return out;
    out.push_back(formula());
    while (lex_.tok() == Tok::Comma) {
      lex_.next();
      out.push_back(formula());
    }
    return out;
  }

  void finish() { lex_.expect(Tok::End); }

  Lexer& lex() { return lex_; }

 private:
  Formula imp() {
    Formula l = disj();
    if (lex_.tok() == Tok::ImpOp) {
      lex_.next();
      return Formula::imp(l, imp());
    }
    return l;
  }

  Formula disj() {
    Formula l = conj();
    if (lex_.tok() == Tok::OrOp) {
      lex_.next();
      return Formula::disj(l, disj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    if (lex_.tok() == Tok::AndOp) {
      lex_.next();
      return Formula::conj(l, conj());
    }
    return l;
  }

  Formula unary() {
    switch (lex_.tok()) {
      case Tok::BoxOp:
        lex_.next();
        return Formula::box(unary());
      case Tok::Tilde:
        lex_.next();
        return Formula::imp(unary(), Formula::bot());
      default:
        return primary();
    }
  }

  Formula primary() {
    switch (lex_.tok()) {
      case Tok::Atom: {
        Formula f = Formula::atom(lex_.atom_text());
        lex_.next();
        return f;
      }
      case Tok::False:
        lex_.next();
        return Formula::bot();
      case Tok::True:
        lex_.next();
        return Formula::top();
      case Tok::LParen: {
        lex_.next();
        Formula f = formula();
        lex_.expect(Tok::RParen);
        return f;
      }
      default:
        throw ParseError(std::string("expected a formula, found ") +
                             tok_desc(lex_.tok()),
                         lex_.pos());
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.finish();
  return f;
}

std::vector<Formula> parse_formula_list(std::string_view text) {
  Parser p(text);
  std::vector<Formula> fs = p.list_until(Tok::End);
  p.finish();
  return fs;
}

SequentParts parse_sequent_parts(std::string_view text) {
  Parser p(text);
  SequentParts out;
  out.ante = p.list_until(Tok::Turnstile);
  p.lex().expect(Tok::Turnstile);
  if (p.lex().tok() != Tok::End) out.succ = p.formula();
  p.finish();
  return out;
}

}  // namespace ulim
