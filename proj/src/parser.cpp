#include "lstar/parser.hpp"

#include <cctype>

namespace lstar {

namespace {

// ---------- lexer ----------

enum class Tok {
  Ident, Number, LParen, RParen, Comma, Dot,
  Eq, Le, Lt, Tilde, Amp, Bar, Arrow, DArrow, End,
};

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string text;       // Ident / Number payload
  std::size_t tok_pos = 0;

  explicit Lexer(const std::string& in) : s(in) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_pos); }

  void advance() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= s.size()) {
      tok = Tok::End;
      return;
    }
    char c = s[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      text = s.substr(start, pos - start);
      tok = Tok::Ident;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      text = s.substr(start, pos - start);
      tok = Tok::Number;
      return;
    }
    ++pos;
    switch (c) {
      case '(': tok = Tok::LParen; return;
      case ')': tok = Tok::RParen; return;
      case ',': tok = Tok::Comma; return;
      case '.': tok = Tok::Dot; return;
      case '=': tok = Tok::Eq; return;
      case '~': tok = Tok::Tilde; return;
      case '&': tok = Tok::Amp; return;
      case '|': tok = Tok::Bar; return;
      case '<':
        if (pos < s.size() && s[pos] == '=') { ++pos; tok = Tok::Le; return; }
        if (pos + 1 < s.size() && s[pos] == '-' && s[pos + 1] == '>') {
          pos += 2; tok = Tok::DArrow; return;
        }
        tok = Tok::Lt;
        return;
      case '-':
        if (pos < s.size() && s[pos] == '>') { ++pos; tok = Tok::Arrow; return; }
        throw ParseError("stray '-'", tok_pos);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", tok_pos);
    }
  }

  void expect(Tok t, const char* what) {
    if (tok != t) fail(std::string("expected ") + what);
    advance();
  }
};

bool reserved(const std::string& id) {
  Fn f;
  return id == "A" || id == "E" || id == "mult" || id == "addrel" || fn_from_name(id, f);
}

// ---------- parser ----------

struct Parser {
  Lexer lx;

  explicit Parser(const std::string& in) : lx(in) {}

  TermPtr term() {
    switch (lx.tok) {
      case Tok::Number: {
        Nat n(lx.text);
        lx.advance();
        return numeral(n);
      }
      case Tok::Ident: {
        std::string id = lx.text;
        std::size_t at = lx.tok_pos;
        lx.advance();
        Fn f;
        bool interpreted = fn_from_name(id, f);
        if (lx.tok != Tok::LParen) {
          if (interpreted || id == "A" || id == "E" || id == "mult" || id == "addrel")
            throw ParseError("reserved word '" + id + "' used as a variable", at);
          return Term::var(id);
        }
        lx.advance();
        std::vector<TermPtr> args = term_list();
        lx.expect(Tok::RParen, "')'");
        if (interpreted) {
          if (args.size() != fn_arity(f))
            throw ParseError(id + " expects " + std::to_string(fn_arity(f)) + " arguments", at);
          return Term::apply(f, std::move(args));
        }
        if (id == "A" || id == "E" || id == "mult" || id == "addrel")
          throw ParseError("'" + id + "' is not a term", at);
        return Term::coded(id, std::move(args));
      }
      default:
        lx.fail("expected a term");
    }
  }

  std::vector<TermPtr> term_list() {
    std::vector<TermPtr> args;
    args.push_back(term());
    while (lx.tok == Tok::Comma) {
      lx.advance();
      args.push_back(term());
    }
    return args;
  }

  FormulaPtr macro(const std::string& id, std::size_t at) {
    lx.expect(Tok::LParen, "'('");
    std::vector<TermPtr> args = term_list();
    lx.expect(Tok::RParen, "')'");
    if (args.size() != 3)
      throw ParseError(id + " expects 3 arguments", at);
    FormulaPtr body = id == "mult" ? mult_relation("x", "y", "z") : add_relation("x", "y", "z");
    // The macro bodies are quantifier-free, so plain substitution is safe.
    body = substitute(body, "x", args[0]);
    body = substitute(body, "y", args[1]);
    body = substitute(body, "z", args[2]);
    return body;
  }

  FormulaPtr atom() {
    if (lx.tok == Tok::Ident && (lx.text == "mult" || lx.text == "addrel")) {
      std::string id = lx.text;
      std::size_t at = lx.tok_pos;
      lx.advance();
      return macro(id, at);
    }
    std::size_t at = lx.tok_pos;
    TermPtr t = term();
    switch (lx.tok) {
      case Tok::Eq:
        lx.advance();
        return Formula::eq(t, term());
      case Tok::Le:
        lx.advance();
        return Formula::le(t, term());
      case Tok::Lt:
        lx.advance();
        return lt(t, term());
      default:
        if (t->kind == Term::Kind::CodedApply) return Formula::atom(t->name, t->args);
        throw ParseError("expected '=', '<=' or '<' after term", at);
    }
  }

  FormulaPtr unary() {
    switch (lx.tok) {
      case Tok::Tilde:
        lx.advance();
        return Formula::lnot(unary());
      case Tok::LParen: {
        lx.advance();
        FormulaPtr f = formula();
        lx.expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        if (lx.text == "A" || lx.text == "E") return quantified();
        return atom();
      default:
        return atom();
    }
  }

  FormulaPtr quantified() {
    bool universal = lx.text == "A";
    lx.advance();
    if (lx.tok != Tok::Ident || reserved(lx.text)) lx.fail("expected a variable after quantifier");
    std::string v = lx.text;
    std::size_t at = lx.tok_pos;
    lx.advance();
    TermPtr bound;
    bool strict = false;
    if (lx.tok == Tok::Le || lx.tok == Tok::Lt) {
      strict = lx.tok == Tok::Lt;
      lx.advance();
      bound = term();
      if (strict) bound = Term::apply(Fn::Sub, {bound, Term::one()});
    }
    lx.expect(Tok::Dot, "'.'");
    FormulaPtr body = formula();
    try {
      if (bound) return universal ? Formula::bforall(v, bound, body)
                                  : Formula::bexists(v, bound, body);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), at);
    }
    return universal ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  // Binary connectives are non-associative: `a & b & c` is rejected, nested
  // connectives need parentheses.
  FormulaPtr formula() {
    FormulaPtr l = unary();
    switch (lx.tok) {
      case Tok::Amp: lx.advance(); return Formula::land(l, unary());
      case Tok::Bar: lx.advance(); return Formula::lor(l, unary());
      case Tok::Arrow: lx.advance(); return Formula::implies(l, unary());
      case Tok::DArrow: lx.advance(); return Formula::iff(l, unary());
      default: return l;
    }
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  TermPtr t = p.term();
  if (p.lx.tok != Tok::End) p.lx.fail("trailing input after term");
  return t;
}

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  if (p.lx.tok != Tok::End) p.lx.fail("trailing input after formula");
  return f;
}

}  // namespace lstar
