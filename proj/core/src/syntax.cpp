#include "monel/syntax.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace monel {

namespace {

enum class Tok {
  Ident, Int, LParen, RParen, Dot, Comma, Eq, Neq, Tilde, Amp, Pipe,
  Arrow, Iff, End,
};

struct Token {
  Tok tok;
  std::string text;
  long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "line " << cur_.line << ", column " << cur_.col << ": " << msg;
    throw Error(ErrorCode::Syntax, os.str());
  }

 private:
  void advance() {
    skip();
    cur_.line = line_;
    cur_.col = col_;
    if (i_ >= s_.size()) {
      cur_.tok = Tok::End;
      cur_.text = "<end of input>";
      return;
    }
    char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      cur_.tok = Tok::Ident;
      cur_.text = s_.substr(i_, j - i_);
      bump(j - i_);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      cur_.tok = Tok::Int;
      cur_.text = s_.substr(i_, j - i_);
      cur_.value = std::stol(cur_.text);
      bump(j - i_);
      return;
    }
    auto two = [&](const char* pat) {
      return i_ + 1 < s_.size() && s_[i_] == pat[0] && s_[i_ + 1] == pat[1];
    };
    if (two("<-") && i_ + 2 < s_.size() && s_[i_ + 2] == '>') {
      cur_.tok = Tok::Iff;
      cur_.text = "<->";
      bump(3);
      return;
    }
    if (two("->")) { cur_.tok = Tok::Arrow; cur_.text = "->"; bump(2); return; }
    if (two("!=")) { cur_.tok = Tok::Neq; cur_.text = "!="; bump(2); return; }
    switch (c) {
      case '(': cur_.tok = Tok::LParen; break;
      case ')': cur_.tok = Tok::RParen; break;
      case '.': cur_.tok = Tok::Dot; break;
      case ',': cur_.tok = Tok::Comma; break;
      case '=': cur_.tok = Tok::Eq; break;
      case '~': cur_.tok = Tok::Tilde; break;
      case '&': cur_.tok = Tok::Amp; break;
      case '|': cur_.tok = Tok::Pipe; break;
      default: {
        std::ostringstream os;
        os << "line " << line_ << ", column " << col_ << ": unexpected character '"
           << c << "'";
        throw Error(ErrorCode::Syntax, os.str());
      }
    }
    cur_.text = std::string(1, c);
    bump(1);
  }

  void skip() {
    for (;;) {
      while (i_ < s_.size() &&
             std::isspace(static_cast<unsigned char>(s_[i_])))
        bump(1);
      if (i_ < s_.size() && s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') bump(1);
        continue;
      }
      return;
    }
  }

  void bump(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < s_.size(); ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "atleast" || s == "allbut" ||
         s == "forall2" || s == "exists2" || s == "true" || s == "false";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Formula run() {
    Formula f = formula();
    if (lx_.peek().tok != Tok::End) lx_.fail("trailing input after formula");
    check_arities(f);
    return f;
  }

 private:
  Formula formula() { return iff(); }

  Formula iff() {
    Formula lhs = imp();
    if (lx_.peek().tok != Tok::Iff) return lhs;
    lx_.take();
    Formula rhs = iff();  // right-associative
    return mk_and({mk_or({mk_not(lhs), rhs}), mk_or({mk_not(rhs), lhs})});
  }

  Formula imp() {
    Formula lhs = disj();
    if (lx_.peek().tok != Tok::Arrow) return lhs;
    lx_.take();
    Formula rhs = imp();
    return mk_or({mk_not(std::move(lhs)), std::move(rhs)});
  }

  Formula disj() {
    Formulas subs{conj()};
    while (lx_.peek().tok == Tok::Pipe) {
      lx_.take();
      subs.push_back(conj());
    }
    return subs.size() == 1 ? subs.front() : mk_or(std::move(subs));
  }

  Formula conj() {
    Formulas subs{unary()};
    while (lx_.peek().tok == Tok::Amp) {
      lx_.take();
      subs.push_back(unary());
    }
    return subs.size() == 1 ? subs.front() : mk_and(std::move(subs));
  }

  Formula unary() {
    const Token& t = lx_.peek();
    switch (t.tok) {
      case Tok::Tilde:
        lx_.take();
        return mk_not(unary());
      case Tok::LParen: {
        lx_.take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Ident:
        if (t.text == "true") { lx_.take(); return mk_true(); }
        if (t.text == "false") { lx_.take(); return mk_false(); }
        if (t.text == "forall" || t.text == "exists") return ind_quant();
        if (t.text == "atleast" || t.text == "allbut") return count_quant();
        if (t.text == "forall2" || t.text == "exists2") return pred_quant();
        return atom();
      default:
        lx_.fail("expected a formula, found '" + t.text + "'");
    }
  }

  Formula ind_quant() {
    Token kw = lx_.take();
    std::string var = ident("variable");
    expect(Tok::Dot, "'.'");
    binders_.push_back(var);
    Formula body = unary();
    binders_.pop_back();
    return kw.text == "forall" ? mk_forall(var, std::move(body))
                               : mk_exists(var, std::move(body));
  }

  Formula count_quant() {
    Token kw = lx_.take();
    if (lx_.peek().tok != Tok::Int) lx_.fail("expected a count after '" + kw.text + "'");
    Token n = lx_.take();
    if (n.value < 1) lx_.fail("count must be >= 1");
    std::string var = ident("variable");
    expect(Tok::Dot, "'.'");
    binders_.push_back(var);
    Formula body = unary();
    binders_.pop_back();
    return kw.text == "atleast"
               ? mk_atleast(static_cast<int>(n.value), var, std::move(body))
               : mk_allbut(static_cast<int>(n.value), var, std::move(body));
  }

  Formula pred_quant() {
    Token kw = lx_.take();
    std::string pred = ident("predicate");
    expect(Tok::Dot, "'.'");
    Formula body = unary();
    int arity = infer_pred_arity(body, pred);
    return kw.text == "forall2"
               ? mk_forall_pred(pred, arity, std::move(body))
               : mk_exists_pred(pred, arity, std::move(body));
  }

  Formula atom() {
    std::string name = ident("identifier");
    if (lx_.peek().tok == Tok::LParen) {
      lx_.take();
      std::vector<Term> args{name_to_term(ident("term"))};
      while (lx_.peek().tok == Tok::Comma) {
        lx_.take();
        args.push_back(name_to_term(ident("term")));
      }
      expect(Tok::RParen, "')'");
      return mk_atom(name, std::move(args));
    }
    if (lx_.peek().tok == Tok::Eq || lx_.peek().tok == Tok::Neq) {
      bool neq = lx_.take().tok == Tok::Neq;
      Term lhs = name_to_term(name);
      Term rhs = name_to_term(ident("term"));
      Formula eq = mk_eq(lhs, rhs);
      return neq ? mk_not(std::move(eq)) : std::move(eq);
    }
    return mk_atom(name);
  }

  Term name_to_term(const std::string& n) {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (*it == n) return Term::var(n);
    return Term::konst(n);
  }

  std::string ident(const char* what) {
    if (lx_.peek().tok != Tok::Ident)
      lx_.fail(std::string("expected ") + what + ", found '" + lx_.peek().text + "'");
    Token t = lx_.take();
    if (is_keyword(t.text))
      lx_.fail("keyword '" + t.text + "' cannot be used as " + what);
    return t.text;
  }

  void expect(Tok tok, const char* what) {
    if (lx_.peek().tok != tok)
      lx_.fail(std::string("expected ") + what + ", found '" + lx_.peek().text + "'");
    lx_.take();
  }

  // Arity of a quantified predicate comes from its free occurrences in the
  // body; no occurrence means nullary.
  int infer_pred_arity(const Formula& body, const std::string& pred) {
    int arity = -1;
    scan_arity(body, pred, arity);
    return arity < 0 ? 0 : arity;
  }

  void scan_arity(const Formula& f, const std::string& pred, int& arity) {
    if (f.kind() == Kind::Atom && f.name() == pred) {
      int a = static_cast<int>(f.args().size());
      if (arity >= 0 && arity != a)
        throw Error(ErrorCode::Arity,
                    "predicate '" + pred + "' used with arities " +
                        std::to_string(arity) + " and " + std::to_string(a));
      arity = a;
      return;
    }
    if (is_pred_quantifier(f.kind()) && f.name() == pred) return;
    for (const Formula& k : f.kids()) scan_arity(k, pred, arity);
  }

  // Free predicates must be used with one arity throughout; bound predicates
  // were checked when their quantifier was built.
  void check_arities(const Formula& f) {
    std::map<std::string, int> seen;
    std::vector<std::string> bound;
    check_arities_go(f, seen, bound);
  }

  void check_arities_go(const Formula& f, std::map<std::string, int>& seen,
                        std::vector<std::string>& bound) {
    if (f.kind() == Kind::Atom) {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (*it == f.name()) return;
      int a = static_cast<int>(f.args().size());
      auto [pos, fresh] = seen.emplace(f.name(), a);
      if (!fresh && pos->second != a)
        throw Error(ErrorCode::Arity,
                    "predicate '" + f.name() + "' used with arities " +
                        std::to_string(pos->second) + " and " + std::to_string(a));
      return;
    }
    if (is_pred_quantifier(f.kind())) {
      bound.push_back(f.name());
      check_arities_go(f.child(0), seen, bound);
      bound.pop_back();
      return;
    }
    for (const Formula& k : f.kids()) check_arities_go(k, seen, bound);
  }

  Lexer lx_;
  std::vector<std::string> binders_;
};

// Printing --------------------------------------------------------------------

// Precedence levels: Or = 1, And = 2, unary = 3.
constexpr int kPrecOr = 1;
constexpr int kPrecAnd = 2;
constexpr int kPrecUnary = 3;

bool atom_like(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::False:
    case Kind::Atom:
    case Kind::Eq:
      return true;
    case Kind::Not:
      return f.child(0).kind() == Kind::Eq;  // printed as '!='
    default:
      return false;
  }
}

void pr(const Formula& f, int ctx, std::ostringstream& os);

void pr_quant_body(const Formula& f, std::ostringstream& os) {
  if (atom_like(f)) {
    pr(f, kPrecUnary, os);
  } else {
    os << '(';
    pr(f, 0, os);
    os << ')';
  }
}

void pr(const Formula& f, int ctx, std::ostringstream& os) {
  switch (f.kind()) {
    case Kind::True: os << "true"; return;
    case Kind::False: os << "false"; return;
    case Kind::Atom:
      os << f.name();
      if (!f.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ", ";
          os << f.args()[i].name;
        }
        os << ')';
      }
      return;
    case Kind::Eq:
      os << f.args()[0].name << " = " << f.args()[1].name;
      return;
    case Kind::Not:
      if (f.child(0).kind() == Kind::Eq) {
        const Formula& eq = f.child(0);
        os << eq.args()[0].name << " != " << eq.args()[1].name;
        return;
      }
      os << '~';
      if (atom_like(f.child(0)) && f.child(0).kind() != Kind::Eq) {
        pr(f.child(0), kPrecUnary, os);
      } else {
        os << '(';
        pr(f.child(0), 0, os);
        os << ')';
      }
      return;
    case Kind::And:
    case Kind::Or: {
      int prec = f.kind() == Kind::And ? kPrecAnd : kPrecOr;
      const char* sep = f.kind() == Kind::And ? " & " : " | ";
      bool parens = prec < ctx;
      if (parens) os << '(';
      for (std::size_t i = 0; i < f.num_children(); ++i) {
        if (i) os << sep;
        pr(f.child(i), prec + 1, os);
      }
      if (parens) os << ')';
      return;
    }
    case Kind::Forall:
    case Kind::Exists: {
      bool parens = ctx > 0;
      if (parens) os << '(';
      os << (f.kind() == Kind::Forall ? "forall " : "exists ") << f.name() << ". ";
      pr_quant_body(f.child(0), os);
      if (parens) os << ')';
      return;
    }
    case Kind::AtLeast:
    case Kind::AllBut: {
      bool parens = ctx > 0;
      if (parens) os << '(';
      os << (f.kind() == Kind::AtLeast ? "atleast " : "allbut ") << f.count()
         << ' ' << f.name() << ". ";
      pr_quant_body(f.child(0), os);
      if (parens) os << ')';
      return;
    }
    case Kind::ForallPred:
    case Kind::ExistsPred: {
      bool parens = ctx > 0;
      if (parens) os << '(';
      os << (f.kind() == Kind::ForallPred ? "forall2 " : "exists2 ") << f.name()
         << ". ";
      pr_quant_body(f.child(0), os);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

Formula parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Formula& f) {
  std::ostringstream os;
  pr(f, 0, os);
  return os.str();
}

std::string print(const Term& t) { return t.name; }

}  // namespace monel
