#include "impasm/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace impasm {

TermPtr Term::var(std::string n) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->name = std::move(n);
  return t;
}
TermPtr Term::lam(std::vector<std::string> params, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Lam;
  t->params = std::move(params);
  t->a = std::move(body);
  return t;
}
TermPtr Term::app(TermPtr f, TermPtr x) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->a = std::move(f);
  t->b = std::move(x);
  return t;
}
TermPtr Term::meet_pair(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::MeetPair;
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}
TermPtr Term::let_in(std::string n, TermPtr bound, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::LetIn;
  t->name = std::move(n);
  t->a = std::move(bound);
  t->b = std::move(body);
  return t;
}
TermPtr Term::pair(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Pair;
  t->a = std::move(l);
  t->b = std::move(r);
  return t;
}
TermPtr Term::constant(ConstName c) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Const;
  t->cname = c;
  return t;
}
TermPtr Term::quote(std::string elem) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Quote;
  t->name = std::move(elem);
  return t;
}

namespace {

struct Token {
  enum Kind { Ident, Dummy, Lam, Let, In, Dot, Eq, LParen, RParen, LAngle,
              RAngle, Comma, Meet, Quote, Const, End } kind;
  std::string text;
  Term::ConstName cname = Term::ConstName::I;
  int line, col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t k) {
    for (size_t j = 0; j < k; ++j) {
      if (i + j < text.size() && text[i + j] == '\n') { ++line; col = 1; }
      else ++col;
    }
    i += k;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
    int tl = line, tc = col;
    auto push = [&](Token::Kind k, std::string s) {
      out.push_back({k, std::move(s), Term::ConstName::I, tl, tc});
    };
    if (c == '(') { push(Token::LParen, "("); advance(1); continue; }
    if (c == ')') { push(Token::RParen, ")"); advance(1); continue; }
    if (c == '<') { push(Token::LAngle, "<"); advance(1); continue; }
    if (c == '>') { push(Token::RAngle, ">"); advance(1); continue; }
    if (c == ',') { push(Token::Comma, ","); advance(1); continue; }
    if (c == '.') { push(Token::Dot, "."); advance(1); continue; }
    if (c == '=') { push(Token::Eq, "="); advance(1); continue; }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '\\') {
      push(Token::Meet, "/\\");
      advance(2);
      continue;
    }
    if (c == '#') {
      size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      if (j == i + 1) throw ParseError("expected element id after '#'", tl, tc);
      push(Token::Quote, std::string(text.substr(i + 1, j - i - 1)));
      advance(j - i);
      continue;
    }
    if (c == '_') {
      if (i + 1 < text.size() && ident_char(text[i + 1]))
        throw ParseError("identifiers may not start with '_'", tl, tc);
      push(Token::Dummy, "_");
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (word == "lam") push(Token::Lam, word);
      else if (word == "let") push(Token::Let, word);
      else if (word == "in") push(Token::In, word);
      else if (word == "I") { push(Token::Const, word); out.back().cname = Term::ConstName::I; }
      else if (word == "K") { push(Token::Const, word); out.back().cname = Term::ConstName::K; }
      else if (word == "S") { push(Token::Const, word); out.back().cname = Term::ConstName::S; }
      else if (word == "pi0") { push(Token::Const, word); out.back().cname = Term::ConstName::Pi0; }
      else if (word == "pi1") { push(Token::Const, word); out.back().cname = Term::ConstName::Pi1; }
      else if (word == "pi2") { push(Token::Const, word); out.back().cname = Term::ConstName::Pi2; }
      else push(Token::Ident, word);
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Token::End, "", Term::ConstName::I, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TermPtr parse() {
    TermPtr t = term();
    expect(Token::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int dummy_counter_ = 0;

  const Token& cur() const { return toks_[pos_]; }
  bool at(Token::Kind k) const { return cur().kind == k; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, cur().line, cur().col);
    ++pos_;
  }

  // term := lam | let | meet
  TermPtr term() {
    if (at(Token::Lam)) {
      take();
      std::vector<std::string> params;
      while (at(Token::Ident) || at(Token::Dummy)) {
        Token t = take();
        params.push_back(t.kind == Token::Dummy
                             ? "_#" + std::to_string(++dummy_counter_)
                             : t.text);
      }
      if (params.empty())
        throw ParseError("lam needs at least one binder", cur().line, cur().col);
      expect(Token::Dot, "'.'");
      return Term::lam(std::move(params), term());
    }
    if (at(Token::Let)) {
      take();
      if (!at(Token::Ident))
        throw ParseError("expected identifier after let", cur().line, cur().col);
      std::string n = take().text;
      expect(Token::Eq, "'='");
      TermPtr bound = term();
      expect(Token::In, "'in'");
      return Term::let_in(std::move(n), std::move(bound), term());
    }
    return meet();
  }

  // meet := app ('/\' meet)?   right-associative
  TermPtr meet() {
    TermPtr l = application();
    if (at(Token::Meet)) {
      take();
      return Term::meet_pair(std::move(l), meet());
    }
    return l;
  }

  TermPtr application() {
    TermPtr t = atom();
    while (starts_atom()) t = Term::app(std::move(t), atom());
    return t;
  }

  bool starts_atom() const {
    switch (cur().kind) {
      case Token::Ident: case Token::Const: case Token::Quote:
      case Token::LParen: case Token::LAngle:
        return true;
      default:
        return false;
    }
  }

  TermPtr atom() {
    switch (cur().kind) {
      case Token::Ident: return Term::var(take().text);
      case Token::Const: return Term::constant(take().cname);
      case Token::Quote: return Term::quote(take().text);
      case Token::LParen: {
        take();
        TermPtr t = term();
        expect(Token::RParen, "')'");
        return t;
      }
      case Token::LAngle: {
        take();
        TermPtr l = term();
        expect(Token::Comma, "','");
        TermPtr r = term();
        expect(Token::RAngle, "'>'");
        return Term::pair(std::move(l), std::move(r));
      }
      default:
        throw ParseError("expected a term", cur().line, cur().col);
    }
  }
};

const char* const_text(Term::ConstName c) {
  switch (c) {
    case Term::ConstName::I: return "I";
    case Term::ConstName::K: return "K";
    case Term::ConstName::S: return "S";
    case Term::ConstName::Pi0: return "pi0";
    case Term::ConstName::Pi1: return "pi1";
    case Term::ConstName::Pi2: return "pi2";
  }
  return "?";
}

bool dummy_name(const std::string& n) {
  return !n.empty() && n[0] == '_';
}

// precedence levels for printing: 0 = term, 1 = meet operand, 2 = app head,
// 3 = app argument / atom
void print(const TermPtr& t, int level, std::string& out) {
  auto wrap = [&](bool need, auto&& body) {
    if (need) out += "(";
    body();
    if (need) out += ")";
  };
  switch (t->kind) {
    case Term::Kind::Var: out += t->name; return;
    case Term::Kind::Quote: out += "#" + t->name; return;
    case Term::Kind::Const: out += const_text(t->cname); return;
    case Term::Kind::Pair:
      out += "<";
      print(t->a, 0, out);
      out += ", ";
      print(t->b, 0, out);
      out += ">";
      return;
    case Term::Kind::Lam:
      wrap(level > 0, [&] {
        out += "lam";
        for (const auto& p : t->params) out += dummy_name(p) ? " _" : " " + p;
        out += " . ";
        print(t->a, 0, out);
      });
      return;
    case Term::Kind::LetIn:
      wrap(level > 0, [&] {
        out += "let " + t->name + " = ";
        print(t->a, 0, out);
        out += " in ";
        print(t->b, 0, out);
      });
      return;
    case Term::Kind::MeetPair:
      wrap(level > 1, [&] {
        print(t->a, 2, out);
        out += " /\\ ";
        print(t->b, 1, out);
      });
      return;
    case Term::Kind::App:
      wrap(level > 2, [&] {
        print(t->a, 2, out);
        out += " ";
        print(t->b, 3, out);
      });
      return;
  }
}

void collect_free(const TermPtr& t, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  auto is_bound = [&](const std::string& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  switch (t->kind) {
    case Term::Kind::Var:
      if (!is_bound(t->name) &&
          std::find(out.begin(), out.end(), t->name) == out.end())
        out.push_back(t->name);
      return;
    case Term::Kind::Quote:
    case Term::Kind::Const:
      return;
    case Term::Kind::Lam: {
      size_t mark = bound.size();
      for (const auto& p : t->params) bound.push_back(p);
      collect_free(t->a, bound, out);
      bound.resize(mark);
      return;
    }
    case Term::Kind::LetIn: {
      collect_free(t->a, bound, out);
      bound.push_back(t->name);
      collect_free(t->b, bound, out);
      bound.pop_back();
      return;
    }
    case Term::Kind::App:
    case Term::Kind::MeetPair:
    case Term::Kind::Pair:
      collect_free(t->a, bound, out);
      collect_free(t->b, bound, out);
      return;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string n = base;
  while (avoid.count(n)) n += "'";
  return n;
}

}  // namespace

TermPtr parse_term(std::string_view text) {
  return Parser(lex(text)).parse();
}

std::string pretty(const TermPtr& t) {
  std::string out;
  print(t, 0, out);
  return out;
}

std::vector<std::string> free_vars(const TermPtr& t) {
  std::vector<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& value) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == name ? value : t;
    case Term::Kind::Quote:
    case Term::Kind::Const:
      return t;
    case Term::Kind::App:
      return Term::app(substitute(t->a, name, value), substitute(t->b, name, value));
    case Term::Kind::MeetPair:
      return Term::meet_pair(substitute(t->a, name, value),
                             substitute(t->b, name, value));
    case Term::Kind::Pair:
      return Term::pair(substitute(t->a, name, value), substitute(t->b, name, value));
    case Term::Kind::LetIn: {
      TermPtr bound = substitute(t->a, name, value);
      if (t->name == name) return Term::let_in(t->name, bound, t->b);
      auto fv = free_vars(value);
      if (std::find(fv.begin(), fv.end(), t->name) != fv.end()) {
        std::set<std::string> avoid(fv.begin(), fv.end());
        auto bfv = free_vars(t->b);
        avoid.insert(bfv.begin(), bfv.end());
        std::string n2 = fresh_name(t->name, avoid);
        TermPtr body = substitute(t->b, t->name, Term::var(n2));
        return Term::let_in(n2, bound, substitute(body, name, value));
      }
      return Term::let_in(t->name, bound, substitute(t->b, name, value));
    }
    case Term::Kind::Lam: {
      if (std::find(t->params.begin(), t->params.end(), name) != t->params.end())
        return t;
      auto fv = free_vars(value);
      std::vector<std::string> params = t->params;
      TermPtr body = t->a;
      for (auto& p : params) {
        if (std::find(fv.begin(), fv.end(), p) == fv.end()) continue;
        std::set<std::string> avoid(fv.begin(), fv.end());
        auto bfv = free_vars(body);
        avoid.insert(bfv.begin(), bfv.end());
        for (const auto& q : params) avoid.insert(q);
        std::string p2 = fresh_name(p, avoid);
        body = substitute(body, p, Term::var(p2));
        p = p2;
      }
      return Term::lam(std::move(params), substitute(body, name, value));
    }
  }
  return t;
}

TermPtr const_definition(Term::ConstName c) {
  switch (c) {
    case Term::ConstName::I: return parse_term("lam x . x");
    case Term::ConstName::K: return parse_term("lam x y . x");
    case Term::ConstName::S: return parse_term("lam x y z . x z (y z)");
    case Term::ConstName::Pi0: return parse_term("lam p . p (lam x y . x)");
    case Term::ConstName::Pi1:
      return parse_term("lam p . (p (lam x y . y)) (lam x y . x)");
    case Term::ConstName::Pi2:
      return parse_term("lam p . (p (lam x y . y)) (lam x y . y)");
  }
  throw Error("unknown combinator");
}

}  // namespace impasm
