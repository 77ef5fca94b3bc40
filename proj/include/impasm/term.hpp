#pragma once

#include <memory>
#include <string>
#include <vector>

#include "impasm/lattice.hpp"

namespace impasm {

struct ParseError : Error {
  int line, col;
  ParseError(std::string msg, int line_, int col_)
      : Error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), col(col_) {}
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// AST of the tracker lambda-calculus.
///
/// Grammar accepted by parse_term:
///   lam x y . body        multi-binder abstraction, `_` binds a dummy
///   t u                   application, left-associative
///   t /\ u                encoded meet, right-associative, looser than app
///   let x = t in u        macro, expanded by substitution before interpretation
///   I K S pi0 pi1 pi2     named combinators
///   <t, u>                pairing, read as lam z . z t u
///   #elem                 quoted algebra element
struct Term {
  enum class Kind { Var, Lam, App, MeetPair, LetIn, Pair, Const, Quote };
  enum class ConstName { I, K, S, Pi0, Pi1, Pi2 };

  Kind kind;
  std::string name;                 // Var, LetIn binder, Quote element id
  std::vector<std::string> params;  // Lam
  TermPtr a, b;                     // children (Lam body in a; LetIn bound=a, body=b)
  ConstName cname = ConstName::I;

  static TermPtr var(std::string n);
  static TermPtr lam(std::vector<std::string> params, TermPtr body);
  static TermPtr app(TermPtr f, TermPtr x);
  static TermPtr meet_pair(TermPtr l, TermPtr r);
  static TermPtr let_in(std::string n, TermPtr bound, TermPtr body);
  static TermPtr pair(TermPtr l, TermPtr r);
  static TermPtr constant(ConstName c);
  static TermPtr quote(std::string elem);
};

TermPtr parse_term(std::string_view text);
std::string pretty(const TermPtr& t);

/// Capture-avoiding substitution of `value` for free occurrences of `name`.
TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& value);

/// Free variables in order of first occurrence.
std::vector<std::string> free_vars(const TermPtr& t);

/// The defining term of a named combinator (I = lam x . x, ...).
TermPtr const_definition(Term::ConstName c);

}  // namespace impasm
