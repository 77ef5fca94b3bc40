#pragma once

// Shared builders for the algebra corpus used across the test suites.

#include <memory>

#include "impasm/algebra.hpp"
#include "impasm/assembly.hpp"
#include "impasm/term.hpp"

namespace impasm::testsup {

inline Lattice m3_lattice() {
  return Lattice::from_order_pairs(
      {"bot", "x", "y", "z", "top"},
      {{"bot", "x"}, {"bot", "y"}, {"bot", "z"}, {"x", "top"}, {"y", "top"}, {"z", "top"}});
}

// two-point Boolean algebra, S = {1}
inline AlgebraPtr b2() {
  static AlgebraPtr a = [] {
    auto s = derive_heyting(Lattice::chain({"0", "1"}));
    Mask sep = bit(s.lat().elem("1"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// three-chain Heyting algebra, S = {h, 1}
inline AlgebraPtr h3() {
  static AlgebraPtr a = [] {
    auto s = derive_heyting(Lattice::chain({"0", "h", "1"}));
    Mask sep = bit(s.lat().elem("h")) | bit(s.lat().elem("1"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// h3 with the smallest separator {1}
inline AlgebraPtr h3_top() {
  static AlgebraPtr a = [] {
    auto s = derive_heyting(Lattice::chain({"0", "h", "1"}));
    Mask sep = bit(s.lat().elem("1"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// four-chain Heyting algebra, S = {y, 1}
inline AlgebraPtr c4() {
  static AlgebraPtr a = [] {
    auto s = derive_heyting(Lattice::chain({"0", "x", "y", "1"}));
    Mask sep = bit(s.lat().elem("y")) | bit(s.lat().elem("1"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// 2x2 Boolean square, S = {p, top}
inline AlgebraPtr b22() {
  static AlgebraPtr a = [] {
    auto lat = Lattice::from_order_pairs(
        {"bot", "p", "q", "top"},
        {{"bot", "p"}, {"bot", "q"}, {"p", "top"}, {"q", "top"}});
    auto s = derive_heyting(lat);
    Mask sep = bit(s.lat().elem("p")) | bit(s.lat().elem("top"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// powerset algebra of the one-point combinatory algebra: carrier {o, star}
// (empty set and {*}), S = nonempty subsets = {star}
inline AlgebraPtr ca1() {
  static AlgebraPtr a = [] {
    auto s = derive_heyting(Lattice::chain({"o", "star"}));
    Mask sep = bit(s.lat().elem("star"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// Boolean-square carrier with a non-Heyting implication that is NOT
// compatible with joins: meet(p->bot, q->bot) = q while top->bot = bot.
inline AlgebraPtr nb22() {
  static AlgebraPtr a = [] {
    auto lat = Lattice::from_order_pairs(
        {"bot", "p", "q", "top"},
        {{"bot", "p"}, {"bot", "q"}, {"p", "top"}, {"q", "top"}});
    auto e = [&](const char* n) { return lat.elem(n); };
    int n = lat.size();
    std::vector<std::vector<Elem>> imp(n, std::vector<Elem>(n));
    auto row = [&](const char* src, const char* ib, const char* ip, const char* iq,
                   const char* it) {
      imp[e(src)][e("bot")] = e(ib);
      imp[e(src)][e("p")] = e(ip);
      imp[e(src)][e("q")] = e(iq);
      imp[e(src)][e("top")] = e(it);
    };
    row("bot", "top", "top", "top", "top");
    row("p", "q", "top", "q", "top");
    row("q", "top", "top", "top", "top");
    row("top", "bot", "p", "q", "top");
    ImplicativeStructure s(lat, std::move(imp));
    Mask sep = bit(s.lat().elem("top"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

// four-chain with a non-Heyting implication (1->y = x, y->x = x); joins
// compatible (chain) but encoded_meet(y,y) = x /= y
inline AlgebraPtr nc4() {
  static AlgebraPtr a = [] {
    auto lat = Lattice::chain({"0", "x", "y", "1"});
    auto e = [&](const char* n) { return lat.elem(n); };
    int n = lat.size();
    std::vector<std::vector<Elem>> imp(n, std::vector<Elem>(n));
    auto row = [&](const char* src, const char* i0, const char* ix, const char* iy,
                   const char* i1) {
      imp[e(src)][e("0")] = e(i0);
      imp[e(src)][e("x")] = e(ix);
      imp[e(src)][e("y")] = e(iy);
      imp[e(src)][e("1")] = e(i1);
    };
    row("0", "1", "1", "1", "1");
    row("x", "0", "1", "1", "1");
    row("y", "0", "x", "1", "1");
    row("1", "0", "x", "x", "1");
    ImplicativeStructure s(lat, std::move(imp));
    Mask sep = bit(s.lat().elem("x")) | bit(s.lat().elem("y")) | bit(s.lat().elem("1"));
    return std::make_shared<const ImplicativeAlgebra>(std::move(s), sep);
  }();
  return a;
}

inline Elem el(const AlgebraPtr& a, const char* n) { return a->lat().elem(n); }

inline Mask msk(const AlgebraPtr& a, std::initializer_list<const char*> names) {
  Mask m = 0;
  for (const char* n : names) m |= bit(a->lat().elem(n));
  return m;
}

inline AsmPtr asm_of(const AlgebraPtr& a, std::vector<std::string> pts,
                     std::initializer_list<const char*> exist) {
  std::vector<Elem> ex;
  for (const char* n : exist) ex.push_back(a->lat().elem(n));
  return make_assembly(a, std::move(pts), std::move(ex));
}

// the five Heyting corpus algebras of the acceptance suite
inline std::vector<AlgebraPtr> heyting_corpus() {
  return {b2(), h3(), c4(), b22(), ca1()};
}

inline bool equal_terms(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var:
    case Term::Kind::Quote:
      return a->name == b->name;
    case Term::Kind::Const:
      return a->cname == b->cname;
    case Term::Kind::Lam:
      return a->params == b->params && equal_terms(a->a, b->a);
    case Term::Kind::LetIn:
      return a->name == b->name && equal_terms(a->a, b->a) && equal_terms(a->b, b->b);
    case Term::Kind::App:
    case Term::Kind::MeetPair:
    case Term::Kind::Pair:
      return equal_terms(a->a, b->a) && equal_terms(a->b, b->b);
  }
  return false;
}

}  // namespace impasm::testsup
