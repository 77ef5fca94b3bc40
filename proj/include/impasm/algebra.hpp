#pragma once

#include <map>
#include <memory>
#include <optional>

#include "impasm/lattice.hpp"
#include "impasm/term.hpp"

namespace impasm {

/// An implicative structure plus a separator, given as a bitmask of the
/// carrier.  Construction from generators closes the set upward; explicit
/// member sets are kept verbatim so validation can report closure failures.
class ImplicativeAlgebra {
 public:
  /// `members` taken verbatim.
  ImplicativeAlgebra(ImplicativeStructure str, Mask members);
  /// Upward closure of `gens`.
  static ImplicativeAlgebra from_generators(ImplicativeStructure str, Mask gens);

  const ImplicativeStructure& str() const { return str_; }
  const Lattice& lat() const { return str_.lat(); }
  int size() const { return str_.size(); }
  Mask sep() const { return sep_; }
  bool in_sep(Elem e) const { return has(sep_, e); }

  Elem imp(Elem a, Elem b) const { return str_.imp(a, b); }
  Elem app(Elem a, Elem b) const { return str_.app(a, b); }
  Elem encoded_meet(Elem a, Elem b) const { return str_.encoded_meet(a, b); }
  Elem e_exists(Mask u) const { return str_.e_exists(u); }

  Elem interp_I() const { return interp_i_; }
  Elem interp_K() const { return interp_k_; }
  Elem interp_S() const { return interp_s_; }

 private:
  ImplicativeStructure str_;
  Mask sep_;
  Elem interp_i_, interp_k_, interp_s_;
};

using AlgebraPtr = std::shared_ptr<const ImplicativeAlgebra>;

/// Environment binding free variables to algebra elements.
using Env = std::map<std::string, Elem, std::less<>>;

/// Denotational interpretation into an implicative structure.  Abstraction
/// quantifies the binder over the whole carrier; application takes the meet
/// of all consequents licensed by the implication.
Elem interp(const TermPtr& t, const Env& env, const ImplicativeStructure& a);
Elem interp(const TermPtr& t, const Env& env, const ImplicativeAlgebra& a);
Elem interp_closed(const TermPtr& t, const ImplicativeStructure& a);

/// Checks interp(App(t, s)) <= interp(body of t with s substituted) for a
/// lambda `t` and closed `s` (the half of beta that holds denotationally).
ValidationReport beta_soundness_check(const TermPtr& t, const TermPtr& s,
                                      const ImplicativeStructure& a);

/// Lists violations of the separator invariants: upward closure, application
/// closure, and membership of the K and S interpretations.  A separator equal
/// to the whole carrier is valid but flagged with a warning.
ValidationReport validate_separator(const ImplicativeAlgebra& a);

/// A family of truth values indexed by a finite set (an object of the fibre
/// over its index).
struct Family {
  std::vector<std::string> index;
  std::vector<Elem> values;

  size_t size() const { return index.size(); }
};

struct EntailResult {
  bool holds;
  Elem witness;  // meet over x of (u_x -> v_x)
};

/// Realizes the fibre preorder: witness = meet over the index of pointwise
/// implications, decision = separator membership.  Throws on index mismatch.
EntailResult fam_entails(const Family& u, const Family& v, const ImplicativeAlgebra& a);

struct IsoResult {
  bool holds;
  Elem fwd, bwd;
};
IsoResult fam_iso(const Family& u, const Family& v, const ImplicativeAlgebra& a);

/// Valuation: nonempty subsets of M at every index point.
struct Valuation {
  std::vector<std::string> index;
  std::vector<Mask> values;
};

/// The family x |-> e_exists(nu(x)).
Family e_exists_valuation(const Valuation& nu, const ImplicativeStructure& a);

struct JoinsCompatResult {
  bool compatible;
  Mask counter_set = 0;  // valid when !compatible
  Elem counter_b = -1;
};

/// Checks meet over a in A of (a->b) == join(A) -> b, exhaustively over all
/// subsets when the carrier has at most 12 elements, otherwise over a
/// deterministic sample of at most `size_cap` subsets.
JoinsCompatResult compatible_with_joins(const ImplicativeStructure& a,
                                        int size_cap = 4096);

}  // namespace impasm
