#pragma once

#include "impasm/excomp.hpp"
#include "impasm/regcomp.hpp"

namespace impasm {

/// A set with a symmetric-transitive (not necessarily reflexive) non-standard
/// equality valued in the algebra.  eq(x,x) is the existence predicate.
struct ImplicativeSet {
  AlgebraPtr alg;
  std::vector<std::string> carrier;
  std::vector<std::vector<Elem>> eq;

  int size() const { return static_cast<int>(carrier.size()); }
  int point(std::string_view n) const;
  Elem ex(int i) const { return eq[i][i]; }
};

using ISetPtr = std::shared_ptr<const ImplicativeSet>;

ISetPtr make_implicative_set(AlgebraPtr alg, std::vector<std::string> carrier,
                             std::vector<std::vector<Elem>> eq);
bool same_iset(const ImplicativeSet& a, const ImplicativeSet& b);

/// Sym and Trans meets as displayed; membership in S decides validity.
Elem sym_element(const ImplicativeSet& e);
Elem trans_element(const ImplicativeSet& e);
ValidationReport validate_implicative_set(const ImplicativeSet& e);

struct GhostPartition {
  std::vector<int> ngh;                    // eq(x,x) in S
  std::vector<int> ghosts;                 // the complement
  std::vector<std::pair<int, int>> equ;    // eq(x,x') in S
};
GhostPartition ghost_partition(const ImplicativeSet& e);

/// Morphism of Set[A]: an extensional, strict, single-valued, total relation.
struct FunctionalRelation {
  ISetPtr src, dst;
  std::vector<std::vector<Elem>> values;
};

Elem ext_element(const FunctionalRelation& f);
Elem str_element(const FunctionalRelation& f);
Elem sv_element(const FunctionalRelation& f);
Elem tot_element(const FunctionalRelation& f);
ValidationReport validate_frel(const FunctionalRelation& f);

FunctionalRelation id_frel(ISetPtr e);
FunctionalRelation compose_frel(const FunctionalRelation& f,
                                const FunctionalRelation& g);

struct FrelEquivResult {
  bool equivalent = false;   // mutual entailment over the product index
  Elem fwd = -1, bwd = -1;
  bool one_sided = false;    // the forward entailment alone
  bool one_sided_agrees = false;  // one_sided == equivalent
};
FrelEquivResult frel_equiv(const FunctionalRelation& f, const FunctionalRelation& g);

/// One tracker-term verification: the quoted lambda-term must interpret into
/// the separator and land below its target meet, provided the side data
/// (trackers of the structure maps, density witnesses) exist.
struct TrackerCheck {
  std::string name;
  bool side_ok = false;
  std::string note;
  Elem value = -1;
  Elem target = -1;
  bool in_sep = false;
  bool below = false;
  bool pass() const { return side_ok && in_sep && below; }
};

/// The object part of K: X0 with |x = x'| = e(x) meet e(x') meet the
/// implicative existence of the edge valuation.
ISetPtr K_object(const GrpdPtr& x);
/// The relation R_f(x,y) = e(x) meet e(y) meet exists nu_Y(y, f0 x).
FunctionalRelation K_morphism(const QuiverMorphism& f);

/// Quoted trackers of the implicative-set lemma (Sym, Trans) on a groupoid.
std::vector<TrackerCheck> groupoid_tracker_checks(const GrpdPtr& x);
/// Quoted trackers for R_f: Rf-implies, extensional, strict, single-valued,
/// total.
std::vector<TrackerCheck> morphism_tracker_checks(const QuiverMorphism& f);

struct FullnessResult {
  std::optional<QuiverMorphism> witness;
  bool theorem_violation = false;  // exhaustive fallback also failed
  bool guided_ok = false;          // the choice construction already worked
  TrackerCheck phi_check;          // the case-map of the fullness proof
};
/// Extracts a quiver morphism representing F through the choice construction
/// (lexicographic tie-breaking), with exhaustive fallback.
FullnessResult K_fullness_search(const GrpdPtr& x, const GrpdPtr& y,
                                 const FunctionalRelation& f);

struct HatGroupoid {
  GrpdPtr grpd;
  PartialValuation nu;      // over the carrier of E, nonzero on Equ only
  std::vector<int> ngh;     // carrier points of the vertex assembly
  std::vector<Elem> c;      // chosen member of nu(x,x) per ngh position
};
/// The pseudo-groupoid of a (dense, algebraic) M over an implicative set.
/// When no valuation is supplied one is induced from a density witness of M.
HatGroupoid hat_groupoid(const ISetPtr& e, Mask m,
                         const PartialValuation* nu = nullptr);

/// K(x, x') = x = x' as a relation from K(hat) to E.
FunctionalRelation K_relation(const ISetPtr& e, const HatGroupoid& hat);

/// Quoted trackers around the hat construction: lem:pseudo sigma/tau,
/// lem:fun Ext'/Str'/Tot', prop:inj.
std::vector<TrackerCheck> hat_tracker_checks(const ISetPtr& e, const HatGroupoid& hat);

struct Decision {
  bool holds = false;
  Elem witness = -1;
};
Decision internal_injective(const FunctionalRelation& f);
Decision internal_surjective(const FunctionalRelation& f);

}  // namespace impasm
