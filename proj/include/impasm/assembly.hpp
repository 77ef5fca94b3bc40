#pragma once

#include <optional>
#include <span>

#include "impasm/algebra.hpp"

namespace impasm {

/// Finite carrier with a separator-valued existence predicate.
class Assembly {
 public:
  /// Throws unless every existence value lands in the separator.
  Assembly(AlgebraPtr alg, std::vector<std::string> carrier, std::vector<Elem> exist);
  /// Skips the separator check (used to probe untracked/illegal configurations).
  static Assembly unchecked(AlgebraPtr alg, std::vector<std::string> carrier,
                            std::vector<Elem> exist);

  const AlgebraPtr& alg() const { return alg_; }
  int size() const { return static_cast<int>(carrier_.size()); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& point_name(int i) const { return carrier_.at(i); }
  int point(std::string_view n) const;  // throws on unknown point
  Elem exist(int i) const { return exist_.at(i); }
  const std::vector<Elem>& exists() const { return exist_; }

  /// True when every existence value lies inside `m` (an M-assembly).
  bool valued_in(Mask m) const;

 private:
  Assembly() = default;
  AlgebraPtr alg_;
  std::vector<std::string> carrier_;
  std::vector<Elem> exist_;
};

using AsmPtr = std::shared_ptr<const Assembly>;

AsmPtr make_assembly(AlgebraPtr alg, std::vector<std::string> carrier,
                     std::vector<Elem> exist);

/// A set map between assembly carriers; trackedness is decided on demand.
struct AsmMorphism {
  AsmPtr src, dst;
  std::vector<int> map;

  int operator()(int i) const { return map.at(i); }
};

bool same_assembly(const Assembly& a, const Assembly& b);
bool same_morphism(const AsmMorphism& f, const AsmMorphism& g);

AsmMorphism identity_morphism(AsmPtr x);
/// g after f; throws when the middle objects differ.
AsmMorphism compose(const AsmMorphism& g, const AsmMorphism& f);

/// Tracking meet and its separator verdict.
EntailResult is_tracked(const AsmMorphism& f);
EntailResult is_tracked(const std::vector<int>& map, const Assembly& x, const Assembly& y);

bool is_mono(const AsmMorphism& f);          // injective on carriers
bool is_surjective(const AsmMorphism& f);

struct IsoCheck {
  bool iso;
  std::optional<AsmMorphism> inverse;
};
IsoCheck is_iso(const AsmMorphism& f);

/// The isomorphism with the fibre of families: an assembly is exactly a
/// family of separator elements.
Family xi(const Assembly& x);
AsmPtr xi_inv(AlgebraPtr alg, const Family& u);  // throws when a value escapes S

/// Family obtained by reindexing xi(Y) along the carrier map of f.
Family pullback_family(const std::vector<int>& map, const Assembly& x, const Assembly& y);

struct LimitCone2 {
  AsmPtr apex;
  AsmMorphism p0, p1;
};
struct EqualizerCone {
  AsmPtr apex;
  AsmMorphism incl;
};

AsmPtr terminal_assembly(AlgebraPtr alg);
LimitCone2 product(AsmPtr x, AsmPtr y);
EqualizerCone equalizer(const AsmMorphism& f, const AsmMorphism& g);
/// Pullback of f : X -> Z along g : Y -> Z, carriers by the forgetful functor,
/// existence inherited from the product.
LimitCone2 pullback(const AsmMorphism& f, const AsmMorphism& g);

struct KernelPair {
  AsmPtr ker;
  AsmMorphism p0, p1;
};
KernelPair kernel_pair(const AsmMorphism& f);  // throws on untracked f

struct ImageFactorization {
  AsmPtr im;
  AsmMorphism fbar;  // X ->> Im, x |-> [x]
  AsmMorphism iota;  // Im >-> Y, [x] |-> f(x)
  std::vector<std::vector<int>> classes;  // class index -> member points of X
};
/// Image factorization: carrier of Im is the set of fibres of f, existence is
/// the implicative existence of the member existences.  Throws on untracked f.
ImageFactorization image_factorization(const AsmMorphism& f);

bool is_regular_epi(const AsmMorphism& f);  // surjective and iota is iso

/// The valuation [x] |-> { e_X(x') | x' in [x] } on the image carrier.
Valuation induced_valuation(const AsmMorphism& f);

struct ValuationCover {
  AsmPtr hat;            // sum carrier, exist(x,m) = m
  AsmPtr check;          // X with constant existence m0
  AsmMorphism g;         // hat ->> check
  ImageFactorization factor;
  IsoResult iso;         // (X, e_exists(nu)) vs existence family of Im(g)
};
/// Prop-style cover of a valuation; `index` are the carrier names of X.
ValuationCover valuation_cover(AlgebraPtr alg, const std::vector<std::string>& index,
                               const Valuation& nu, Elem m0);

/// Pre-embedding for the chaotic adjunction: the naturality square against the
/// constant-top assembly is a set pullback, i.e. the comparison map into the
/// pullback is an isomorphism of assemblies.
bool is_pre_embedding(const AsmMorphism& f);

/// The separator as an assembly with identity existence.
AsmPtr separator_assembly(AlgebraPtr alg);

/// Every corpus assembly pre-embeds into the separator assembly via its own
/// existence predicate.
ValidationReport generic_object_check(std::span<const AsmPtr> corpus);

struct ProjectivityResult {
  bool projective;
  int bound;
  std::string witness;  // failing epi description when not projective
};
/// Bounded check: every regular epi onto X from an assembly with at most
/// `bound` points (existence drawn from the separator) admits a tracked section.
ProjectivityResult is_projective(const AsmPtr& x, int bound);

// Enumeration helpers (deterministic, lexicographic).
std::vector<std::vector<int>> all_maps(int domain_size, int codomain_size);
/// All assemblies over `alg` with exactly `size` points and existence values
/// drawn from `allowed`, carrier names p0, p1, ...
std::vector<AsmPtr> all_assemblies(AlgebraPtr alg, int size, Mask allowed);

}  // namespace impasm
