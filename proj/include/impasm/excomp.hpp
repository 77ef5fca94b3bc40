#pragma once

#include <functional>

#include "impasm/assembly.hpp"

namespace impasm {

/// Two parallel tracked morphisms; edges e : s(e) ~> t(e).
struct Quiver {
  AsmPtr x0, x1;
  AsmMorphism s, t;
};

/// Quiver with reflexivity, symmetry and composition structure (a
/// proof-relevant equivalence relation).
struct PseudoGroupoid {
  Quiver q;
  AsmMorphism rho;    // X0 -> X1
  AsmMorphism sigma;  // X1 -> X1
  AsmPtr comp;        // composable-pairs assembly X1 (*) X1
  std::vector<std::pair<int, int>> comp_pairs;
  AsmMorphism tau;    // comp -> X1
};

using GrpdPtr = std::shared_ptr<const PseudoGroupoid>;

/// Assembles the composable-pairs pullback internally; `tau` maps a
/// composable pair of edge indices to an edge index.
GrpdPtr make_pseudo_groupoid(AsmPtr x0, AsmPtr x1, std::vector<int> s,
                             std::vector<int> t, std::vector<int> rho,
                             std::vector<int> sigma,
                             const std::function<int(int, int)>& tau);

/// The discrete pseudo-groupoid id, id : X => X.
GrpdPtr discrete_embed(AsmPtr x);
/// Codiscrete: edges X0 x X0 with encoded-meet existence.
GrpdPtr codiscrete_groupoid(AsmPtr x);

/// All six structural equations plus trackedness of every structure map.
ValidationReport validate_pseudo_groupoid(const PseudoGroupoid& g);

/// Edge indices from x to x' (the fibre of <s,t>).
std::vector<int> edges_between(const PseudoGroupoid& g, int x, int xp);

/// Valuation on X0 x X0 collecting edge existences; entries may be empty
/// (no edge), consumers read e_exists(empty) = bottom.
struct PartialValuation {
  int n = 0;
  std::vector<Mask> values;  // row-major n*n
  Mask at(int x, int xp) const { return values.at(x * n + xp); }
};
PartialValuation induced_nu(const PseudoGroupoid& g);

struct QuiverMorphism {
  GrpdPtr src, dst;
  std::vector<int> f0, f1;
};

ValidationReport validate_quiver_morphism(const QuiverMorphism& f);
QuiverMorphism identity_qm(GrpdPtr x);
QuiverMorphism compose_qm(const QuiverMorphism& g, const QuiverMorphism& f);

/// All valid quiver morphisms between two pseudo-groupoids, lexicographic.
std::vector<QuiverMorphism> quiver_morphisms(GrpdPtr x, GrpdPtr y);

/// Exhaustive search for a homotopy h : X0 -> Y1 from f to g (a tracked
/// choice of edges f0(x) ~> g0(x)).
std::optional<std::vector<int>> is_homotopic(const QuiverMorphism& f,
                                             const QuiverMorphism& g);

/// Constructive witnesses through the structure maps.
std::vector<int> homotopy_via_rho(const QuiverMorphism& f);
std::vector<int> homotopy_via_sigma(const QuiverMorphism& f, const QuiverMorphism& g,
                                    const std::vector<int>& h);
std::vector<int> homotopy_via_tau(const QuiverMorphism& f, const QuiverMorphism& g,
                                  const QuiverMorphism& k, const std::vector<int>& h1,
                                  const std::vector<int>& h2);

/// Checks the two lift equations and trackedness of a candidate homotopy.
bool is_homotopy(const QuiverMorphism& f, const QuiverMorphism& g,
                 const std::vector<int>& h);

/// Hom-set of the ex/lex completion: valid quiver morphisms partitioned into
/// homotopy classes.
std::vector<std::vector<QuiverMorphism>> ex_hom(GrpdPtr x, GrpdPtr y);

}  // namespace impasm
