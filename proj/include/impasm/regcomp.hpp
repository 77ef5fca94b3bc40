#pragma once

#include "impasm/assembly.hpp"

namespace impasm {

/// Object of the reg/lex completion of Asm_M: a tracked morphism between
/// M-valued assemblies.
struct RegObject {
  AsmMorphism f;
  Mask m;
};

RegObject make_reg_object(AsmMorphism f, Mask m);

/// Morphism class, identified by its canonical form f' . l.
struct RegMorphism {
  std::vector<int> rep;        // lexicographically least representative
  std::vector<int> canonical;  // f' . rep
  int rep_count = 0;           // members of the class among tracked candidates
};

/// All classes of tracked maps l with f'.l coequalising the kernel pair of f.
std::vector<RegMorphism> reg_hom(const RegObject& a, const RegObject& b);

/// The canonical functor into Asm: objects go to images, classes to the map
/// induced between images.
AsmPtr U_object(const RegObject& a);
AsmMorphism U_morphism(const RegObject& a, const RegObject& b, const RegMorphism& m);

/// Insertion of Asm_M: X goes to its identity morphism.
RegObject reg_insert(AsmPtr x, Mask m);

enum class DensityVerdict { Dense, NotDense, Undecided };
enum class DensityStrategy { Canonical, Exhaustive, User };

struct DensityResult {
  DensityVerdict verdict = DensityVerdict::Undecided;
  std::optional<Valuation> witness;  // over the separator index, on success
  std::string detail;
};

/// Is M dense in S?  The canonical strategy tries nu(s) = { m in M | m <= s };
/// the exhaustive strategy searches every valuation subject to hard caps
/// (|S| <= cap_s, |M| <= cap_m); a user valuation is checked verbatim.
DensityResult is_dense(Mask m, const ImplicativeAlgebra& alg,
                       DensityStrategy strategy = DensityStrategy::Canonical,
                       const Valuation* user = nullptr, int cap_s = 6, int cap_m = 4);

struct AlgebraicResult {
  bool algebraic = false;
  Elem a = -1, b = -1, meet = -1;  // counterexample when not algebraic
};
AlgebraicResult is_algebraic(Mask m, const ImplicativeAlgebra& alg);

struct CompactCounterexample {
  std::vector<Elem> u;
  Valuation nu;
};
struct CompactResult {
  bool compact = false;
  int bound = 0;
  std::optional<CompactCounterexample> counter;
};
/// Bounded compactness: all index sets with at most `bound` points, all
/// families u in M^X and valuations nu with u entailing e_exists(nu) admit a
/// pointwise selection b.  Requires M algebraic.
CompactResult is_compact(Mask m, const ImplicativeAlgebra& alg, int bound);

struct GeneratorResult {
  bool generator = false;
  int bound = 0;
  AlgebraicResult algebraic;
  DensityResult dense;
  CompactResult compact;
};
GeneratorResult is_generator(Mask m, const ImplicativeAlgebra& alg, int bound);

/// Lift of k : X -> Im(g) through gbar : A ->> Im(g); exhaustive over the
/// fibres, lexicographically first tracked lift.
std::optional<AsmMorphism> lift_search(const AsmMorphism& g, const AsmMorphism& k);

struct UEquivalenceReport {
  bool ess_surj = false;
  bool full = false;
  int bound = 0;
  bool density_agrees = false;      // ess_surj == is_dense (th. equivalence)
  bool compactness_agrees = false;  // full == is_compact (th. equivalence)
  std::vector<std::string> notes;
  bool pass() const { return ess_surj && full; }
};
/// Bounded verification that U : (Asm_M)_reg/lex -> Asm_A is an equivalence:
/// essential surjectivity over assemblies with at most `bound` points,
/// fullness over reg objects built from M-assemblies with at most two points.
UEquivalenceReport check_U_equivalence(Mask m, AlgebraPtr alg, int bound);

}  // namespace impasm
