#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace impasm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by derive_heyting when the candidate implication fails the
/// implicative-structure axioms (e.g. on non-distributive lattices).
struct NotImplicative : Error {
  using Error::Error;
};

/// Outcome of a report-valued validation: empty `violations` means valid.
/// Warnings do not affect validity.
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

using Elem = int;
using Mask = std::uint64_t;  // subset of the carrier, bit i = element i

inline Mask bit(Elem e) { return Mask{1} << e; }
inline bool has(Mask m, Elem e) { return (m >> e) & 1; }

/// A finite complete lattice over opaque element ids.  The order is given by
/// generator pairs and closed reflexively/transitively at load; posets that
/// are not lattices are rejected.
class Lattice {
 public:
  static constexpr int kMaxElems = 60;

  /// Build from element names and `a <= b` generator pairs.  Throws Error on
  /// duplicate/unknown names, antisymmetry failures, or missing meets/joins.
  /// Completeness is checked exhaustively over all 2^n subsets for n <= 16
  /// and on a deterministic sample of subsets above that.
  static Lattice from_order_pairs(
      std::vector<std::string> names,
      const std::vector<std::pair<std::string, std::string>>& pairs);

  /// Convenience: a chain ordered as listed (first element is bottom).
  static Lattice chain(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Elem e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }

  bool has_elem(std::string_view n) const { return index_.count(std::string(n)) > 0; }
  Elem elem(std::string_view n) const;  // throws Error on unknown id

  bool leq(Elem a, Elem b) const { return has(up_[a], b); }
  Mask upset(Elem a) const { return up_[a]; }
  Mask downset(Elem a) const { return down_[a]; }
  Mask full_mask() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }

  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }

  /// Greatest lower bound; meet of the empty set is top.
  Elem meet(Mask s) const;
  /// Least upper bound; join of the empty set is bottom.
  Elem join(Mask s) const;
  Elem meet2(Elem a, Elem b) const { return meet2_[a][b]; }
  Elem join2(Elem a, Elem b) const { return join2_[a][b]; }

  Mask mask_of(const std::vector<std::string>& elems) const;
  std::vector<std::string> names_of(Mask s) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Elem, std::less<>> index_;
  std::vector<Mask> up_, down_;
  std::vector<std::vector<Elem>> meet2_, join2_;
  Elem top_ = -1, bottom_ = -1;

  // glb/lub by direct bound scan; -1 when absent (used during validation).
  Elem glb_scan(Mask s) const;
  Elem lub_scan(Mask s) const;
};

/// A complete lattice equipped with an implication that is antitone in the
/// antecedent, monotone in the consequent, and distributes over meets in the
/// consequent.
class ImplicativeStructure {
 public:
  ImplicativeStructure(Lattice lat, std::vector<std::vector<Elem>> imp_table);

  const Lattice& lat() const { return lat_; }
  int size() const { return lat_.size(); }

  Elem imp(Elem a, Elem b) const { return imp_[a][b]; }
  /// Application: meet of { c | a <= imp(b, c) }.
  Elem app(Elem a, Elem b) const { return app_[a][b]; }
  /// Second-order encoding of the pair: meet over c of ((a->(b->c))->c).
  Elem encoded_meet(Elem a, Elem b) const { return emeet_[a][b]; }
  /// Implicative existence of a subset, read as
  /// meet over c of ((meet over u in U of (u->c)) -> c).
  Elem e_exists(Mask u) const;

  /// The element of lam z . z u (the canonical witness below e_exists of any
  /// set containing u).
  Elem eta(Elem u) const;

  /// Interpretations of the named combinators (I, K, S, pi0, pi1, pi2).
  Elem comb_I() const { return comb_[0]; }
  Elem comb_K() const { return comb_[1]; }
  Elem comb_S() const { return comb_[2]; }
  Elem comb_pi0() const { return comb_[3]; }
  Elem comb_pi1() const { return comb_[4]; }
  Elem comb_pi2() const { return comb_[5]; }

  ValidationReport validate() const;

 private:
  Lattice lat_;
  std::vector<std::vector<Elem>> imp_, app_, emeet_;
  std::vector<Elem> eexists_;  // full table when the carrier is small
  bool eexists_cached_ = false;
  Elem comb_[6];

  Elem e_exists_raw(Mask u) const;
};

/// Canonical Heyting implication imp(a,b) = join{ c | meet(c,a) <= b }.
/// Throws NotImplicative when the candidate violates the axioms.
ImplicativeStructure derive_heyting(const Lattice& lat);

/// Report every violated instance of variance and meet distribution.
ValidationReport validate_implicative_structure(const ImplicativeStructure& a);

}  // namespace impasm
