#pragma once

#include <map>

#include "impasm/seta.hpp"

namespace impasm {

/// Named objects loaded from workspace text files.
///
/// Format, one section per object:
///   [algebra NAME]
///   elements: a b c
///   order: a <= b  b <= c
///   imp: heyting            (or: imp: table  followed by rows "a -> b = c")
///   separator: generators a (or: separator: members a b)
///   [subset NAME of ALG]
///   members: a b
///   [assembly NAME over ALG]
///   carrier: x y
///   exist: x = a  y = b
///   [morphism NAME : A -> B]
///   map: x -> u  y -> u
///   [groupoid NAME]
///   vertices: ASM
///   edges: ASM
///   s: e -> x ...   t: ...   rho: x -> e ...   sigma: e -> e' ...
///   tau: (e,e') -> e'' ...
///   [implicative-set NAME over ALG]
///   carrier: x y
///   eq: (x,x) = a  (x,y) = b ...
///   [relation NAME : E -> F]
///   values: (x,y) = a ...
///   [term NAME]
///   lam x . x            (raw term text until the next section)
struct Workspace {
  std::map<std::string, AlgebraPtr> algebras;
  struct Subset {
    std::string algebra;
    Mask mask;
  };
  std::map<std::string, Subset> subsets;
  std::map<std::string, AsmPtr> assemblies;
  std::map<std::string, AsmMorphism> morphisms;
  std::map<std::string, GrpdPtr> groupoids;
  std::map<std::string, ISetPtr> isets;
  std::map<std::string, FunctionalRelation> relations;
  std::map<std::string, TermPtr> terms;
  std::vector<std::string> warnings;

  const AlgebraPtr& algebra(const std::string& name) const;
  const Subset& subset(const std::string& name) const;
  const AsmPtr& assembly(const std::string& name) const;
  const AsmMorphism& morphism(const std::string& name) const;
  const GrpdPtr& groupoid(const std::string& name) const;
  const ISetPtr& iset(const std::string& name) const;
  const FunctionalRelation& relation(const std::string& name) const;
};

/// Parse one or more workspace files; objects validate on load unless
/// `validate` is false.  Errors carry file/line locations.
Workspace parse_workspace_text(std::string_view text, bool validate = true,
                               const std::string& filename = "<input>");
Workspace parse_workspace(const std::vector<std::string>& paths, bool validate = true);

/// Canonical re-emission: parse(emit(w)) == w, used by the round-trip check.
std::string emit_canonical(const Workspace& w);

}  // namespace impasm
