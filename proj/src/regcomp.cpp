#include "impasm/regcomp.hpp"

#include <algorithm>
#include <sstream>

namespace impasm {

namespace {

std::vector<Elem> members(Mask m, int n) {
  std::vector<Elem> out;
  for (Elem e = 0; e < n; ++e)
    if (has(m, e)) out.push_back(e);
  return out;
}

std::string mask_str(const Lattice& lat, Mask m) {
  std::string s = "{";
  bool first = true;
  for (Elem e = 0; e < lat.size(); ++e)
    if (has(m, e)) {
      if (!first) s += ",";
      s += lat.name(e);
      first = false;
    }
  return s + "}";
}

}  // namespace

RegObject make_reg_object(AsmMorphism f, Mask m) {
  if (!f.src->valued_in(m) || !f.dst->valued_in(m))
    throw Error("reg object endpoints must be valued in M");
  if (!is_tracked(f).holds) throw Error("reg object must be a tracked morphism");
  return {std::move(f), m};
}

RegObject reg_insert(AsmPtr x, Mask m) {
  return make_reg_object(identity_morphism(std::move(x)), m);
}

std::vector<RegMorphism> reg_hom(const RegObject& a, const RegObject& b) {
  std::vector<RegMorphism> classes;
  int nx = a.f.src->size();
  int nxp = b.f.src->size();
  for (auto& l : all_maps(nx, nxp)) {
    if (!is_tracked(l, *a.f.src, *b.f.src).holds) continue;
    // f'.l must coequalise the kernel pair of f
    bool coeq = true;
    std::vector<int> canonical(nx);
    for (int i = 0; i < nx; ++i) canonical[i] = b.f.map[l[i]];
    for (int i = 0; i < nx && coeq; ++i)
      for (int j = 0; j < nx && coeq; ++j)
        if (a.f.map[i] == a.f.map[j] && canonical[i] != canonical[j]) coeq = false;
    if (!coeq) continue;
    bool found = false;
    for (auto& cls : classes)
      if (cls.canonical == canonical) {
        ++cls.rep_count;
        found = true;
        break;
      }
    if (!found) classes.push_back({l, canonical, 1});
  }
  return classes;
}

AsmPtr U_object(const RegObject& a) { return image_factorization(a.f).im; }

AsmMorphism U_morphism(const RegObject& a, const RegObject& b, const RegMorphism& m) {
  auto fa = image_factorization(a.f);
  auto fb = image_factorization(b.f);
  std::vector<int> map(fa.im->size());
  for (size_t k = 0; k < fa.classes.size(); ++k)
    map[k] = fb.fbar.map[m.rep[fa.classes[k].front()]];
  return {fa.im, fb.im, std::move(map)};
}

AlgebraicResult is_algebraic(Mask m, const ImplicativeAlgebra& alg) {
  for (Elem a = 0; a < alg.size(); ++a)
    for (Elem b = 0; b < alg.size(); ++b) {
      if (!has(m, a) || !has(m, b)) continue;
      Elem e = alg.encoded_meet(a, b);
      if (!has(m, e)) return {false, a, b, e};
    }
  return {true};
}

namespace {

Family id_family(const ImplicativeAlgebra& alg) {
  Family f;
  for (Elem e = 0; e < alg.size(); ++e)
    if (alg.in_sep(e)) {
      f.index.push_back(alg.lat().name(e));
      f.values.push_back(e);
    }
  return f;
}

DensityResult check_valuation(const Valuation& nu, const Family& id_s,
                              const ImplicativeAlgebra& alg, Mask m) {
  for (size_t i = 0; i < nu.values.size(); ++i) {
    if (nu.values[i] == 0)
      return {DensityVerdict::Undecided, std::nullopt,
              "valuation is empty at " + nu.index[i]};
    if (nu.values[i] & ~m)
      return {DensityVerdict::Undecided, std::nullopt,
              "valuation leaves M at " + nu.index[i]};
  }
  Family ex = e_exists_valuation(nu, alg.str());
  auto iso = fam_iso(id_s, ex, alg);
  if (iso.holds)
    return {DensityVerdict::Dense, nu,
            "id_S isomorphic to the existence family; witnesses " +
                alg.lat().name(iso.fwd) + " and " + alg.lat().name(iso.bwd)};
  return {DensityVerdict::NotDense, std::nullopt,
          "valuation fails: witnesses " + alg.lat().name(iso.fwd) + " / " +
              alg.lat().name(iso.bwd) + " not both in S"};
}

}  // namespace

DensityResult is_dense(Mask m, const ImplicativeAlgebra& alg, DensityStrategy strategy,
                       const Valuation* user, int cap_s, int cap_m) {
  if (m == 0 || (m & ~alg.sep()))
    throw Error("density needs a nonempty M inside the separator");
  Family id_s = id_family(alg);
  int ns = static_cast<int>(id_s.index.size());
  auto mm = members(m, alg.size());
  int nm = static_cast<int>(mm.size());

  if (strategy == DensityStrategy::User) {
    if (!user) throw Error("user strategy needs a valuation");
    if (user->index != id_s.index)
      throw Error("user valuation must be indexed by the separator");
    return check_valuation(*user, id_s, alg, m);
  }

  if (strategy == DensityStrategy::Canonical) {
    Valuation nu;
    nu.index = id_s.index;
    for (int i = 0; i < ns; ++i) {
      Mask below = 0;
      for (Elem e : mm)
        if (alg.lat().leq(e, id_s.values[i])) below |= bit(e);
      if (below == 0)
        return {DensityVerdict::Undecided, std::nullopt,
                "canonical valuation undefined: no member of M below " +
                    id_s.index[i] + "; try the exhaustive strategy"};
      nu.values.push_back(below);
    }
    return check_valuation(nu, id_s, alg, m);
  }

  // exhaustive
  if (ns > cap_s || nm > cap_m)
    return {DensityVerdict::Undecided, std::nullopt,
            "exhaustive search cap exceeded (|S| <= " + std::to_string(cap_s) +
                ", |M| <= " + std::to_string(cap_m) + ")"};
  std::vector<int> choice(ns, 1);
  int limit = (1 << nm) - 1;
  while (true) {
    Valuation nu;
    nu.index = id_s.index;
    for (int i = 0; i < ns; ++i) {
      Mask v = 0;
      for (int j = 0; j < nm; ++j)
        if (choice[i] >> j & 1) v |= bit(mm[j]);
      nu.values.push_back(v);
    }
    auto r = check_valuation(nu, id_s, alg, m);
    if (r.verdict == DensityVerdict::Dense) return r;
    int i = ns - 1;
    while (i >= 0 && choice[i] == limit) choice[i--] = 1;
    if (i < 0) break;
    ++choice[i];
  }
  return {DensityVerdict::NotDense, std::nullopt,
          "no valuation witnesses density (exhaustive over " +
              mask_str(alg.lat(), m) + ")"};
}

CompactResult is_compact(Mask m, const ImplicativeAlgebra& alg, int bound) {
  auto ar = is_algebraic(m, alg);
  if (!ar.algebraic)
    throw Error("is_compact needs an algebraic M; encoded_meet(" +
                alg.lat().name(ar.a) + ", " + alg.lat().name(ar.b) + ") = " +
                alg.lat().name(ar.meet) + " escapes M");
  auto mm = members(m, alg.size());
  int nm = static_cast<int>(mm.size());
  for (int k = 1; k <= bound; ++k) {
    std::vector<std::string> index;
    for (int i = 0; i < k; ++i) index.push_back("x" + std::to_string(i));
    for (auto& ui : all_maps(k, nm)) {
      Family u{index, {}};
      for (int v : ui) u.values.push_back(mm[v]);
      // valuations nu : X -> P+(M)
      std::vector<int> vi(k, 1);
      int limit = (1 << nm) - 1;
      while (true) {
        Valuation nu{index, {}};
        for (int i = 0; i < k; ++i) {
          Mask v = 0;
          for (int j = 0; j < nm; ++j)
            if (vi[i] >> j & 1) v |= bit(mm[j]);
          nu.values.push_back(v);
        }
        Family ex = e_exists_valuation(nu, alg.str());
        if (fam_entails(u, ex, alg).holds) {
          bool found = false;
          for (auto& bi : all_maps(k, nm)) {
            bool inside = true;
            for (int i = 0; i < k && inside; ++i)
              if (!has(nu.values[i], mm[bi[i]])) inside = false;
            if (!inside) continue;
            Family b{index, {}};
            for (int v : bi) b.values.push_back(mm[v]);
            if (fam_entails(u, b, alg).holds && fam_entails(b, ex, alg).holds) {
              found = true;
              break;
            }
          }
          if (!found) return {false, bound, CompactCounterexample{u.values, nu}};
        }
        int i = k - 1;
        while (i >= 0 && vi[i] == limit) vi[i--] = 1;
        if (i < 0) break;
        ++vi[i];
      }
    }
  }
  return {true, bound, std::nullopt};
}

GeneratorResult is_generator(Mask m, const ImplicativeAlgebra& alg, int bound) {
  GeneratorResult r;
  r.bound = bound;
  r.algebraic = is_algebraic(m, alg);
  if (!r.algebraic.algebraic) return r;
  r.dense = is_dense(m, alg, DensityStrategy::Canonical);
  if (r.dense.verdict != DensityVerdict::Dense)
    r.dense = is_dense(m, alg, DensityStrategy::Exhaustive);
  if (r.dense.verdict != DensityVerdict::Dense) return r;
  r.compact = is_compact(m, alg, bound);
  r.generator = r.compact.compact;
  return r;
}

std::optional<AsmMorphism> lift_search(const AsmMorphism& g, const AsmMorphism& k) {
  auto fact = image_factorization(g);
  if (!same_assembly(*k.dst, *fact.im))
    throw Error("lift_search: k must land in Im(g)");
  int nx = k.src->size();
  // candidate fibres: members of the class k(x)
  std::vector<const std::vector<int>*> fibres(nx);
  for (int i = 0; i < nx; ++i) fibres[i] = &fact.classes[k.map[i]];
  std::vector<int> idx(nx, 0);
  while (true) {
    std::vector<int> l(nx);
    for (int i = 0; i < nx; ++i) l[i] = (*fibres[i])[idx[i]];
    if (is_tracked(l, *k.src, *g.src).holds)
      return AsmMorphism{k.src, g.src, std::move(l)};
    int i = nx - 1;
    while (i >= 0 && idx[i] == static_cast<int>(fibres[i]->size()) - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return std::nullopt;
}

UEquivalenceReport check_U_equivalence(Mask m, AlgebraPtr alg, int bound) {
  UEquivalenceReport rep;
  rep.bound = bound;
  auto mm = members(m, alg->size());
  int nm = static_cast<int>(mm.size());
  Elem m0 = mm.front();

  // essential surjectivity: every assembly with at most `bound` points and
  // existence in S is isomorphic to the image of a valuation cover
  rep.ess_surj = true;
  for (int n = 1; n <= bound && rep.ess_surj; ++n) {
    for (const auto& z : all_assemblies(alg, n, alg->sep())) {
      bool hit = false;
      std::vector<int> vi(n, 1);
      int limit = (1 << nm) - 1;
      while (!hit) {
        Valuation nu{z->carrier(), {}};
        for (int i = 0; i < n; ++i) {
          Mask v = 0;
          for (int j = 0; j < nm; ++j)
            if (vi[i] >> j & 1) v |= bit(mm[j]);
          nu.values.push_back(v);
        }
        if (fam_iso(xi(*z), e_exists_valuation(nu, alg->str()), *alg).holds) {
          auto vc = valuation_cover(alg, z->carrier(), nu, m0);
          // compare Im(g_nu) with z along the class -> index bijection
          std::vector<int> to_z(vc.factor.im->size());
          for (size_t c = 0; c < vc.factor.classes.size(); ++c)
            to_z[c] = vc.g.map[vc.factor.classes[c].front()];
          AsmMorphism cmp{vc.factor.im, z, std::move(to_z)};
          if (vc.iso.holds && is_iso(cmp).iso) hit = true;
        }
        int i = n - 1;
        while (i >= 0 && vi[i] == limit) vi[i--] = 1;
        if (i < 0) break;
        ++vi[i];
      }
      if (!hit) {
        rep.ess_surj = false;
        std::ostringstream os;
        os << "assembly not hit by U: existences";
        for (int i = 0; i < n; ++i) os << " " << alg->lat().name(z->exist(i));
        rep.notes.push_back(os.str());
        break;
      }
    }
  }

  // fullness: every tracked morphism U(f) -> U(f') between reg objects built
  // from M-assemblies with at most two points is hit by some class
  rep.full = true;
  std::vector<AsmPtr> mobjs;
  for (int n = 1; n <= 2; ++n)
    for (const auto& x : all_assemblies(alg, n, m)) mobjs.push_back(x);
  std::vector<RegObject> objs;
  for (const auto& x : mobjs)
    for (const auto& y : mobjs)
      for (auto& f : all_maps(x->size(), y->size())) {
        AsmMorphism mor{x, y, f};
        if (is_tracked(mor).holds) objs.push_back({mor, m});
      }
  for (const auto& a : objs) {
    if (!rep.full) break;
    auto ima = U_object(a);
    for (const auto& b : objs) {
      if (!rep.full) break;
      auto imb = U_object(b);
      auto classes = reg_hom(a, b);
      for (auto& h : all_maps(ima->size(), imb->size())) {
        AsmMorphism hm{ima, imb, h};
        if (!is_tracked(hm).holds) continue;
        bool hit = false;
        for (const auto& cls : classes)
          if (U_morphism(a, b, cls).map == h) {
            hit = true;
            break;
          }
        if (!hit) {
          rep.full = false;
          rep.notes.push_back("tracked morphism between images not hit by any class");
          break;
        }
      }
    }
  }

  auto dense = is_dense(m, *alg, DensityStrategy::Canonical);
  if (dense.verdict != DensityVerdict::Dense)
    dense = is_dense(m, *alg, DensityStrategy::Exhaustive);
  rep.density_agrees = (dense.verdict == DensityVerdict::Dense) == rep.ess_surj;
  auto compact = is_compact(m, *alg, 2);
  rep.compactness_agrees = compact.compact == rep.full;
  return rep;
}

}  // namespace impasm
