#include "impasm/assembly.hpp"

#include <algorithm>
#include <sstream>

namespace impasm {

Assembly::Assembly(AlgebraPtr alg, std::vector<std::string> carrier,
                   std::vector<Elem> exist) {
  if (!alg) throw Error("assembly needs an algebra");
  if (carrier.size() != exist.size())
    throw Error("assembly carrier and existence have different sizes");
  for (size_t i = 0; i < carrier.size(); ++i)
    if (!alg->in_sep(exist[i]))
      throw Error("existence of point " + carrier[i] + " = " +
                  alg->lat().name(exist[i]) + " is not in the separator");
  alg_ = std::move(alg);
  carrier_ = std::move(carrier);
  exist_ = std::move(exist);
}

Assembly Assembly::unchecked(AlgebraPtr alg, std::vector<std::string> carrier,
                             std::vector<Elem> exist) {
  Assembly a;
  a.alg_ = std::move(alg);
  a.carrier_ = std::move(carrier);
  a.exist_ = std::move(exist);
  return a;
}

int Assembly::point(std::string_view n) const {
  for (int i = 0; i < size(); ++i)
    if (carrier_[i] == n) return i;
  throw Error("unknown carrier point: " + std::string(n));
}

bool Assembly::valued_in(Mask m) const {
  for (Elem e : exist_)
    if (!has(m, e)) return false;
  return true;
}

AsmPtr make_assembly(AlgebraPtr alg, std::vector<std::string> carrier,
                     std::vector<Elem> exist) {
  return std::make_shared<Assembly>(std::move(alg), std::move(carrier),
                                    std::move(exist));
}

bool same_assembly(const Assembly& a, const Assembly& b) {
  return a.alg() == b.alg() && a.carrier() == b.carrier() && a.exists() == b.exists();
}

bool same_morphism(const AsmMorphism& f, const AsmMorphism& g) {
  return same_assembly(*f.src, *g.src) && same_assembly(*f.dst, *g.dst) &&
         f.map == g.map;
}

AsmMorphism identity_morphism(AsmPtr x) {
  std::vector<int> m(x->size());
  for (int i = 0; i < x->size(); ++i) m[i] = i;
  return {x, x, std::move(m)};
}

AsmMorphism compose(const AsmMorphism& g, const AsmMorphism& f) {
  if (!same_assembly(*f.dst, *g.src))
    throw Error("compose: middle objects differ");
  std::vector<int> m(f.src->size());
  for (int i = 0; i < f.src->size(); ++i) m[i] = g.map[f.map[i]];
  return {f.src, g.dst, std::move(m)};
}

EntailResult is_tracked(const std::vector<int>& map, const Assembly& x,
                        const Assembly& y) {
  if (static_cast<int>(map.size()) != x.size())
    throw Error("is_tracked: map is not total on the source carrier");
  const auto& a = *x.alg();
  Elem w = a.lat().top();
  for (int i = 0; i < x.size(); ++i) {
    if (map[i] < 0 || map[i] >= y.size())
      throw Error("is_tracked: map leaves the target carrier");
    w = a.lat().meet2(w, a.imp(x.exist(i), y.exist(map[i])));
  }
  return {a.in_sep(w), w};
}

EntailResult is_tracked(const AsmMorphism& f) {
  return is_tracked(f.map, *f.src, *f.dst);
}

bool is_mono(const AsmMorphism& f) {
  std::vector<bool> seen(f.dst->size(), false);
  for (int v : f.map) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool is_surjective(const AsmMorphism& f) {
  std::vector<bool> seen(f.dst->size(), false);
  for (int v : f.map) seen[v] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

IsoCheck is_iso(const AsmMorphism& f) {
  if (f.src->size() != f.dst->size() || !is_mono(f) || !is_surjective(f))
    return {false, std::nullopt};
  if (!is_tracked(f).holds) return {false, std::nullopt};
  std::vector<int> inv(f.dst->size());
  for (int i = 0; i < f.src->size(); ++i) inv[f.map[i]] = i;
  AsmMorphism g{f.dst, f.src, std::move(inv)};
  if (!is_tracked(g).holds) return {false, std::nullopt};
  return {true, g};
}

Family xi(const Assembly& x) {
  return {x.carrier(), x.exists()};
}

AsmPtr xi_inv(AlgebraPtr alg, const Family& u) {
  for (Elem v : u.values)
    if (!alg->in_sep(v))
      throw Error("xi_inv: family value " + alg->lat().name(v) +
                  " is not in the separator");
  return make_assembly(std::move(alg), u.index, u.values);
}

Family pullback_family(const std::vector<int>& map, const Assembly& x,
                       const Assembly& y) {
  Family out;
  out.index = x.carrier();
  out.values.reserve(map.size());
  for (int v : map) out.values.push_back(y.exist(v));
  return out;
}

AsmPtr terminal_assembly(AlgebraPtr alg) {
  Elem top = alg->lat().top();
  return make_assembly(std::move(alg), {"*"}, {top});
}

LimitCone2 product(AsmPtr x, AsmPtr y) {
  if (x->alg() != y->alg()) throw Error("product: assemblies over different algebras");
  const auto& a = *x->alg();
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  std::vector<int> p0, p1;
  for (int i = 0; i < x->size(); ++i)
    for (int j = 0; j < y->size(); ++j) {
      carrier.push_back("(" + x->point_name(i) + "," + y->point_name(j) + ")");
      exist.push_back(a.encoded_meet(x->exist(i), y->exist(j)));
      p0.push_back(i);
      p1.push_back(j);
    }
  AsmPtr apex = make_assembly(x->alg(), std::move(carrier), std::move(exist));
  return {apex, {apex, x, std::move(p0)}, {apex, y, std::move(p1)}};
}

EqualizerCone equalizer(const AsmMorphism& f, const AsmMorphism& g) {
  if (!same_assembly(*f.src, *g.src) || !same_assembly(*f.dst, *g.dst))
    throw Error("equalizer: parallel pair expected");
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  std::vector<int> incl;
  for (int i = 0; i < f.src->size(); ++i)
    if (f.map[i] == g.map[i]) {
      carrier.push_back(f.src->point_name(i));
      exist.push_back(f.src->exist(i));
      incl.push_back(i);
    }
  AsmPtr apex = make_assembly(f.src->alg(), std::move(carrier), std::move(exist));
  return {apex, {apex, f.src, std::move(incl)}};
}

LimitCone2 pullback(const AsmMorphism& f, const AsmMorphism& g) {
  if (!same_assembly(*f.dst, *g.dst)) throw Error("pullback: targets differ");
  const auto& a = *f.src->alg();
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  std::vector<int> p0, p1;
  for (int i = 0; i < f.src->size(); ++i)
    for (int j = 0; j < g.src->size(); ++j) {
      if (f.map[i] != g.map[j]) continue;
      carrier.push_back("(" + f.src->point_name(i) + "," + g.src->point_name(j) + ")");
      exist.push_back(a.encoded_meet(f.src->exist(i), g.src->exist(j)));
      p0.push_back(i);
      p1.push_back(j);
    }
  AsmPtr apex = make_assembly(f.src->alg(), std::move(carrier), std::move(exist));
  return {apex, {apex, f.src, std::move(p0)}, {apex, g.src, std::move(p1)}};
}

KernelPair kernel_pair(const AsmMorphism& f) {
  if (!is_tracked(f).holds) throw Error("kernel_pair: morphism is not tracked");
  auto cone = pullback(f, f);
  return {cone.apex, cone.p0, cone.p1};
}

ImageFactorization image_factorization(const AsmMorphism& f) {
  if (!is_tracked(f).holds) throw Error("image_factorization: morphism is not tracked");
  const auto& a = *f.src->alg();
  // fibres of f, indexed by first occurrence
  std::vector<int> class_of(f.src->size(), -1);
  std::vector<std::vector<int>> classes;
  std::vector<int> class_target;
  for (int i = 0; i < f.src->size(); ++i) {
    int c = -1;
    for (size_t k = 0; k < class_target.size(); ++k)
      if (class_target[k] == f.map[i]) { c = static_cast<int>(k); break; }
    if (c < 0) {
      c = static_cast<int>(classes.size());
      classes.push_back({});
      class_target.push_back(f.map[i]);
    }
    classes[c].push_back(i);
    class_of[i] = c;
  }
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  for (size_t k = 0; k < classes.size(); ++k) {
    carrier.push_back("[" + f.src->point_name(classes[k].front()) + "]");
    Mask vals = 0;
    for (int i : classes[k]) vals |= bit(f.src->exist(i));
    exist.push_back(a.e_exists(vals));
  }
  AsmPtr im = make_assembly(f.src->alg(), std::move(carrier), std::move(exist));
  AsmMorphism fbar{f.src, im, class_of};
  AsmMorphism iota{im, f.dst, class_target};
  return {im, std::move(fbar), std::move(iota), std::move(classes)};
}

bool is_regular_epi(const AsmMorphism& f) {
  if (!is_surjective(f)) return false;
  auto fact = image_factorization(f);
  return is_iso(fact.iota).iso;
}

Valuation induced_valuation(const AsmMorphism& f) {
  auto fact = image_factorization(f);
  Valuation nu;
  nu.index = fact.im->carrier();
  for (const auto& cls : fact.classes) {
    Mask vals = 0;
    for (int i : cls) vals |= bit(f.src->exist(i));
    nu.values.push_back(vals);
  }
  return nu;
}

ValuationCover valuation_cover(AlgebraPtr alg, const std::vector<std::string>& index,
                               const Valuation& nu, Elem m0) {
  if (nu.index != index) throw Error("valuation_cover: index mismatch");
  for (Mask m : nu.values)
    if (m == 0) throw Error("valuation_cover: valuation has an empty value");
  const auto& lat = alg->lat();
  std::vector<std::string> hat_carrier;
  std::vector<Elem> hat_exist;
  std::vector<int> g_map;
  for (size_t i = 0; i < index.size(); ++i)
    for (Elem m = 0; m < alg->size(); ++m) {
      if (!has(nu.values[i], m)) continue;
      hat_carrier.push_back("(" + index[i] + "|" + lat.name(m) + ")");
      hat_exist.push_back(m);
      g_map.push_back(static_cast<int>(i));
    }
  AsmPtr hat = make_assembly(alg, std::move(hat_carrier), std::move(hat_exist));
  AsmPtr check = make_assembly(alg, index, std::vector<Elem>(index.size(), m0));
  AsmMorphism g{hat, check, std::move(g_map)};
  auto fact = image_factorization(g);
  Family target = e_exists_valuation(nu, alg->str());
  // compare (X, e_exists(nu)) with the image existence along [x] |-> x
  Family im_fam;
  im_fam.index = target.index;
  im_fam.values.resize(target.index.size());
  for (size_t k = 0; k < fact.classes.size(); ++k) {
    int x = g.map[fact.classes[k].front()];
    im_fam.values[x] = fact.im->exist(static_cast<int>(k));
  }
  IsoResult iso = fam_iso(target, im_fam, *alg);
  return {hat, check, std::move(g), std::move(fact), iso};
}

bool is_pre_embedding(const AsmMorphism& f) {
  // comparison into the pullback of (Y -> D|Y| <- D|X|) is a carrier
  // bijection; the square is a pullback iff it is tracked both ways, i.e.
  // e_X and emeet(e_Y(f x), top) are isomorphic families over X
  const auto& a = *f.src->alg();
  Elem top = a.lat().top();
  Family ex = xi(*f.src);
  Family pb;
  pb.index = ex.index;
  for (int i = 0; i < f.src->size(); ++i)
    pb.values.push_back(a.encoded_meet(f.dst->exist(f.map[i]), top));
  return fam_iso(ex, pb, a).holds;
}

AsmPtr separator_assembly(AlgebraPtr alg) {
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  for (Elem e = 0; e < alg->size(); ++e)
    if (alg->in_sep(e)) {
      carrier.push_back(alg->lat().name(e));
      exist.push_back(e);
    }
  return make_assembly(std::move(alg), std::move(carrier), std::move(exist));
}

ValidationReport generic_object_check(std::span<const AsmPtr> corpus) {
  ValidationReport rep;
  for (const auto& x : corpus) {
    AsmPtr sep = separator_assembly(x->alg());
    std::vector<int> map(x->size());
    for (int i = 0; i < x->size(); ++i) map[i] = sep->point(x->alg()->lat().name(x->exist(i)));
    AsmMorphism f{x, sep, std::move(map)};
    if (!is_tracked(f).holds)
      rep.violations.push_back("existence map of assembly is not tracked");
    else if (!is_pre_embedding(f))
      rep.violations.push_back("existence map of assembly is not a pre-embedding");
  }
  return rep;
}

ProjectivityResult is_projective(const AsmPtr& x, int bound) {
  for (int n = 1; n <= bound; ++n) {
    for (const AsmPtr& a : all_assemblies(x->alg(), n, x->alg()->sep())) {
      for (auto& map : all_maps(n, x->size())) {
        AsmMorphism e{a, x, map};
        if (!is_surjective(e) || !is_tracked(e).holds) continue;
        if (!is_regular_epi(e)) continue;
        bool found = false;
        for (auto& sec : all_maps(x->size(), n)) {
          bool splits = true;
          for (int i = 0; i < x->size() && splits; ++i)
            if (e.map[sec[i]] != i) splits = false;
          if (!splits) continue;
          if (is_tracked(sec, *x, *a).holds) { found = true; break; }
        }
        if (!found) {
          std::ostringstream os;
          os << "regular epi from a " << n << "-point assembly (existences";
          for (int i = 0; i < n; ++i) os << " " << x->alg()->lat().name(a->exist(i));
          os << ", map";
          for (int v : map) os << " " << v;
          os << ") has no tracked section";
          return {false, bound, os.str()};
        }
      }
    }
  }
  return {true, bound, ""};
}

std::vector<std::vector<int>> all_maps(int domain_size, int codomain_size) {
  std::vector<std::vector<int>> out;
  if (domain_size == 0) {
    out.push_back({});
    return out;
  }
  if (codomain_size == 0) return out;
  std::vector<int> cur(domain_size, 0);
  while (true) {
    out.push_back(cur);
    int i = domain_size - 1;
    while (i >= 0 && cur[i] == codomain_size - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<AsmPtr> all_assemblies(AlgebraPtr alg, int size, Mask allowed) {
  std::vector<Elem> pool;
  for (Elem e = 0; e < alg->size(); ++e)
    if (has(allowed, e)) pool.push_back(e);
  std::vector<AsmPtr> out;
  if (size == 0 || pool.empty()) return out;
  std::vector<std::string> carrier;
  for (int i = 0; i < size; ++i) carrier.push_back("p" + std::to_string(i));
  std::vector<int> idx(size, 0);
  while (true) {
    std::vector<Elem> exist(size);
    for (int i = 0; i < size; ++i) exist[i] = pool[idx[i]];
    out.push_back(make_assembly(alg, carrier, std::move(exist)));
    int i = size - 1;
    while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return out;
}

}  // namespace impasm
