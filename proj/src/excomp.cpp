#include "impasm/excomp.hpp"

#include <algorithm>
#include <sstream>

namespace impasm {

GrpdPtr make_pseudo_groupoid(AsmPtr x0, AsmPtr x1, std::vector<int> s,
                             std::vector<int> t, std::vector<int> rho,
                             std::vector<int> sigma,
                             const std::function<int(int, int)>& tau) {
  if (x0->alg() != x1->alg()) throw Error("groupoid parts over different algebras");
  auto g = std::make_shared<PseudoGroupoid>();
  g->q.x0 = x0;
  g->q.x1 = x1;
  g->q.s = {x1, x0, std::move(s)};
  g->q.t = {x1, x0, std::move(t)};
  g->rho = {x0, x1, std::move(rho)};
  g->sigma = {x1, x1, std::move(sigma)};
  // composable pairs: t(e) = s(e'), pullback existence from the product
  const auto& a = *x0->alg();
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  std::vector<int> tau_map;
  for (int e = 0; e < x1->size(); ++e)
    for (int ep = 0; ep < x1->size(); ++ep) {
      if (g->q.t.map[e] != g->q.s.map[ep]) continue;
      carrier.push_back("(" + x1->point_name(e) + "," + x1->point_name(ep) + ")");
      exist.push_back(a.encoded_meet(x1->exist(e), x1->exist(ep)));
      g->comp_pairs.push_back({e, ep});
      tau_map.push_back(tau(e, ep));
    }
  g->comp = make_assembly(x0->alg(), std::move(carrier), std::move(exist));
  g->tau = {g->comp, x1, std::move(tau_map)};
  return g;
}

GrpdPtr discrete_embed(AsmPtr x) {
  int n = x->size();
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  return make_pseudo_groupoid(x, x, id, id, id, id, [](int e, int) { return e; });
}

GrpdPtr codiscrete_groupoid(AsmPtr x) {
  int n = x->size();
  const auto& a = *x->alg();
  std::vector<std::string> carrier;
  std::vector<Elem> exist;
  std::vector<int> s, t;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      carrier.push_back("(" + x->point_name(i) + "," + x->point_name(j) + ")");
      exist.push_back(a.encoded_meet(x->exist(i), x->exist(j)));
      s.push_back(i);
      t.push_back(j);
    }
  auto x1 = make_assembly(x->alg(), std::move(carrier), std::move(exist));
  std::vector<int> rho(n), sigma(n * n);
  for (int i = 0; i < n; ++i) rho[i] = i * n + i;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sigma[i * n + j] = j * n + i;
  auto tau = [n](int e, int ep) { return (e / n) * n + (ep % n); };
  return make_pseudo_groupoid(x, x1, std::move(s), std::move(t), std::move(rho),
                              std::move(sigma), tau);
}

ValidationReport validate_pseudo_groupoid(const PseudoGroupoid& g) {
  ValidationReport rep;
  auto eq_maps = [&](const char* what, const std::vector<int>& a,
                     const std::vector<int>& b) {
    if (a != b) rep.violations.push_back(std::string(what) + " fails");
  };
  int n0 = g.q.x0->size(), n1 = g.q.x1->size();
  std::vector<int> id0(n0);
  for (int i = 0; i < n0; ++i) id0[i] = i;
  eq_maps("s . rho = id", compose(g.q.s, g.rho).map, id0);
  eq_maps("t . rho = id", compose(g.q.t, g.rho).map, id0);
  eq_maps("s . sigma = t", compose(g.q.s, g.sigma).map, g.q.t.map);
  eq_maps("t . sigma = s", compose(g.q.t, g.sigma).map, g.q.s.map);
  {
    std::vector<int> lhs_s(g.comp_pairs.size()), rhs_s(g.comp_pairs.size());
    std::vector<int> lhs_t(g.comp_pairs.size()), rhs_t(g.comp_pairs.size());
    for (size_t i = 0; i < g.comp_pairs.size(); ++i) {
      lhs_s[i] = g.q.s.map[g.tau.map[i]];
      rhs_s[i] = g.q.s.map[g.comp_pairs[i].first];
      lhs_t[i] = g.q.t.map[g.tau.map[i]];
      rhs_t[i] = g.q.t.map[g.comp_pairs[i].second];
    }
    eq_maps("s . tau = s . p0", lhs_s, rhs_s);
    eq_maps("t . tau = t . p1", lhs_t, rhs_t);
  }
  auto tracked = [&](const char* what, const AsmMorphism& f) {
    if (static_cast<int>(f.map.size()) != f.src->size()) {
      rep.violations.push_back(std::string(what) + " is not total");
      return;
    }
    if (!is_tracked(f).holds)
      rep.violations.push_back(std::string(what) + " is not tracked");
  };
  tracked("s", g.q.s);
  tracked("t", g.q.t);
  tracked("rho", g.rho);
  tracked("sigma", g.sigma);
  tracked("tau", g.tau);
  (void)n1;
  return rep;
}

std::vector<int> edges_between(const PseudoGroupoid& g, int x, int xp) {
  std::vector<int> out;
  for (int e = 0; e < g.q.x1->size(); ++e)
    if (g.q.s.map[e] == x && g.q.t.map[e] == xp) out.push_back(e);
  return out;
}

PartialValuation induced_nu(const PseudoGroupoid& g) {
  PartialValuation nu;
  nu.n = g.q.x0->size();
  nu.values.assign(static_cast<size_t>(nu.n) * nu.n, 0);
  for (int e = 0; e < g.q.x1->size(); ++e)
    nu.values[g.q.s.map[e] * nu.n + g.q.t.map[e]] |= bit(g.q.x1->exist(e));
  return nu;
}

ValidationReport validate_quiver_morphism(const QuiverMorphism& f) {
  ValidationReport rep;
  const auto& x = *f.src;
  const auto& y = *f.dst;
  if (static_cast<int>(f.f0.size()) != x.q.x0->size() ||
      static_cast<int>(f.f1.size()) != x.q.x1->size()) {
    rep.violations.push_back("quiver morphism components are not total");
    return rep;
  }
  if (!is_tracked(f.f0, *x.q.x0, *y.q.x0).holds)
    rep.violations.push_back("f0 is not tracked");
  if (!is_tracked(f.f1, *x.q.x1, *y.q.x1).holds)
    rep.violations.push_back("f1 is not tracked");
  for (int e = 0; e < x.q.x1->size(); ++e) {
    if (y.q.s.map[f.f1[e]] != f.f0[x.q.s.map[e]])
      rep.violations.push_back("naturality with s fails at edge " +
                               x.q.x1->point_name(e));
    if (y.q.t.map[f.f1[e]] != f.f0[x.q.t.map[e]])
      rep.violations.push_back("naturality with t fails at edge " +
                               x.q.x1->point_name(e));
  }
  return rep;
}

QuiverMorphism identity_qm(GrpdPtr x) {
  std::vector<int> f0(x->q.x0->size()), f1(x->q.x1->size());
  for (size_t i = 0; i < f0.size(); ++i) f0[i] = static_cast<int>(i);
  for (size_t i = 0; i < f1.size(); ++i) f1[i] = static_cast<int>(i);
  return {x, x, std::move(f0), std::move(f1)};
}

QuiverMorphism compose_qm(const QuiverMorphism& g, const QuiverMorphism& f) {
  if (f.dst != g.src && !same_assembly(*f.dst->q.x0, *g.src->q.x0))
    throw Error("compose_qm: middle objects differ");
  std::vector<int> f0(f.f0.size()), f1(f.f1.size());
  for (size_t i = 0; i < f0.size(); ++i) f0[i] = g.f0[f.f0[i]];
  for (size_t i = 0; i < f1.size(); ++i) f1[i] = g.f1[f.f1[i]];
  return {f.src, g.dst, std::move(f0), std::move(f1)};
}

std::vector<QuiverMorphism> quiver_morphisms(GrpdPtr x, GrpdPtr y) {
  std::vector<QuiverMorphism> out;
  for (auto& f0 : all_maps(x->q.x0->size(), y->q.x0->size()))
    for (auto& f1 : all_maps(x->q.x1->size(), y->q.x1->size())) {
      QuiverMorphism f{x, y, f0, f1};
      if (validate_quiver_morphism(f).ok()) out.push_back(std::move(f));
    }
  return out;
}

bool is_homotopy(const QuiverMorphism& f, const QuiverMorphism& g,
                 const std::vector<int>& h) {
  const auto& x = *f.src;
  const auto& y = *f.dst;
  if (static_cast<int>(h.size()) != x.q.x0->size()) return false;
  for (int i = 0; i < x.q.x0->size(); ++i) {
    if (y.q.s.map[h[i]] != f.f0[i]) return false;
    if (y.q.t.map[h[i]] != g.f0[i]) return false;
  }
  return is_tracked(h, *x.q.x0, *y.q.x1).holds;
}

std::optional<std::vector<int>> is_homotopic(const QuiverMorphism& f,
                                             const QuiverMorphism& g) {
  const auto& x = *f.src;
  const auto& y = *f.dst;
  int n0 = x.q.x0->size();
  // per-vertex candidate edges f0(x) ~> g0(x)
  std::vector<std::vector<int>> cands(n0);
  for (int i = 0; i < n0; ++i) {
    cands[i] = edges_between(y, f.f0[i], g.f0[i]);
    if (cands[i].empty()) return std::nullopt;
  }
  std::vector<int> idx(n0, 0);
  while (true) {
    std::vector<int> h(n0);
    for (int i = 0; i < n0; ++i) h[i] = cands[i][idx[i]];
    if (is_homotopy(f, g, h)) return h;
    int i = n0 - 1;
    while (i >= 0 && idx[i] == static_cast<int>(cands[i].size()) - 1) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return std::nullopt;
}

std::vector<int> homotopy_via_rho(const QuiverMorphism& f) {
  std::vector<int> h(f.f0.size());
  for (size_t i = 0; i < h.size(); ++i) h[i] = f.dst->rho.map[f.f0[i]];
  return h;
}

std::vector<int> homotopy_via_sigma(const QuiverMorphism&, const QuiverMorphism& g,
                                    const std::vector<int>& h) {
  std::vector<int> out(h.size());
  for (size_t i = 0; i < h.size(); ++i) out[i] = g.dst->sigma.map[h[i]];
  return out;
}

std::vector<int> homotopy_via_tau(const QuiverMorphism& f, const QuiverMorphism&,
                                  const QuiverMorphism&, const std::vector<int>& h1,
                                  const std::vector<int>& h2) {
  const auto& y = *f.dst;
  std::vector<int> out(h1.size());
  for (size_t i = 0; i < h1.size(); ++i) {
    int pair = -1;
    for (size_t p = 0; p < y.comp_pairs.size(); ++p)
      if (y.comp_pairs[p].first == h1[i] && y.comp_pairs[p].second == h2[i]) {
        pair = static_cast<int>(p);
        break;
      }
    if (pair < 0) throw Error("homotopy_via_tau: edges are not composable");
    out[i] = y.tau.map[pair];
  }
  return out;
}

std::vector<std::vector<QuiverMorphism>> ex_hom(GrpdPtr x, GrpdPtr y) {
  auto morphisms = quiver_morphisms(x, y);
  std::vector<std::vector<QuiverMorphism>> classes;
  for (auto& f : morphisms) {
    bool placed = false;
    for (auto& cls : classes)
      if (is_homotopic(cls.front(), f)) {
        cls.push_back(f);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({f});
  }
  return classes;
}

}  // namespace impasm
