#include "impasm/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace impasm {

namespace {

std::string subset_str(const Lattice& lat, Mask s) {
  std::string out = "{";
  bool first = true;
  for (Elem e = 0; e < lat.size(); ++e) {
    if (!has(s, e)) continue;
    if (!first) out += ",";
    out += lat.name(e);
    first = false;
  }
  return out + "}";
}

}  // namespace

Elem Lattice::elem(std::string_view n) const {
  auto it = index_.find(n);
  if (it == index_.end()) throw Error("unknown element id: " + std::string(n));
  return it->second;
}

Mask Lattice::mask_of(const std::vector<std::string>& elems) const {
  Mask m = 0;
  for (const auto& n : elems) m |= bit(elem(n));
  return m;
}

std::vector<std::string> Lattice::names_of(Mask s) const {
  std::vector<std::string> out;
  for (Elem e = 0; e < size(); ++e)
    if (has(s, e)) out.push_back(name(e));
  return out;
}

Elem Lattice::glb_scan(Mask s) const {
  Mask lower = full_mask();
  for (Elem e = 0; e < size(); ++e)
    if (has(s, e)) lower &= down_[e];
  // greatest element of `lower`, if any
  for (Elem c = 0; c < size(); ++c)
    if (has(lower, c) && (lower & ~down_[c]) == 0) return c;
  return -1;
}

Elem Lattice::lub_scan(Mask s) const {
  Mask upper = full_mask();
  for (Elem e = 0; e < size(); ++e)
    if (has(s, e)) upper &= up_[e];
  for (Elem c = 0; c < size(); ++c)
    if (has(upper, c) && (upper & ~up_[c]) == 0) return c;
  return -1;
}

Elem Lattice::meet(Mask s) const {
  if (s == 0) return top_;
  Elem acc = -1;
  for (Elem e = 0; e < size(); ++e) {
    if (!has(s, e)) continue;
    acc = acc < 0 ? e : meet2_[acc][e];
  }
  return acc;
}

Elem Lattice::join(Mask s) const {
  if (s == 0) return bottom_;
  Elem acc = -1;
  for (Elem e = 0; e < size(); ++e) {
    if (!has(s, e)) continue;
    acc = acc < 0 ? e : join2_[acc][e];
  }
  return acc;
}

Lattice Lattice::from_order_pairs(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Lattice lat;
  if (names.empty()) throw Error("lattice needs at least one element");
  if (static_cast<int>(names.size()) > kMaxElems)
    throw Error("carrier too large (max " + std::to_string(kMaxElems) + ")");
  lat.names_ = std::move(names);
  int n = lat.size();
  for (Elem e = 0; e < n; ++e) {
    if (!lat.index_.emplace(lat.names_[e], e).second)
      throw Error("duplicate element id: " + lat.names_[e]);
  }

  // reflexive-transitive closure of the generator pairs
  std::vector<Mask> up(n, 0);
  for (Elem e = 0; e < n; ++e) up[e] |= bit(e);
  for (const auto& [a, b] : pairs) up[lat.elem(a)] |= bit(lat.elem(b));
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (has(up[a], b) && (up[a] | up[b]) != up[a]) {
          up[a] |= up[b];
          changed = true;
        }
  }
  lat.up_ = up;
  lat.down_.assign(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (has(up[a], b)) lat.down_[b] |= bit(a);

  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (has(up[a], b) && has(up[b], a))
        throw Error("order is not antisymmetric: " + lat.names_[a] + " and " +
                    lat.names_[b] + " are mutually below each other");

  // pairwise meets/joins must exist
  lat.meet2_.assign(n, std::vector<Elem>(n, -1));
  lat.join2_.assign(n, std::vector<Elem>(n, -1));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem m = lat.glb_scan(bit(a) | bit(b));
      Elem j = lat.lub_scan(bit(a) | bit(b));
      if (m < 0)
        throw Error("not a lattice: no meet for {" + lat.names_[a] + "," +
                    lat.names_[b] + "}");
      if (j < 0)
        throw Error("not a lattice: no join for {" + lat.names_[a] + "," +
                    lat.names_[b] + "}");
      lat.meet2_[a][b] = m;
      lat.join2_[a][b] = j;
    }

  // top = lub of everything, bottom = glb of everything
  lat.top_ = lat.lub_scan(lat.full_mask());
  lat.bottom_ = lat.glb_scan(lat.full_mask());
  if (lat.top_ < 0 || lat.bottom_ < 0)
    throw Error("not a lattice: missing top or bottom");

  // completeness: exhaustive for n <= 16, deterministic sample above
  if (n <= 16) {
    Mask all = lat.full_mask();
    for (Mask s = 0; s <= all; ++s) {
      if (lat.glb_scan(s) < 0)
        throw Error("not a complete lattice: no meet for " + subset_str(lat, s));
      if (lat.lub_scan(s) < 0)
        throw Error("not a complete lattice: no join for " + subset_str(lat, s));
      if (s == all) break;
    }
  } else {
    // sampled check: all pairs were verified above; fold-based meets of
    // random-ish subsets drawn from a fixed LCG
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < 4096; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      Mask s = state & lat.full_mask();
      if (lat.glb_scan(s) < 0 || lat.lub_scan(s) < 0)
        throw Error("not a complete lattice (sampled): " + subset_str(lat, s));
    }
  }
  return lat;
}

Lattice Lattice::chain(std::vector<std::string> names) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (size_t i = 0; i + 1 < names.size(); ++i) pairs.push_back({names[i], names[i + 1]});
  return from_order_pairs(std::move(names), pairs);
}

ImplicativeStructure::ImplicativeStructure(Lattice lat,
                                           std::vector<std::vector<Elem>> imp_table)
    : lat_(std::move(lat)), imp_(std::move(imp_table)) {
  int n = lat_.size();
  if (static_cast<int>(imp_.size()) != n)
    throw Error("implication table has wrong shape");
  for (auto& row : imp_) {
    if (static_cast<int>(row.size()) != n) throw Error("implication table has wrong shape");
    for (Elem v : row)
      if (v < 0 || v >= n) throw Error("implication table mentions an unknown element");
  }
  app_.assign(n, std::vector<Elem>(n, -1));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Mask cs = 0;
      for (Elem c = 0; c < n; ++c)
        if (lat_.leq(a, imp_[b][c])) cs |= bit(c);
      app_[a][b] = lat_.meet(cs);
    }
  emeet_.assign(n, std::vector<Elem>(n, -1));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem acc = lat_.top();
      for (Elem c = 0; c < n; ++c)
        acc = lat_.meet2(acc, imp_[imp_[a][imp_[b][c]]][c]);
      emeet_[a][b] = acc;
    }
  if (n <= 20) {
    eexists_.assign(std::size_t{1} << n, -1);
    for (Mask u = 0; u < eexists_.size(); ++u) eexists_[u] = e_exists_raw(u);
    eexists_cached_ = true;
  }

  // combinator interpretations, by their defining meets
  auto lam1 = [&](auto body) {
    Elem acc = lat_.top();
    for (Elem a = 0; a < n; ++a) acc = lat_.meet2(acc, imp_[a][body(a)]);
    return acc;
  };
  comb_[0] = lam1([&](Elem a) { return a; });                       // I
  comb_[1] = lam1([&](Elem a) {                                     // K
    return lam1([&](Elem b) { (void)b; return a; });
  });
  comb_[2] = lam1([&](Elem a) {                                     // S
    return lam1([&](Elem b) {
      return lam1([&](Elem c) { return app_[app_[a][c]][app_[b][c]]; });
    });
  });
  Elem sel2 = lam1([&](Elem a) { (void)a; return lam1([&](Elem b) { return b; }); });
  comb_[3] = lam1([&](Elem p) { return app_[p][comb_[1]]; });       // pi0
  comb_[4] = lam1([&](Elem p) { return app_[app_[p][sel2]][comb_[1]]; });
  comb_[5] = lam1([&](Elem p) { return app_[app_[p][sel2]][sel2]; });
}

Elem ImplicativeStructure::e_exists_raw(Mask u) const {
  int n = lat_.size();
  Elem acc = lat_.top();
  for (Elem c = 0; c < n; ++c) {
    Elem ante = lat_.top();
    for (Elem e = 0; e < n; ++e)
      if (has(u, e)) ante = lat_.meet2(ante, imp_[e][c]);
    acc = lat_.meet2(acc, imp_[ante][c]);
  }
  return acc;
}

Elem ImplicativeStructure::e_exists(Mask u) const {
  if (eexists_cached_) return eexists_[u];
  return e_exists_raw(u);
}

Elem ImplicativeStructure::eta(Elem u) const {
  Elem acc = lat_.top();
  for (Elem z = 0; z < lat_.size(); ++z)
    acc = lat_.meet2(acc, imp_[z][app_[z][u]]);
  return acc;
}

ValidationReport ImplicativeStructure::validate() const {
  ValidationReport rep;
  int n = lat_.size();
  // variance: a' <= a and b <= b'  =>  (a->b) <= (a'->b')
  for (Elem a = 0; a < n && rep.violations.size() < 64; ++a)
    for (Elem a2 = 0; a2 < n; ++a2) {
      if (!lat_.leq(a2, a)) continue;
      for (Elem b = 0; b < n; ++b)
        for (Elem b2 = 0; b2 < n; ++b2) {
          if (!lat_.leq(b, b2)) continue;
          if (!lat_.leq(imp_[a][b], imp_[a2][b2])) {
            std::ostringstream os;
            os << "variance fails: (" << lat_.name(a) << "->" << lat_.name(b)
               << ") = " << lat_.name(imp_[a][b]) << " is not <= ("
               << lat_.name(a2) << "->" << lat_.name(b2) << ") = "
               << lat_.name(imp_[a2][b2]);
            rep.violations.push_back(os.str());
          }
        }
    }
  // meet distribution: a -> meet(B) = meet over b in B of (a->b),
  // exhaustively over subsets for small carriers, sampled otherwise
  auto check_dist = [&](Elem a, Mask bs) {
    Elem mb = lat_.meet(bs);
    Elem lhs = imp_[a][mb];
    Elem rhs = lat_.top();
    for (Elem b = 0; b < n; ++b)
      if (has(bs, b)) rhs = lat_.meet2(rhs, imp_[a][b]);
    if (lhs != rhs && rep.violations.size() < 64) {
      std::ostringstream os;
      os << "meet distribution fails: " << lat_.name(a) << " -> meet"
         << subset_str(lat_, bs) << " = " << lat_.name(lhs)
         << " but meet of implications = " << lat_.name(rhs);
      rep.violations.push_back(os.str());
    }
  };
  if (n <= 16) {
    Mask all = lat_.full_mask();
    for (Elem a = 0; a < n; ++a)
      for (Mask bs = 0;; ++bs) {
        check_dist(a, bs);
        if (bs == all) break;
      }
  } else {
    std::uint64_t state = 0x2545f4914f6cdd1dull;
    for (Elem a = 0; a < n; ++a)
      for (int i = 0; i < 2048; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        check_dist(a, state & lat_.full_mask());
      }
  }
  return rep;
}

ImplicativeStructure derive_heyting(const Lattice& lat) {
  int n = lat.size();
  std::vector<std::vector<Elem>> imp(n, std::vector<Elem>(n, -1));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Mask cand = 0;
      for (Elem c = 0; c < n; ++c)
        if (lat.leq(lat.meet2(c, a), b)) cand |= bit(c);
      imp[a][b] = lat.join(cand);
    }
  // the adjunction meet(c,a) <= b  <=>  c <= imp(a,b) pins down frames;
  // on non-distributive lattices the join of candidates overshoots
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (lat.leq(lat.meet2(c, a), b) != lat.leq(c, imp[a][b]))
          throw NotImplicative(
              "lattice is not a frame: adjunction fails at c=" + lat.name(c) +
              ", a=" + lat.name(a) + ", b=" + lat.name(b));
  ImplicativeStructure s(lat, std::move(imp));
  auto rep = validate_implicative_structure(s);
  if (!rep.ok())
    throw NotImplicative("derived implication is not implicative: " +
                         rep.violations.front());
  return s;
}

ValidationReport validate_implicative_structure(const ImplicativeStructure& a) {
  return a.validate();
}

}  // namespace impasm
