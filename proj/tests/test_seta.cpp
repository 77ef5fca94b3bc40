#include "doctest.h"

#include "impasm/seta.hpp"
#include "support.hpp"

using namespace impasm;
using namespace impasm::testsup;

namespace {

ISetPtr iset(const AlgebraPtr& a, std::vector<std::string> pts,
             std::vector<std::vector<const char*>> eq) {
  std::vector<std::vector<Elem>> rows;
  for (auto& r : eq) {
    rows.push_back({});
    for (const char* n : r) rows.back().push_back(a->lat().elem(n));
  }
  return make_implicative_set(a, std::move(pts), std::move(rows));
}

GrpdPtr loop_groupoid(const AlgebraPtr& a, const char* ea, const char* eb,
                      const char* eloop) {
  auto x0 = asm_of(a, {"a", "b"}, {ea, eb});
  auto x1 = asm_of(a, {"ra", "rb", "la"}, {ea, eb, eloop});
  std::vector<int> s{0, 1, 0}, t{0, 1, 0}, rho{0, 1}, sigma{0, 1, 2};
  auto tau = [](int e, int ep) { return (e == 2 || ep == 2) ? 2 : e; };
  return make_pseudo_groupoid(x0, x1, s, t, rho, sigma, tau);
}

std::vector<GrpdPtr> groupoid_corpus(const AlgebraPtr& a) {
  std::vector<GrpdPtr> out;
  auto pt = make_assembly(a, {"p"}, {a->lat().top()});
  out.push_back(discrete_embed(pt));
  for (const auto& x : all_assemblies(a, 2, a->sep())) {
    out.push_back(discrete_embed(x));
    out.push_back(codiscrete_groupoid(x));
  }
  out.push_back(loop_groupoid(a, a->lat().name(a->lat().top()).c_str(),
                              a->lat().name(a->lat().top()).c_str(),
                              a->lat().name(a->lat().top()).c_str()));
  return out;
}

std::vector<AlgebraPtr> seta_algebras() { return {b2(), h3(), b22()}; }

}  // namespace

TEST_CASE("validate_implicative_set") {
  auto a = h3();
  SUBCASE("constantly-top equality is valid") {
    CHECK(validate_implicative_set(
              *iset(a, {"x", "y"}, {{"1", "1"}, {"1", "1"}})).ok());
  }
  SUBCASE("the identity diagonal is valid") {
    CHECK(validate_implicative_set(
              *iset(a, {"x", "y"}, {{"1", "0"}, {"0", "1"}})).ok());
  }
  SUBCASE("ghost-bearing sets with bottom self-equality are valid") {
    auto e = iset(a, {"g", "n"}, {{"0", "0"}, {"0", "1"}});
    CHECK(validate_implicative_set(*e).ok());
    auto gp = ghost_partition(*e);
    CHECK(gp.ghosts == std::vector<int>{0});
    CHECK(gp.ngh == std::vector<int>{1});
  }
  SUBCASE("an asymmetric equality is reported") {
    auto e = iset(a, {"x", "y"}, {{"1", "1"}, {"0", "1"}});
    auto rep = validate_implicative_set(*e);
    CHECK_FALSE(rep.ok());
  }
}

TEST_CASE("functional relation validation") {
  auto a = h3();
  auto e = iset(a, {"x", "y"}, {{"1", "h"}, {"h", "1"}});
  REQUIRE(validate_implicative_set(*e).ok());
  SUBCASE("the identity relation is functional") {
    CHECK(validate_frel(id_frel(e)).ok());
  }
  SUBCASE("the constantly-bottom relation fails totality") {
    FunctionalRelation f{e, e, {{el(a, "0"), el(a, "0")}, {el(a, "0"), el(a, "0")}}};
    auto rep = validate_frel(f);
    CHECK_FALSE(rep.ok());
    bool mentions_tot = false;
    for (const auto& v : rep.violations)
      if (v.find("Tot") != std::string::npos) mentions_tot = true;
    CHECK(mentions_tot);
  }
}

TEST_CASE("category laws of Set[A] on corpus relations") {
  for (const auto& a : seta_algebras()) {
    auto top = a->lat().name(a->lat().top());
    auto e1 = iset(a, {"x", "y"},
                   {{top.c_str(), top.c_str()}, {top.c_str(), top.c_str()}});
    auto e2 = iset(a, {"u"}, {{top.c_str()}});
    FunctionalRelation f{e1, e2, {{a->lat().top()}, {a->lat().top()}}};
    REQUIRE(validate_frel(f).ok());
    auto left = compose_frel(id_frel(e1), f);
    auto right = compose_frel(f, id_frel(e2));
    CHECK(frel_equiv(left, f).equivalent);
    CHECK(frel_equiv(right, f).equivalent);
    CHECK(frel_equiv(f, f).equivalent);
  }
}

TEST_CASE("one-sided entailment decides equivalence for valid relations") {
  // prop:topos-morphisms, implemented as a property check rather than baked
  // into the decision procedure
  auto a = h3();
  auto e = iset(a, {"x", "y"}, {{"1", "h"}, {"h", "1"}});
  std::vector<FunctionalRelation> frels;
  for (Elem v1 : {el(a, "h"), el(a, "1")})
    for (Elem v2 : {el(a, "0"), el(a, "h"), el(a, "1")})
      for (Elem v3 : {el(a, "0"), el(a, "h"), el(a, "1")})
        for (Elem v4 : {el(a, "h"), el(a, "1")}) {
          FunctionalRelation f{e, e, {{v1, v2}, {v3, v4}}};
          if (validate_frel(f).ok()) frels.push_back(f);
        }
  REQUIRE(frels.size() > 2);
  for (const auto& f : frels)
    for (const auto& g : frels) {
      auto r = frel_equiv(f, g);
      CHECK(r.one_sided_agrees);
    }
}

TEST_CASE("K_object") {
  auto a = h3();
  SUBCASE("discrete point with top existence") {
    auto pt = make_assembly(a, {"p"}, {a->lat().top()});
    auto k = K_object(discrete_embed(pt));
    // top meet top meet exists({top}) in a Heyting algebra is top
    CHECK(k->eq[0][0] == a->lat().top());
  }
  SUBCASE("no ghosts: rho provides the self-edge") {
    for (const auto& alg : seta_algebras())
      for (const auto& g : groupoid_corpus(alg)) {
        auto k = K_object(g);
        CHECK(validate_implicative_set(*k).ok());
        auto gp = ghost_partition(*k);
        CHECK(gp.ghosts.empty());
      }
  }
  SUBCASE("no-edge pairs collapse to bottom") {
    auto x = asm_of(a, {"a", "b"}, {"1", "1"});
    auto k = K_object(discrete_embed(x));
    CHECK(k->eq[0][1] == a->lat().bottom());
  }
}

TEST_CASE("groupoid tracker terms (lem:impl-set)") {
  for (const auto& alg : seta_algebras())
    for (const auto& g : groupoid_corpus(alg))
      for (const auto& c : groupoid_tracker_checks(g)) {
        CAPTURE(c.name);
        CAPTURE(c.note);
        REQUIRE(c.side_ok);
        CHECK(c.in_sep);
        CHECK(c.below);
      }
}

TEST_CASE("K_morphism and its tracker terms") {
  auto a = h3();
  auto x = asm_of(a, {"a", "b"}, {"h", "1"});
  auto dx = discrete_embed(x);
  auto cx = codiscrete_groupoid(x);
  SUBCASE("identity goes to the identity relation") {
    auto f = identity_qm(dx);
    auto r = K_morphism(f);
    CHECK(frel_equiv(r, id_frel(K_object(dx))).equivalent);
  }
  SUBCASE("faithfulness: distinct vertex maps into a discrete target differ") {
    auto ms = quiver_morphisms(dx, dx);
    for (const auto& f : ms)
      for (const auto& g : ms) {
        bool homotopic = static_cast<bool>(is_homotopic(f, g));
        CHECK(frel_equiv(K_morphism(f), K_morphism(g)).equivalent == homotopic);
      }
  }
  SUBCASE("quoted tracker terms for R_f") {
    for (const auto& alg : seta_algebras())
      for (const auto& gx : groupoid_corpus(alg))
        for (const auto& gy : groupoid_corpus(alg)) {
          auto ms = quiver_morphisms(gx, gy);
          int budget = 0;
          for (const auto& f : ms) {
            if (++budget > 6) break;
            for (const auto& c : morphism_tracker_checks(f)) {
              CAPTURE(c.name);
              REQUIRE(c.side_ok);
              CHECK(c.in_sep);
              CHECK(c.below);
            }
          }
        }
  }
  SUBCASE("functoriality up to equivalence") {
    auto ms = quiver_morphisms(dx, cx);
    auto ns = quiver_morphisms(cx, cx);
    int budget = 0;
    for (const auto& f : ms)
      for (const auto& g : ns) {
        if (++budget > 12) break;
        auto lhs = K_morphism(compose_qm(g, f));
        auto rhs = compose_frel(K_morphism(f), K_morphism(g));
        CHECK(frel_equiv(lhs, rhs).equivalent);
      }
  }
}

TEST_CASE("K is full on the corpus; fullness search round-trips") {
  for (const auto& alg : seta_algebras()) {
    auto x = asm_of(alg, {"a"}, {alg->lat().name(alg->lat().top()).c_str()});
    std::vector<GrpdPtr> grpds{discrete_embed(x)};
    for (const auto& z : all_assemblies(alg, 2, alg->sep()))
      grpds.push_back(codiscrete_groupoid(z));
    for (const auto& gx : grpds)
      for (const auto& gy : grpds) {
        // round trip through known morphisms
        for (const auto& g : quiver_morphisms(gx, gy)) {
          auto res = K_fullness_search(gx, gy, K_morphism(g));
          REQUIRE(res.witness);
          CHECK_FALSE(res.theorem_violation);
          CHECK(is_homotopic(*res.witness, g));
          if (res.guided_ok) {
            CHECK(res.phi_check.side_ok);
            CHECK(res.phi_check.in_sep);
            CHECK(res.phi_check.below);
          }
        }
        // exhaustion over all valid functional relations between the images
        auto kx = K_object(gx);
        auto ky = K_object(gy);
        if (kx->size() * ky->size() > 2) continue;  // keep the sweep small
        std::vector<std::vector<Elem>> vals(kx->size(),
                                            std::vector<Elem>(ky->size(), 0));
        std::vector<int> idx(kx->size() * ky->size(), 0);
        while (true) {
          for (int i = 0; i < kx->size(); ++i)
            for (int j = 0; j < ky->size(); ++j) vals[i][j] = idx[i * ky->size() + j];
          FunctionalRelation f{kx, ky, vals};
          if (validate_frel(f).ok()) {
            auto res = K_fullness_search(gx, gy, f);
            CHECK_FALSE(res.theorem_violation);
            REQUIRE(res.witness);
            CHECK(frel_equiv(K_morphism(*res.witness), f).equivalent);
          }
          int i = static_cast<int>(idx.size()) - 1;
          while (i >= 0 && idx[i] == alg->size() - 1) idx[i--] = 0;
          if (i < 0) break;
          ++idx[i];
        }
      }
  }
}

TEST_CASE("K also identifies codiscrete fullness on the identity relation") {
  auto a = b2();
  auto x = asm_of(a, {"u", "v"}, {"1", "1"});
  auto g = codiscrete_groupoid(x);
  auto res = K_fullness_search(g, g, id_frel(K_object(g)));
  REQUIRE(res.witness);
  CHECK(is_homotopic(*res.witness, identity_qm(g)));
}

TEST_CASE("hat groupoid") {
  SUBCASE("ghostless constantly-top equality gives the codiscrete shape") {
    auto a = h3();
    auto e = iset(a, {"x", "y"}, {{"1", "1"}, {"1", "1"}});
    auto hat = hat_groupoid(e, msk(a, {"1"}));
    CHECK(validate_pseudo_groupoid(*hat.grpd).ok());
    CHECK(hat.grpd->q.x0->size() == 2);
    CHECK(hat.grpd->q.x1->size() == 4);  // one edge per pair
    auto cod = codiscrete_groupoid(asm_of(a, {"x", "y"}, {"1", "1"}));
    CHECK(hat.grpd->q.x1->exists() == cod->q.x1->exists());
  }
  SUBCASE("ghosts are excluded from the vertex assembly") {
    auto a = h3();
    auto e = iset(a, {"g", "n"}, {{"0", "0"}, {"0", "1"}});
    auto hat = hat_groupoid(e, msk(a, {"1"}));
    CHECK(hat.ngh == std::vector<int>{1});
    CHECK(hat.grpd->q.x0->size() == 1);
  }
  SUBCASE("K of the hat matches the displayed equality") {
    for (const auto& a : seta_algebras()) {
      auto top = a->lat().name(a->lat().top());
      Mask m = bit(a->lat().top());
      auto e = iset(a, {"x", "y"},
                    {{top.c_str(), top.c_str()}, {top.c_str(), top.c_str()}});
      auto hat = hat_groupoid(e, m);
      auto k = K_object(hat.grpd);
      const auto& s = a->str();
      for (size_t i = 0; i < hat.ngh.size(); ++i)
        for (size_t j = 0; j < hat.ngh.size(); ++j) {
          Elem display = s.encoded_meet(
              hat.c[i], s.encoded_meet(hat.c[j],
                                       s.e_exists(hat.nu.at(hat.ngh[i], hat.ngh[j]))));
          CHECK(k->eq[i][j] == display);
        }
    }
  }
  SUBCASE("mixed existences over H3 with M = {h, 1}") {
    auto a = h3();
    auto e = iset(a, {"x", "y"}, {{"1", "h"}, {"h", "h"}});
    REQUIRE(validate_implicative_set(*e).ok());
    auto hat = hat_groupoid(e, msk(a, {"h", "1"}));
    CHECK(validate_pseudo_groupoid(*hat.grpd).ok());
    auto k = K_relation(e, hat);
    CHECK(validate_frel(k).ok());
  }
}

TEST_CASE("hat tracker terms (lem:pseudo, lem:fun, prop:inj)") {
  for (const auto& a : seta_algebras()) {
    auto top = a->lat().name(a->lat().top());
    std::vector<ISetPtr> sets;
    sets.push_back(iset(a, {"x", "y"},
                        {{top.c_str(), top.c_str()}, {top.c_str(), top.c_str()}}));
    sets.push_back(iset(a, {"x"}, {{top.c_str()}}));
    if (a == h3()) {
      sets.push_back(iset(a, {"x", "y"}, {{"1", "h"}, {"h", "h"}}));
      sets.push_back(iset(a, {"g", "n"}, {{"0", "0"}, {"0", "1"}}));
    }
    for (const auto& e : sets) {
      REQUIRE(validate_implicative_set(*e).ok());
      auto hat = hat_groupoid(e, bit(a->lat().top()));
      for (const auto& c : hat_tracker_checks(e, hat)) {
        CAPTURE(c.name);
        CAPTURE(c.note);
        REQUIRE(c.side_ok);
        CHECK(c.in_sep);
        CHECK(c.below);
      }
    }
  }
}

TEST_CASE("K_relation is an isomorphism on ghostless sets") {
  for (const auto& a : seta_algebras()) {
    auto top = a->lat().name(a->lat().top());
    std::vector<ISetPtr> sets;
    sets.push_back(iset(a, {"x", "y"},
                        {{top.c_str(), top.c_str()}, {top.c_str(), top.c_str()}}));
    sets.push_back(iset(a, {"x"}, {{top.c_str()}}));
    if (a == h3())
      sets.push_back(iset(a, {"x", "y"}, {{"1", "h"}, {"h", "h"}}));
    for (const auto& e : sets) {
      auto hat = hat_groupoid(e, bit(a->lat().top()));
      auto k = K_relation(e, hat);
      CHECK(validate_frel(k).ok());
      CHECK(internal_injective(k).holds);
      CHECK(internal_surjective(k).holds);
    }
  }
}

TEST_CASE("ghosts with bottom existence keep Surj in S over joins-compatible algebras") {
  auto a = h3();
  auto e = iset(a, {"g", "n"}, {{"0", "0"}, {"0", "1"}});
  auto hat = hat_groupoid(e, msk(a, {"1"}));
  auto k = K_relation(e, hat);
  CHECK(validate_frel(k).ok());
  CHECK(internal_injective(k).holds);
  auto surj = internal_surjective(k);
  CHECK(surj.holds);  // factors indexed by ghosts evaluate to top
  CHECK(surj.witness == a->lat().top());
}

TEST_CASE("over a non-joins-compatible algebra Surj can escape the separator") {
  // the negative-witness probe of the surjectivity obstruction: a ghost with
  // existence p over nb22 makes the Surj factor p -> bottom = q, outside S
  auto a = nb22();
  auto e = iset(a, {"g", "n"}, {{"p", "bot"}, {"bot", "top"}});
  REQUIRE(validate_implicative_set(*e).ok());
  auto hat = hat_groupoid(e, msk(a, {"top"}));
  auto k = K_relation(e, hat);
  CHECK(internal_injective(k).holds);
  auto surj = internal_surjective(k);
  CHECK_FALSE(surj.holds);
  CHECK(surj.witness == el(a, "q"));
}

TEST_CASE("id_frel is internally injective and surjective") {
  auto a = b22();
  auto e = iset(a, {"x", "y"}, {{"top", "p"}, {"p", "top"}});
  REQUIRE(validate_implicative_set(*e).ok());
  auto f = id_frel(e);
  CHECK(internal_injective(f).holds);
  CHECK(internal_surjective(f).holds);
}
