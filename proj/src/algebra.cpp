#include "impasm/algebra.hpp"

#include <sstream>

namespace impasm {

namespace {

Elem interp_rec(const TermPtr& t, Env& env, const ImplicativeStructure& a);

// does `name` occur free in t?
bool occurs(const TermPtr& t, const std::string& name) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == name;
    case Term::Kind::Quote:
    case Term::Kind::Const: return false;
    case Term::Kind::Lam:
      if (std::find(t->params.begin(), t->params.end(), name) != t->params.end())
        return false;
      return occurs(t->a, name);
    case Term::Kind::LetIn:
      if (occurs(t->a, name)) return true;
      return t->name != name && occurs(t->b, name);
    case Term::Kind::App:
    case Term::Kind::MeetPair:
    case Term::Kind::Pair:
      return occurs(t->a, name) || occurs(t->b, name);
  }
  return false;
}

Elem interp_lam(const std::vector<std::string>& params, size_t i, const TermPtr& body,
                Env& env, const ImplicativeStructure& a) {
  if (i == params.size()) return interp_rec(body, env, a);
  const Lattice& lat = a.lat();
  // shadowed later or absent from the body: the meet over the whole carrier
  // of a -> inner collapses to top -> inner (antitone in the antecedent)
  bool used = occurs(body, params[i]) &&
              std::find(params.begin() + i + 1, params.end(), params[i]) ==
                  params.end();
  if (!used) {
    bool shadowed =
        std::find(params.begin() + i + 1, params.end(), params[i]) != params.end();
    if (!shadowed) {
      auto saved = env.find(params[i]) != env.end()
                       ? std::optional<Elem>(env[params[i]])
                       : std::nullopt;
      env.erase(params[i]);
      Elem inner = interp_lam(params, i + 1, body, env, a);
      if (saved) env[params[i]] = *saved;
      return a.imp(lat.top(), inner);
    }
    Elem inner = interp_lam(params, i + 1, body, env, a);
    return a.imp(lat.top(), inner);
  }
  Elem acc = lat.top();
  for (Elem x = 0; x < a.size(); ++x) {
    env.insert_or_assign(params[i], x);
    Elem inner = interp_lam(params, i + 1, body, env, a);
    acc = lat.meet2(acc, a.imp(x, inner));
  }
  env.erase(params[i]);
  return acc;
}

Elem interp_rec(const TermPtr& t, Env& env, const ImplicativeStructure& a) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw Error("unbound variable: " + t->name);
      return it->second;
    }
    case Term::Kind::Quote:
      return a.lat().elem(t->name);
    case Term::Kind::Const:
      switch (t->cname) {
        case Term::ConstName::I: return a.comb_I();
        case Term::ConstName::K: return a.comb_K();
        case Term::ConstName::S: return a.comb_S();
        case Term::ConstName::Pi0: return a.comb_pi0();
        case Term::ConstName::Pi1: return a.comb_pi1();
        case Term::ConstName::Pi2: return a.comb_pi2();
      }
      throw Error("unreachable combinator");
    case Term::Kind::App: {
      Elem f = interp_rec(t->a, env, a);
      Elem x = interp_rec(t->b, env, a);
      return a.app(f, x);
    }
    case Term::Kind::MeetPair: {
      Elem l = interp_rec(t->a, env, a);
      Elem r = interp_rec(t->b, env, a);
      return a.encoded_meet(l, r);
    }
    case Term::Kind::Pair: {
      // <t, u> is read as lam z . z t u
      Elem l = interp_rec(t->a, env, a);
      Elem r = interp_rec(t->b, env, a);
      const Lattice& lat = a.lat();
      Elem acc = lat.top();
      for (Elem z = 0; z < a.size(); ++z)
        acc = lat.meet2(acc, a.imp(z, a.app(a.app(z, l), r)));
      return acc;
    }
    case Term::Kind::LetIn: {
      // macro: expand by substitution before interpretation
      TermPtr expanded = substitute(t->b, t->name, t->a);
      return interp_rec(expanded, env, a);
    }
    case Term::Kind::Lam: {
      // saved/restored shadowed binding, if any
      std::vector<std::pair<std::string, std::optional<Elem>>> saved;
      for (const auto& p : t->params) {
        auto it = env.find(p);
        saved.push_back({p, it == env.end() ? std::nullopt : std::optional<Elem>(it->second)});
      }
      Elem out = interp_lam(t->params, 0, t->a, env, a);
      for (const auto& [p, v] : saved) {
        if (v) env[p] = *v;
        else env.erase(p);
      }
      return out;
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

Elem interp(const TermPtr& t, const Env& env, const ImplicativeStructure& a) {
  Env scratch = env;
  return interp_rec(t, scratch, a);
}

Elem interp(const TermPtr& t, const Env& env, const ImplicativeAlgebra& a) {
  return interp(t, env, a.str());
}

Elem interp_closed(const TermPtr& t, const ImplicativeStructure& a) {
  Env env;
  return interp_rec(t, env, a);
}

ValidationReport beta_soundness_check(const TermPtr& t, const TermPtr& s,
                                      const ImplicativeStructure& a) {
  ValidationReport rep;
  if (t->kind != Term::Kind::Lam) {
    rep.violations.push_back("beta check needs a lambda on the left");
    return rep;
  }
  Elem applied = interp_closed(Term::app(t, s), a);
  TermPtr body = t->params.size() == 1
                     ? t->a
                     : Term::lam(std::vector<std::string>(t->params.begin() + 1,
                                                          t->params.end()),
                                 t->a);
  Elem substituted = interp_closed(substitute(body, t->params.front(), s), a);
  if (!a.lat().leq(applied, substituted)) {
    std::ostringstream os;
    os << "beta soundness fails: interp((lam...) s) = " << a.lat().name(applied)
       << " is not <= interp(body[x:=s]) = " << a.lat().name(substituted);
    rep.violations.push_back(os.str());
  }
  return rep;
}

ImplicativeAlgebra::ImplicativeAlgebra(ImplicativeStructure str, Mask members)
    : str_(std::move(str)), sep_(members) {
  interp_i_ = str_.comb_I();
  interp_k_ = str_.comb_K();
  interp_s_ = str_.comb_S();
}

ImplicativeAlgebra ImplicativeAlgebra::from_generators(ImplicativeStructure str,
                                                       Mask gens) {
  Mask closed = 0;
  for (Elem e = 0; e < str.size(); ++e)
    if (has(gens, e)) closed |= str.lat().upset(e);
  return ImplicativeAlgebra(std::move(str), closed);
}

ValidationReport validate_separator(const ImplicativeAlgebra& a) {
  ValidationReport rep;
  const Lattice& lat = a.lat();
  if (a.sep() == 0) {
    rep.violations.push_back("separator is empty");
    return rep;
  }
  for (Elem e = 0; e < a.size(); ++e) {
    if (!a.in_sep(e)) continue;
    for (Elem f = 0; f < a.size(); ++f)
      if (lat.leq(e, f) && !a.in_sep(f))
        rep.violations.push_back("not upward closed: " + lat.name(e) +
                                 " is in the separator but " + lat.name(f) +
                                 " is not");
  }
  for (Elem e = 0; e < a.size(); ++e) {
    if (!a.in_sep(e)) continue;
    for (Elem f = 0; f < a.size(); ++f) {
      if (!a.in_sep(f)) continue;
      Elem r = a.app(e, f);
      if (!a.in_sep(r))
        rep.violations.push_back("not application closed: app(" + lat.name(e) +
                                 ", " + lat.name(f) + ") = " + lat.name(r) +
                                 " escapes the separator");
    }
  }
  if (!a.in_sep(a.interp_K()))
    rep.violations.push_back("interp(K) = " + lat.name(a.interp_K()) +
                             " is not in the separator");
  if (!a.in_sep(a.interp_S()))
    rep.violations.push_back("interp(S) = " + lat.name(a.interp_S()) +
                             " is not in the separator");
  if (a.sep() == lat.full_mask())
    rep.warnings.push_back("separator is the whole carrier (inconsistent algebra)");
  return rep;
}

EntailResult fam_entails(const Family& u, const Family& v, const ImplicativeAlgebra& a) {
  if (u.index != v.index) throw Error("fam_entails: families have different indices");
  Elem w = a.lat().top();
  for (size_t i = 0; i < u.values.size(); ++i)
    w = a.lat().meet2(w, a.imp(u.values[i], v.values[i]));
  return {a.in_sep(w), w};
}

IsoResult fam_iso(const Family& u, const Family& v, const ImplicativeAlgebra& a) {
  auto f = fam_entails(u, v, a);
  auto b = fam_entails(v, u, a);
  return {f.holds && b.holds, f.witness, b.witness};
}

Family e_exists_valuation(const Valuation& nu, const ImplicativeStructure& a) {
  Family out;
  out.index = nu.index;
  out.values.reserve(nu.values.size());
  for (Mask m : nu.values) out.values.push_back(a.e_exists(m));
  return out;
}

JoinsCompatResult compatible_with_joins(const ImplicativeStructure& a, int size_cap) {
  const Lattice& lat = a.lat();
  int n = a.size();
  auto check = [&](Mask s) -> std::optional<JoinsCompatResult> {
    Elem j = lat.join(s);
    for (Elem b = 0; b < n; ++b) {
      Elem lhs = lat.top();
      for (Elem x = 0; x < n; ++x)
        if (has(s, x)) lhs = lat.meet2(lhs, a.imp(x, b));
      if (lhs != a.imp(j, b)) return JoinsCompatResult{false, s, b};
    }
    return std::nullopt;
  };
  if (n <= 12) {
    Mask all = lat.full_mask();
    for (Mask s = 0;; ++s) {
      if (auto r = check(s)) return *r;
      if (s == all) break;
    }
  } else {
    std::uint64_t state = 0xda942042e4dd58b5ull;
    for (int i = 0; i < size_cap; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      if (auto r = check(state & lat.full_mask())) return *r;
    }
  }
  return {true, 0, -1};
}

}  // namespace impasm
